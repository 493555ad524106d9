"""Built-in models, target presentations, degeneration checks and Hodge tables."""
from __future__ import annotations

from dataclasses import dataclass, field
from functools import lru_cache
from itertools import combinations
from typing import Iterable

from .cotor import (
    CotorTable,
    TwistingCochain,
    build_twisted_complex,
    cotor_twisted,
    is_boundary,
    pure_tensor,
    run_cells,
    twisting_cochain_for,
)
from .hopf import (
    ComoduleAlgebra,
    Report,
    algebra_hom,
    check_comodule_axioms,
    check_comodule_map,
    lambda1,
    lambda2,
    primitives,
    sing_z2,
)
from .models import (
    MODEL_KINDS,
    gl,
    gl_sing,
    gm,
    model,
    mu2,
    o,
    o2_power,
    orthogonal,
    self_comodule,
    sing_cx_model,
    sing_z2_model,
    so,
    sp,
    sp_sing,
    trivial,
)
from .poly import BiDegree, GradedVariable, Poly, PolyAlgebra, PresentedAlgebra
from .toda import bar_generators, build_b, build_y, find_sharp, index_sets, verify_relations

GROUPS = ("pgl", "pso", "psp")

# the catalog models exercised by the axiom suite
CATALOG_IDS = (
    "gm",
    "mu2",
    "sing_z2",
    "sing_cx",
    "gl:2",
    "gl:4",
    "gl:6",
    "gl_sing:6",
    "sp:6",
    "sp_sing:6",
    "so:6",
    "o:6",
    "o2_power:3",
    "trivial:lambda1",
    "trivial:lambda2",
)


def group_model(group: str, m: int) -> ComoduleAlgebra:
    """The comodule algebra whose Cotor gives the Hodge cohomology of the projective group."""
    n = 4 * m + 2
    if group == "pgl":
        return gl(n)
    if group == "pso":
        return so(n)
    if group == "psp":
        return sp(n)
    raise ValueError(f"unknown group {group!r}")


# closed forms of the GL_6 lifts, used by the toda suite
KNOWN_LIFTS = {
    "gl:6": {
        "c3": "c3 + c1^3",
        "c4": "c4 + c2^2 + c1^2*c2",
        "c5": "c5 + c4*c1 + c3*c2 + c3*c1^2",
        "c6": "c6 + c4*c2 + c3*c1*c2",
    }
}


def parse_poly(alg: PolyAlgebra, text: str) -> Poly:
    """Parse ``"c4 + c2^2 + c1^2*c2"`` (terms joined by ``+``, factors by ``*``)."""
    out = alg.zero()
    for term in text.split("+"):
        term = term.strip()
        if term in ("0", ""):
            continue
        mono = alg.one()
        if term != "1":
            for factor in term.split("*"):
                name, _, exp = factor.strip().partition("^")
                if name not in alg.index:
                    raise ValueError(f"unknown variable {name!r}")
                mono = mono * alg.gen(name) ** (int(exp) if exp else 1)
        out = out + mono
    return out


# O_2^r pullback


def _elementary(alg: PolyAlgebra, names: list[str], k: int) -> Poly:
    out = alg.zero()
    for combo in combinations(names, k):
        term = alg.one()
        for n in combo:
            term = term * alg.gen(n)
        out = out + term
    return out


def o2r_images(r: int, src: PolyAlgebra, dst: PolyAlgebra) -> dict[str, Poly]:
    """Generator images of the restriction H*(BO_2r) -> H*(B(O_2)^r)."""
    t = [f"t{i}" for i in range(1, r + 1)]
    images = {}
    for name in src.names:
        k = int(name[1:])
        a, odd = divmod(k, 2)
        if not odd:
            images[name] = _elementary(dst, t, a)
        else:
            img = dst.zero()
            for j in range(1, r + 1):
                others = [x for x in t if x != f"t{j}"]
                img = img + dst.gen(f"s{j}") * _elementary(dst, others, a)
            images[name] = img
    return images


def o2r_pullback(p: Poly, r: int) -> Poly:
    """Restrict a polynomial in the u-classes of O_2r to the s, t classes of (O_2)^r."""
    dst = o2_power(r).algebra
    f = algebra_hom(p.alg, dst, o2r_images(r, p.alg, dst))
    out: set = set()
    for m in p.terms:
        out ^= set(f(m))
    return Poly(dst, frozenset(out))


def _identity_map(alg: PolyAlgebra):
    return lambda m: frozenset([m])


def check_o2r_square(two_r: int, max_total: int, keep_u1: bool = True) -> Report:
    """The restriction to (O_2)^r commutes with the coactions."""
    src = orthogonal(two_r, keep_u1)
    dst = o2_power(two_r // 2)
    f = algebra_hom(src.algebra, dst.algebra, o2r_images(two_r // 2, src.algebra, dst.algebra))
    rep = check_comodule_map(f, src, dst, _identity_map(lambda2().algebra), max_total)
    rep.name = f"pullback {src.name} -> {dst.name}"
    return rep


# restriction from GL_2n to Sp_2n and the coalgebra map to F2[z]


def lambda1_to_lambda2(m) -> frozenset:
    """Coefficient bookkeeping x2^k -> x2^k between the two Hopf algebras."""
    return frozenset([(0, m[0])])


def check_bj(n: int, max_total: int) -> Report:
    """``c_2h -> q_h`` and ``c_odd -> 0`` is a map of comodule algebras gl(2n) -> sp(2n)."""
    src, dst = gl(2 * n), sp(2 * n)
    images = {}
    for name in src.algebra.names:
        k = int(name[1:])
        images[name] = dst.algebra.gen(f"q{k // 2}") if k % 2 == 0 else dst.algebra.zero()
    f = algebra_hom(src.algebra, dst.algebra, images)
    rep = check_comodule_map(f, src, dst, lambda1_to_lambda2, max_total)
    rep.name = f"restriction {src.name} -> {dst.name}"
    return rep


def psi_mono(m) -> frozenset:
    """``x1^e x2^i -> z^(2i+e)``."""
    return frozenset([(2 * m[1] + m[0],)])


def check_psi(max_total: int) -> Report:
    """``psi`` is a bijection on bases that carries the Lambda2 coproduct to that of F2[z]."""
    src, dst = lambda2(), sing_z2()
    rep = Report("coalgebra isomorphism Lambda2 -> F2[z]")
    seen = set()
    for d in range(max_total + 1):
        for m in src.algebra.basis(d):
            rep.checked += 1
            (img,) = psi_mono(m)
            seen.add(img)
            lhs: set = set()
            for l, r in src.coproduct_mono(m):
                lhs ^= {(next(iter(psi_mono(l))), next(iter(psi_mono(r))))}
            rhs = set(dst.coproduct_mono(img))
            if lhs != rhs:
                rep.fail(f"coproduct of {src.algebra.mono_str(m)} is not carried over")
            if src.counit_mono(m) != dst.counit_mono(img):
                rep.fail(f"counit differs on {src.algebra.mono_str(m)}")
    # both sides have one basis element in each total degree
    rep.checked += 1
    if seen != {(k,) for k in range(max_total + 1)}:
        rep.fail("psi is not a bijection on basis monomials")
    return rep


def axiom_reports(max_total: int, ids: Iterable[str] = CATALOG_IDS) -> list[Report]:
    return [check_comodule_axioms(model(i), max_total) for i in ids]


# target presentations


def _y_name(I: Iterable[int]) -> str:
    return "y" + "_".join(str(i) for i in I)


@dataclass
class TargetPresentation:
    group: str
    m: int
    presented: PresentedAlgebra
    y_index: dict[tuple[int, ...], str] = field(default_factory=dict)
    b_index: dict[int, str] = field(default_factory=dict)
    labels: list[str] = field(default_factory=list)

    @property
    def algebra(self) -> PolyAlgebra:
        return self.presented.algebra

    @property
    def relations(self) -> list[Poly]:
        return self.presented.relations

    def poincare(self, max_total: int) -> list[int]:
        return self.presented.poincare_coeffs(max_total)

    def labelled(self) -> list[tuple[str, Poly]]:
        return list(zip(self.labels, self.relations))


class _YReducer:
    """Rewrites ``y`` of a multiset through the doubling convention of each group."""

    def __init__(self, group: str, alg: PolyAlgebra, y_index, b_index):
        self.group = group
        self.alg = alg
        self.y_index = y_index
        self.b_index = b_index

    def y(self, ms: tuple[int, ...]) -> Poly:
        ms = tuple(sorted(ms))
        if not ms:
            return self.alg.zero()
        for h in ms:
            if ms.count(h) >= 2:
                rest = list(ms)
                rest.remove(h)
                rest.remove(h)
                b = self.alg.gen(self.b_index[h])
                if self.group == "pso":
                    return b * self.y(tuple(rest))
                # y_{h,h,J} = y_J b_h + y_{h,J} y_h x2
                return self.y(tuple(rest)) * b + self.y((h, *rest)) * self.y((h,)) * self.alg.gen("x2")
        return self.alg.gen(self.y_index[ms])


def target_presentation(group: str, m: int) -> TargetPresentation:
    """Generators and relations of the Hodge ring of PGL_{4m+2} or PSO_{4m+2}."""
    if m < 0:
        raise ValueError("m must be non-negative")
    if group not in ("pgl", "pso"):
        raise ValueError(f"no presentation for {group!r}")
    Is = index_sets(m)
    hs = list(range(2, 2 * m + 2))
    vs = [GradedVariable("x2", BiDegree(1, 1))]
    if group == "pgl":
        vs.append(GradedVariable("x3", BiDegree(1, 2)))
    b_index, y_index = {}, {}
    for h in hs:
        b_index[h] = f"b{h}"
        deg = BiDegree(4 * h, 4 * h) if group == "pgl" else BiDegree(2 * h, 2 * h)
        vs.append(GradedVariable(b_index[h], deg))
    for I in Is:
        d = sum(I)
        y_index[I] = _y_name(I)
        deg = BiDegree(2 * d - 1, 2 * d - 1) if group == "pgl" else BiDegree(d - 1, d)
        vs.append(GradedVariable(y_index[I], deg))
    alg = PolyAlgebra(vs)
    red = _YReducer(group, alg, y_index, b_index)
    rels: list[Poly] = []
    labels: list[str] = []

    def add(label: str, r: Poly) -> None:
        if r and r not in rels:
            rels.append(r)
            labels.append(label)

    for I in Is:
        if group == "pgl":
            add(f"x3*{y_index[I]}", alg.gen("x3") * alg.gen(y_index[I]))
        else:
            add(f"x2*{y_index[I]}", alg.gen("x2") * alg.gen(y_index[I]))
    for I in Is:
        for J in Is:
            lhs = alg.gen(y_index[I]) * alg.gen(y_index[J])
            rhs = alg.zero()
            if group == "pgl":
                for k in range(1, len(I) + 1):
                    for K in combinations(I, k):
                        rest = tuple(i for i in I if i not in K) + J
                        term = red.y(rest)
                        for i in K:
                            term = term * alg.gen(y_index[(i,)])
                        rhs = rhs + term * alg.gen("x2") ** (k - 1)
            else:
                if len(I) < 2:
                    continue
                for i in I:
                    rest = tuple(x for x in I if x != i) + J
                    rhs = rhs + red.y(rest) * alg.gen(y_index[(i,)])
            add(f"{y_index[I]}*{y_index[J]}", lhs + rhs)
    pa = PresentedAlgebra(alg, rels, grading="bidegree")
    return TargetPresentation(group, m, pa, y_index, b_index, labels)


def relation_images(group: str, m: int) -> tuple[ComoduleAlgebra, dict[str, Poly], set[str]]:
    """Polynomial images of the presentation generators inside the group's model.

    Returns the model, the images, and the generators that only live at the
    Cotor level (``x3`` for PGL, ``x2`` for PSO); relations that mention
    those are checked through boundaries instead.
    """
    ca = group_model(group, m)
    sharp = find_sharp(ca)
    if sharp is None or sharp.q != 2:
        raise ValueError(f"{ca.name} has no distinguished element with q = 2")
    bar = bar_generators(ca, sharp)
    tp = target_presentation(group, m)
    images: dict[str, Poly] = {}
    for h, name in tp.b_index.items():
        images[name] = build_b(ca, sharp, bar, h)
    for I, name in tp.y_index.items():
        images[name] = build_y(ca, sharp, bar, I)
    if group == "pgl":
        images["x2"] = ca.algebra.gen("c1")
        return ca, images, {"x3"}
    return ca, images, {"x2"}


def check_relations(group: str, m: int) -> Report:
    """Substitute the constructed classes into every polynomial-level relation."""
    ca, images, outside = relation_images(group, m)
    tp = target_presentation(group, m)
    idx = {tp.algebra.index[n] for n in outside}
    rels = [(lbl, r) for lbl, r in tp.labelled() if not any(mono[i] for mono in r.terms for i in idx)]
    return verify_relations(ca, images, rels, f"{group} m={m} relations")


def check_cotor_relations(group: str, m: int) -> Report:
    """Products with the Cotor-level generator vanish: ``z3 (x) y_I`` for PGL and
    ``z2 (x) y_I`` for PSO are boundaries of the twisted complex."""
    ca, images, _ = relation_images(group, m)
    z = "z3" if group == "pgl" else "z2"
    rep = Report(f"{group} m={m}: {z} * y_I vanishes in Cotor")
    tp = target_presentation(group, m)
    top = max((ca.algebra.mono_total(next(iter(images[n].terms))) for n in tp.y_index.values()), default=0) + 3
    tc = twisting_cochain_for(ca.hopf, top)
    cx = build_twisted_complex(tc, ca, top, verify=False)
    for I, name in tp.y_index.items():
        rep.checked += 1
        elt = pure_tensor(tc, ca, tc.R.gen(z), images[name])
        try:
            if not is_boundary(cx, elt):
                rep.fail(f"{z} (x) {name} is a nonzero class")
        except ValueError as exc:
            rep.fail(f"{z} (x) {name}: {exc}")
    return rep


# degeneration


@lru_cache(maxsize=32)
def _cached_cotor(model_id: str, max_total: int, threads: int) -> CotorTable:
    return cotor_twisted(None, model(model_id), max_total, threads)


def cotor_of(model_id: str, max_total: int, threads: int = 1) -> CotorTable:
    return _cached_cotor(model_id, max_total, threads)


@dataclass
class DegenerationResult:
    group: str
    m: int
    left: list[int]
    right: list[int]
    left_label: str
    right_label: str

    @property
    def ok(self) -> bool:
        return self.left == self.right

    def first_mismatch(self) -> int | None:
        for d, (a, b) in enumerate(zip(self.left, self.right)):
            if a != b:
                return d
        return None

    def rows(self) -> list[tuple[int, int, int, bool]]:
        return [(d, a, b, a == b) for d, (a, b) in enumerate(zip(self.left, self.right))]

    def summary(self) -> str:
        d = self.first_mismatch()
        if d is None:
            return f"{self.group} m={self.m}: equal through total degree {len(self.left) - 1}"
        return (
            f"{self.group} m={self.m}: first mismatch in total degree {d}: "
            f"{self.left_label} {self.left[d]}, {self.right_label} {self.right[d]}"
        )


def degeneration_check(group: str, m: int, max_total: int, threads: int = 1) -> DegenerationResult:
    """Compare the E2 Poincare series with the target ring, or Hodge with singular for psp."""
    n = 4 * m + 2
    if group in ("pgl", "pso"):
        mid = f"gl:{n}" if group == "pgl" else f"so:{n}"
        left = cotor_of(mid, max_total, threads).totals(max_total)
        right = target_presentation(group, m).poincare(max_total)
        return DegenerationResult(group, m, left, right, "cotor", "presentation")
    if group == "psp":
        left = cotor_of(f"sp:{n}", max_total, threads).totals(max_total)
        right = cotor_of(f"sp_sing:{n}", max_total, threads).totals(max_total)
        return DegenerationResult(group, m, left, right, "hodge", "singular")
    raise ValueError(f"unknown group {group!r}")


# Hodge and representation tables


@dataclass
class HodgeTable:
    dims: dict[tuple[int, int], int]

    def __getitem__(self, ab: tuple[int, int]) -> int:
        return self.dims.get(ab, 0)

    def at_total(self, total: int) -> dict[tuple[int, int], int]:
        return {ab: d for ab, d in self.dims.items() if sum(ab) == total and d}

    def negative_entries(self) -> list[tuple[int, int]]:
        return sorted(ab for ab, d in self.dims.items() if d and ab[0] > ab[1])


def hodge_table(ct: CotorTable) -> HodgeTable:
    return HodgeTable(ct.hodge())


def rep_dims(ht: HodgeTable, i: int, j: int) -> int:
    """dim H^j(G, Sym^i of the coadjoint), read off Hodge bidegree (i, i + j)."""
    return ht[(i, i + j)]


def pgl_parts(m: int) -> list[int]:
    return [1] + [4 * h for h in range(2, 2 * m + 2)]


def count_partitions(n: int, parts: Iterable[int]) -> int:
    if n < 0:
        return 0
    ways = [1] + [0] * n
    for p in parts:
        for k in range(p, n + 1):
            ways[k] += ways[k - p]
    return ways[n]


def pgl_counting_formula(m: int, i: int, j: int) -> int:
    """Solutions of ``i - j = g + sum 4h b_h`` for ``2 <= h <= 2m+1``."""
    if j < 1:
        raise ValueError("the counting formula is stated for j >= 1")
    if i < j:
        return 0
    return count_partitions(i - j, pgl_parts(m))


def hodge_region_table(ca: ComoduleAlgebra, i_max: int, j_max: int, threads: int = 1) -> CotorTable:
    """Cotor on exactly the cells that land in Hodge bidegrees ``(i, i + j)``, ``i <= i_max``, ``0 <= j <= j_max``.

    A cell ``(s, a, b)`` lands in ``(a, b + s)``, so ``a <= i_max`` and ``s`` runs
    from ``a - b`` to ``a + j_max - b``.
    """
    tc = TwistingCochain(ca.hopf, 2 * i_max + j_max)
    cx = build_twisted_complex(tc, ca, 0, verify=False)
    jobs = []
    for a in range(0, i_max + 1):
        for b in range(0, a + j_max + 1):
            lo, hi = max(0, a - b), a + j_max - b
            if hi >= lo:
                jobs.append((BiDegree(a, b), range(lo, hi + 1)))
    return CotorTable(run_cells(cx, jobs, threads), "twisted", None, None, model=ca.name)


def rep_table(group: str, m: int, i_max: int, j_max: int, threads: int = 1) -> dict[tuple[int, int], int]:
    """``{(i, j): dim H^j(G, Sym^i of the coadjoint)}`` read off the group's Cotor."""
    ht = hodge_table(hodge_region_table(group_model(group, m), i_max, j_max, threads))
    return {(i, j): rep_dims(ht, i, j) for i in range(0, i_max + 1) for j in range(0, j_max + 1)}


def pgl_rep_table(m: int, i_max: int, j_max: int, threads: int = 1) -> dict[tuple[int, int], int]:
    return rep_table("pgl", m, i_max, j_max, threads)


def pso_nonpure_table(m: int, max_total: int) -> dict[tuple[int, int], int]:
    """``{(i, j): dim}`` for ``j >= 1``: the bidegree (i, i+j) part of the SO primitives."""
    ca = so(4 * m + 2)
    out = {}
    for D in ca.algebra.degrees_up_to(max_total):
        if D.b > D.a:
            n = len(primitives(ca, D))
            if n:
                out[(D.a, D.b - D.a)] = n
    return out


def pso_nonpure_consistency(m: int, max_total: int, threads: int = 1) -> Report:
    """The non-pure primitives account for the whole non-pure Cotor^0 of the PSO table."""
    rep = Report("non-pure primitives vs. the PSO table")
    table = pso_nonpure_table(m, max_total)
    ct = cotor_of(f"so:{4 * m + 2}", max_total, threads)
    row0 = {(D.a, D.b - D.a): d for D, d in ct.row(0).items() if D.b > D.a}
    rep.checked += len(set(table) | set(row0))
    if table != row0:
        rep.fail(f"primitives {table} vs cotor row {row0}")
    return rep


__all__ = [
    "MODEL_KINDS",
    "CATALOG_IDS",
    "GROUPS",
    "model",
    "gl",
    "gl_sing",
    "sp",
    "sp_sing",
    "so",
    "o",
    "o2_power",
    "orthogonal",
    "gm",
    "mu2",
    "sing_z2_model",
    "sing_cx_model",
    "self_comodule",
    "trivial",
    "group_model",
    "o2r_pullback",
    "o2r_images",
    "check_o2r_square",
    "check_bj",
    "check_psi",
    "axiom_reports",
    "TargetPresentation",
    "target_presentation",
    "relation_images",
    "check_relations",
    "check_cotor_relations",
    "DegenerationResult",
    "degeneration_check",
    "HodgeTable",
    "hodge_table",
    "rep_dims",
    "pgl_parts",
    "count_partitions",
    "pgl_counting_formula",
    "hodge_region_table",
    "pgl_rep_table",
    "rep_table",
    "parse_poly",
    "KNOWN_LIFTS",
    "pso_nonpure_table",
    "pso_nonpure_consistency",
    "cotor_of",
]
