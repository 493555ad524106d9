"""Splitting a comodule algebra along a distinguished element.

Given ``a#`` with ``d_q(a#) = 1`` and ``d_h(a#) = 0`` for ``h > q``, every
element decomposes uniquely as ``sum_j a#^j b_j`` with ``b_j`` in
``P_q A = {a : d_i(a) = 0 for all i >= q}``. From that splitting come the
star product on ``P_2 A``, the bar generators, the classes ``b_h`` and
``y_I``, and the cohomology of ``d_1`` on ``P_2 A``.
"""
from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations
from typing import Iterable, Mapping, Sequence

from .gf2 import BitMatrix, BitVector, Echelon, kernel_basis, solve
from .hopf import ComoduleAlgebra, Report
from .poly import BiDegree, Degree, Poly, PresentedAlgebra, evaluate


@dataclass(frozen=True)
class SharpElement:
    element: Poly
    q: int

    def __str__(self) -> str:
        return f"{self.element} (q={self.q})"


def index_bound(ca: ComoduleAlgebra, deg: BiDegree) -> int:
    """Largest ``i`` for which ``d_i`` can be nonzero on the given bidegree."""
    return ca.max_index(deg)


def _coords(alg, basis_index: dict, p: Poly) -> int:
    v = 0
    for m in p.terms:
        v ^= 1 << basis_index[m]
    return v


def _is_sharp(ca: ComoduleAlgebra, p: Poly, q: int) -> bool:
    deg = p.degree()
    if deg is None:
        return False
    if ca.d(q, p) != ca.algebra.one():
        return False
    return all(not ca.d(h, p) for h in range(q + 1, index_bound(ca, deg) + 1))


def find_sharp(ca: ComoduleAlgebra, max_q: int = 16) -> SharpElement | None:
    """Search for ``a#`` with the smallest power of two ``q`` first.

    ``d_q(a#) = 1`` forces the bidegree of ``a#`` to be that of the q-th Hopf
    basis monomial. Single generators are tried first, then a linear solve
    over the whole bidegree (free coordinates set to zero).
    """
    alg = ca.algebra
    q = 1
    while q <= max_q:
        deg = ca.hopf.index_degree(q)
        for name in alg.names:
            g = alg.gen(name)
            if alg.mono_degree(alg.var_mono(name)) == deg and _is_sharp(ca, g, q):
                return SharpElement(g, q)
        basis = alg.basis(deg)
        if basis:
            # unknowns: coefficients on the basis; equations: d_q(p) = 1 and
            # d_h(p) = 0 for q < h <= bound, written in the target bases
            rows: list[int] = []
            rhs: list[int] = []
            for h in range(q, index_bound(ca, deg) + 1):
                tgt = alg.basis(deg - ca.hopf.index_degree(h))
                tindex = {m: i for i, m in enumerate(tgt)}
                cols = [_coords(alg, tindex, ca.d(h, Poly(alg, frozenset([m])))) for m in basis]
                for i in range(len(tgt)):
                    row = 0
                    for j, c in enumerate(cols):
                        if (c >> i) & 1:
                            row |= 1 << j
                    rows.append(row)
                    rhs.append(1 if h == q and tgt[i] == alg.unit_mono else 0)
            if rows:
                sol = solve(BitMatrix.from_packed(rows, len(basis)), BitVector.from_list(rhs))
                if sol is not None:
                    p = Poly(alg, frozenset(m for j, m in enumerate(basis) if sol[j]))
                    if _is_sharp(ca, p, q):
                        return SharpElement(p, q)
        q *= 2
    return None


def pq_basis(ca: ComoduleAlgebra, sharp: SharpElement, deg: Degree) -> list[Poly]:
    """Basis of ``P_q A`` in one bidegree: the common kernel of ``d_i`` for ``i >= q``."""
    alg = ca.algebra
    if isinstance(deg, int):
        out: list[Poly] = []
        for d in alg.degrees_up_to(deg):
            if d.total == deg:
                out.extend(pq_basis(ca, sharp, d))
        return out
    basis = alg.basis(deg)
    if not basis:
        return []
    rows: list[int] = []
    for h in range(sharp.q, index_bound(ca, deg) + 1):
        tgt = alg.basis(deg - ca.hopf.index_degree(h))
        if not tgt:
            continue
        tindex = {m: i for i, m in enumerate(tgt)}
        cols = [_coords(alg, tindex, ca.d(h, Poly(alg, frozenset([m])))) for m in basis]
        for i in range(len(tgt)):
            row = 0
            for j, c in enumerate(cols):
                if (c >> i) & 1:
                    row |= 1 << j
            if row:
                rows.append(row)
    mat = BitMatrix.from_packed(rows, len(basis))
    return [Poly(alg, frozenset(basis[j] for j in range(len(basis)) if v[j])) for v in kernel_basis(mat)]


def in_pq(ca: ComoduleAlgebra, sharp: SharpElement, a: Poly) -> bool:
    top = ca.d_top(a)
    return top < sharp.q


def decompose(ca: ComoduleAlgebra, sharp: SharpElement, a: Poly) -> dict[int, Poly]:
    """Write ``a = sum_j a#^j b_j`` with every ``b_j`` in ``P_q A``; returns ``{j: b_j}``.

    Each step takes the largest ``h`` with ``d_h(rem) != 0``, writes
    ``h = q j + h'`` with ``0 <= h' < q`` and peels ``a#^j d_{qj}(rem)``.
    """
    if a and a.degree() is None:
        raise ValueError("canonical decomposition needs a bihomogeneous element")
    q = sharp.q
    parts: dict[int, Poly] = {}
    rem = a
    # the top index strictly decreases, so this many steps always suffice
    for _ in range(4 * (a.alg.mono_total(next(iter(a.terms))) if a else 0) + 2):
        h = ca.d_top(rem)
        j = h // q if h >= 0 else 0
        if j == 0:
            if rem:
                parts[0] = rem
            return parts
        b = ca.d(q * j, rem)
        parts[j] = parts.get(j, a.alg.zero()) + b
        rem = rem + sharp.element ** j * b
    raise RuntimeError("peeling did not terminate")


def canonical_lift(ca: ComoduleAlgebra, sharp: SharpElement, a: Poly) -> Poly:
    """The ``j = 0`` part of the canonical decomposition; congruent to ``a`` mod ``(a#)``."""
    return decompose(ca, sharp, a).get(0, ca.algebra.zero())


def _check_p2(ca: ComoduleAlgebra, sharp: SharpElement, *elts: Poly) -> None:
    if sharp.q != 2:
        raise ValueError("the star product needs q = 2")
    for e in elts:
        if not in_pq(ca, sharp, e):
            raise ValueError(f"{e} is not in P_2 A")


def star(ca: ComoduleAlgebra, sharp: SharpElement, a: Poly, b: Poly) -> Poly:
    """Product on ``P_2 A`` transported from ``A/(a#)``.

    Over Lambda1 this is ``ab + d_1(a) d_1(b) a#``; over Lambda2 ``P_2 A`` is
    already a subring and the product is ``ab``.
    """
    _check_p2(ca, sharp, a, b)
    if ca.hopf.flavor == "lambda2":
        return a * b
    return a * b + ca.d(1, a) * ca.d(1, b) * sharp.element


def star_product(ca: ComoduleAlgebra, sharp: SharpElement, factors: Sequence[Poly]) -> Poly:
    out = ca.algebra.one()
    for f in factors:
        out = star(ca, sharp, out, f)
    return out


def star_by_lift(ca: ComoduleAlgebra, sharp: SharpElement, a: Poly, b: Poly) -> Poly:
    """The star product straight from its definition: lift ``ab`` back into ``P_q A``."""
    return canonical_lift(ca, sharp, a * b)


# bar generators


@dataclass
class BarGenerators:
    """Canonical lifts of the generators, keyed by generator name."""

    lifts: dict[str, Poly]
    even: dict[int, str]
    sharp: SharpElement

    def __getitem__(self, name: str) -> Poly:
        return self.lifts[name]

    def even_lift(self, i: int) -> Poly:
        """The lift of the generator paired with index ``i`` (``c_{2i}`` or ``u_{2i}``)."""
        return self.lifts[self.even[i]]


def _index_of(name: str) -> int:
    digits = "".join(ch for ch in name if ch.isdigit())
    return int(digits) if digits else 0


def bar_generators(ca: ComoduleAlgebra, sharp: SharpElement) -> BarGenerators:
    """Lift every generator into ``P_2 A``.

    Even-indexed generators get their canonical lift. An odd generator
    whose even successor exists is defined as ``d_1`` of that successor's
    lift; this is what makes ``d_1(lift of v_{2j}) = lift of v_{2j-1}``
    hold. Other odd generators get their canonical lift. ``a#`` maps to itself.
    """
    alg = ca.algebra
    by_index = {_index_of(n): n for n in alg.names}
    lifts: dict[str, Poly] = {}
    for name in alg.names:
        k = _index_of(name)
        g = alg.gen(name)
        if g == sharp.element:
            lifts[name] = g
        elif k % 2 == 0:
            lifts[name] = canonical_lift(ca, sharp, g)
    for name in alg.names:
        if name in lifts:
            continue
        k = _index_of(name)
        succ = by_index.get(k + 1)
        if succ is not None and succ in lifts:
            lifts[name] = ca.d(1, lifts[succ])
        else:
            lifts[name] = canonical_lift(ca, sharp, alg.gen(name))
    even = {k // 2: n for k, n in by_index.items() if k % 2 == 0 and k > 0}
    return BarGenerators({n: lifts[n] for n in alg.names}, even, sharp)


def in_sharp_ideal(ca: ComoduleAlgebra, sharp: SharpElement, p: Poly) -> bool:
    """``p`` lies in ``(a#)`` exactly when its canonical decomposition has no ``j = 0`` part."""
    return not p or not canonical_lift(ca, sharp, p)


def check_bar_generators(ca: ComoduleAlgebra, sharp: SharpElement, bar: BarGenerators) -> Report:
    """Even lifts are congruent to their generator mod ``(a#)``, all lifts lie in
    ``P_2 A``, and ``d_1`` carries the lift of ``v_{2j}`` to the lift of ``v_{2j-1}``."""
    rep = Report(f"bar generators of {ca.name}")
    alg = ca.algebra
    by_index = {_index_of(n): n for n in alg.names}
    for name in alg.names:
        if alg.gen(name) == sharp.element:
            rep.checked += 1
            if bar[name] != sharp.element:
                rep.fail(f"{name} should be its own lift")
            continue
        lift = bar[name]
        k = _index_of(name)
        rep.checked += 1
        if not in_pq(ca, sharp, lift):
            rep.fail(f"lift of {name} is not in P_{sharp.q} A")
        if k % 2 == 0:
            # odd lifts are defined through d_1 and need not be congruent
            rep.checked += 1
            if not in_sharp_ideal(ca, sharp, lift + alg.gen(name)):
                rep.fail(f"lift of {name} is not congruent to {name} mod (a#)")
        if k % 2 == 0 and k - 1 in by_index:
            rep.checked += 1
            if ca.d(1, lift) != bar[by_index[k - 1]]:
                rep.fail(f"d_1 of the lift of {name} is not the lift of {by_index[k - 1]}")
    return rep


def check_d1_squared(ca: ComoduleAlgebra, sharp: SharpElement, max_total: int) -> Report:
    rep = Report(f"d_1 squares to zero on P_{sharp.q} A of {ca.name}")
    for d in range(max_total + 1):
        for p in pq_basis(ca, sharp, d):
            rep.checked += 1
            if ca.d(1, ca.d(1, p)):
                rep.fail(f"d_1 d_1 ({p}) is nonzero")
    return rep


def build_b(ca: ComoduleAlgebra, sharp: SharpElement, bar: BarGenerators, h: int) -> Poly:
    """``b_h = e * e + d_1(a#) e d_1(e)`` with ``e`` the lift of the ``2h``-th generator.

    For GL this is ``c_{2h} * c_{2h} + c_1 c_{2h} c_{2h-1}`` (bars implied); for SO
    ``d_1(u_2) = 0`` and it is the square.
    """
    if h not in bar.even or h < 2:
        raise ValueError(f"b_{h} is out of range")
    e = bar.even_lift(h)
    return star(ca, sharp, e, e) + ca.d(1, sharp.element) * e * ca.d(1, e)


def build_y(ca: ComoduleAlgebra, sharp: SharpElement, bar: BarGenerators, I: Iterable[int]) -> Poly:
    """``y_I = d_1`` of the star product of the even lifts indexed by ``I`` (a multiset)."""
    I = list(I)
    for i in I:
        if i not in bar.even or i < 2:
            raise ValueError(f"index {i} is out of range")
    if not I:
        return ca.algebra.zero()
    return ca.d(1, star_product(ca, sharp, [bar.even_lift(i) for i in I]))


def d1_cohomology(ca: ComoduleAlgebra, sharp: SharpElement, max_total: int) -> list[int]:
    """Total-degree dimensions of ``H(P_2 A, d_1)`` up to ``max_total``."""
    if sharp.q != 2:
        raise ValueError("d_1 cohomology is taken on P_2 A")
    alg = ca.algebra
    shift = ca.hopf.index_degree(1)
    out = [0] * (max_total + 1)
    rank_cache: dict[BiDegree, int] = {}

    def d1_rank(deg: BiDegree) -> int:
        if deg not in rank_cache:
            ech = Echelon()
            tgt = alg.basis(deg - shift)
            tindex = {m: i for i, m in enumerate(tgt)}
            for p in pq_basis(ca, sharp, deg):
                ech.add(_coords(alg, tindex, ca.d(1, p)))
            rank_cache[deg] = ech.rank
        return rank_cache[deg]

    for deg in alg.degrees_up_to(max_total):
        n = len(pq_basis(ca, sharp, deg))
        if n:
            out[deg.total] += n - d1_rank(deg) - d1_rank(deg + shift)
    return out


def verify_relations(
    ca: ComoduleAlgebra, images: Mapping[str, Poly], relations: Iterable[tuple[str, Poly]], name: str = "relations"
) -> Report:
    """Substitute generator images into each relation and require the zero polynomial."""
    rep = Report(name)
    for label, rel in relations:
        rep.checked += 1
        residue = evaluate(rel, images, ca.algebra)
        if residue:
            rep.fail(f"{label}: residue {residue}")
    return rep


def is_primitive_report(ca: ComoduleAlgebra, elements: Mapping[str, Poly], name: str = "primitivity") -> Report:
    rep = Report(name)
    for label, p in elements.items():
        rep.checked += 1
        if not ca.is_primitive(p):
            rep.fail(f"{label} is not primitive")
    return rep


def index_sets(m: int) -> list[tuple[int, ...]]:
    """Nonempty ``I = {1 < i_1 < ... < i_r <= 2m+1}`` in a fixed order."""
    pool = range(2, 2 * m + 2)
    return [I for r in range(1, len(pool) + 1) for I in combinations(pool, r)]


def check_split(ca: ComoduleAlgebra, sharp: SharpElement, max_total: int) -> Report:
    """``dim A(d) = sum_j dim P_q A(d - j |a#|)`` in every bidegree up to ``max_total``."""
    rep = Report("additive splitting A = F2[a#] (x) P_q A")
    alg = ca.algebra
    step = sharp.element.degree()
    dims = {d: len(pq_basis(ca, sharp, d)) for d in alg.degrees_up_to(max_total)}
    for d in alg.degrees_up_to(max_total):
        rep.checked += 1
        total = 0
        cur = d
        while cur.a >= 0 and cur.b >= 0:
            total += dims.get(cur, 0)
            cur = cur - step
        if total != len(alg.basis(d)):
            rep.fail(f"bidegree {d}: {total} from the splitting, {len(alg.basis(d))} in A")
    return rep


__all__ = [
    "SharpElement",
    "BarGenerators",
    "find_sharp",
    "pq_basis",
    "decompose",
    "canonical_lift",
    "star",
    "star_product",
    "star_by_lift",
    "bar_generators",
    "build_b",
    "build_y",
    "d1_cohomology",
    "verify_relations",
    "index_sets",
    "check_split",
    "check_bar_generators",
    "check_d1_squared",
    "in_sharp_ideal",
    "in_pq",
    "PresentedAlgebra",
]
