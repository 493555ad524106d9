"""Hopf algebra descriptors, comodule algebras and the coefficient operators d_i.

Everything is stored on generators and extended multiplicatively. Tensors
are handled as sets of monomial tuples; :class:`~cotorkit.poly.Poly`
wrappers over the tensor algebra (the disjoint union of the variables) are
offered for the public API.
"""
from __future__ import annotations

import threading
from dataclasses import dataclass, field
from math import comb
from typing import Callable, Iterable, Mapping

from .gf2 import BitMatrix, kernel_basis
from .poly import BiDegree, Degree, GradedVariable, Monomial, Poly, PolyAlgebra

FLAVORS = ("lambda1", "lambda2", "sing_z2", "sing_gm")

PairSet = frozenset  # frozenset of (left monomial, right monomial)


def toggle(s: set, x) -> None:
    if x in s:
        s.remove(x)
    else:
        s.add(x)


def mul_pairs(left: PolyAlgebra, right: PolyAlgebra, p: Iterable, q: Iterable) -> set:
    """Multiply two elements of ``left (x) right`` given as sets of pairs."""
    lmul, rmul = left.mul_mono, right.mul_mono
    out: set = set()
    q = list(q)
    for l1, r1 in p:
        for l2, r2 in q:
            l = lmul(l1, l2)
            if l is None:
                continue
            r = rmul(r1, r2)
            if r is not None:
                toggle(out, (l, r))
    return out


def split_poly(p: Poly, nleft: int) -> set:
    """Turn a Poly over a tensor algebra into a set of (left, right) pairs."""
    return {(m[:nleft], m[nleft:]) for m in p.terms}


def join_pairs(alg: PolyAlgebra, pairs: Iterable) -> Poly:
    return Poly(alg, frozenset(l + r for l, r in pairs))


@dataclass
class Report:
    """Outcome of a verification: which property, how much was checked, what failed."""

    name: str
    checked: int = 0
    failures: list[str] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.failures

    def __bool__(self) -> bool:
        return self.ok

    def fail(self, msg: str) -> None:
        self.failures.append(msg)

    def merge(self, other: "Report") -> "Report":
        self.checked += other.checked
        self.failures.extend(f"{other.name}: {f}" for f in other.failures)
        return self

    def summary(self) -> str:
        status = "pass" if self.ok else f"FAIL ({len(self.failures)})"
        return f"{self.name}: {status}, {self.checked} checks"


class HopfDescriptor:
    """A bigraded Hopf algebra given by generators and their comultiplication.

    ``coproduct`` maps each generator name to a set of (left, right)
    monomial pairs and ``counit`` maps it to 0 or 1.
    """

    def __init__(
        self,
        flavor: str,
        algebra: PolyAlgebra,
        coproduct: Mapping[str, Iterable],
        counit: Mapping[str, int] | None = None,
    ):
        if flavor not in FLAVORS:
            raise ValueError(f"unknown flavor {flavor!r}")
        expected = 2 if flavor == "lambda2" else 1
        if algebra.nvars != expected:
            raise ValueError(f"{flavor} needs {expected} generator(s)")
        self.flavor = flavor
        self.algebra = algebra
        self.coproduct = {name: frozenset(coproduct[name]) for name in algebra.names}
        self.counit = {name: int((counit or {}).get(name, 0)) & 1 for name in algebra.names}
        self._cache: dict[Monomial, frozenset] = {algebra.unit_mono: frozenset([(algebra.unit_mono, algebra.unit_mono)])}
        self._lock = threading.Lock()

    def __repr__(self) -> str:
        return f"HopfDescriptor({self.flavor}, {', '.join(self.algebra.names)})"

    @property
    def doubled(self) -> PolyAlgebra:
        return self.algebra.tensor(self.algebra.renamed("'"))

    def coproduct_mono(self, m: Monomial) -> frozenset:
        hit = self._cache.get(m)
        if hit is not None:
            return hit
        i = next(k for k, e in enumerate(m) if e)
        rest = m[:i] + (m[i] - 1,) + m[i + 1:]
        gen = self.coproduct[self.algebra.names[i]]
        value = frozenset(mul_pairs(self.algebra, self.algebra, self.coproduct_mono(rest), gen))
        with self._lock:
            self._cache[m] = value
        return value

    def reduced_coproduct_mono(self, m: Monomial) -> list:
        """Terms of the coproduct with neither factor equal to 1."""
        one = self.algebra.unit_mono
        return [(l, r) for l, r in self.coproduct_mono(m) if l != one and r != one]

    def counit_mono(self, m: Monomial) -> int:
        v = 1
        for name, e in zip(self.algebra.names, m):
            if e:
                v &= self.counit[name]
        return v

    def comultiply(self, p: Poly) -> Poly:
        """The coproduct as a Poly over the doubled algebra."""
        pairs: set = set()
        for m in p.terms:
            for t in self.coproduct_mono(m):
                toggle(pairs, t)
        return join_pairs(self.doubled, pairs)

    # d-operator indexing: basis monomial <-> integer index

    def basis_index(self, m: Monomial) -> int:
        if self.flavor == "lambda2":
            return 2 * m[1] + m[0]
        return m[0]

    def index_mono(self, i: int) -> Monomial | None:
        if i < 0:
            return None
        if self.flavor == "lambda2":
            return (i & 1, i >> 1)
        return (i,)

    def index_degree(self, i: int) -> BiDegree:
        return self.algebra.mono_degree(self.index_mono(i))

    def basis_up_to(self, max_total: int) -> list[Monomial]:
        out = []
        for d in range(max_total + 1):
            out.extend(self.algebra.basis(d))
        return out


def primitive_descriptor(flavor: str, algebra: PolyAlgebra) -> HopfDescriptor:
    """Every generator primitive: ``g -> g (x) 1 + 1 (x) g``."""
    one = algebra.unit_mono
    cop = {n: [(algebra.var_mono(n), one), (one, algebra.var_mono(n))] for n in algebra.names}
    return HopfDescriptor(flavor, algebra, cop)


def lambda1() -> HopfDescriptor:
    """F2[x2] with x2 primitive in bidegree (1,1)."""
    return primitive_descriptor("lambda1", PolyAlgebra([GradedVariable("x2", BiDegree(1, 1))]))


def lambda2() -> HopfDescriptor:
    """F2[x1,x2]/(x1^2) with both generators primitive, |x1| = (1,0), |x2| = (1,1)."""
    alg = PolyAlgebra([GradedVariable("x1", BiDegree(1, 0), 1), GradedVariable("x2", BiDegree(1, 1))])
    return primitive_descriptor("lambda2", alg)


def sing_z2() -> HopfDescriptor:
    """F2[z] with z primitive of degree 1 (single grading stored as (0, d))."""
    return primitive_descriptor("sing_z2", PolyAlgebra([GradedVariable("z", BiDegree(0, 1))]))


def sing_gm() -> HopfDescriptor:
    """F2[x] with x primitive of degree 2 (single grading stored as (0, d))."""
    return primitive_descriptor("sing_gm", PolyAlgebra([GradedVariable("x", BiDegree(0, 2))]))


HOPF_BY_FLAVOR: dict[str, Callable[[], HopfDescriptor]] = {
    "lambda1": lambda1,
    "lambda2": lambda2,
    "sing_z2": sing_z2,
    "sing_gm": sing_gm,
}


class ComoduleAlgebra:
    """A polynomial algebra with a left coaction of a Hopf descriptor.

    ``coaction`` maps each generator of ``algebra`` to a set of
    (Hopf monomial, algebra monomial) pairs.
    """

    def __init__(self, hopf: HopfDescriptor, algebra: PolyAlgebra, coaction: Mapping[str, Iterable], name: str = ""):
        clash = set(hopf.algebra.names) & set(algebra.names)
        if clash:
            raise ValueError(f"variable names shared with the Hopf algebra: {sorted(clash)}")
        missing = [n for n in algebra.names if n not in coaction]
        if missing:
            raise ValueError(f"no coaction given for {missing}")
        self.hopf = hopf
        self.algebra = algebra
        self.name = name
        self.coaction_on_generators = {n: frozenset(coaction[n]) for n in algebra.names}
        self.tensor_algebra = hopf.algebra.tensor(algebra)
        one = (hopf.algebra.unit_mono, algebra.unit_mono)
        self._cache: dict[Monomial, frozenset] = {algebra.unit_mono: frozenset([one])}
        self._dcache: dict[Monomial, dict[int, frozenset]] = {}
        self._lock = threading.Lock()

    @classmethod
    def from_polys(cls, hopf: HopfDescriptor, algebra: PolyAlgebra, images: Mapping[str, Poly], name: str = "") -> "ComoduleAlgebra":
        k = hopf.algebra.nvars
        return cls(hopf, algebra, {n: split_poly(p, k) for n, p in images.items()}, name)

    def __repr__(self) -> str:
        return f"ComoduleAlgebra({self.name or ', '.join(self.algebra.names)} over {self.hopf.flavor})"

    def coaction_mono(self, m: Monomial) -> frozenset:
        hit = self._cache.get(m)
        if hit is not None:
            return hit
        i = next(k for k, e in enumerate(m) if e)
        rest = m[:i] + (m[i] - 1,) + m[i + 1:]
        gen = self.coaction_on_generators[self.algebra.names[i]]
        value = frozenset(mul_pairs(self.hopf.algebra, self.algebra, self.coaction_mono(rest), gen))
        with self._lock:
            self._cache[m] = value
        return value

    def coaction_pairs(self, p: Poly) -> set:
        if p.alg != self.algebra:
            raise ValueError("element is not in this comodule algebra")
        out: set = set()
        for m in p.terms:
            for t in self.coaction_mono(m):
                toggle(out, t)
        return out

    def coaction(self, p: Poly) -> Poly:
        return join_pairs(self.tensor_algebra, self.coaction_pairs(p))

    def d_table(self, m: Monomial) -> dict[int, frozenset]:
        """``{i: d_i(m)}`` for every index with a nonzero value."""
        hit = self._dcache.get(m)
        if hit is not None:
            return hit
        table: dict[int, set] = {}
        idx = self.hopf.basis_index
        for lam, a in self.coaction_mono(m):
            toggle(table.setdefault(idx(lam), set()), a)
        value = {i: frozenset(s) for i, s in table.items() if s}
        with self._lock:
            self._dcache[m] = value
        return value

    def d(self, i: int, p: Poly) -> Poly:
        out: set = set()
        for m in p.terms:
            for a in self.d_table(m).get(i, ()):
                toggle(out, a)
        return Poly(self.algebra, frozenset(out))

    def d_top(self, p: Poly) -> int:
        """Largest index ``h`` with ``d_h(p)`` nonzero (-1 for p = 0)."""
        best = -1
        for h in sorted({i for m in p.terms for i in self.d_table(m)}, reverse=True):
            if h <= best:
                break
            if self.d(h, p):
                best = h
                break
        return best

    def max_index(self, deg: BiDegree) -> int:
        """Largest index whose Hopf basis monomial fits inside ``deg``."""
        i = 0
        best = 0
        while True:
            d = self.hopf.index_degree(i)
            if d.total > deg.total:
                return best
            if d.fits_in(deg):
                best = i
            i += 1

    def is_primitive(self, p: Poly) -> bool:
        one = self.hopf.algebra.unit_mono
        return self.coaction_pairs(p) == {(one, m) for m in p.terms}


class DOperatorFamily:
    """The operators d_i of a comodule algebra, indexed by the Hopf basis."""

    def __init__(self, source: ComoduleAlgebra):
        self.source = source
        self.indexing = "Lambda2" if source.hopf.flavor == "lambda2" else "Lambda1"

    def __call__(self, i: int, p: Poly) -> Poly:
        return self.source.d(i, p)


def coaction(ca: ComoduleAlgebra, p: Poly) -> Poly:
    return ca.coaction(p)


def d_op(fam: DOperatorFamily | ComoduleAlgebra, i: int, p: Poly) -> Poly:
    src = fam.source if isinstance(fam, DOperatorFamily) else fam
    return src.d(i, p)


# linear maps between algebras, given on monomials

LinearMap = Callable[[Monomial], frozenset]


def algebra_hom(src: PolyAlgebra, dst: PolyAlgebra, images: Mapping[str, Poly]) -> LinearMap:
    """The multiplicative map determined by the images of the generators."""
    cache: dict[Monomial, frozenset] = {src.unit_mono: frozenset([dst.unit_mono])}
    gens = [images[n] for n in src.names]

    def f(m: Monomial) -> frozenset:
        hit = cache.get(m)
        if hit is not None:
            return hit
        i = next(k for k, e in enumerate(m) if e)
        rest = m[:i] + (m[i] - 1,) + m[i + 1:]
        value = (Poly(dst, f(rest)) * gens[i]).terms
        cache[m] = value
        return value

    return f


def apply_linear(f: LinearMap, p: Poly, dst: PolyAlgebra) -> Poly:
    out: set = set()
    for m in p.terms:
        for t in f(m):
            toggle(out, t)
    return Poly(dst, frozenset(out))


# checkers


def check_hopf_axioms(h: HopfDescriptor, max_total: int, primitive: bool = True) -> Report:
    """Coassociativity, counit laws and (optionally) primitivity of generators."""
    rep = Report(f"hopf axioms ({h.flavor})")
    alg = h.algebra
    one = alg.unit_mono
    for m in h.basis_up_to(max_total):
        cop = h.coproduct_mono(m)
        left: set = set()
        right: set = set()
        for l, r in cop:
            for l1, l2 in h.coproduct_mono(l):
                toggle(left, (l1, l2, r))
            for r1, r2 in h.coproduct_mono(r):
                toggle(right, (l, r1, r2))
        rep.checked += 1
        if left != right:
            rep.fail(f"coassociativity fails on {alg.mono_str(m)}")
        lc: set = set()
        rc: set = set()
        for l, r in cop:
            if h.counit_mono(l):
                toggle(lc, r)
            if h.counit_mono(r):
                toggle(rc, l)
        if lc != {m} or rc != {m}:
            rep.fail(f"counit law fails on {alg.mono_str(m)}")
        for l, r in cop:
            if alg.mono_degree(l) + alg.mono_degree(r) != alg.mono_degree(m):
                rep.fail(f"coproduct of {alg.mono_str(m)} is not degree preserving")
                break
    if primitive:
        for n in alg.names:
            g = alg.var_mono(n)
            rep.checked += 1
            if h.coproduct[n] != frozenset([(g, one), (one, g)]):
                rep.fail(f"generator {n} is not primitive")
    return rep


def check_comodule_axioms(ca: ComoduleAlgebra, max_total: int) -> Report:
    """Coassociativity, counit law and degree preservation on all monomials of
    total degree at most ``max_total``, plus the binomial composition rule
    ``d_i d_j = C(i+j, i) d_{i+j}`` on generators as a cross-check."""
    rep = Report(f"comodule axioms ({ca.name or 'custom'})")
    h, alg = ca.hopf, ca.algebra
    for d in range(max_total + 1):
        for m in alg.basis(d):
            phi = ca.coaction_mono(m)
            rep.checked += 1
            left: set = set()
            right: set = set()
            for lam, a in phi:
                for l1, l2 in h.coproduct_mono(lam):
                    toggle(left, (l1, l2, a))
                for l2, a2 in ca.coaction_mono(a):
                    toggle(right, (lam, l2, a2))
            if left != right:
                rep.fail(f"coassociativity fails on {alg.mono_str(m)}")
            counit = {a for lam, a in phi if h.counit_mono(lam)}
            if counit != {m}:
                rep.fail(f"counit law fails on {alg.mono_str(m)}")
            deg = alg.mono_degree(m)
            if any(h.algebra.mono_degree(lam) + alg.mono_degree(a) != deg for lam, a in phi):
                rep.fail(f"coaction of {alg.mono_str(m)} is not degree preserving")
    for n in alg.names:
        g = alg.gen(n)
        top = ca.max_index(alg.mono_degree(alg.var_mono(n)))
        for i in range(1, top + 1):
            for j in range(1, top + 1 - i):
                rep.checked += 1
                lhs = ca.d(i, ca.d(j, g))
                rhs = ca.d(i + j, g) if comb(i + j, i) & 1 else alg.zero()
                if lhs != rhs:
                    rep.fail(f"d_{i} d_{j} != C({i + j},{i}) d_{i + j} on {n}")
    return rep


def check_comodule_map(
    f: LinearMap,
    src: ComoduleAlgebra,
    dst: ComoduleAlgebra,
    g: LinearMap,
    max_total: int,
) -> Report:
    """Check ``(g (x) f) o phi_src = phi_dst o f`` on all monomials up to ``max_total``."""
    rep = Report(f"comodule map {src.name or 'src'} -> {dst.name or 'dst'}")
    for d in range(max_total + 1):
        for m in src.algebra.basis(d):
            rep.checked += 1
            lhs: set = set()
            for lam, a in src.coaction_mono(m):
                glam = g(lam)
                if not glam:
                    continue
                fa = f(a)
                for l2 in glam:
                    for a2 in fa:
                        toggle(lhs, (l2, a2))
            rhs: set = set()
            for a in f(m):
                for t in dst.coaction_mono(a):
                    toggle(rhs, t)
            if lhs != rhs:
                rep.fail(f"square does not commute on {src.algebra.mono_str(m)}")
    return rep


def primitives(ca: ComoduleAlgebra, deg: Degree) -> list[Poly]:
    """Basis of the primitive elements in one degree."""
    basis = ca.algebra.basis(deg)
    if not basis:
        return []
    one = ca.hopf.algebra.unit_mono
    index: dict = {}
    cols = []
    for m in basis:
        v = 0
        for t in ca.coaction_mono(m):
            if t == (one, m):
                continue
            j = index.setdefault(t, len(index))
            v ^= 1 << j
        cols.append(v)
    mat = BitMatrix.from_columns(cols, len(index))
    out = []
    for vec in kernel_basis(mat):
        out.append(Poly(ca.algebra, frozenset(basis[j] for j in range(len(basis)) if vec[j])))
    return out
