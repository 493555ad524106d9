"""Bigraded polynomial algebras over GF(2) with optional exponent caps.

A monomial is a tuple of exponents in variable declaration order. A
polynomial is a frozenset of monomials: the coefficient of a monomial is 1
exactly when it is present, so adding a monomial twice removes it.
"""
from __future__ import annotations

import threading
from dataclasses import dataclass
from typing import Iterable, Mapping, Sequence, Union

from .gf2 import Echelon

Monomial = tuple


@dataclass(frozen=True, order=True)
class BiDegree:
    a: int
    b: int

    def __add__(self, other: "BiDegree") -> "BiDegree":
        return BiDegree(self.a + other.a, self.b + other.b)

    def __sub__(self, other: "BiDegree") -> "BiDegree":
        return BiDegree(self.a - other.a, self.b - other.b)

    def __mul__(self, k: int) -> "BiDegree":
        return BiDegree(self.a * k, self.b * k)

    __rmul__ = __mul__

    @property
    def total(self) -> int:
        return self.a + self.b

    @property
    def is_pure(self) -> bool:
        return self.a == self.b

    def fits_in(self, other: "BiDegree") -> bool:
        """Componentwise ``self <= other``."""
        return self.a <= other.a and self.b <= other.b

    def __str__(self) -> str:
        return f"({self.a},{self.b})"


ZERO = BiDegree(0, 0)

Degree = Union[BiDegree, int]


@dataclass(frozen=True)
class GradedVariable:
    name: str
    degree: BiDegree
    cap: int | None = None

    def __post_init__(self):
        if self.cap is not None and self.cap < 1:
            raise ValueError(f"cap of {self.name} must be at least 1")


class PolyAlgebra:
    """The polynomial algebra on a list of graded variables (with caps)."""

    def __init__(self, variables: Sequence[GradedVariable]):
        self.variables = tuple(variables)
        names = [v.name for v in self.variables]
        if len(set(names)) != len(names):
            raise ValueError("variable names must be unique")
        self.names = tuple(names)
        self.index = {n: i for i, n in enumerate(names)}
        self.degrees = tuple(v.degree for v in self.variables)
        self.caps = tuple(v.cap for v in self.variables)
        self._capped = any(c is not None for c in self.caps)
        self.nvars = len(self.variables)
        self.unit_mono: Monomial = (0,) * self.nvars
        self._by_degree: dict[BiDegree, list[Monomial]] = {}
        self._filled_total = -1
        self._lock = threading.Lock()

    def __repr__(self) -> str:
        return f"PolyAlgebra({', '.join(self.names)})"

    def __eq__(self, other) -> bool:
        return isinstance(other, PolyAlgebra) and self.variables == other.variables

    def __hash__(self) -> int:
        return hash(self.variables)

    # monomial arithmetic

    def mono_degree(self, m: Monomial) -> BiDegree:
        a = b = 0
        for e, d in zip(m, self.degrees):
            if e:
                a += e * d.a
                b += e * d.b
        return BiDegree(a, b)

    def mono_total(self, m: Monomial) -> int:
        return self.mono_degree(m).total

    def mul_mono(self, m1: Monomial, m2: Monomial) -> Monomial | None:
        """Product of two monomials, or None if a cap is exceeded."""
        e = tuple(x + y for x, y in zip(m1, m2))
        if self._capped:
            for x, c in zip(e, self.caps):
                if c is not None and x > c:
                    return None
        return e

    def mono_valid(self, m: Monomial) -> bool:
        if len(m) != self.nvars or any(e < 0 for e in m):
            return False
        return all(c is None or e <= c for e, c in zip(m, self.caps))

    def var_mono(self, name: str, exp: int = 1) -> Monomial:
        if name not in self.index:
            raise KeyError(f"unknown variable {name!r}")
        m = [0] * self.nvars
        m[self.index[name]] = exp
        return tuple(m)

    def mono_str(self, m: Monomial) -> str:
        parts = []
        for n, e in zip(self.names, m):
            if e == 1:
                parts.append(n)
            elif e > 1:
                parts.append(f"{n}^{e}")
        return "*".join(parts) if parts else "1"

    def mono_pairs(self, m: Monomial) -> list[list]:
        """Monomial as a list of ``[variable, exponent]`` pairs sorted by name."""
        return sorted([n, e] for n, e in zip(self.names, m) if e)

    def mono_from_pairs(self, pairs: Iterable[Sequence]) -> Monomial:
        m = [0] * self.nvars
        for name, e in pairs:
            if name not in self.index:
                raise KeyError(f"unknown variable {name!r}")
            m[self.index[name]] += int(e)
        m = tuple(m)
        if not self.mono_valid(m):
            raise ValueError(f"monomial {pairs!r} violates a cap")
        return m

    # elements

    def poly(self, monos: Iterable[Monomial] = ()) -> "Poly":
        """Build a polynomial, cancelling repeated monomials in pairs."""
        terms: set = set()
        for m in monos:
            if m in terms:
                terms.remove(m)
            else:
                terms.add(m)
        return Poly(self, frozenset(terms))

    def zero(self) -> "Poly":
        return Poly(self, frozenset())

    def one(self) -> "Poly":
        return Poly(self, frozenset([self.unit_mono]))

    def gen(self, name: str) -> "Poly":
        return Poly(self, frozenset([self.var_mono(name)]))

    def gens(self) -> list["Poly"]:
        return [self.gen(n) for n in self.names]

    def __getitem__(self, name: str) -> "Poly":
        return self.gen(name)

    # bases

    def _fill(self, max_total: int) -> None:
        """Enumerate every monomial of total degree at most ``max_total``."""
        with self._lock:
            if max_total > self._filled_total:
                self._fill_locked(max_total)

    def _fill_locked(self, max_total: int) -> None:
        totals = [d.total for d in self.degrees]
        if any(t <= 0 for t in totals):
            raise ValueError("basis enumeration needs positive total degrees")
        by_degree: dict[BiDegree, list[Monomial]] = {}
        n = self.nvars
        exps = [0] * n

        def rec(i: int, remaining: int) -> None:
            if i == n:
                m = tuple(exps)
                by_degree.setdefault(self.mono_degree(m), []).append(m)
                return
            limit = remaining // totals[i]
            cap = self.caps[i]
            if cap is not None:
                limit = min(limit, cap)
            for e in range(limit + 1):
                exps[i] = e
                rec(i + 1, remaining - e * totals[i])
            exps[i] = 0

        rec(0, max_total)
        for d, monos in by_degree.items():
            # graded lexicographic: within a degree, larger exponents of
            # earlier variables come first
            monos.sort(reverse=True)
        self._by_degree = by_degree
        self._filled_total = max_total

    def basis(self, deg: Degree) -> list[Monomial]:
        """Monomials of a bidegree (or of a total degree, if ``deg`` is an int)."""
        if isinstance(deg, int):
            if deg < 0:
                return []
            self._fill(deg)
            out = []
            for d in sorted(self._by_degree, reverse=True):
                if d.total == deg:
                    out.extend(self._by_degree[d])
            return out
        if deg.a < 0 or deg.b < 0:
            # variables may have a zero component but never a negative one
            if all(d.a >= 0 and d.b >= 0 for d in self.degrees):
                return []
        if deg.total < 0:
            return []
        self._fill(deg.total)
        return list(self._by_degree.get(deg, []))

    def degrees_up_to(self, max_total: int) -> list[BiDegree]:
        """All bidegrees of total at most ``max_total`` carrying a monomial."""
        self._fill(max_total)
        return sorted(d for d in self._by_degree if d.total <= max_total)

    def tensor(self, other: "PolyAlgebra") -> "PolyAlgebra":
        """The algebra on the disjoint union of both variable lists."""
        return PolyAlgebra(self.variables + other.variables)

    def renamed(self, suffix: str) -> "PolyAlgebra":
        return PolyAlgebra([GradedVariable(v.name + suffix, v.degree, v.cap) for v in self.variables])


class Poly:
    """An element of a :class:`PolyAlgebra`."""

    __slots__ = ("alg", "terms")

    def __init__(self, alg: PolyAlgebra, terms: frozenset):
        self.alg = alg
        self.terms = terms

    def _check(self, other: "Poly") -> None:
        if not isinstance(other, Poly):
            raise TypeError(f"cannot combine Poly with {type(other).__name__}")
        if other.alg is not self.alg and other.alg != self.alg:
            raise ValueError("polynomials live in different algebras")

    def __add__(self, other: "Poly") -> "Poly":
        if isinstance(other, int):
            other = self.alg.one() if other & 1 else self.alg.zero()
        self._check(other)
        return Poly(self.alg, self.terms ^ other.terms)

    __radd__ = __add__
    __sub__ = __add__

    def __mul__(self, other: "Poly") -> "Poly":
        if isinstance(other, int):
            return self if other & 1 else self.alg.zero()
        self._check(other)
        mul = self.alg.mul_mono
        out: set = set()
        for m1 in self.terms:
            for m2 in other.terms:
                m = mul(m1, m2)
                if m is not None:
                    if m in out:
                        out.remove(m)
                    else:
                        out.add(m)
        return Poly(self.alg, frozenset(out))

    __rmul__ = __mul__

    def __pow__(self, k: int) -> "Poly":
        if k < 0:
            raise ValueError("negative power")
        result = self.alg.one()
        base = self
        while k:
            if k & 1:
                result = result * base
            k >>= 1
            if k:
                base = base * base
        return result

    def __eq__(self, other) -> bool:
        if isinstance(other, int):
            other = self.alg.one() if other & 1 else self.alg.zero()
        if not isinstance(other, Poly):
            return NotImplemented
        return self.alg == other.alg and self.terms == other.terms

    def __hash__(self) -> int:
        return hash(self.terms)

    def __bool__(self) -> bool:
        return bool(self.terms)

    def __len__(self) -> int:
        return len(self.terms)

    def sorted_terms(self) -> list[Monomial]:
        return sorted(self.terms, key=lambda m: (self.alg.mono_total(m), m), reverse=True)

    def __str__(self) -> str:
        if not self.terms:
            return "0"
        return " + ".join(self.alg.mono_str(m) for m in self.sorted_terms())

    __repr__ = __str__

    def degrees(self) -> set[BiDegree]:
        return {self.alg.mono_degree(m) for m in self.terms}

    def degree(self) -> BiDegree | None:
        """The bidegree of a bihomogeneous nonzero polynomial, else None."""
        ds = self.degrees()
        return ds.pop() if len(ds) == 1 else None

    def is_homogeneous(self, deg: Degree | None = None, mode: str = "bidegree") -> bool:
        if not self.terms:
            return True
        if mode == "total":
            totals = {d.total for d in self.degrees()}
            return len(totals) == 1 and (deg is None or totals == {int(deg)})
        ds = self.degrees()
        return len(ds) == 1 and (deg is None or ds == {deg})

    def to_json(self) -> list:
        """Sorted list of monomials, each a sorted list of ``[variable, exponent]``."""
        return sorted(self.alg.mono_pairs(m) for m in self.terms)

    @classmethod
    def from_json(cls, alg: PolyAlgebra, data: Sequence) -> "Poly":
        return alg.poly(alg.mono_from_pairs(pairs) for pairs in data)


def multiply(p: Poly, q: Poly) -> Poly:
    return p * q


def monomial_basis(alg: PolyAlgebra, deg: Degree) -> list[Monomial]:
    return alg.basis(deg)


def evaluate(p: Poly, images: Mapping[str, Poly], target: PolyAlgebra) -> Poly:
    """Apply the algebra map sending each variable to ``images[name]``."""
    out = target.zero()
    powers: dict[tuple[int, int], Poly] = {}
    for m in p.terms:
        term = target.one()
        for i, e in enumerate(m):
            if not e:
                continue
            key = (i, e)
            if key not in powers:
                powers[key] = images[p.alg.names[i]] ** e
            term = term * powers[key]
            if not term:
                break
        out = out + term
    return out


class PresentedAlgebra:
    """A commutative algebra given by generators and homogeneous relations.

    ``grading`` is either ``"bidegree"`` or ``"total"`` and declares in which
    sense every relation must be homogeneous.
    """

    def __init__(self, algebra: PolyAlgebra, relations: Iterable[Poly], grading: str = "bidegree"):
        if grading not in ("bidegree", "total"):
            raise ValueError(f"unknown grading {grading!r}")
        self.algebra = algebra
        self.grading = grading
        rels = []
        for r in relations:
            if r.alg != algebra:
                raise ValueError("relation from a different algebra")
            if not r:
                continue
            if not r.is_homogeneous(mode=grading):
                raise ValueError(f"relation {r} is not homogeneous")
            rels.append(r)
        self.relations = rels

    def _rel_degree(self, r: Poly) -> Degree:
        d = self.algebra.mono_degree(next(iter(r.terms)))
        return d.total if self.grading == "total" else d

    def graded_dim(self, deg: Degree) -> int:
        if isinstance(deg, BiDegree) and self.grading == "total":
            raise ValueError("relations are only homogeneous for the total degree")
        alg = self.algebra
        if isinstance(deg, int) and self.grading == "bidegree":
            return sum(self.graded_dim(d) for d in alg.degrees_up_to(deg) if d.total == deg)
        basis = alg.basis(deg)
        if not basis:
            return 0
        index = {m: i for i, m in enumerate(basis)}
        ech = Echelon()
        for r in self.relations:
            rest = deg - self._rel_degree(r)
            if (rest if isinstance(rest, int) else rest.total) < 0:
                continue
            for m in alg.basis(rest):
                v = 0
                for t in r.terms:
                    prod = alg.mul_mono(m, t)
                    if prod is not None:
                        v ^= 1 << index[prod]
                if v:
                    ech.add(v)
                    if ech.rank == len(basis):
                        return 0
        return len(basis) - ech.rank

    def poincare_coeffs(self, max_total: int) -> list[int]:
        if self.grading == "bidegree":
            # summing bidegree pieces is cheaper than one big total-degree matrix
            out = [0] * (max_total + 1)
            for d in self.algebra.degrees_up_to(max_total):
                out[d.total] += self.graded_dim(d)
            return out
        return [self.graded_dim(d) for d in range(max_total + 1)]


def graded_dim(pa: PresentedAlgebra, deg: Degree) -> int:
    return pa.graded_dim(deg)


def poincare_coeffs(pa: PresentedAlgebra, max_total: int) -> list[int]:
    return pa.poincare_coeffs(max_total)


def free_algebra(alg: PolyAlgebra) -> PresentedAlgebra:
    return PresentedAlgebra(alg, [])


def variables(entries: Iterable[tuple]) -> list[GradedVariable]:
    """Shorthand: ``[("x", (1, 1)), ("y", (1, 0), 1)]`` to graded variables."""
    out = []
    for item in entries:
        name, (a, b), *rest = item
        out.append(GradedVariable(name, BiDegree(a, b), rest[0] if rest else None))
    return out
