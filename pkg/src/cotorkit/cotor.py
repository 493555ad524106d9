"""Cotor of a comodule algebra, computed two ways.

The twisted route uses the small complex ``R (x)_theta M`` built from a
twisting cochain ``theta: Lambda -> R``. The cobar route uses the reduced
cobar complex ``Lambda-bar^{(x)s} (x) M``. The two share nothing except the
comodule algebra and the GF(2) kernels, so either can serve as an oracle
for the other.

Degree convention: a z-variable of R carries the internal bidegree of the
Lambda-monomial it is the image of, and every z (or every bar) adds one to
the cotor degree ``s``. A class in internal bidegree ``(a, b)`` and cotor
degree ``s`` has total degree ``a + b + s`` and Hodge bidegree ``(a, b + s)``.
"""
from __future__ import annotations

import csv
import io
import json
import threading
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from typing import Callable, Hashable, Iterable, Sequence

from .gf2 import Echelon
from .hopf import ComoduleAlgebra, HopfDescriptor, Report, toggle
from .poly import BiDegree, GradedVariable, Monomial, Poly, PolyAlgebra

DEFAULT_COBAR_MAX_S = 6


class TruncationError(ValueError):
    """A computation needed data beyond the configured truncation."""


class DifferentialError(RuntimeError):
    """``d o d`` did not vanish; the coaction or the twisting cochain is broken."""


class CobarSizeError(ValueError):
    """The cobar complex would need more tensor factors than allowed."""


@dataclass(frozen=True, order=True)
class TriDegree:
    s: int
    a: int
    b: int

    @property
    def internal(self) -> BiDegree:
        return BiDegree(self.a, self.b)

    @property
    def total(self) -> int:
        return self.a + self.b + self.s

    @property
    def hodge(self) -> tuple[int, int]:
        return (self.a, self.b + self.s)

    def __str__(self) -> str:
        return f"(s={self.s}, {self.a}, {self.b})"


def _power_of_two(n: int) -> bool:
    return n > 0 and n & (n - 1) == 0


class TwistingCochain:
    """The twisting cochain ``theta: Lambda -> R`` for one Hopf flavor.

    R is polynomial on variables named ``z<k>`` where ``k`` is the total
    degree of the class (internal total plus one). Only variables of
    internal total degree at most ``max_internal_total`` are created.
    """

    def __init__(self, hopf: HopfDescriptor, max_internal_total: int):
        if max_internal_total < 0:
            raise ValueError("truncation must be non-negative")
        self.hopf = hopf
        self.flavor = hopf.flavor
        self.max_internal_total = max_internal_total
        variables = []
        for name, lam in self._targets(max_internal_total):
            variables.append(GradedVariable(name, hopf.algebra.mono_degree(lam)))
        self.R = PolyAlgebra(variables)
        self._source = {name: lam for name, lam in self._targets(max_internal_total)}

    def __repr__(self) -> str:
        return f"TwistingCochain({self.flavor}, R = F2[{', '.join(self.R.names)}])"

    def _targets(self, bound: int) -> list[tuple[str, Monomial]]:
        out = []
        f = self.flavor
        if f in ("lambda2", "sing_z2") and bound >= 1:
            out.append(("z2", (1, 0) if f == "lambda2" else (1,)))
        n = 1
        while True:
            if f == "lambda1":
                lam, tot = (n,), 2 * n
            elif f == "lambda2":
                lam, tot = (0, n), 2 * n
            elif f == "sing_gm":
                lam, tot = (n,), 2 * n
            else:
                n = max(n, 2)
                lam, tot = (n,), n
            if tot > bound:
                return out
            out.append((f"z{tot + 1}", lam))
            n *= 2

    def theta_name(self, lam: Monomial) -> str | None:
        """Name of ``theta(lam)`` for a basis monomial, with no truncation applied."""
        f = self.flavor
        if f == "lambda2":
            e1, n = lam
            if e1 == 1:
                return "z2" if n == 0 else None
            return f"z{2 * n + 1}" if _power_of_two(n) else None
        (n,) = lam
        if not _power_of_two(n):
            return None
        if f == "sing_z2":
            return "z2" if n == 1 else f"z{n + 1}"
        return f"z{2 * n + 1}"

    def theta_index(self, lam: Monomial) -> int | None:
        name = self.theta_name(lam)
        if name is None:
            return None
        idx = self.R.index.get(name)
        if idx is None:
            raise TruncationError(f"theta({self.hopf.algebra.mono_str(lam)}) = {name} lies beyond the truncation")
        return idx

    def theta(self, p: Poly) -> Poly:
        """Linear extension of the basis assignment."""
        if p.alg != self.hopf.algebra:
            raise ValueError("element is not in the Hopf algebra")
        out: set = set()
        for m in p.terms:
            i = self.theta_index(m)
            if i is not None:
                toggle(out, self.R.var_mono(self.R.names[i]))
        return Poly(self.R, frozenset(out))


def theta(tc: TwistingCochain, lam: Poly) -> Poly:
    return tc.theta(lam)


def twisting_cochain_for(hopf: HopfDescriptor, max_total: int) -> TwistingCochain:
    """A twisting cochain large enough for every differential out of total degree ``max_total``."""
    return TwistingCochain(hopf, max(max_total, 0))


def check_twisting_identity(tc: TwistingCochain, max_total: int) -> Report:
    """``mu o (theta (x) theta) o Delta = 0`` on every Lambda-monomial up to ``max_total``."""
    rep = Report(f"twisting cochain identity ({tc.flavor})")
    h = tc.hopf
    for lam in h.basis_up_to(max_total):
        acc: set = set()
        for l, r in h.coproduct_mono(lam):
            a, b = tc.theta_name(l), tc.theta_name(r)
            if a is not None and b is not None:
                toggle(acc, tuple(sorted((a, b))))
        rep.checked += 1
        if acc:
            terms = " + ".join("*".join(t) for t in sorted(acc))
            rep.fail(f"residue {terms} on {h.algebra.mono_str(lam)}")
    return rep


class CochainComplex:
    """A cochain complex split by internal bidegree and cotor degree.

    Basis elements are hashable keys; ``differential`` sends a key to a set
    of keys. Cells are enumerated lazily and cached, and ranks are cached
    per cell, so later boundary queries reuse earlier work.
    """

    def __init__(
        self,
        kind: str,
        ca: ComoduleAlgebra,
        enumerate_cell: Callable[[int, BiDegree], list],
        differential: Callable[[Hashable], set],
        key_degree: Callable[[Hashable], TriDegree],
        max_total: int | None = None,
    ):
        self.kind = kind
        self.ca = ca
        self._enumerate = enumerate_cell
        self.differential = differential
        self.key_degree = key_degree
        self.max_total = max_total
        self._cells: dict[tuple[int, BiDegree], list] = {}
        self._index: dict[tuple[int, BiDegree], dict] = {}
        self._ranks: dict[tuple[int, BiDegree], int] = {}

    def cell(self, s: int, D: BiDegree) -> list:
        key = (s, D)
        hit = self._cells.get(key)
        if hit is None:
            hit = self._enumerate(s, D) if s >= 0 else []
            self._index[key] = {k: i for i, k in enumerate(hit)}
            self._cells[key] = hit
        return hit

    def index(self, s: int, D: BiDegree) -> dict:
        self.cell(s, D)
        return self._index[(s, D)]

    def apply(self, keys: Iterable) -> set:
        out: set = set()
        for k in keys:
            for t in self.differential(k):
                toggle(out, t)
        return out

    def to_vector(self, keys: Iterable, s: int, D: BiDegree) -> int:
        idx = self.index(s, D)
        v = 0
        for k in keys:
            j = idx.get(k)
            if j is None:
                raise TruncationError(f"{k!r} is not a basis element of cell {TriDegree(s, D.a, D.b)}")
            v ^= 1 << j
        return v

    def image_vectors(self, s: int, D: BiDegree) -> list[int]:
        """Images of the cell basis, in coordinates of the next cell."""
        return [self.to_vector(self.differential(k), s + 1, D) for k in self.cell(s, D)]

    def rank(self, s: int, D: BiDegree) -> int:
        key = (s, D)
        hit = self._ranks.get(key)
        if hit is None:
            hit = Echelon(self.image_vectors(s, D)).rank if s >= 0 else 0
            self._ranks[key] = hit
        return hit

    def cohomology_dim(self, s: int, D: BiDegree) -> int:
        n = len(self.cell(s, D))
        if not n:
            return 0
        return n - self.rank(s, D) - self.rank(s - 1, D)

    def check_d_squared(self, s: int, D: BiDegree) -> list:
        """Basis keys of the cell on which ``d o d`` is nonzero."""
        bad = []
        for k in self.cell(s, D):
            if self.apply(self.differential(k)):
                bad.append(k)
        return bad

    def boundary_span(self, s: int, D: BiDegree) -> Echelon:
        return Echelon(self.image_vectors(s - 1, D)) if s > 0 else Echelon()


def _reachable_degrees(parts: Sequence[PolyAlgebra], max_total: int, closed: bool = False) -> list[BiDegree]:
    """Bidegrees of total at most ``max_total`` that are sums of degrees from each algebra.

    With ``closed`` the first algebra's degrees may be used any number of
    times (tensor powers of the bar construction).
    """
    acc = {BiDegree(0, 0)}
    for n, alg in enumerate(parts):
        degs = alg.degrees_up_to(max_total)
        if closed and n == 0:
            frontier = set(acc)
            while frontier:
                frontier = {x + y for x in frontier for y in degs if y.total and (x + y).total <= max_total} - acc
                acc |= frontier
        else:
            acc = {x + y for x in acc for y in degs if (x + y).total <= max_total}
    return sorted(acc)


# twisted tensor product


def complex_algebra(tc: TwistingCochain, ca: ComoduleAlgebra) -> PolyAlgebra:
    """The polynomial algebra on the variables of R and of A together."""
    return tc.R.tensor(ca.algebra)


def _twisted_key_differential(tc: TwistingCochain, ca: ComoduleAlgebra) -> Callable[[Hashable], set]:
    one = ca.hopf.algebra.unit_mono
    cache: dict = {}

    def d(key) -> set:
        hit = cache.get(key)
        if hit is not None:
            return hit
        r, m = key
        out: set = set()
        for lam, m2 in ca.coaction_mono(m):
            if lam == one:
                continue
            i = tc.theta_index(lam)
            if i is None:
                continue
            r2 = r[:i] + (r[i] + 1,) + r[i + 1:]
            toggle(out, (r2, m2))
        cache[key] = out
        return out

    return d


def twisted_differential(tc: TwistingCochain, ca: ComoduleAlgebra, elt: Poly) -> Poly:
    """``d_theta = (mu_R (x) 1) o (1 (x) theta (x) 1) o (1 (x) phi)`` on R (x) A."""
    alg = complex_algebra(tc, ca)
    if elt.alg != alg:
        raise ValueError("element must live in R (x) A")
    k = tc.R.nvars
    d = _twisted_key_differential(tc, ca)
    out: set = set()
    for mono in elt.terms:
        for t in d((mono[:k], mono[k:])):
            toggle(out, t)
    return Poly(alg, frozenset(r + m for r, m in out))


def build_twisted_complex(
    tc: TwistingCochain, ca: ComoduleAlgebra, max_total: int, verify: bool = True
) -> CochainComplex:
    """The twisted tensor product ``R (x)_theta A``, checked for ``d^2 = 0`` up to ``max_total``."""
    if tc.hopf is not ca.hopf and tc.flavor != ca.hopf.flavor:
        raise ValueError("twisting cochain and comodule use different Hopf algebras")
    R, A = tc.R, ca.algebra
    groups: dict[tuple[BiDegree, int], list[Monomial]] = {}
    r_cache_bound = [-1]

    lock = threading.Lock()

    def r_group(E: BiDegree, s: int) -> list[Monomial]:
        with lock:
            if E.total > r_cache_bound[0]:
                for F in R.degrees_up_to(E.total):
                    if F.total > r_cache_bound[0]:
                        for r in R.basis(F):
                            groups.setdefault((F, sum(r)), []).append(r)
                r_cache_bound[0] = E.total
            return groups.get((E, s), [])

    def enumerate_cell(s: int, D: BiDegree) -> list:
        out = []
        for E in R.degrees_up_to(D.total):
            if not E.fits_in(D):
                continue
            rs = r_group(E, s)
            if not rs:
                continue
            ms = A.basis(D - E)
            for r in rs:
                for m in ms:
                    out.append((r, m))
        return out

    def key_degree(key) -> TriDegree:
        r, m = key
        D = R.mono_degree(r) + A.mono_degree(m)
        return TriDegree(sum(r), D.a, D.b)

    cx = CochainComplex("twisted", ca, enumerate_cell, _twisted_key_differential(tc, ca), key_degree, max_total)
    cx.tc = tc
    cx.algebra = complex_algebra(tc, ca)
    if verify:
        for D in _reachable_degrees([R, A], max_total):
            for s in range(0, max_total - D.total + 1):
                bad = cx.check_d_squared(s, D)
                if bad:
                    r, m = bad[0]
                    raise DifferentialError(
                        f"d^2 != 0 on {R.mono_str(r)} (x) {A.mono_str(m)} in cell {TriDegree(s, D.a, D.b)}"
                    )
    return cx


# reduced cobar complex


def build_cobar_complex(ca: ComoduleAlgebra, max_total: int | None = None) -> CochainComplex:
    """The reduced cobar complex ``Lambda-bar^{(x)s} (x) A`` computing Cotor(F2, A)."""
    H = ca.hopf.algebra
    A = ca.algebra
    hopf = ca.hopf
    one = H.unit_mono

    def enumerate_cell(s: int, D: BiDegree) -> list:
        out = []
        degs = [E for E in H.degrees_up_to(D.total) if E.total > 0]

        def rec(k: int, remaining: BiDegree, bars: tuple) -> None:
            if k == s:
                for m in A.basis(remaining):
                    out.append((bars, m))
                return
            for E in degs:
                if E.total > remaining.total or not E.fits_in(remaining):
                    continue
                for lam in H.basis(E):
                    rec(k + 1, remaining - E, bars + (lam,))

        rec(0, D, ())
        return out

    cache: dict = {}

    def d(key) -> set:
        hit = cache.get(key)
        if hit is not None:
            return hit
        bars, m = key
        out: set = set()
        for i, g in enumerate(bars):
            for l, r in hopf.reduced_coproduct_mono(g):
                toggle(out, (bars[:i] + (l, r) + bars[i + 1:], m))
        for lam, m2 in ca.coaction_mono(m):
            if lam != one:
                toggle(out, (bars + (lam,), m2))
        cache[key] = out
        return out

    def key_degree(key) -> TriDegree:
        bars, m = key
        D = A.mono_degree(m)
        for g in bars:
            D = D + H.mono_degree(g)
        return TriDegree(len(bars), D.a, D.b)

    return CochainComplex("cobar", ca, enumerate_cell, d, key_degree, max_total)


def cobar_max_s(hopf: HopfDescriptor, max_total: int) -> int:
    """Largest cotor degree the cobar complex can reach below ``max_total``."""
    lowest = min(d.total for d in hopf.algebra.degrees)
    return max_total // (lowest + 1)


# tables


@dataclass
class CotorTable:
    """Dimensions of Cotor by TriDegree. Only nonzero entries are stored."""

    dims: dict
    method: str
    max_total: int | None = None
    max_s: int | None = None
    model: str = ""

    def dim(self, s: int, a: int, b: int) -> int:
        return self.dims.get(TriDegree(s, a, b), 0)

    def __getitem__(self, t: TriDegree) -> int:
        return self.dims.get(t, 0)

    def entries(self) -> list[tuple[TriDegree, int]]:
        return sorted(self.dims.items())

    def same_dims(self, other: "CotorTable") -> bool:
        return self.dims == other.dims

    def differences(self, other: "CotorTable") -> list[tuple[TriDegree, int, int]]:
        keys = sorted(set(self.dims) | set(other.dims))
        return [(t, self[t], other[t]) for t in keys if self[t] != other[t]]

    def totals(self, max_total: int | None = None) -> list[int]:
        n = self.max_total if max_total is None else max_total
        if n is None:
            raise ValueError("table has no total-degree bound")
        out = [0] * (n + 1)
        for t, d in self.dims.items():
            if t.total <= n:
                out[t.total] += d
        return out

    def hodge(self) -> dict[tuple[int, int], int]:
        out: dict[tuple[int, int], int] = {}
        for t, d in self.dims.items():
            out[t.hodge] = out.get(t.hodge, 0) + d
        return out

    def row(self, s: int) -> dict[BiDegree, int]:
        return {t.internal: d for t, d in self.dims.items() if t.s == s}

    def to_csv(self) -> str:
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(["s", "a", "b", "total", "hodge_a", "hodge_b", "dim"])
        for t, d in self.entries():
            w.writerow([t.s, t.a, t.b, t.total, t.hodge[0], t.hodge[1], d])
        return buf.getvalue()

    def to_json(self) -> str:
        doc = {
            "method": self.method,
            "model": self.model,
            "max_total": self.max_total,
            "max_s": self.max_s,
            "entries": [
                {"s": t.s, "a": t.a, "b": t.b, "total": t.total, "hodge_a": t.hodge[0], "hodge_b": t.hodge[1], "dim": d}
                for t, d in self.entries()
            ],
        }
        return json.dumps(doc, indent=2, sort_keys=True)


def run_cells(cx: CochainComplex, jobs: list[tuple[BiDegree, range]], threads: int) -> dict:
    def work(job):
        D, srange = job
        return [(TriDegree(s, D.a, D.b), cx.cohomology_dim(s, D)) for s in srange]

    if threads > 1:
        # cells of different internal degrees never share cache entries of
        # the complex, but the comodule caches are shared and locked
        with ThreadPoolExecutor(max_workers=threads) as pool:
            results = list(pool.map(work, jobs))
    else:
        results = [work(j) for j in jobs]
    dims = {}
    for chunk in results:
        for t, d in chunk:
            if d:
                dims[t] = d
    return dict(sorted(dims.items()))


def cotor_twisted(
    tc: TwistingCochain | None, ca: ComoduleAlgebra, max_total: int, threads: int = 1
) -> CotorTable:
    """Cotor through the twisted tensor product, for every TriDegree of total at most ``max_total``."""
    if tc is None:
        tc = twisting_cochain_for(ca.hopf, max_total)
    elif tc.max_internal_total < max_total:
        raise TruncationError(f"twisting cochain truncated at {tc.max_internal_total}, need {max_total}")
    cx = build_twisted_complex(tc, ca, max_total, verify=False)
    jobs = [(D, range(0, max_total - D.total + 1)) for D in _reachable_degrees([tc.R, ca.algebra], max_total)]
    return CotorTable(run_cells(cx, jobs, threads), "twisted", max_total, model=ca.name)


def cotor_twisted_region(
    ca: ComoduleAlgebra, degrees: Iterable[BiDegree], max_s: int, threads: int = 1
) -> CotorTable:
    """Cotor through the twisted complex on chosen internal bidegrees, for ``s <= max_s``."""
    degrees = sorted(set(degrees))
    top = max((D.total for D in degrees), default=0)
    tc = TwistingCochain(ca.hopf, top)
    cx = build_twisted_complex(tc, ca, 0, verify=False)
    jobs = [(D, range(0, max_s + 1)) for D in degrees]
    return CotorTable(run_cells(cx, jobs, threads), "twisted", None, max_s, model=ca.name)


def cotor_cobar(
    ca: ComoduleAlgebra, max_total: int, max_s_bound: int = DEFAULT_COBAR_MAX_S, threads: int = 1
) -> CotorTable:
    """Cotor through the reduced cobar complex; refuses to go past ``max_s_bound`` factors."""
    need = cobar_max_s(ca.hopf, max_total)
    if need > max_s_bound:
        raise CobarSizeError(
            f"total degree {max_total} needs {need} cobar factors, above the bound {max_s_bound}"
        )
    cx = build_cobar_complex(ca, max_total)
    jobs = [(D, range(0, max_total - D.total + 1)) for D in _reachable_degrees([ca.hopf.algebra, ca.algebra], max_total, closed=True)]
    return CotorTable(run_cells(cx, jobs, threads), "cobar", max_total, model=ca.name)


def acyclicity_report(tc: TwistingCochain, ca: ComoduleAlgebra, max_total: int) -> Report:
    """Check that the twisted complex has cohomology F2 at TriDegree (0,0,0) only."""
    rep = Report(f"acyclicity of R (x)_theta {ca.name or ca.hopf.flavor}")
    try:
        cx = build_twisted_complex(tc, ca, max_total)
    except DifferentialError as exc:
        rep.fail(str(exc))
        return rep
    for D in _reachable_degrees([tc.R, ca.algebra], max_total):
        for s in range(0, max_total - D.total + 1):
            rep.checked += 1
            want = 1 if (s, D.a, D.b) == (0, 0, 0) else 0
            got = cx.cohomology_dim(s, D)
            if got != want:
                rep.fail(f"dimension {got} at {TriDegree(s, D.a, D.b)}, expected {want}")
    return rep


# cycles, boundaries and products


def _keys_of(cx: CochainComplex, elt) -> set:
    if isinstance(elt, Poly):
        k = cx.tc.R.nvars
        return {(m[:k], m[k:]) for m in elt.terms}
    return set(elt)


def is_boundary(cx: CochainComplex, elt) -> bool:
    """True when a cycle lies in the image of the previous differential."""
    keys = _keys_of(cx, elt)
    if not keys:
        return True
    degs = {cx.key_degree(k) for k in keys}
    if len(degs) != 1:
        raise ValueError("element is not homogeneous")
    t = degs.pop()
    if cx.apply(keys):
        raise ValueError(f"element is not a cycle (cell {t})")
    D = t.internal
    if t.s == 0:
        return False
    return cx.boundary_span(t.s, D).contains(cx.to_vector(keys, t.s, D))


def product_on_RPA(
    tc: TwistingCochain, ca: ComoduleAlgebra, x: tuple[Poly, Poly], y: tuple[Poly, Poly]
) -> tuple[Poly, Poly]:
    """Product of classes ``r (x) p`` with ``p`` primitive, taken factorwise."""
    (r1, p1), (r2, p2) = x, y
    for p in (p1, p2):
        if not ca.is_primitive(p):
            raise ValueError(f"{p} is not primitive")
    return (r1 * r2, p1 * p2)


def pure_tensor(tc: TwistingCochain, ca: ComoduleAlgebra, r: Poly, p: Poly) -> Poly:
    """``r (x) p`` as an element of R (x) A."""
    alg = complex_algebra(tc, ca)
    return Poly(alg, frozenset(a + b for a in r.terms for b in p.terms))
