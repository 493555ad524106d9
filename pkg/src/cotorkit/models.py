"""Built-in comodule algebras: classifying-space cohomology models.

Each builder returns a :class:`ComoduleAlgebra`. Coactions are written on
generators with the conventions ``c_0 = q_0 = u_0 = 1`` and (for SO)
``u_1 = 0``.
"""
from __future__ import annotations

import re
from math import comb

from .hopf import HOPF_BY_FLAVOR, ComoduleAlgebra, HopfDescriptor, lambda1, lambda2, sing_gm, sing_z2
from .poly import BiDegree, GradedVariable, Monomial, PolyAlgebra

MODEL_KINDS = ("gm", "mu2", "sing_z2", "sing_cx", "gl", "sp", "so", "o", "o2_power", "gl_sing", "sp_sing", "trivial")


def _odd(n: int, k: int) -> bool:
    return k >= 0 and n >= k and comb(n, k) & 1 == 1


def _names_mono(alg: PolyAlgebra, pairs: list[tuple[str, int]]) -> Monomial:
    m = [0] * alg.nvars
    for name, e in pairs:
        if e:
            m[alg.index[name]] += e
    return tuple(m)


def self_comodule(hopf: HopfDescriptor, name: str) -> ComoduleAlgebra:
    """The Hopf algebra as a comodule algebra over itself, variables primed."""
    alg = hopf.algebra.renamed("'")
    coaction = {alg.names[i]: hopf.coproduct[n] for i, n in enumerate(hopf.algebra.names)}
    return ComoduleAlgebra(hopf, alg, coaction, name)


def trivial(flavor: str) -> ComoduleAlgebra:
    """F2 with the trivial coaction."""
    hopf = HOPF_BY_FLAVOR[flavor]()
    return ComoduleAlgebra(hopf, PolyAlgebra([]), {}, f"trivial:{flavor}")


def _chern_like(hopf: HopfDescriptor, prefix: str, count: int, degree, step, name: str) -> ComoduleAlgebra:
    """Generators ``v_1..v_count`` with ``phi(v_i) = sum C(count-j, i-j) t^{step(i-j)} (x) v_j``."""
    alg = PolyAlgebra([GradedVariable(f"{prefix}{i}", degree(i)) for i in range(1, count + 1)])
    unit_h = hopf.algebra.unit_mono
    coaction = {}
    for i in range(1, count + 1):
        pairs = []
        for j in range(0, i + 1):
            if not _odd(count - j, i - j):
                continue
            lam = step(i - j) if i > j else unit_h
            a = _names_mono(alg, [(f"{prefix}{j}", 1)]) if j else alg.unit_mono
            pairs.append((lam, a))
        coaction[f"{prefix}{i}"] = pairs
    return ComoduleAlgebra(hopf, alg, coaction, name)


def gl(n: int) -> ComoduleAlgebra:
    """H*(BGL_n) = F2[c_1..c_n] over Lambda1, ``c_i`` in bidegree (i, i)."""
    if n < 1:
        raise ValueError("gl needs n >= 1")
    return _chern_like(lambda1(), "c", n, lambda i: BiDegree(i, i), lambda k: (k,), f"gl:{n}")


def gl_sing(n: int) -> ComoduleAlgebra:
    """Singular analogue of :func:`gl` over F2[x], ``|c_i| = 2i``."""
    if n < 1:
        raise ValueError("gl_sing needs n >= 1")
    return _chern_like(sing_gm(), "c", n, lambda i: BiDegree(0, 2 * i), lambda k: (k,), f"gl_sing:{n}")


def sp(two_n: int) -> ComoduleAlgebra:
    """H*(BSp_2n) = F2[q_1..q_n] over Lambda2, ``q_i`` in (2i, 2i), coaction through ``x2^2``."""
    if two_n < 2 or two_n % 2:
        raise ValueError("sp needs an even size >= 2")
    n = two_n // 2
    return _chern_like(lambda2(), "q", n, lambda i: BiDegree(2 * i, 2 * i), lambda k: (0, 2 * k), f"sp:{two_n}")


def sp_sing(two_n: int) -> ComoduleAlgebra:
    """Singular analogue of :func:`sp` over F2[z], ``|q_i| = 4i``, coaction through ``z^4``."""
    if two_n < 2 or two_n % 2:
        raise ValueError("sp_sing needs an even size >= 2")
    n = two_n // 2
    return _chern_like(sing_z2(), "q", n, lambda i: BiDegree(0, 4 * i), lambda k: (4 * k,), f"sp_sing:{two_n}")


def _u_degree(k: int) -> BiDegree:
    a, odd = divmod(k, 2)
    return BiDegree(a, a + odd)


def orthogonal(two_r: int, keep_u1: bool) -> ComoduleAlgebra:
    """Stiefel-Whitney model over Lambda2: u_2..u_2r (SO) or u_1..u_2r (O).

    ``phi(u_2a) = sum C(r-j, i) x2^i (x) u_2j + sum C(r-j, i) x2^i x1 (x) u_{2j-1}`` and
    ``phi(u_{2a+1}) = sum C(r-1-j, i) x2^i (x) u_{2j+1}``, both over ``i + j = a``.
    The odd coefficient is what the pullback to the O_2^r model forces.
    """
    if two_r < 2 or two_r % 2:
        raise ValueError("orthogonal models need an even size >= 2")
    r = two_r // 2
    hopf = lambda2()
    first = 1 if keep_u1 else 2
    alg = PolyAlgebra([GradedVariable(f"u{k}", _u_degree(k)) for k in range(first, two_r + 1)])

    def u(k: int):
        # u_0 = 1; u_1 = 0 unless kept; negative indices vanish
        if k == 0:
            return alg.unit_mono
        if k < first:
            return None
        return _names_mono(alg, [(f"u{k}", 1)])

    coaction = {}
    for k in range(first, two_r + 1):
        a, odd = divmod(k, 2)
        pairs = []
        for i in range(0, a + 1):
            j = a - i
            if odd:
                # the odd classes come from s_j * e_a(t without j), which
                # leaves r - 1 t-variables to draw the x2 factors from
                tgt = u(2 * j + 1)
                if tgt is not None and _odd(r - 1 - j, i):
                    pairs.append(((0, i), tgt))
            elif _odd(r - j, i):
                tgt = u(2 * j)
                if tgt is not None:
                    pairs.append(((0, i), tgt))
                tgt = u(2 * j - 1) if j >= 1 else None
                if tgt is not None:
                    pairs.append(((1, i), tgt))
        coaction[f"u{k}"] = pairs
    return ComoduleAlgebra(hopf, alg, coaction, f"{'o' if keep_u1 else 'so'}:{two_r}")


def so(two_r: int) -> ComoduleAlgebra:
    return orthogonal(two_r, keep_u1=False)


def o(two_r: int) -> ComoduleAlgebra:
    return orthogonal(two_r, keep_u1=True)


def o2_power(r: int) -> ComoduleAlgebra:
    """H*(B(O_2)^r) restricted model: F2[s_i, t_i] with ``t_i -> 1(x)t_i + x2(x)1 + x1(x)s_i``."""
    if r < 1:
        raise ValueError("o2_power needs r >= 1")
    hopf = lambda2()
    vs = []
    for i in range(1, r + 1):
        vs.append(GradedVariable(f"s{i}", BiDegree(0, 1)))
        vs.append(GradedVariable(f"t{i}", BiDegree(1, 1)))
    alg = PolyAlgebra(vs)
    one_h = hopf.algebra.unit_mono
    coaction = {}
    for i in range(1, r + 1):
        s = _names_mono(alg, [(f"s{i}", 1)])
        t = _names_mono(alg, [(f"t{i}", 1)])
        coaction[f"s{i}"] = [(one_h, s)]
        coaction[f"t{i}"] = [(one_h, t), ((0, 1), alg.unit_mono), ((1, 0), s)]
    return ComoduleAlgebra(hopf, alg, coaction, f"o2_power:{r}")


def gm() -> ComoduleAlgebra:
    return self_comodule(lambda1(), "gm")


def mu2() -> ComoduleAlgebra:
    return self_comodule(lambda2(), "mu2")


def sing_z2_model() -> ComoduleAlgebra:
    return self_comodule(sing_z2(), "sing_z2")


def sing_cx_model() -> ComoduleAlgebra:
    return self_comodule(sing_gm(), "sing_cx")


_ID = re.compile(r"^([a-z0-9_]+)(?::([a-z0-9_]+))?$")


def model(model_id: str) -> ComoduleAlgebra:
    """Build a catalog model from an id such as ``gl:6``, ``so:6`` or ``trivial:lambda1``."""
    m = _ID.match(model_id.strip().lower())
    if not m:
        raise ValueError(f"malformed model id {model_id!r}")
    kind, arg = m.group(1), m.group(2)
    simple = {"gm": gm, "mu2": mu2, "sing_z2": sing_z2_model, "sing_cx": sing_cx_model}
    if kind in simple:
        if arg is not None:
            raise ValueError(f"model {kind} takes no parameter")
        return simple[kind]()
    if kind == "trivial":
        if arg not in HOPF_BY_FLAVOR:
            raise ValueError(f"trivial model needs a flavor from {sorted(HOPF_BY_FLAVOR)}")
        return trivial(arg)
    builders = {"gl": gl, "sp": sp, "so": so, "o": o, "o2_power": o2_power, "gl_sing": gl_sing, "sp_sing": sp_sing}
    if kind not in builders:
        raise ValueError(f"unknown model {kind!r}")
    if arg is None or not arg.isdigit():
        raise ValueError(f"model {kind} needs a positive integer parameter")
    return builders[kind](int(arg))
