import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from cotorkit.poly import (
    BiDegree,
    GradedVariable,
    Poly,
    PolyAlgebra,
    PresentedAlgebra,
    free_algebra,
    graded_dim,
    monomial_basis,
    multiply,
    poincare_coeffs,
    variables,
)

LAMBDA2 = PolyAlgebra(variables([("x1", (1, 0), 1), ("x2", (1, 1))]))
C12 = PolyAlgebra(variables([("c1", (1, 1)), ("c2", (2, 2))]))
X23 = PolyAlgebra([GradedVariable("x2", BiDegree(0, 2)), GradedVariable("x3", BiDegree(0, 3))])
SAMPLE = PolyAlgebra(variables([("a", (1, 0)), ("b", (0, 1)), ("c", (1, 1)), ("e", (1, 0), 1)]))


def partitions_23(n):
    return sum(1 for k in range(n // 3 + 1) if (n - 3 * k) % 2 == 0)


@st.composite
def polys(draw, alg=SAMPLE, max_total=4):
    monos = [m for d in range(max_total + 1) for m in alg.basis(d)]
    chosen = draw(st.sets(st.sampled_from(monos), max_size=6))
    return Poly(alg, frozenset(chosen))


def test_bidegree_arithmetic():
    d = BiDegree(1, 2) + BiDegree(3, 4)
    assert d == BiDegree(4, 6) and d.total == 10
    assert BiDegree(2, 2).is_pure and not BiDegree(1, 2).is_pure


def test_capped_square_vanishes():
    x1 = LAMBDA2.gen("x1")
    assert x1 * x1 == LAMBDA2.zero()


def test_multiply_by_one_and_frobenius():
    c1, c2 = C12.gen("c1"), C12.gen("c2")
    p = c1 + c2
    assert multiply(p, C12.one()) == p
    assert p * p == c1 ** 2 + c2 ** 2


def test_mixed_algebras_rejected():
    with pytest.raises(ValueError):
        C12.gen("c1") * LAMBDA2.gen("x1")


def test_lambda2_one_monomial_per_total_degree():
    for d in range(12):
        assert len(monomial_basis(LAMBDA2, d)) == 1


def test_basis_examples():
    assert {C12.mono_str(m) for m in monomial_basis(C12, 4)} == {"c1^2", "c2"}
    assert monomial_basis(C12, BiDegree(-1, 3)) == []
    assert monomial_basis(C12, -2) == []


def test_graded_dim_free_x2_x3():
    pa = free_algebra(X23)
    assert poincare_coeffs(pa, 10) == [1, 0, 1, 1, 1, 1, 2, 1, 2, 2, 2]
    assert [partitions_23(n) for n in range(11)] == poincare_coeffs(pa, 10)


def test_exterior_square_is_zero():
    alg = PolyAlgebra(variables([("x", (0, 1))]))
    pa = PresentedAlgebra(alg, [alg.gen("x") ** 2])
    assert graded_dim(pa, 2) == 0
    assert poincare_coeffs(pa, 4) == [1, 1, 0, 0, 0]


def test_trivial_algebra_and_lambda2_series():
    assert poincare_coeffs(free_algebra(PolyAlgebra([])), 3) == [1, 0, 0, 0]
    assert poincare_coeffs(free_algebra(LAMBDA2), 4) == [1, 1, 1, 1, 1]


def test_small_pso_presentation_degree_five():
    # x2 in (1,1), y2 in (1,2), y3 in (2,3): degree 5 holds x2*y2 and y3, and x2*y2 = 0
    alg = PolyAlgebra(variables([("x2", (1, 1)), ("y2", (1, 2)), ("y3", (2, 3))]))
    pa = PresentedAlgebra(alg, [alg.gen("x2") * alg.gen("y2"), alg.gen("x2") * alg.gen("y3")])
    assert graded_dim(pa, 5) == 1


def test_inhomogeneous_relation_rejected():
    with pytest.raises(ValueError):
        PresentedAlgebra(C12, [C12.gen("c1") + C12.gen("c2")])


def test_total_grading_mode_accepts_total_homogeneous():
    alg = PolyAlgebra(variables([("u", (1, 0)), ("v", (0, 1))]))
    pa = PresentedAlgebra(alg, [alg.gen("u") + alg.gen("v")], grading="total")
    assert poincare_coeffs(pa, 3) == [1, 1, 1, 1]


def test_json_roundtrip():
    p = C12.gen("c1") ** 3 + C12.gen("c1") * C12.gen("c2")
    assert Poly.from_json(C12, p.to_json()) == p
    assert p.to_json() == sorted(p.to_json())


@given(polys(), polys(), polys())
def test_ring_axioms(p, q, r):
    assert p * q == q * p
    assert (p * q) * r == p * (q * r)
    assert p * (q + r) == p * q + p * r
    assert p * SAMPLE.one() == p
    assert p + p == SAMPLE.zero()


@given(st.integers(0, 12))
def test_free_graded_dim_counts_monomials(d):
    alg = PolyAlgebra(variables([("a", (1, 1)), ("b", (1, 2)), ("c", (2, 2), 2)]))
    assert graded_dim(free_algebra(alg), d) == len(monomial_basis(alg, d))


@settings(max_examples=40)
@given(st.lists(polys(SAMPLE, 3), max_size=3), polys(SAMPLE, 3))
def test_more_relations_never_increase_dims(rels, extra):
    def homogeneous_parts(p):
        out = []
        for d in p.degrees():
            part = Poly(p.alg, frozenset(m for m in p.terms if p.alg.mono_degree(m) == d))
            if part:
                out.append(part)
        return out

    base = [h for r in rels for h in homogeneous_parts(r)]
    bigger = base + homogeneous_parts(extra)
    small = PresentedAlgebra(SAMPLE, base).poincare_coeffs(5)
    large = PresentedAlgebra(SAMPLE, bigger).poincare_coeffs(5)
    assert all(b <= a for a, b in zip(small, large))
