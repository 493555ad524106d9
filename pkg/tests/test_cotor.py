import json
from itertools import product

import pytest

from cotorkit.catalog import model
from cotorkit.cotor import (
    CobarSizeError,
    DifferentialError,
    TriDegree,
    TruncationError,
    TwistingCochain,
    acyclicity_report,
    build_cobar_complex,
    build_twisted_complex,
    check_twisting_identity,
    complex_algebra,
    cotor_cobar,
    cotor_twisted,
    is_boundary,
    product_on_RPA,
    pure_tensor,
    theta,
    twisted_differential,
    twisting_cochain_for,
)
from cotorkit.hopf import ComoduleAlgebra, lambda1, lambda2, primitives
from cotorkit.poly import BiDegree, Poly
from cotorkit.toda import bar_generators, build_b, find_sharp


def lam(hopf, *pairs):
    return Poly(hopf.algebra, frozenset([hopf.algebra.mono_from_pairs(pairs)]))


def r_monomial_dims(tc, max_total):
    """TriDegree counts of the monomials of R, enumerated by brute force."""
    R = tc.R
    out = {}
    tops = [max_total // (R.degrees[i].total + 1) for i in range(R.nvars)]
    for exps in product(*(range(t + 1) for t in tops)):
        s = sum(exps)
        a = sum(e * d.a for e, d in zip(exps, R.degrees))
        b = sum(e * d.b for e, d in zip(exps, R.degrees))
        if a + b + s <= max_total:
            t = TriDegree(s, a, b)
            out[t] = out.get(t, 0) + 1
    return out


def test_tridegree_bookkeeping():
    t = TriDegree(1, 1, 1)
    assert t.total == 3 and t.hodge == (1, 2)
    assert TriDegree(1, 1, 0).hodge == (1, 1)


def test_theta_on_lambda1():
    h = lambda1()
    tc = TwistingCochain(h, 16)
    assert str(theta(tc, lam(h, ("x2", 1)))) == "z3"
    assert str(theta(tc, lam(h, ("x2", 2)))) == "z5"
    assert str(theta(tc, lam(h, ("x2", 4)))) == "z9"
    assert not theta(tc, lam(h, ("x2", 3)))


def test_theta_on_lambda2():
    h = lambda2()
    tc = TwistingCochain(h, 16)
    assert str(theta(tc, lam(h, ("x1", 1)))) == "z2"
    assert not theta(tc, lam(h, ("x1", 1), ("x2", 1)))
    assert str(theta(tc, lam(h, ("x2", 2)))) == "z5"


def test_theta_beyond_truncation():
    h = lambda1()
    tc = TwistingCochain(h, 4)
    with pytest.raises(TruncationError):
        theta(tc, lam(h, ("x2", 4)))


def test_z_bidegrees():
    tc = TwistingCochain(lambda2(), 8)
    degs = dict(zip(tc.R.names, tc.R.degrees))
    assert degs["z2"] == BiDegree(1, 0)
    assert degs["z3"] == BiDegree(1, 1)
    assert degs["z5"] == BiDegree(2, 2)


@pytest.mark.parametrize("builder", [lambda1, lambda2])
def test_twisting_identity_to_32(builder):
    h = builder()
    rep = check_twisting_identity(twisting_cochain_for(h, 32), 32)
    assert rep.ok, rep.failures


def test_twisted_differential_gm():
    ca = model("gm")
    tc = twisting_cochain_for(ca.hopf, 8)
    alg = complex_algebra(tc, ca)
    elt = alg.gen("x2'")
    assert str(twisted_differential(tc, ca, elt)) == "z3"


def test_twisted_differential_gl2():
    ca = model("gl:2")
    tc = twisting_cochain_for(ca.hopf, 8)
    alg = complex_algebra(tc, ca)
    got = twisted_differential(tc, ca, alg.gen("c2"))
    assert got == alg.gen("z3") * alg.gen("c1") + alg.gen("z5")


def test_twisted_differential_kills_primitives():
    ca = model("gl:6")
    tc = twisting_cochain_for(ca.hopf, 10)
    for p in primitives(ca, 6):
        elt = pure_tensor(tc, ca, tc.R.one(), p)
        assert not twisted_differential(tc, ca, elt)


def test_trivial_comodule_has_zero_differential():
    ca = model("trivial:lambda1")
    tc = twisting_cochain_for(ca.hopf, 12)
    table = cotor_twisted(tc, ca, 12)
    assert table.dims == r_monomial_dims(tc, 12)


@pytest.mark.parametrize("mid", ["gm", "mu2"])
def test_acyclicity_to_12(mid):
    ca = model(mid)
    rep = acyclicity_report(twisting_cochain_for(ca.hopf, 12), ca, 12)
    assert rep.ok, rep.failures


def test_d_squared_zero_gl6():
    ca = model("gl:6")
    tc = twisting_cochain_for(ca.hopf, 10)
    build_twisted_complex(tc, ca, 10)  # raises on failure


def test_broken_coaction_is_caught():
    # giving c1 the coaction 1(x)c1 + x2(x)1 makes d(d(c2)) = z3^2
    ca = model("gl:2")
    alg = ca.algebra
    co = {n: list(ca.coaction_mono(alg.var_mono(n))) for n in alg.names}
    co["c1"] = [((0,), alg.var_mono("c1")), ((1,), alg.unit_mono)]
    bad = ComoduleAlgebra(ca.hopf, alg, co, "bad")
    with pytest.raises(DifferentialError):
        build_twisted_complex(twisting_cochain_for(ca.hopf, 8), bad, 8)


def test_gl2_totals():
    assert cotor_twisted(None, model("gl:2"), 8).totals() == [1, 0, 1, 1, 1, 1, 2, 1, 2]


def test_so6_has_z2_class():
    table = cotor_twisted(None, model("so:6"), 9)
    assert table.dim(1, 1, 0) == 1


def test_cobar_trivial_lambda1_matches_r():
    ca = model("trivial:lambda1")
    tc = twisting_cochain_for(ca.hopf, 8)
    assert cotor_cobar(ca, 8).dims == r_monomial_dims(tc, 8)


def test_cobar_size_guard():
    with pytest.raises(CobarSizeError):
        cotor_cobar(model("gl:2"), 40)


@pytest.mark.parametrize("mid", ["gl:2", "gl:4", "sp:6", "so:4", "so:6", "o:4", "mu2", "sing_z2", "sp_sing:6"])
def test_twisted_equals_cobar(mid):
    ca = model(mid)
    tw = cotor_twisted(None, ca, 8)
    cb = cotor_cobar(ca, 8)
    assert tw.differences(cb) == []


@pytest.mark.parametrize("mid", ["gl:6", "so:6", "sp:6"])
def test_cotor_zero_is_primitives(mid):
    ca = model(mid)
    table = cotor_cobar(ca, 8)
    for D in ca.algebra.degrees_up_to(8):
        assert table.dim(0, D.a, D.b) == len(primitives(ca, D))


@pytest.mark.parametrize("mid", ["gl:6", "so:6", "sp:6", "o:6"])
def test_hodge_positivity(mid):
    table = cotor_twisted(None, model(mid), 12)
    assert all(a <= b for (a, b), d in table.hodge().items() if d)


def test_threads_do_not_change_output():
    ca = model("so:6")
    one = cotor_twisted(None, ca, 12, threads=1)
    four = cotor_twisted(None, model("so:6"), 12, threads=4)
    assert one.to_csv() == four.to_csv()
    assert one.to_json() == four.to_json()


def test_csv_and_json_export():
    table = cotor_twisted(None, model("gl:2"), 4)
    lines = table.to_csv().splitlines()
    assert lines[0] == "s,a,b,total,hodge_a,hodge_b,dim"
    assert "1,1,1,3,1,2,1" in lines
    doc = json.loads(table.to_json())
    assert doc["method"] == "twisted"
    assert sum(e["dim"] for e in doc["entries"] if e["total"] == 4) == 1


def test_is_boundary_examples():
    ca = model("gl:6")
    tc = twisting_cochain_for(ca.hopf, 12)
    cx = build_twisted_complex(tc, ca, 12)
    zero = complex_algebra(tc, ca).zero()
    assert is_boundary(cx, zero)
    sharp = find_sharp(ca)
    c3bar = bar_generators(ca, sharp)["c3"]
    assert is_boundary(cx, pure_tensor(tc, ca, tc.R.gen("z3"), c3bar))

    ca2 = model("gl:2")
    tc2 = twisting_cochain_for(ca2.hopf, 8)
    cx2 = build_twisted_complex(tc2, ca2, 8)
    assert not is_boundary(cx2, pure_tensor(tc2, ca2, tc2.R.gen("z3"), ca2.algebra.one()))


def test_is_boundary_rejects_non_cycles():
    ca = model("gl:2")
    tc = twisting_cochain_for(ca.hopf, 8)
    cx = build_twisted_complex(tc, ca, 8)
    with pytest.raises(ValueError):
        is_boundary(cx, pure_tensor(tc, ca, tc.R.one(), ca.algebra.gen("c2")))


def test_product_on_r_tensor_primitives():
    ca = model("gl:6")
    tc = twisting_cochain_for(ca.hopf, 10)
    one, c1, z3 = tc.R.one(), ca.algebra.gen("c1"), tc.R.gen("z3")
    assert product_on_RPA(tc, ca, (one, c1), (z3, ca.algebra.one())) == (z3, c1)
    assert product_on_RPA(tc, ca, (z3, ca.algebra.one()), (z3, ca.algebra.one())) == (z3 * z3, ca.algebra.one())
    with pytest.raises(ValueError):
        product_on_RPA(tc, ca, (one, ca.algebra.gen("c2")), (z3, ca.algebra.one()))


def test_product_b2_z2_is_nonzero_class():
    ca = model("so:6")
    sharp = find_sharp(ca)
    b2 = build_b(ca, sharp, bar_generators(ca, sharp), 2)
    tc = twisting_cochain_for(ca.hopf, 12)
    r, p = product_on_RPA(tc, ca, (tc.R.one(), b2), (tc.R.gen("z2"), ca.algebra.one()))
    cx = build_twisted_complex(tc, ca, 12)
    elt = pure_tensor(tc, ca, r, p)
    assert not twisted_differential(tc, ca, elt)
    assert not is_boundary(cx, elt)
    assert cotor_twisted(tc, ca, 11).dim(1, 5, 4) >= 1
