import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from cotorkit.catalog import (
    CATALOG_IDS,
    axiom_reports,
    check_bj,
    check_cotor_relations,
    check_o2r_square,
    check_psi,
    check_relations,
    cotor_of,
    count_partitions,
    degeneration_check,
    group_model,
    hodge_table,
    model,
    o2r_pullback,
    parse_poly,
    pgl_counting_formula,
    pgl_rep_table,
    pso_nonpure_consistency,
    pso_nonpure_table,
    rep_dims,
    target_presentation,
)
from cotorkit.poly import BiDegree


def coaction_strings(ca, name):
    return {(ca.hopf.algebra.mono_str(l), ca.algebra.mono_str(a)) for l, a in ca.coaction_pairs(ca.algebra.gen(name))}


def test_model_coactions():
    assert coaction_strings(model("gl:6"), "c1") == {("1", "c1")}
    assert coaction_strings(model("so:6"), "u2") == {("1", "u2"), ("x2", "1")}
    assert coaction_strings(model("sp:6"), "q1") == {("1", "q1"), ("x2^2", "1")}


@pytest.mark.parametrize("bad", ["gl", "so:7", "nope:2", "sp:0", "gl:x", "gm:2", "trivial:foo"])
def test_invalid_model_ids(bad):
    with pytest.raises(ValueError):
        model(bad)


def test_group_models():
    assert group_model("pgl", 1).name == model("gl:6").name
    assert group_model("psp", 2).algebra.names == model("sp:10").algebra.names
    with pytest.raises(ValueError):
        group_model("pu", 1)


def test_parse_poly():
    alg = model("gl:6").algebra
    p = parse_poly(alg, "c4 + c2^2 + c1^2*c2 + c2^2")
    assert p == alg.gen("c4") + alg.gen("c1") ** 2 * alg.gen("c2")
    assert parse_poly(alg, "0") == alg.zero()
    assert parse_poly(alg, "1") == alg.one()
    with pytest.raises(ValueError):
        parse_poly(alg, "c9")


def test_o2r_pullback_examples():
    alg = model("o:4").algebra
    assert str(o2r_pullback(alg.gen("u4"), 2)) == "t1*t2"
    assert o2r_pullback(parse_poly(alg, "u1*u2"), 2) == o2r_pullback(alg.gen("u1"), 2) * o2r_pullback(alg.gen("u2"), 2)
    assert o2r_pullback(alg.gen("u2"), 2) == parse_poly(model("o2_power:2").algebra, "t1 + t2")


@pytest.mark.parametrize("two_r", [2, 4, 6])
def test_pullback_square_commutes(two_r):
    rep = check_o2r_square(two_r, 10)
    assert rep.ok, rep.failures


def test_pullback_square_needs_u1():
    # without u1 the odd classes have nowhere to go
    assert not check_o2r_square(4, 10, keep_u1=False).ok


@pytest.mark.parametrize("n", [1, 2, 3])
def test_restriction_gl_to_sp(n):
    rep = check_bj(n, 12)
    assert rep.ok, rep.failures


def test_psi_is_a_coalgebra_isomorphism():
    rep = check_psi(12)
    assert rep.ok, rep.failures


def test_catalog_axioms():
    for rep in axiom_reports(12):
        assert rep.ok, (rep.name, rep.failures)
    assert len(axiom_reports(2)) == len(CATALOG_IDS)


def test_pgl_m0_presentation_is_free():
    tp = target_presentation("pgl", 0)
    assert tp.algebra.names == ("x2", "x3") and not tp.relations
    # free on (1,1) and (1,2): coefficients count pairs 2i + 3j = n
    expect = [sum(1 for i in range(n + 1) for j in range(n + 1) if 2 * i + 3 * j == n) for n in range(13)]
    assert tp.poincare(12) == expect


def test_pso_m1_presentation():
    tp = target_presentation("pso", 1)
    degs = {n: tp.algebra.mono_degree(tp.algebra.var_mono(n)) for n in tp.algebra.names}
    assert degs == {
        "x2": BiDegree(1, 1),
        "b2": BiDegree(4, 4),
        "b3": BiDegree(6, 6),
        "y2": BiDegree(1, 2),
        "y3": BiDegree(2, 3),
        "y2_3": BiDegree(4, 5),
    }
    assert "x2*y2" in tp.labels


def test_pgl_m1_presentation():
    tp = target_presentation("pgl", 1)
    alg = tp.algebra
    assert alg.mono_degree(alg.var_mono("y2")) == BiDegree(3, 3) and alg.mono_degree(alg.var_mono("b3")) == BiDegree(12, 12)
    assert alg.gen("x3") * alg.gen("y2") in tp.relations


def test_presentation_rejects_bad_input():
    with pytest.raises(ValueError):
        target_presentation("psp", 1)
    with pytest.raises(ValueError):
        target_presentation("pgl", -1)


@pytest.mark.parametrize("group", ["pgl", "pso"])
@pytest.mark.parametrize("m", [1, 2])
def test_relations_hold_on_constructed_classes(group, m):
    rep = check_relations(group, m)
    assert rep.ok, rep.failures
    assert rep.checked >= 1


@pytest.mark.parametrize("group", ["pgl", "pso"])
def test_cotor_level_products_vanish(group):
    rep = check_cotor_relations(group, 1)
    assert rep.ok, rep.failures


@pytest.mark.parametrize("group, m, top", [("pgl", 0, 12), ("pgl", 1, 14), ("pso", 1, 14), ("psp", 1, 12)])
def test_degeneration(group, m, top):
    res = degeneration_check(group, m, top)
    assert res.ok, res.summary()
    assert res.first_mismatch() is None
    assert all(row[3] for row in res.rows())


def test_degeneration_reports_mismatch():
    res = degeneration_check("pso", 1, 6)
    res.right = list(res.right)
    res.right[3] += 1
    assert not res.ok and res.first_mismatch() == 3
    assert "total degree 3" in res.summary()


def test_hodge_table_pgl6():
    ht = hodge_table(cotor_of("gl:6", 6))
    assert ht[(1, 1)] == 1 and ht[(1, 2)] == 1
    assert cotor_of("gl:6", 3).totals(3) == [1, 0, 1, 1]
    assert ht.negative_entries() == []


def test_hodge_table_pso6():
    assert cotor_of("so:6", 2).totals(2) == [1, 0, 1]
    assert hodge_table(cotor_of("so:6", 3))[(1, 2)] == 1


def test_hodge_table_psp6():
    ht = hodge_table(cotor_of("sp:6", 6))
    assert ht.at_total(5) == {(2, 3): 1}
    assert ht[(2, 3)] == 1


def test_rep_dims_reads_the_shifted_diagonal():
    ht = hodge_table(cotor_of("gl:6", 6))
    assert rep_dims(ht, 1, 1) == ht[(1, 2)]
    assert rep_dims(ht, 0, 0) == 1


def test_counting_formula_examples():
    assert pgl_counting_formula(1, 1, 1) == 1
    assert pgl_counting_formula(1, 9, 1) == 2  # 8 = 1*8 or 8
    assert pgl_counting_formula(1, 2, 3) == 0
    with pytest.raises(ValueError):
        pgl_counting_formula(1, 3, 0)


@settings(max_examples=50, deadline=None)
@given(st.integers(0, 40), st.lists(st.integers(1, 9), min_size=1, max_size=4, unique=True))
def test_count_partitions_matches_enumeration(n, parts):
    def brute(n, parts):
        if n == 0:
            return 1
        if not parts or n < 0:
            return 0
        return brute(n - parts[0], parts) + brute(n, parts[1:])

    assert count_partitions(n, parts) == brute(n, sorted(parts))


def test_small_pgl_rep_table_matches_formula():
    table = pgl_rep_table(1, 8, 4)
    for (i, j), d in table.items():
        if j >= 1:
            assert d == pgl_counting_formula(1, i, j), (i, j)


def test_pso_nonpure_examples():
    t = pso_nonpure_table(1, 8)
    assert t[(2, 1)] == 1 and t[(1, 1)] == 1


def test_pso_nonpure_consistency():
    rep = pso_nonpure_consistency(1, 12)
    assert rep.ok, rep.failures
