from fractions import Fraction
from itertools import combinations

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from wminimal import linalg, nilp
from shared import cb, datum


def test_principal_sl2():
    c, nd, dg = datum("A1", "principal")
    assert nilp.principal_coefficients(c) == [1]
    assert dg.kazhdan_degrees == (2,)
    assert dg.dim(1) == 1 and dg.dim(-1) == 1 and dg.dim(0) == 1
    assert [v for v, _ in dg.centralizer_e] == [tuple(nd.e)]


def test_principal_sl3():
    c, nd, dg = datum("A2", "principal")
    assert nilp.principal_coefficients(c) == [2, 2]
    assert dg.is_even
    assert dg.dim(1) == 2 and dg.dim(2) == 1
    assert dg.kazhdan_degrees == (2, 3)


@pytest.mark.parametrize("label,degrees", [("B2", (2, 4)), ("G2", (2, 6)), ("A3", (2, 3, 4)),
                                           ("C3", (2, 4, 6))])
def test_principal_kazhdan_degrees_are_exponents_plus_one(label, degrees):
    c, nd, dg = datum(label, "principal")
    assert dg.is_even
    assert len(dg.centralizer_e) == c.rs.rank
    assert dg.kazhdan_degrees == degrees


def test_minimal_sl3():
    c, nd, dg = datum("A2", "minimal")
    assert dg.dim(Fraction(1, 2)) == 2
    assert len(dg.g_geq1) == 1
    assert len(dg.centralizer_e) == 4


@pytest.mark.parametrize("label", ["A1", "A2", "B2", "G2", "A3"])
@pytest.mark.parametrize("kind", ["principal", "minimal"])
def test_triples_and_grading(label, kind):
    c, nd, dg = datum(label, kind)
    nd.check()
    assert sum(len(v) for v in dg.pieces.values()) == c.dim
    assert nilp.grading_defects(c, dg) == 0
    assert len(dg.g_half) % 2 == 0


def test_typeA_partitions():
    nd = nilp.sl2_triple_typeA(2, [2])
    assert nd.label == "principal"
    nd.check()
    nd21 = nilp.sl2_triple_typeA(3, [2, 1], cb("A2"))
    dg21 = nilp.dynkin_grading(cb("A2"), nd21)
    assert dg21.dim(Fraction(1, 2)) == 2
    nd3 = nilp.sl2_triple_typeA(3, [3], cb("A2"))
    dg3 = nilp.dynkin_grading(cb("A2"), nd3)
    _, _, dgp = datum("A2", "principal")
    assert {j: len(v) for j, v in dg3.pieces.items()} == {j: len(v) for j, v in dgp.pieces.items()}


@pytest.mark.parametrize("n,parts", [(4, [2, 2]), (4, [3, 1]), (5, [2, 2, 1]), (6, [3, 2, 1])])
def test_typeA_partition_triples(n, parts):
    nd = nilp.sl2_triple_typeA(n, parts)
    nd.check()
    dg = nilp.dynkin_grading(nd.cb, nd)
    # dim g^e for a partition lambda of n equals sum (2i-1) lambda_i - 1
    lam = sorted(parts, reverse=True)
    expected = sum((2 * i + 1) * p for i, p in enumerate(lam)) - 1
    assert len(dg.centralizer_e) == expected


@pytest.mark.parametrize("bad", ["p=2,2", "p=4", "p=0,3", "q=2,1", "p=2;1"])
def test_bad_partitions(bad):
    with pytest.raises(ValueError):
        nilp.nilpotent_from_label(cb("A2"), bad)


def test_half_form_nondegenerate():
    for label in ("A2", "A3", "B2", "G2"):
        c, nd, dg = datum(label, "minimal")
        m = nilp.half_form_matrix(dg, nd)
        n = len(m)
        assert all(m[i][j] == -m[j][i] for i in range(n) for j in range(n))
        assert linalg.rank_dense(m) == n if n else True


def test_half_form_rejects_outside():
    c, nd, dg = datum("A2", "minimal")
    with pytest.raises(ValueError):
        nilp.half_form(dg, nd, c.basis_vector(c.cartan_index(0)), c.basis_vector(dg.g_half[0]))


vals = st.fractions(min_value=-5, max_value=5, max_denominator=5)


@settings(max_examples=30, deadline=None)
@given(st.lists(vals, min_size=4, max_size=4))
def test_half_form_antisymmetric_random(xs):
    c, nd, dg = datum("A3", "minimal")
    half = dg.g_half
    x = [Fraction(0)] * c.dim
    y = [Fraction(0)] * c.dim
    for k, a, b in zip(half, xs, reversed(xs)):
        x[k], y[k] = a, b
    assert nilp.half_form(dg, nd, x, y) == -nilp.half_form(dg, nd, y, x)


@pytest.mark.parametrize("label", ["A2", "A3", "B2", "G2"])
def test_lagrangians(label):
    c, nd, dg = datum(label, "minimal")
    for rev in (False, True):
        lag = nilp.lagrangian(dg, nd, rev)
        assert len(lag) == len(dg.g_half) // 2
        for a, b in combinations(lag, 2):
            assert nd.chi_of(c.bracket(a, b)) == 0
        nilp.whittaker_subalgebra(dg, nd, lag)   # raises unless chi is a character


def test_lagrangian_choices_differ_for_sl3_minimal():
    c, nd, dg = datum("A2", "minimal")
    assert nilp.lagrangian(dg, nd) != nilp.lagrangian(dg, nd, reverse=True)


def test_principal_lagrangian_is_zero():
    c, nd, dg = datum("A2", "principal")
    assert nilp.lagrangian(dg, nd) == []


def test_non_isotropic_m_rejected():
    c, nd, dg = datum("A2", "minimal")
    with pytest.raises(ValueError):
        nilp.whittaker_subalgebra(dg, nd, [c.basis_vector(k) for k in dg.g_half])


def test_kk_bracket():
    c = cb("A1")
    e, f, h = c.e(0), c.f(0), c.cartan_index(0)
    assert nilp.kk_bracket(c, {(e,): 1}, {(f,): 1}) == {(h,): 1}
    ef = {tuple(sorted((e, f))): 1}
    assert nilp.kk_bracket(c, ef, {(h,): 1}) == {}
    casimir = {tuple(sorted((e, f))): 2, (h, h): Fraction(1, 2)}
    for k in range(3):
        assert nilp.kk_bracket(c, casimir, {(k,): 1}) == {}


def test_kk_jacobi_sl3_quadratics():
    c = cb("A2")
    alg = nilp.kk_algebra(c)
    polys = [{(0, 5): 1}, {(3,): 1, (1, 7): 2}, {(2, 6): 1, (4,): -1}]
    a, b, d = polys
    br = lambda x, y: nilp.kk_bracket(c, x, y, alg)  # noqa: E731
    total = {}
    from wminimal.superalg import padd
    padd(total, br(a, br(b, d)))
    padd(total, br(b, br(d, a)))
    padd(total, br(d, br(a, b)))
    assert total == {}


def _member(label, spec, q):
    c = cb(label)
    return nilp.variety_membership(c.rs, c, nilp.parse_element(c, spec), q)


def test_variety_sl2():
    assert _member("A1", "e1", 2)
    assert _member("A1", "0", 2)
    assert not _member("A1", "h1", 2)


def test_variety_sl3():
    assert not _member("A2", "principal", 2)
    assert _member("A2", "principal", 3)
    assert _member("A2", "minimal", 2)


@pytest.mark.parametrize("label,q", [("A1", 2), ("A2", 3), ("A2", 4)])
def test_variety_is_nilcone_for_large_q(label, q):
    for spec in ("0", "minimal", "principal", "e1", "f1"):
        assert _member(label, spec, q)
    for spec in ("h1", "e1+f1", "h1+e1"):
        assert not _member(label, spec, q)


def test_variety_short_root_module():
    # B2 with q even uses the 5-dimensional module, G2 with 3 | q the 7-dimensional
    # one; the principal nilpotent acts there by a single Jordan block
    assert _member("B2", "principal", 6)
    assert not _member("B2", "principal", 4)
    assert _member("B2", "minimal", 2)
    assert _member("G2", "principal", 12)
    assert not _member("G2", "principal", 9)


def test_parse_element():
    c = cb("A2")
    v = nilp.parse_element(c, "2*h1 - 1/2*f2")
    assert v[c.cartan_index(0)] == 2 and v[c.f(1)] == Fraction(-1, 2)
    with pytest.raises(ValueError):
        nilp.parse_element(c, "e1 + ?")
    with pytest.raises(ValueError):
        nilp.parse_element(c, "e7")
