from fractions import Fraction

import pytest

from wminimal import affine
from wminimal.affine import AffineRealRoot, AffineWeight
from shared import rs

A1_CASES = [(3, 2), (3, 4), (5, 2), (5, 4)]


def sl2_oracle(p, q, scale=3):
    """Admissible weights of sl2-hat at k = p/q - 2 by brute force.

    Independent of the library: the pairing is evaluated from its closed
    form, regular dominance is scanned on the window n <= q h (p + 1), and
    every full-rank subsystem of the sl2-hat real roots is of the same affine
    type, so Pr^k is the set of admissible weights.
    """
    s = Fraction(p, q)
    window = q * 2 * (p + 1)
    found = []
    for num in range(-scale * p * q, scale * p * q + 1):
        m = Fraction(num, q)            # <lambda + rho, alpha^vee>

        def values():
            for n in range(0, window + 1):
                if n > 0:
                    yield m + n * s, -m + n * s
                else:
                    yield (m,)

        ok = True
        integral = False
        for vs in values():
            for v in vs:
                if v.denominator == 1:
                    integral = True
                    if v <= 0:
                        ok = False
        if ok and integral:
            found.append(m - 1)
    return found


@pytest.mark.parametrize("p,q", A1_CASES)
def test_sl2_counts_match_oracle(p, q):
    k = Fraction(p, q) - 2
    pr = affine.enumerate_Pr_k(rs("A1"), k)
    nondeg = affine.enumerate_Pr_k_nondeg(rs("A1"), k)
    oracle = sl2_oracle(p, q)
    assert sorted(w.finite_part[0] for w in pr) == sorted(oracle)
    assert len(pr) == (p - 1) * q
    assert len(nondeg) == (p - 1) * (q - 1)
    assert len([x for x in oracle if x.denominator != 1]) == len(nondeg)


def test_sl2_examples():
    A1 = rs("A1")
    assert [w.finite_part for w in affine.enumerate_Pr_k(A1, 1)] == [(0,), (1,)]
    assert affine.enumerate_Pr_k_nondeg(A1, 1) == []
    assert len(affine.enumerate_Pr_k(A1, Fraction(-1, 4))) == 24
    assert len(affine.enumerate_Pr_k_nondeg(A1, Fraction(-1, 4))) == 18


def test_missed_by_positive_box():
    # lambda-bar = -3/2 omega at k = -1/2 has <lambda + rho, alpha^vee> = -1/2 < 0
    w = AffineWeight((Fraction(-3, 2),), Fraction(-1, 2))
    assert w in affine.enumerate_Pr_k(rs("A1"), Fraction(-1, 2))


@pytest.mark.parametrize("label,p,q", [("A2", 4, 3), ("B2", 3, 5), ("B2", 4, 3)])
def test_grid_is_complete(label, p, q):
    R = rs(label)
    k = Fraction(p, q) - R.dual_coxeter_hv
    got = set(affine.enumerate_Pr_k(R, k))
    ref = affine.integral_root_datum(R, AffineWeight.vacuum(R, k)).cartan_matrix_of_integral_system
    wide = []
    bound = 2 * R.lacing_rv * p * q

    def rec(prefix):
        if len(prefix) == R.rank:
            w = AffineWeight(tuple(x - 1 for x in prefix), k)
            if affine.is_admissible_weight(R, w) and affine.isomorphic_cartan(
                    affine.integral_root_datum(R, w).cartan_matrix_of_integral_system, ref):
                wide.append(w)
            return
        for num in range(-bound, bound + 1):
            rec(prefix + (Fraction(num, q),))

    rec(())
    assert set(wide) == got


@pytest.mark.parametrize("label,p,q,count", [("A2", 4, 3, 27), ("A2", 5, 4, 96), ("B2", 3, 5, 25),
                                             ("B2", 4, 3, 27)])
def test_counts_in_rank_two(label, p, q, count):
    R = rs(label)
    assert len(affine.enumerate_Pr_k(R, Fraction(p, q) - R.dual_coxeter_hv)) == count


def test_pairing_examples():
    A1, A2 = rs("A1"), rs("A2")
    assert affine.affine_pairing(A1, AffineWeight((0,), 0), AffineRealRoot((1,), 0)) == 1
    assert affine.affine_pairing(A1, AffineWeight((0,), Fraction(-1, 2)),
                                 AffineRealRoot((-1,), 1)) == Fraction(1, 2)
    assert affine.affine_pairing(A2, AffineWeight((1, 0), 1), AffineRealRoot((1, 1), 0)) == 3


def test_pairing_rejects_zero_root():
    with pytest.raises(ValueError):
        AffineRealRoot((0,), 1)


def test_regular_dominance():
    A1 = rs("A1")
    assert affine.is_regular_dominant(A1, AffineWeight((0,), Fraction(-1, 2)))
    assert not affine.is_regular_dominant(A1, AffineWeight((-2,), Fraction(-1, 2)))
    assert affine.is_regular_dominant(A1, AffineWeight((1,), 1))
    with pytest.raises(affine.UnsupportedRegime):
        affine.is_regular_dominant(A1, AffineWeight((0,), -2))


def test_integral_root_data():
    A1 = rs("A1")
    d0 = affine.integral_root_datum(A1, AffineWeight((0,), 0))
    assert all(True for _ in d0.integral_roots)
    assert len(d0.integral_roots) == 2 * (2 * d0.window + 1)
    d = affine.integral_root_datum(A1, AffineWeight((0,), Fraction(-1, 2)))
    assert all(r.delta_multiple % 2 == 0 for r in d.integral_roots)
    assert [(r.finite_root, r.delta_multiple) for r in d.simple_system] == [((1,), 0), ((-1,), 2)]
    d2 = affine.integral_root_datum(rs("A2"), AffineWeight((0, 0), Fraction(-3, 2)))
    assert all(r.delta_multiple % 2 == 0 for r in d2.integral_roots)


@pytest.mark.parametrize("label", ["A1", "A2", "B2", "G2", "C3"])
def test_integral_level_gives_extended_cartan_matrix(label):
    R = rs(label)
    d = affine.integral_root_datum(R, AffineWeight.vacuum(R, 1))
    assert d.rank == R.rank + 1
    # the extended matrix: finite block plus the -theta + delta node
    finite = [r for r in d.simple_system if r.delta_multiple == 0]
    assert len(finite) == R.rank
    extra = [r for r in d.simple_system if r.delta_multiple == 1]
    assert [r.finite_root for r in extra] == [tuple(-c for c in R.theta)]


def test_admissible_weights():
    A1 = rs("A1")
    assert affine.is_admissible_weight(A1, AffineWeight((0,), Fraction(-1, 2)))
    assert affine.is_admissible_weight(A1, AffineWeight((0,), Fraction(-1, 3)))
    assert not affine.is_admissible_weight(A1, AffineWeight((Fraction(1, 3),), Fraction(-1, 2)))


@pytest.mark.parametrize("label,k,expected", [
    ("A1", Fraction(-1, 2), (True, 3, 2)), ("A1", Fraction(-4, 3), (True, 2, 3)),
    ("A1", Fraction(-3, 2), (False, 1, 2)), ("B2", Fraction(-9, 4), (False, 3, 4)),
    ("B2", Fraction(-1, 2), (True, 5, 2)), ("G2", Fraction(-7, 3), (False, 5, 3)),
    ("G2", Fraction(-5, 3), (True, 7, 3)),
])
def test_admissible_numbers(label, k, expected):
    info = affine.is_admissible_number(rs(label), k)
    assert (info.admissible, info.p, info.q) == expected


def test_critical_level():
    info = affine.is_admissible_number(rs("A1"), -2)
    assert not info.admissible and info.p is None and "critical" in info.reason


def test_vacuum_in_pr_k():
    for label, k in [("A1", Fraction(-1, 2)), ("A2", Fraction(-7, 4)), ("B2", Fraction(-12, 5))]:
        R = rs(label)
        assert AffineWeight.vacuum(R, k) in affine.enumerate_Pr_k(R, k)


def test_refusals():
    A1 = rs("A1")
    with pytest.raises(affine.ResourceRefused):
        affine.enumerate_Pr_k(A1, Fraction(131, 65) - 2)
    with pytest.raises(affine.NotAdmissible):
        affine.enumerate_Pr_k(A1, Fraction(-3, 2))


def test_output_sorted_and_deterministic():
    a = affine.enumerate_Pr_k(rs("A2"), Fraction(-7, 4))
    assert a == sorted(a) == affine.enumerate_Pr_k(rs("A2"), Fraction(-7, 4))


def test_isomorphic_cartan():
    a = ((2, -1), (-2, 2))
    b = ((2, -2), (-1, 2))
    assert affine.isomorphic_cartan(a, b)
    assert not affine.isomorphic_cartan(a, ((2, -1), (-1, 2)))
