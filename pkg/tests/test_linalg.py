from fractions import Fraction

from hypothesis import given, settings
from hypothesis import strategies as st

from wminimal import linalg

entries = st.integers(min_value=-3, max_value=3)
matrices = st.integers(1, 6).flatmap(
    lambda r: st.integers(1, 6).flatmap(
        lambda c: st.lists(st.lists(entries, min_size=c, max_size=c), min_size=r, max_size=r)))


def _sparse(rows):
    return [{j: x for j, x in enumerate(row) if x} for row in rows]


@settings(max_examples=150, deadline=None)
@given(matrices)
def test_sparse_rank_matches_dense(m):
    r = linalg.rank_dense(m)
    assert linalg.rank(_sparse(m)) == r
    assert linalg.rank(_sparse(m), linalg.DEFAULT_PRIME) <= r


@settings(max_examples=100, deadline=None)
@given(matrices)
def test_kernel_is_kernel(m):
    ncols = len(m[0])
    ker = linalg.kernel(m, ncols)
    assert len(ker) + linalg.rank_dense(m) == ncols
    for v in ker:
        assert all(sum(Fraction(a) * b for a, b in zip(row, v)) == 0 for row in m)


def test_modular_rank_can_drop():
    # rank 2 over Q, rank 1 modulo 5
    m = [{0: 1, 1: 2}, {0: 3, 1: 1}]
    assert linalg.rank(m) == 2
    assert linalg.rank(m, 5) == 1


def test_cumulative_ranks():
    vecs = [{0: 1}, {0: 2}, {1: 1}, {0: 1, 1: 1}, {2: Fraction(1, 3)}]
    assert linalg.cumulative_ranks(vecs, [0, 1, 2, 3, 5]) == [0, 1, 1, 2, 3]


def test_echelon_reports_independence():
    e = linalg.Echelon()
    assert e.insert({0: Fraction(1, 2), 3: 1})
    assert not e.insert({0: 1, 3: 2})
    assert e.insert({3: 1})
    assert len(e) == 2


def test_nilpotency_order():
    jordan = [[0, 1, 0], [0, 0, 1], [0, 0, 0]]
    assert linalg.nilpotency_order(jordan) == 3
    assert linalg.matpow_is_zero(jordan, 3)
    assert not linalg.matpow_is_zero(jordan, 2)
    assert linalg.nilpotency_order([[1]]) is None


def test_solve_and_span():
    m = [[1, 2], [3, 4]]
    x = linalg.solve(m, [5, 6])
    assert x == [Fraction(-4), Fraction(9, 2)]
    assert linalg.in_span([[1, 0, 1]], [2, 0, 2])
    assert not linalg.in_span([[1, 0, 1]], [0, 1, 0])


def test_sparse_compose():
    first = [{0: 1, 1: 2}]
    second = [{0: 1}, {0: Fraction(-1, 2)}]
    assert linalg.sparse_compose(second, first) == [{}]
