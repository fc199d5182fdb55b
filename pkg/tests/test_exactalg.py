from fractions import Fraction
from math import comb

import pytest
from hypothesis import given, settings, strategies as st

from momentangle.exactalg import (SeriesError, SparseBivariate, TruncatedSeries, mat_vec, rank,
                                  rank_kernel, rref, series_pow_factor, solve_preimage, to_rational)

small = st.integers(-4, 4)
matrices = st.integers(1, 5).flatmap(
    lambda c: st.lists(st.lists(small, min_size=c, max_size=c), min_size=1, max_size=5))


def test_to_rational():
    assert to_rational("3/4") == Fraction(3, 4)
    assert to_rational(2) == 2
    with pytest.raises((ValueError, TypeError)):
        to_rational(0.5)


def test_rref_small():
    R, piv = rref([[2, 4], [1, 3]])
    assert piv == [0, 1]
    assert R == [[1, 0], [0, 1]]
    assert rank([[1, 2, 3], [2, 4, 6], [0, 0, 1]]) == 2


@settings(max_examples=150, deadline=None)
@given(matrices)
def test_rank_nullity(rows):
    ncols = len(rows[0])
    r, kernel = rank_kernel(rows, ncols)
    assert r == rank(rows, ncols)
    assert r + len(kernel) == ncols
    for v in kernel:
        assert all(x == 0 for x in mat_vec(rows, v))


@settings(max_examples=150, deadline=None)
@given(matrices, st.lists(small, min_size=5, max_size=5))
def test_preimage(rows, x):
    ncols = len(rows[0])
    x = x[:ncols]
    b = mat_vec(rows, x)
    y = solve_preimage(rows, b, ncols)
    assert y is not None and mat_vec(rows, y) == b


def test_preimage_none():
    assert solve_preimage([[1, 1], [1, 1]], [1, 0]) is None


def test_series_arithmetic():
    a = TruncatedSeries.from_poly([1, -1], 6)
    inv = a.inverse()
    assert inv.coeffs == tuple(Fraction(1) for _ in range(7))
    assert (a * inv) == TruncatedSeries.one(6)
    assert str(TruncatedSeries.from_poly([1, -2, 0, 1], 3)) == "1 - 2t + t^3 + O(t^4)"
    with pytest.raises(SeriesError):
        TruncatedSeries.from_poly([0, 1], 3).inverse()


@settings(max_examples=60, deadline=None)
@given(st.integers(1, 4), st.integers(-6, 6), st.sampled_from([1, -1]))
def test_pow_factor_matches_repeated_product(d, e, sign):
    N = 12
    base = TruncatedSeries.from_poly([1] + [0] * (d - 1) + [sign], N)
    assert series_pow_factor(d, e, sign, N) == base ** e


def test_pow_factor_binomial():
    s = series_pow_factor(1, -3, 1, 5)
    assert [int(c) for c in s.coeffs] == [(-1) ** k * comb(k + 2, 2) for k in range(6)]


def test_bivariate_substitution():
    # (1 + st)^2 / (1 - st)
    F = SparseBivariate.from_factors([({(0, 0): 1, (1, 1): 1}, 2)], [({(0, 0): 1, (1, 1): -1}, 1)])
    assert F.value_at_origin() == 1
    at_one = F.substitute(("t", "1"), 4)
    assert at_one == TruncatedSeries.from_poly([1, 3, 4, 4, 4], 4)
    # s = t, t = -t turns st into -t^2
    assert F.substitute(("t", "-t"), 4) == TruncatedSeries.from_poly([1, 0, -3, 0, 4], 4)
    with pytest.raises(ValueError):
        F.substitute(("s", "t"))


def test_bivariate_json_round_trip():
    F = SparseBivariate({(1, 2): Fraction(1, 3), (0, 0): 1}, {(0, 0): 1, (2, 1): -2})
    assert SparseBivariate.from_dict(F.to_dict()) == F
    with pytest.raises(ValueError):
        SparseBivariate.from_dict({"num": [[-1, 0, 1]]})
