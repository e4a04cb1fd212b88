import itertools
from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from monadlab import TruncatedSeries, enumerate_projective_points, projective_points, series_power
from monadlab.points import num_projective_points


@pytest.mark.parametrize("k,q,count", [(2, 2, 7), (3, 3, 40), (0, 5, 1), (0, 2, 1), (2, 3, 13)])
def test_point_counts(k, q, count):
    pts = list(enumerate_projective_points(k, q))
    assert len(pts) == count == num_projective_points(k, q)


@pytest.mark.parametrize("k,q", [(1, 5), (2, 3), (3, 2), (2, 7)])
def test_points_are_canonical_and_distinct(k, q):
    pts = list(enumerate_projective_points(k, q))
    assert len(set(pts)) == len(pts)
    for p in pts:
        lead = next(x for x in p if x)
        assert lead == 1
    # brute force: every nonzero vector is a multiple of exactly one listed point
    reps = set(pts)
    for v in itertools.product(range(q), repeat=k + 1):
        if not any(v):
            continue
        lead = next(x for x in v if x)
        inv = pow(lead, q - 2, q)
        assert tuple(x * inv % q for x in v) in reps
    assert [tuple(r) for r in projective_points(k, q).tolist()] == pts


def test_points_reject_bad_input():
    with pytest.raises(ValueError):
        list(enumerate_projective_points(2, 4))
    with pytest.raises(ValueError):
        list(enumerate_projective_points(-1, 3))


def test_series_examples():
    assert series_power(TruncatedSeries([1, -1], 3), -1) == TruncatedSeries([1, 1, 1, 1], 3)
    s = TruncatedSeries([1, 5, 2], 4)
    assert series_power(s, 0) == TruncatedSeries.one(4)
    assert series_power(TruncatedSeries([1, 2], 4), 2) == TruncatedSeries([1, 4, 4], 4)


def test_series_negative_power_needs_unit():
    with pytest.raises(ZeroDivisionError):
        series_power(TruncatedSeries([0, 1], 3), -2)


@settings(max_examples=60, deadline=None)
@given(st.lists(st.integers(-4, 4), min_size=0, max_size=4), st.sampled_from([1, -1, 2, -3]),
       st.integers(-6, 6), st.integers(1, 6))
def test_series_power_inverse_pair(tail, c0, e, cap):
    s = TruncatedSeries([c0] + tail, cap)
    prod = series_power(s, e) * series_power(s, -e)
    assert prod == TruncatedSeries.one(cap)


def test_series_truncates():
    s = TruncatedSeries([1, 1], 2) * TruncatedSeries([1, 1], 2) * TruncatedSeries([1, 1], 2)
    assert [s[i] for i in range(3)] == [1, 3, 3]
    assert s[2] == Fraction(3)
