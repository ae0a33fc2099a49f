import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from helpers import rand_interval, rand_rat
from nlsmt.errors import EmptyInterval, ReciprocalOfZeroSpanningInterval
from nlsmt.intervals import Interval, IntervalSet, add, int_pow, interval_arith, mul, neg, recip
from nlsmt.rationals import Rat


def iv(a, b, lo_open=False, hi_open=False):
    return Interval(a, b, lo_open, hi_open)


def test_add_endpoints():
    assert interval_arith("add", iv(1, 2), iv(3, 4)) == iv(4, 6)


def test_mul_spans_zero():
    # min/max over the four endpoint products
    assert interval_arith("mul", iv(-1, 2), iv(3, 4)) == iv(-4, 8)


def test_recip_positive():
    assert interval_arith("recip", iv(2, 4)) == iv(Rat(1, 4), Rat(1, 2))


def test_recip_zero_spanning_errors():
    with pytest.raises(ReciprocalOfZeroSpanningInterval):
        recip(iv(-1, 1))
    with pytest.raises(ReciprocalOfZeroSpanningInterval):
        recip(iv(0, 1))


def test_recip_open_zero_endpoint():
    assert recip(iv(0, 2, True, False)) == Interval(Rat(1, 2), None, False, True)


def test_int_pow():
    assert int_pow(iv(-1, 2), 2) == iv(0, 4)
    assert int_pow(iv(-2, -1), 3) == iv(-8, -1)
    assert int_pow(iv(-3, 5), 0) == iv(1, 1)


def test_empty_interval_is_an_error_not_inverted():
    with pytest.raises(EmptyInterval):
        Interval(2, 1)
    with pytest.raises(EmptyInterval):
        Interval(1, 1, True, False)


def test_mul_sampled_containment():
    rng = random.Random(7)
    for _ in range(300):
        a, b = rand_interval(rng), rand_interval(rng)
        prod = mul(a, b)
        for _ in range(8):
            x = _sample(rng, a)
            y = _sample(rng, b)
            if x is None or y is None:
                continue
            assert prod.contains(x * y), (a, b, x, y, prod)


def _sample(rng, interval):
    lo = interval.lo if interval.lo is not None else Rat(-100)
    hi = interval.hi if interval.hi is not None else Rat(100)
    if lo > hi:
        return None
    q = lo + (hi - lo) * Rat(rng.randint(1, 9), 10)
    return q if interval.contains(q) else None


def _rand_parts(rng, n):
    return [rand_interval(rng, 20) for _ in range(n)]


def test_interval_set_normalize_idempotent_random():
    rng = random.Random(11)
    for _ in range(300):
        s = IntervalSet(_rand_parts(rng, rng.randint(0, 5)))
        again = IntervalSet(s.parts)
        assert s == again


@settings(max_examples=200, deadline=None)
@given(st.lists(st.tuples(st.integers(-30, 30), st.integers(1, 30), st.integers(-30, 30),
                          st.integers(1, 30), st.booleans(), st.booleans()), max_size=5))
def test_interval_set_normalize_idempotent(parts):
    ivs = []
    for an, ad, bn, bd, lo_open, hi_open in parts:
        a, b = Rat(an, ad), Rat(bn, bd)
        if a > b:
            a, b = b, a
        if a == b:
            lo_open = hi_open = False
        ivs.append(Interval(a, b, lo_open, hi_open))
    s = IntervalSet(ivs)
    assert IntervalSet(s.parts) == s
    # members pairwise disjoint and sorted
    for left, right in zip(s.parts, s.parts[1:]):
        assert left.hi is not None and right.lo is not None
        assert left.hi < right.lo or (left.hi == right.lo and left.hi_open and right.lo_open)


def test_interval_set_membership_after_normalize():
    rng = random.Random(3)
    for _ in range(200):
        parts = _rand_parts(rng, 3)
        s = IntervalSet(parts)
        for _ in range(10):
            q = rand_rat(rng, 30, 10)
            assert s.contains(q) == any(p.contains(q) for p in parts)


def test_intersection_matches_membership():
    rng = random.Random(5)
    for _ in range(200):
        s1 = IntervalSet(_rand_parts(rng, 2))
        s2 = IntervalSet(_rand_parts(rng, 2))
        inter = s1.intersect(s2)
        for _ in range(10):
            q = rand_rat(rng, 30, 10)
            assert inter.contains(q) == (s1.contains(q) and s2.contains(q))
