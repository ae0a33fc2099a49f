import random

import pytest

from helpers import rand_interval, simplest_dyadic_oracle, simplest_rational_oracle
from nlsmt.errors import EmptyInterval
from nlsmt.intervals import Interval, IntervalSet
from nlsmt.rationals import Rat
from nlsmt.selection import choose_simplest, simplest_dyadic_in, simplest_rational_in


def test_dyadic_examples():
    assert simplest_dyadic_in(Interval(0, 1, True, True)) == Rat(1, 2)
    assert simplest_dyadic_in(Interval(2, 2)) == Rat(2)
    assert simplest_dyadic_in(Interval(Rat(5, 3), None)) == Rat(2)


def test_rational_examples():
    assert simplest_rational_in(Interval(0, None, True, True)) == Rat(1)
    assert simplest_rational_in(Interval(Rat(19, 12), Rat(19, 12))) == Rat(19, 12)
    assert simplest_rational_in(Interval(Rat(1, 3), Rat(2, 3), True, True)) == Rat(1, 2)


def test_membership_random():
    rng = random.Random(21)
    for _ in range(500):
        iv = rand_interval(rng)
        d = simplest_dyadic_in(iv)
        r = simplest_rational_in(iv)
        assert iv.contains(d), (iv, d)
        assert iv.contains(r), (iv, r)


def test_dyadic_against_enumeration_oracle():
    rng = random.Random(22)
    for _ in range(300):
        iv = rand_interval(rng, 16)
        got = simplest_dyadic_in(iv)
        want = simplest_dyadic_oracle(iv)
        assert got == want, (iv, got, want)


def test_rational_against_enumeration_oracle():
    rng = random.Random(23)
    for _ in range(300):
        iv = rand_interval(rng, 16)
        got = simplest_rational_in(iv)
        want = simplest_rational_oracle(iv)
        assert got == want, (iv, got, want)


def test_determinism():
    rng = random.Random(24)
    for _ in range(100):
        iv = rand_interval(rng)
        assert simplest_dyadic_in(iv) == simplest_dyadic_in(iv)
        assert simplest_rational_in(iv) == simplest_rational_in(iv)


def test_choose_simplest_over_sets():
    s = IntervalSet([Interval(1, 3, False, True)])
    assert choose_simplest(s, "dyadic") == Rat(1)
    s = IntervalSet([Interval(0, 1, False, True), Interval(3, 4, True, False)])
    assert choose_simplest(s, "dyadic") == Rat(0)
    s = IntervalSet([Interval(Rat(19, 12), Rat(19, 12))])
    assert choose_simplest(s, "dyadic") == Rat(19, 12)
    assert choose_simplest(s, "cf") == Rat(19, 12)
    with pytest.raises(EmptyInterval):
        choose_simplest(IntervalSet([]), "dyadic")


def test_negative_intervals():
    assert simplest_rational_in(Interval(Rat(-2, 3), Rat(-1, 3), True, True)) == Rat(-1, 2)
    assert simplest_dyadic_in(Interval(None, Rat(-5, 3))) == Rat(-2)
