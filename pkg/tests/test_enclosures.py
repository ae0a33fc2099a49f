import random

import pytest

from helpers import contains_ref, rand_rat, ref_value, to_mpf
from nlsmt.enclosures import enclose_elementary, pi_interval
from nlsmt.errors import DomainViolation
from nlsmt.intervals import Interval
from nlsmt.rationals import Rat

FNS = ("exp", "ln", "sin", "cos", "tan", "arctan")


def _point(name, x, p, base=None):
    return enclose_elementary(name, Interval.point(Rat(x)), p, base=base)


def test_graph_point_examples():
    assert _point("exp", 0, 10).contains(Rat(1))
    iv = _point("exp", 0, 10)
    assert iv.hi - iv.lo <= Rat(1, 1 << 10)
    assert _point("sin", 0, 10).contains(Rat(0))
    assert _point("ln", 1, 10).contains(Rat(0))


def test_point_soundness_and_width_sampled():
    rng = random.Random(1234)
    for _ in range(250):
        x = rand_rat(rng, 300, 60)
        for name in FNS:
            if name == "ln" and x <= 0:
                continue
            iv = _point(name, x, 48)
            assert contains_ref(iv, ref_value(name, x)), (name, x, iv)
            assert iv.hi - iv.lo <= Rat(1, 1 << 48)


def test_monotone_refinement():
    rng = random.Random(99)
    for _ in range(40):
        x = rand_rat(rng, 50, 20)
        for name in FNS:
            if name == "ln" and x <= 0:
                continue
            prev = None
            for p in (16, 32, 64, 128):
                iv = _point(name, x, p)
                assert iv.hi - iv.lo <= Rat(1, 1 << p)
                if prev is not None:
                    assert prev.contains_interval(iv), (name, x, p, prev, iv)
                prev = iv


def test_log_b():
    iv = _point("log_b", 8, 30, base=Rat(2))
    assert iv.contains(Rat(3))
    iv = _point("log_b", Rat(1, 9), 30, base=Rat(3))
    assert contains_ref(iv, ref_value("log_b", Rat(1, 9), base=Rat(3)))
    # decreasing base below one
    iv = _point("log_b", 4, 30, base=Rat(1, 2))
    assert iv.contains(Rat(-2))


def test_pi_enclosure():
    iv = pi_interval(80)
    assert contains_ref(iv, __import__("mpmath").pi)
    assert iv.hi - iv.lo <= Rat(1, 1 << 78)


def test_ln_domain_violation():
    with pytest.raises(DomainViolation):
        _point("ln", -1, 16)
    with pytest.raises(DomainViolation):
        enclose_elementary("ln", Interval(0, 1), 16)


def test_tan_pole_detection():
    with pytest.raises(DomainViolation):
        enclose_elementary("tan", Interval(1, 2), 16)  # pi/2 inside
    iv = enclose_elementary("tan", Interval(0, 1), 16)
    assert contains_ref(iv, ref_value("tan", Rat(1)))


def test_box_enclosures_contain_sampled_values():
    rng = random.Random(5)
    for _ in range(100):
        a, b = sorted((rand_rat(rng, 40, 12), rand_rat(rng, 40, 12)))
        if a == b:
            continue
        box = Interval(a, b)
        for name in FNS:
            if name == "ln" and a <= 0:
                continue
            try:
                iv = enclose_elementary(name, box, 24)
            except DomainViolation:
                assert name == "tan"
                continue
            for _ in range(6):
                t = a + (b - a) * Rat(rng.randint(0, 16), 16)
                assert contains_ref(iv, ref_value(name, t)), (name, a, b, t)


def test_sin_box_hits_extrema():
    iv = enclose_elementary("sin", Interval(0, 7), 24)
    assert iv.contains(Rat(1)) and iv.contains(Rat(-1))
    iv = enclose_elementary("sin", Interval(1, 2), 24)  # max at pi/2 inside
    assert iv.contains(Rat(1))
    assert iv.lo > Rat(8, 10)


def test_unbounded_boxes():
    iv = enclose_elementary("exp", Interval(None, 0), 16)
    assert iv.lo == 0 and iv.hi is not None and iv.hi >= 1
    iv = enclose_elementary("arctan", Interval(None, None), 16)
    assert iv.lo is not None and iv.hi is not None  # within +-pi/2 bounds
    iv = enclose_elementary("sin", Interval(3, None), 16)
    assert iv.contains(Rat(1)) and iv.contains(Rat(-1))
