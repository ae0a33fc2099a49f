"""Shared oracles for the test-suite: reference evaluation at 100+ digits,
random rational generation, and brute-force baselines."""

from __future__ import annotations

import random

import mpmath

from nlsmt.intervals import Interval
from nlsmt.rationals import Rat

mpmath.mp.dps = 110

REF_FNS = {
    "exp": mpmath.exp,
    "ln": mpmath.log,
    "sin": mpmath.sin,
    "cos": mpmath.cos,
    "tan": mpmath.tan,
    "arctan": mpmath.atan,
}


def to_mpf(q):
    return mpmath.mpf(int(q.numerator)) / int(q.denominator)


def ref_value(name: str, x, base=None):
    if name == "log_b":
        return mpmath.log(to_mpf(x)) / mpmath.log(to_mpf(base))
    return REF_FNS[name](to_mpf(x))


def contains_ref(iv: Interval, ref) -> bool:
    if iv.lo is not None and ref < to_mpf(iv.lo):
        return False
    if iv.hi is not None and ref > to_mpf(iv.hi):
        return False
    return True


def rand_rat(rng: random.Random, max_num: int = 1000, max_den: int = 1000):
    return Rat(rng.randint(-max_num, max_num), rng.randint(1, max_den))


def rand_interval(rng: random.Random, max_num: int = 50):
    a = rand_rat(rng, max_num, 20)
    b = rand_rat(rng, max_num, 20)
    if a > b:
        a, b = b, a
    lo_open = rng.random() < 0.3
    hi_open = rng.random() < 0.3
    if a == b:
        lo_open = hi_open = False
    kind = rng.random()
    if kind < 0.1:
        return Interval(None, b, True, hi_open)
    if kind < 0.2:
        return Interval(a, None, lo_open, True)
    return Interval(a, b, lo_open, hi_open)


def simplest_dyadic_oracle(iv: Interval, k_cap: int = 24):
    """Enumerate dyadics by (k, |m|) and return the first member of iv."""
    if iv.is_point():
        return iv.lo
    for k in range(k_cap + 1):
        den = 1 << k
        best = None
        # scan |m| outward from 0 within a generous window
        lo = iv.lo
        hi = iv.hi
        lo_m = -(1 << 14) if lo is None else int(lo * den) - 2
        hi_m = (1 << 14) if hi is None else int(hi * den) + 2
        for m in sorted(range(lo_m, hi_m + 1), key=abs):
            q = Rat(m, den)
            if iv.contains(q):
                best = q
                break
        if best is not None:
            return best
    raise AssertionError("oracle exhausted")


def simplest_rational_oracle(iv: Interval, den_cap: int = 200):
    """Enumerate rationals by (denominator, |numerator|), first member wins."""
    if iv.is_point():
        return iv.lo
    for den in range(1, den_cap + 1):
        lo = iv.lo
        hi = iv.hi
        lo_m = -(den_cap * den) if lo is None else int(lo * den) - 2
        hi_m = den_cap * den if hi is None else int(hi * den) + 2
        best = None
        for m in sorted(range(lo_m, hi_m + 1), key=abs):
            q = Rat(m, den)
            if q.denominator != den:
                continue
            if iv.contains(q):
                best = q
                break
        if best is not None:
            return best
    raise AssertionError("oracle exhausted")
