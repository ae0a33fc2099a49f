"""Selection of simple rational values inside intervals.

Two notions of "simple": the dyadic m/2^k with minimal k then minimal |m|,
and the rational with the shortest continued-fraction representation (the
first Stern-Brocot tree node inside the interval).  Both are deterministic,
which the solver relies on for reproducible runs.
"""

from __future__ import annotations

from .errors import EmptyInterval
from .intervals import Interval, IntervalSet
from .rationals import Q0, Rat, qceil, qfloor


def _least_integer_above(bound, open_: bool) -> int:
    n = qceil(bound)
    if open_ and n == bound:
        n += 1
    return n


def _greatest_integer_below(bound, open_: bool) -> int:
    n = qfloor(bound)
    if open_ and n == bound:
        n -= 1
    return n


def _integer_in(iv: Interval):
    """Minimal-|m| integer in iv, or None."""
    if iv.lo is None and iv.hi is None:
        return 0
    if iv.lo is None:
        m = _greatest_integer_below(iv.hi, iv.hi_open)
        return min(m, 0) if m >= 0 else m
    if iv.hi is None:
        m = _least_integer_above(iv.lo, iv.lo_open)
        return max(m, 0) if m <= 0 else m
    lo = _least_integer_above(iv.lo, iv.lo_open)
    hi = _greatest_integer_below(iv.hi, iv.hi_open)
    if lo > hi:
        return None
    if lo <= 0 <= hi:
        return 0
    return lo if lo > 0 else hi


def simplest_dyadic_in(iv: Interval):
    """The dyadic m/2^k in iv with k minimal, then |m| minimal."""
    if iv.is_point():
        return iv.lo
    k = 0
    scaled = iv
    while True:
        m = _integer_in(scaled)
        if m is not None:
            return Rat(m, 1 << k)
        k += 1
        lo = None if iv.lo is None else iv.lo * (1 << k)
        hi = None if iv.hi is None else iv.hi * (1 << k)
        scaled = Interval(lo, hi, iv.lo_open, iv.hi_open)


def _simplest_positive(lo, lo_open, hi, hi_open):
    """Continued-fraction descent; bounds satisfy 0 <= lo < hi (hi may be None)."""
    n = _least_integer_above(lo, lo_open)
    if n == 0:
        n = 1
    if hi is None or n < hi or (n == hi and not hi_open):
        return Rat(n)
    # lo and hi share the integer part; recurse on the reciprocal remainder
    a = qfloor(lo)
    inner = _simplest_positive(
        1 / (hi - a),
        hi_open,
        1 / (lo - a) if lo != a else None,
        lo_open,
    )
    return a + 1 / inner


def simplest_rational_in(iv: Interval):
    """The rational in iv with minimal denominator, then minimal |numerator|."""
    if iv.is_point():
        return iv.lo
    if iv.contains(Q0):
        return Q0
    if (iv.hi is not None and iv.hi < 0) or (iv.hi == 0 and iv.hi_open):
        lo = None if iv.hi is None else -iv.hi
        hi = None if iv.lo is None else -iv.lo
        return -_simplest_positive(lo if lo is not None else Q0, iv.hi_open, hi, iv.lo_open)
    return _simplest_positive(iv.lo if iv.lo is not None else Q0, iv.lo_open, iv.hi, iv.hi_open)


_RANK = {
    "dyadic": lambda q: _dyadic_rank(q),
    "cf": lambda q: (int(q.denominator), abs(int(q.numerator))),
}


def _dyadic_rank(q):
    den = int(q.denominator)
    k = den.bit_length() - 1  # den is a power of two for dyadic candidates
    return (k, abs(int(q.numerator)))


def choose_simplest(parts: IntervalSet, strategy: str = "dyadic"):
    """Simplest value across all member intervals of a non-empty set."""
    if parts.is_empty():
        raise EmptyInterval("no feasible values")
    pick = simplest_dyadic_in if strategy == "dyadic" else simplest_rational_in
    best = None
    best_rank = None
    for iv in parts:
        q = pick(iv)
        rank = _RANK[strategy](q)
        if best is None or rank < best_rank:
            best, best_rank = q, rank
    return best
