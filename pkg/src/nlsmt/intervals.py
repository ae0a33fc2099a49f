"""Rational intervals and normalized interval sets.

Endpoints are exact rationals or infinite (None).  The empty set is the
distinct `EMPTY` sentinel, never an inverted interval.  All set-valued
operations return the tightest rational-endpoint result for monotone pieces;
enclosures of genuinely transcendental images live in `enclosures`.
"""

from __future__ import annotations

from .errors import EmptyInterval, ReciprocalOfZeroSpanningInterval
from .rationals import Q0, Q1, Rat


class Interval:
    """A non-empty rational interval; lo/hi of None mean -inf/+inf."""

    __slots__ = ("lo", "hi", "lo_open", "hi_open")

    def __init__(self, lo, hi, lo_open: bool = False, hi_open: bool = False):
        if lo is not None:
            lo = Rat(lo)
            lo_open = bool(lo_open)
        else:
            lo_open = True
        if hi is not None:
            hi = Rat(hi)
            hi_open = bool(hi_open)
        else:
            hi_open = True
        if lo is not None and hi is not None:
            if lo > hi or (lo == hi and (lo_open or hi_open)):
                raise EmptyInterval(f"no rationals in bounds ({lo}, {hi})")
        self.lo = lo
        self.hi = hi
        self.lo_open = lo_open
        self.hi_open = hi_open

    @staticmethod
    def point(q) -> "Interval":
        return Interval(q, q)

    @staticmethod
    def real_line() -> "Interval":
        return Interval(None, None)

    def is_point(self) -> bool:
        return self.lo is not None and self.lo == self.hi

    def width(self):
        """Exact width, or None when an endpoint is infinite."""
        if self.lo is None or self.hi is None:
            return None
        return self.hi - self.lo

    def contains(self, q) -> bool:
        if self.lo is not None:
            if q < self.lo or (q == self.lo and self.lo_open):
                return False
        if self.hi is not None:
            if q > self.hi or (q == self.hi and self.hi_open):
                return False
        return True

    def contains_interval(self, other: "Interval") -> bool:
        if self.lo is not None:
            if other.lo is None:
                return False
            if other.lo < self.lo:
                return False
            if other.lo == self.lo and self.lo_open and not other.lo_open:
                return False
        if self.hi is not None:
            if other.hi is None:
                return False
            if other.hi > self.hi:
                return False
            if other.hi == self.hi and self.hi_open and not other.hi_open:
                return False
        return True

    def intersect(self, other: "Interval"):
        """Intersection, or None when disjoint (EMPTY stays a sentinel)."""
        lo, lo_open = self.lo, self.lo_open
        if other.lo is not None and (lo is None or other.lo > lo):
            lo, lo_open = other.lo, other.lo_open
        elif other.lo is not None and other.lo == lo:
            lo_open = lo_open or other.lo_open
        hi, hi_open = self.hi, self.hi_open
        if other.hi is not None and (hi is None or other.hi < hi):
            hi, hi_open = other.hi, other.hi_open
        elif other.hi is not None and other.hi == hi:
            hi_open = hi_open or other.hi_open
        if lo is not None and hi is not None:
            if lo > hi or (lo == hi and (lo_open or hi_open)):
                return None
        return Interval(lo, hi, lo_open, hi_open)

    def hull(self, other: "Interval") -> "Interval":
        if self.lo is None or other.lo is None:
            lo, lo_open = None, True
        elif self.lo < other.lo:
            lo, lo_open = self.lo, self.lo_open
        elif other.lo < self.lo:
            lo, lo_open = other.lo, other.lo_open
        else:
            lo, lo_open = self.lo, self.lo_open and other.lo_open
        if self.hi is None or other.hi is None:
            hi, hi_open = None, True
        elif self.hi > other.hi:
            hi, hi_open = self.hi, self.hi_open
        elif other.hi > self.hi:
            hi, hi_open = other.hi, other.hi_open
        else:
            hi, hi_open = self.hi, self.hi_open and other.hi_open
        return Interval(lo, hi, lo_open, hi_open)

    def __eq__(self, other):
        return (
            isinstance(other, Interval)
            and self.lo == other.lo
            and self.hi == other.hi
            and self.lo_open == other.lo_open
            and self.hi_open == other.hi_open
        )

    def __hash__(self):
        return hash((self.lo, self.hi, self.lo_open, self.hi_open))

    def __repr__(self):
        lb = "(" if self.lo_open else "["
        rb = ")" if self.hi_open else "]"
        lo = "-inf" if self.lo is None else str(self.lo)
        hi = "+inf" if self.hi is None else str(self.hi)
        return f"{lb}{lo}, {hi}{rb}"


def add(a: Interval, b: Interval) -> Interval:
    lo = None if a.lo is None or b.lo is None else a.lo + b.lo
    hi = None if a.hi is None or b.hi is None else a.hi + b.hi
    return Interval(
        lo,
        hi,
        a.lo_open or b.lo_open,
        a.hi_open or b.hi_open,
    )


def neg(a: Interval) -> Interval:
    lo = None if a.hi is None else -a.hi
    hi = None if a.lo is None else -a.lo
    return Interval(lo, hi, a.hi_open, a.lo_open)


def scale(a: Interval, q) -> Interval:
    """Multiply by an exact rational constant."""
    if q == 0:
        return Interval.point(Q0)
    if q < 0:
        return scale(neg(a), -q)
    lo = None if a.lo is None else a.lo * q
    hi = None if a.hi is None else a.hi * q
    return Interval(lo, hi, a.lo_open, a.hi_open)


def _end_products(a: Interval, b: Interval):
    """Corner products over the extended reals with the 0*inf = 0 convention.

    Along an edge whose finite coordinate is exactly zero all products vanish,
    so a zero endpoint paired with an infinite one contributes the candidate 0
    (attained iff the zero endpoint is attained) rather than an infinity.
    """
    candidates = []
    inf_lo = False
    inf_hi = False
    for x, xo, xs in ((a.lo, a.lo_open, -1), (a.hi, a.hi_open, 1)):
        for y, yo, ys in ((b.lo, b.lo_open, -1), (b.hi, b.hi_open, 1)):
            if x is None and y is None:
                if xs * ys > 0:
                    inf_hi = True
                else:
                    inf_lo = True
                continue
            if x is None or y is None:
                fin, fin_open, sign_inf = (y, yo, xs) if x is None else (x, xo, ys)
                if fin == 0:
                    candidates.append((Q0, fin_open))
                    continue
                if (fin > 0) == (sign_inf > 0):
                    inf_hi = True
                else:
                    inf_lo = True
                continue
            candidates.append((x * y, xo or yo))
    return candidates, inf_lo, inf_hi


def mul(a: Interval, b: Interval) -> Interval:
    candidates, inf_lo, inf_hi = _end_products(a, b)
    lo = hi = None
    lo_open = hi_open = True
    if not inf_lo:
        lo = min(v for v, _ in candidates)
        lo_open = not any(not op for v, op in candidates if v == lo)
    if not inf_hi:
        hi = max(v for v, _ in candidates)
        hi_open = not any(not op for v, op in candidates if v == hi)
    return Interval(lo, hi, lo_open, hi_open)


def recip(a: Interval) -> Interval:
    """1/a for an interval not containing 0 in its interior.

    An interval that strictly spans zero has no single-interval reciprocal
    and raises; a closed endpoint at zero yields a half-infinite result.
    """
    touches_zero_lo = a.lo is not None and a.lo == 0
    touches_zero_hi = a.hi is not None and a.hi == 0
    if a.contains(Q0) and not (touches_zero_lo or touches_zero_hi):
        raise ReciprocalOfZeroSpanningInterval(f"reciprocal of {a}")
    if (touches_zero_lo and not a.lo_open) or (touches_zero_hi and not a.hi_open):
        raise ReciprocalOfZeroSpanningInterval(f"reciprocal of {a}")
    # Now a is entirely positive or entirely negative (zero at most an open end).
    if a.lo is not None and (a.lo > 0 or touches_zero_lo):
        lo = None if a.hi is None else Q1 / a.hi
        lo_open = a.hi_open if a.hi is not None else True
        hi = None if touches_zero_lo else Q1 / a.lo
        hi_open = a.lo_open if hi is not None else True
        return Interval(lo if a.hi is not None else Q0,
                        hi,
                        lo_open if a.hi is not None else True,
                        hi_open)
    # negative side, mirror
    return neg(recip(neg(a)))


def int_pow(a: Interval, k: int) -> Interval:
    if k == 0:
        return Interval.point(Q1)
    if k < 0:
        return recip(int_pow(a, -k))
    if k % 2 == 1 or (a.lo is not None and a.lo >= 0):
        lo = None if a.lo is None else a.lo**k
        hi = None if a.hi is None else a.hi**k
        return Interval(lo, hi, a.lo_open, a.hi_open)
    if a.hi is not None and a.hi <= 0:
        lo = a.hi**k
        hi = None if a.lo is None else a.lo**k
        return Interval(lo, hi, a.hi_open, a.lo_open)
    # even power over an interval spanning 0
    cands = []
    if a.lo is not None:
        cands.append((a.lo**k, a.lo_open))
    if a.hi is not None:
        cands.append((a.hi**k, a.hi_open))
    if a.lo is None or a.hi is None:
        return Interval(Q0, None)
    (v1, o1), (v2, o2) = cands
    if v1 > v2 or (v1 == v2 and not o1):
        return Interval(Q0, v1, False, o1)
    return Interval(Q0, v2, False, o2)


_OPS = {"add": add, "neg": neg, "mul": mul, "recip": recip, "int_pow": int_pow}


def interval_arith(op: str, *args):
    """Dispatch table mirroring the supported exact interval operations."""
    return _OPS[op](*args)


class IntervalSet:
    """Ordered, pairwise-disjoint, non-adjacent intervals."""

    __slots__ = ("parts",)

    def __init__(self, parts=(), _normalized=False):
        parts = [p for p in parts if p is not None]
        self.parts = list(parts) if _normalized else _normalize(parts)

    @staticmethod
    def real_line() -> "IntervalSet":
        return IntervalSet([Interval.real_line()], _normalized=True)

    @staticmethod
    def empty() -> "IntervalSet":
        return IntervalSet([], _normalized=True)

    def is_empty(self) -> bool:
        return not self.parts

    def contains(self, q) -> bool:
        return any(p.contains(q) for p in self.parts)

    def intersect(self, other: "IntervalSet") -> "IntervalSet":
        out = []
        for a in self.parts:
            for b in other.parts:
                c = a.intersect(b)
                if c is not None:
                    out.append(c)
        return IntervalSet(out, _normalized=True)

    def intersect_interval(self, iv: Interval) -> "IntervalSet":
        out = []
        for a in self.parts:
            c = a.intersect(iv)
            if c is not None:
                out.append(c)
        return IntervalSet(out, _normalized=True)

    def union(self, other: "IntervalSet") -> "IntervalSet":
        return IntervalSet(self.parts + other.parts)

    def __eq__(self, other):
        return isinstance(other, IntervalSet) and self.parts == other.parts

    def __hash__(self):
        return hash(tuple(self.parts))

    def __iter__(self):
        return iter(self.parts)

    def __repr__(self):
        if not self.parts:
            return "{}"
        return " u ".join(map(repr, self.parts))


def _key(iv: Interval):
    if iv.lo is None:
        return (0, Q0, False)
    return (1, iv.lo, iv.lo_open)


def _normalize(parts):
    """Sort by lower endpoint and merge intersecting or adjacent members."""
    parts = sorted(parts, key=_key)
    out = []
    for iv in parts:
        if not out:
            out.append(iv)
            continue
        last = out[-1]
        if _touches(last, iv):
            out[-1] = last.hull(iv)
        else:
            out.append(iv)
    return out


def _touches(a: Interval, b: Interval) -> bool:
    # b sorts after a; they merge when a's upper reach meets b's lower start.
    if a.hi is None or b.lo is None:
        return True
    if a.hi > b.lo:
        return True
    if a.hi == b.lo:
        return not (a.hi_open and b.lo_open)
    return False
