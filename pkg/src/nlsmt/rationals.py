"""Arbitrary-precision rational numbers.

Every quantity the solver manipulates (coefficients, assignments, interval
endpoints) is an exact rational in canonical form: gcd(|num|, den) = 1 and
den > 0.  gmpy2's mpq provides that representation with fast arithmetic; the
stdlib Fraction is a drop-in fallback.  No operation in this package ever
rounds implicitly -- outward rounding is explicit (`round_down`/`round_up`).
"""

from __future__ import annotations

try:
    from gmpy2 import mpq as Rat
except ImportError:  # pragma: no cover - gmpy2 is a declared dependency
    from fractions import Fraction as Rat

Q0 = Rat(0)
Q1 = Rat(1)


def rat(a, b=None):
    """Build an exact rational from ints, strings like '8/3', or rationals."""
    if b is None:
        return Rat(a)
    return Rat(a, b)


def is_integer(q) -> bool:
    return q.denominator == 1


def qfloor(q) -> int:
    return int(q.numerator // q.denominator)


def qceil(q) -> int:
    return int(-((-q.numerator) // q.denominator))


def qround(q) -> int:
    """Nearest integer, ties away from zero (deterministic)."""
    n, d = q.numerator, q.denominator
    if n >= 0:
        return int((2 * n + d) // (2 * d))
    return -int((-2 * n + d) // (2 * d))


def bit_length(q) -> int:
    """Bits of max(|numerator|, denominator); a crude size measure."""
    return max(abs(int(q.numerator)).bit_length(), int(q.denominator).bit_length())


def round_down(q, bits: int):
    """Greatest multiple of 2^-bits that is <= q."""
    scale = 1 << bits
    return Rat(qfloor(q * scale), scale)


def round_up(q, bits: int):
    """Least multiple of 2^-bits that is >= q."""
    scale = 1 << bits
    return Rat(qceil(q * scale), scale)


def pow2(k: int):
    """2^k as an exact rational, for any integer k."""
    if k >= 0:
        return Rat(1 << k)
    return Rat(1, 1 << -k)
