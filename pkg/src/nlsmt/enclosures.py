"""Outward-rounded rational enclosures of elementary functions.

Everything here is exact rational arithmetic: each function value is bracketed
by a Taylor partial sum with an explicit rational remainder ball, after an
argument reduction that keeps series arguments small (exp by halving, sin/cos
by subtracting multiples of 2*pi, ln by mantissa/exponent split, arctan by the
|x| <= 1/2 identities).  pi itself comes from a Machin-style formula.

Working precision follows a power-of-two ladder: a request at target precision
p starts at the smallest ladder point >= p + 64 and doubles until the result
width meets 2^-p (point inputs).  Intermediate quantities are rounded outward
to dyadics, which keeps rational sizes bounded without losing soundness.  A
per-point tightening cache makes repeated queries at growing p return nested
intervals.
"""

from __future__ import annotations

from .errors import DomainViolation
from .intervals import Interval
from .intervals import mul as iv_mul
from .intervals import recip as iv_recip
from .rationals import Q0, Q1, Rat, bit_length, qceil, qfloor, qround, round_down, round_up

_GUARD = 12

# (lo, hi) rational pairs are used for scalar interval work inside series.


def _r_out(lo, hi, bits):
    return round_down(lo, bits), round_up(hi, bits)


def _pair_mul_const(lo, hi, c):
    if c >= 0:
        return lo * c, hi * c
    return hi * c, lo * c


def _pair_abs_max(lo, hi):
    return max(-lo, hi) if lo < 0 else hi


_PI_CACHE: dict[int, tuple] = {}
_LN2_CACHE: dict[int, tuple] = {}


def _atan_series(x, w):
    """Bracket arctan(x) for |x| <= 1/2 by the alternating Leibniz series."""
    if x == 0:
        return Q0, Q0
    x2 = x * x
    t_lo = t_hi = x
    s_lo = s_hi = x
    i = 0
    thresh = Rat(1, 1 << (w + _GUARD))
    while True:
        i += 1
        c = -x2 * Rat(2 * i - 1, 2 * i + 1)
        t_lo, t_hi = _pair_mul_const(t_lo, t_hi, c)
        t_lo, t_hi = _r_out(t_lo, t_hi, w + _GUARD)
        s_lo, s_hi = _r_out(s_lo + t_lo, s_hi + t_hi, w + _GUARD)
        tb = _pair_abs_max(t_lo, t_hi)
        if tb <= thresh:
            # alternating series with decreasing magnitudes: tail within one term
            return s_lo - tb, s_hi + tb


def pi_pair(w: int):
    """pi bracketed at roughly w fractional bits (Machin: 16*atan(1/5) - 4*atan(1/239))."""
    hit = _PI_CACHE.get(w)
    if hit is not None:
        return hit
    a5_lo, a5_hi = _atan_series(Rat(1, 5), w + 6)
    a239_lo, a239_hi = _atan_series(Rat(1, 239), w + 6)
    lo = 16 * a5_lo - 4 * a239_hi
    hi = 16 * a5_hi - 4 * a239_lo
    val = _r_out(lo, hi, w)
    if len(_PI_CACHE) > 64:
        _PI_CACHE.clear()
    _PI_CACHE[w] = val
    return val


def pi_interval(p: int) -> Interval:
    lo, hi = pi_pair(p + 8)
    return Interval(lo, hi)


def _atanh_series(u, w):
    """Bracket sum u^(2i+1)/(2i+1) for 0 <= u <= 1/3 (atanh without the factor 2)."""
    if u == 0:
        return Q0, Q0
    u2 = u * u
    p_lo = p_hi = u
    s_lo, s_hi = u, u
    i = 0
    thresh = Rat(1, 1 << (w + _GUARD))
    while True:
        i += 1
        p_lo, p_hi = _r_out(p_lo * u2, p_hi * u2, w + _GUARD)
        t_lo = p_lo / (2 * i + 1)
        t_hi = p_hi / (2 * i + 1)
        s_lo, s_hi = _r_out(s_lo + t_lo, s_hi + t_hi, w + _GUARD)
        tb = _pair_abs_max(t_lo, t_hi)
        if tb <= thresh:
            # tail <= tb * u^2/(1-u^2) <= tb * 9/8 within the next power
            tail = tb * Rat(9, 8)
            return s_lo - tail, s_hi + tail


def _ln2_pair(w):
    hit = _LN2_CACHE.get(w)
    if hit is not None:
        return hit
    lo, hi = _atanh_series(Rat(1, 3), w + 4)
    val = _r_out(2 * lo, 2 * hi, w)
    if len(_LN2_CACHE) > 64:
        _LN2_CACHE.clear()
    _LN2_CACHE[w] = val
    return val


def _exp_point(x, w):
    if x == 0:
        return Q1, Q1
    ax = -x if x < 0 else x
    k = max(0, int(ax.numerator).bit_length() - int(ax.denominator).bit_length() + 2)
    r = x / (1 << k) if k else x
    # series for exp(r), |r| <= 1/2
    t_lo = t_hi = Q1
    s_lo = s_hi = Q1
    i = 0
    thresh = Rat(1, 1 << (w + _GUARD))
    while True:
        i += 1
        c = r / i
        t_lo, t_hi = _pair_mul_const(t_lo, t_hi, c)
        t_lo, t_hi = _r_out(t_lo, t_hi, w + _GUARD)
        s_lo, s_hi = _r_out(s_lo + t_lo, s_hi + t_hi, w + _GUARD)
        tb = _pair_abs_max(t_lo, t_hi)
        if i >= 1 and tb <= thresh:
            # |r/(i+1)| <= 1/2 so the tail is below a geometric series
            s_lo, s_hi = s_lo - 2 * tb, s_hi + 2 * tb
            break
    if s_lo < 0:
        s_lo = Q0
    for _ in range(k):
        lo2 = s_lo * s_lo
        hi2 = s_hi * s_hi
        s_lo, s_hi = _r_out(lo2, hi2, w + _GUARD)
        if s_lo < 0:
            s_lo = Q0
    return s_lo, s_hi


def _ln_point(x, w):
    if x <= 0:
        raise DomainViolation(f"ln of {x}")
    e = int(x.numerator).bit_length() - int(x.denominator).bit_length()
    m = x / Rat(1 << e) if e >= 0 else x * Rat(1 << -e)
    if m < 1:
        m = m * 2
        e -= 1
    # m in [1, 2)
    u = (m - 1) / (m + 1)
    s_lo, s_hi = _atanh_series(u, w + 4)
    lo, hi = 2 * s_lo, 2 * s_hi
    if e != 0:
        l2_lo, l2_hi = _ln2_pair(w + 4)
        if e > 0:
            lo, hi = lo + e * l2_lo, hi + e * l2_hi
        else:
            lo, hi = lo + e * l2_hi, hi + e * l2_lo
    return _r_out(lo, hi, w)


def _trig_reduce(x, w):
    """Return (rho, slack): a small dyadic argument with |x - 2*pi*n - rho| <= slack."""
    ax = -x if x < 0 else x
    if ax <= 3:
        return x, Q0
    # n is fixed per x (independent of w) so refinements stay nested
    w0 = max(64, bit_length(x) + 32)
    pl, ph = pi_pair(w0)
    n = qround(x / (pl + ph))  # x / (2*pi approx)
    pl, ph = pi_pair(w)
    if n >= 0:
        r_lo, r_hi = x - 2 * n * ph, x - 2 * n * pl
    else:
        r_lo, r_hi = x - 2 * n * pl, x - 2 * n * ph
    rho = round_down((r_lo + r_hi) / 2, w)
    slack = max(rho - r_lo, r_hi - rho)
    return rho, slack


def _sin_series(rho, w):
    # |rho| <= 4 after reduction
    if rho == 0:
        return Q0, Q0
    r2 = rho * rho
    t_lo = t_hi = rho
    s_lo = s_hi = rho
    i = 0
    thresh = Rat(1, 1 << (w + _GUARD))
    while True:
        i += 1
        c = -r2 / ((2 * i) * (2 * i + 1))
        t_lo, t_hi = _pair_mul_const(t_lo, t_hi, c)
        t_lo, t_hi = _r_out(t_lo, t_hi, w + _GUARD)
        s_lo, s_hi = _r_out(s_lo + t_lo, s_hi + t_hi, w + _GUARD)
        tb = _pair_abs_max(t_lo, t_hi)
        if i >= 4 and tb <= thresh:
            # ratio below 16/90 from here on; tail within 1/4 of a term
            return s_lo - tb, s_hi + tb


def _cos_series(rho, w):
    r2 = rho * rho
    t_lo = t_hi = Q1
    s_lo = s_hi = Q1
    i = 0
    thresh = Rat(1, 1 << (w + _GUARD))
    while True:
        i += 1
        c = -r2 / ((2 * i - 1) * (2 * i))
        t_lo, t_hi = _pair_mul_const(t_lo, t_hi, c)
        t_lo, t_hi = _r_out(t_lo, t_hi, w + _GUARD)
        s_lo, s_hi = _r_out(s_lo + t_lo, s_hi + t_hi, w + _GUARD)
        tb = _pair_abs_max(t_lo, t_hi)
        if i >= 4 and tb <= thresh:
            return s_lo - tb, s_hi + tb


def _clamp_unit(lo, hi):
    if lo < -1:
        lo = Rat(-1)
    if hi > 1:
        hi = Q1
    return lo, hi


def _sin_point(x, w):
    rho, slack = _trig_reduce(x, w)
    lo, hi = _sin_series(rho, w)
    return _clamp_unit(lo - slack, hi + slack)


def _cos_point(x, w):
    rho, slack = _trig_reduce(x, w)
    lo, hi = _cos_series(rho, w)
    return _clamp_unit(lo - slack, hi + slack)


def _tan_point(x, w):
    # cos(x) != 0 for every rational x, so refinement can always separate it from 0
    s_lo, s_hi = _sin_point(x, w)
    c_lo, c_hi = _cos_point(x, w)
    while c_lo <= 0 <= c_hi:
        w *= 2
        s_lo, s_hi = _sin_point(x, w)
        c_lo, c_hi = _cos_point(x, w)
    iv = iv_mul(Interval(s_lo, s_hi), iv_recip(Interval(c_lo, c_hi)))
    return iv.lo, iv.hi


def _atan_point(x, w):
    if x < 0:
        lo, hi = _atan_point(-x, w)
        return -hi, -lo
    if x <= Rat(1, 2):
        return _atan_series(x, w)
    if x <= 1:
        v = (x - 1) / (x + 1)  # in (-1/3, 0]
        s_lo, s_hi = _atan_series(v, w + 4)
        p_lo, p_hi = pi_pair(w + 4)
        return _r_out(p_lo / 4 + s_lo, p_hi / 4 + s_hi, w)
    inv_lo, inv_hi = _atan_point(1 / x, w + 4)
    p_lo, p_hi = pi_pair(w + 4)
    return _r_out(p_lo / 2 - inv_hi, p_hi / 2 - inv_lo, w)


_POINT_FNS = {
    "exp": _exp_point,
    "ln": _ln_point,
    "sin": _sin_point,
    "cos": _cos_point,
    "tan": _tan_point,
    "arctan": _atan_point,
}


def _log_b_point(x, w, base):
    # base is a positive rational != 1, so ln(base) != 0 and refinement separates it
    n_lo, n_hi = _ln_point(x, w + 8)
    d_iv = Interval(*_ln_point(base, w + 8))
    while d_iv.contains(Q0):
        w *= 2
        d_iv = Interval(*_ln_point(base, w + 8))
    iv = iv_mul(Interval(n_lo, n_hi), iv_recip(d_iv))
    return iv.lo, iv.hi


def _ladder_start(p: int, size_hint: int = 0) -> int:
    need = p + 64 + size_hint
    w = 64
    while w < need:
        w *= 2
    return w


_TIGHT_CACHE: dict[tuple, Interval] = {}


def enclose_point(name: str, x, p: int, base=None) -> Interval:
    """Enclosure of f(x) at a rational point with width <= 2^-p."""
    x = Rat(x)
    w = _ladder_start(p, bit_length(x) // 8)
    target = Rat(1, 1 << p)
    while True:
        if name == "log_b":
            lo, hi = _log_b_point(x, w, base)
        else:
            lo, hi = _POINT_FNS[name](x, w)
        lo, hi = _r_out(lo, hi, p + 32)
        if hi - lo <= target:
            break
        w *= 2
    iv = Interval(lo, hi)
    key = (name, base, x)
    prev = _TIGHT_CACHE.get(key)
    if prev is not None:
        tightened = iv.intersect(prev)
        if tightened is not None:
            iv = tightened
    if len(_TIGHT_CACHE) > 1 << 16:
        _TIGHT_CACHE.clear()
    _TIGHT_CACHE[key] = iv
    return iv


def _phase_hits(lo, hi, num, den, w0):
    """Does lo <= (num/den)*pi + 2*pi*k <= hi hold for some integer k?

    lo, hi are rational; the phase points are irrational unless num = 0, so
    the bracket refinement below always separates and terminates.
    """
    from .intervals import scale as iv_scale

    w = w0
    for _ in range(64):
        p_lo, p_hi = pi_pair(w)
        pi_iv = Interval(p_lo, p_hi)
        off = iv_scale(pi_iv, Rat(num, den))
        inv_two_pi = iv_recip(iv_scale(pi_iv, Rat(2)))
        a = iv_mul(Interval(lo - off.hi, lo - off.lo), inv_two_pi)
        b = iv_mul(Interval(hi - off.hi, hi - off.lo), inv_two_pi)
        if qceil(a.lo) == qceil(a.hi) and qfloor(b.lo) == qfloor(b.hi):
            return qceil(a.lo) <= qfloor(b.lo)
        w *= 2
    raise DomainViolation("phase comparison failed to converge")


def _box_args(box: Interval):
    return box.lo, box.hi


def enclose_box(name: str, box: Interval, p: int, base=None) -> Interval:
    """Sound enclosure of f over a rational box (possibly unbounded)."""
    if box.is_point():
        return enclose_point(name, box.lo, p, base)
    lo, hi = _box_args(box)
    if name == "exp":
        lo_v = Q0 if lo is None else enclose_point("exp", lo, p).lo
        hi_v = None if hi is None else enclose_point("exp", hi, p).hi
        return Interval(lo_v, hi_v, box.lo_open if lo is not None else False, box.hi_open)
    if name == "ln":
        if lo is None or lo < 0 or (lo == 0 and not box.lo_open):
            raise DomainViolation(f"ln over {box}")
        lo_v = None if lo == 0 else enclose_point("ln", lo, p).lo
        hi_v = None if hi is None else enclose_point("ln", hi, p).hi
        return Interval(lo_v, hi_v, box.lo_open, box.hi_open)
    if name == "log_b":
        if lo is None or lo < 0 or (lo == 0 and not box.lo_open):
            raise DomainViolation(f"log_b over {box}")
        at_lo = None if lo == 0 else enclose_point("log_b", lo, p, base)
        at_hi = None if hi is None else enclose_point("log_b", hi, p, base)
        if base > 1:
            lo_v = None if at_lo is None else at_lo.lo
            hi_v = None if at_hi is None else at_hi.hi
            return Interval(lo_v, hi_v, box.lo_open, box.hi_open)
        lo_v = None if at_hi is None else at_hi.lo
        hi_v = None if at_lo is None else at_lo.hi
        return Interval(lo_v, hi_v, box.hi_open, box.lo_open)
    if name == "arctan":
        p_lo, p_hi = pi_pair(p + 8)
        if lo is None:
            lo_v, lo_open = -p_hi / 2, True
        else:
            at = enclose_point("arctan", lo, p)
            lo_v, lo_open = at.lo, box.lo_open
        if hi is None:
            hi_v, hi_open = p_hi / 2, True
        else:
            at = enclose_point("arctan", hi, p)
            hi_v, hi_open = at.hi, box.hi_open
        return Interval(lo_v, hi_v, lo_open, hi_open)
    if name in ("sin", "cos"):
        if lo is None or hi is None:
            return Interval(Rat(-1), Q1)
        p_lo, p_hi = pi_pair(max(64, p))
        if hi - lo >= 2 * p_hi:
            return Interval(Rat(-1), Q1)
        a = enclose_point(name, lo, p)
        b = enclose_point(name, hi, p)
        out = a.hull(b)
        # maxima at pi/2 + 2k*pi (sin) / 2k*pi (cos); minima shifted by pi
        max_num, min_num = (1, -1) if name == "sin" else (0, 2)
        w0 = max(64, bit_length(lo) + bit_length(hi) + 16)
        if _phase_hits(lo, hi, max_num, 2, w0):
            out = out.hull(Interval.point(Q1))
        if _phase_hits(lo, hi, min_num, 2, w0):
            out = out.hull(Interval.point(Rat(-1)))
        return _unit_clip(out)
    if name == "tan":
        if lo is None or hi is None:
            raise DomainViolation("tan over an unbounded interval spans a pole")
        w0 = max(64, bit_length(lo) + bit_length(hi) + 16)
        # poles sit at pi/2 + k*pi, i.e. at +pi/2 and -pi/2 modulo 2*pi
        if _phase_hits(lo, hi, 1, 2, w0) or _phase_hits(lo, hi, -1, 2, w0):
            raise DomainViolation(f"tan over {box} spans a pole")
        a = enclose_point("tan", lo, p)
        b = enclose_point("tan", hi, p)
        return Interval(a.lo, b.hi, box.lo_open, box.hi_open)
    raise DomainViolation(f"unknown elementary function {name}")


def _unit_clip(iv: Interval) -> Interval:
    lo, lo_open = iv.lo, iv.lo_open
    hi, hi_open = iv.hi, iv.hi_open
    if lo is None or lo < -1:
        lo, lo_open = Rat(-1), False
    if hi is None or hi > 1:
        hi, hi_open = Q1, False
    return Interval(lo, hi, lo_open, hi_open)


def enclose_elementary(name: str, box: Interval, p: int, base=None) -> Interval:
    """Public entry: enclosure of an elementary function over a rational box.

    For point boxes the result width is at most 2^-p and repeated calls with
    growing p return nested intervals.
    """
    if p <= 0:
        raise ValueError("precision must be positive")
    return enclose_box(name, box, p, base)
