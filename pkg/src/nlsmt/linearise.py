"""Construction of linearisation clauses for violated non-linear atoms.

Given a trail that falsifies `x rel f(args)`, each scheme produces a linear
clause that (1) every solution of the atom satisfies and (2) is false under
the trail.  Schemes in increasing strength: point exclusion, half-line
exclusion, interval form `y in R -> x <= d`, and tangent form
`y in R -> x <= d + grad . (y - c)`.  R is a rational polytope around the
conflict point, found by interval verification: start from a unit box, halve
towards the point on failure, then widen sides (doubling, or to infinity)
while the enclosure check still passes.  Reusing bounds already present in
the clause database is attempted first so emitted literals dedup well.
"""

from __future__ import annotations

from .errors import NlsmtError
from .functions import Monomial, point_box
from .intervals import Interval
from .rationals import Q0, Q1, Rat, round_down, round_up
from .selection import simplest_dyadic_in
from .terms import GE, GT, LE, LT, Clause, LinearAtom, LinearTerm, NonLinearAtom

BOX_HALVINGS = 40
SIDE_WIDENINGS = 10
D_REFINE_ROUNDS = 64


def _snap_near(q, slack):
    """Simplest dyadic within +-slack of q: canonicalizes cut geometry so
    conflicts at nearby points share clauses instead of multiplying them."""
    if slack <= 0:
        return q
    return simplest_dyadic_in(Interval(q - slack, q + slack))


def _snap_out(lo, hi):
    """Round an interval outward to a grid near an eighth of its width."""
    if lo is None or hi is None or hi <= lo:
        return lo, hi
    width = hi - lo
    bits = 3 - (int(width.numerator).bit_length() - int(width.denominator).bit_length())
    if bits < 0:
        bits = 0
    return round_down(lo, bits), round_up(hi, bits)


def _snap_in(lo, hi):
    """Round an interval inward (soundness-preserving shrink) to a grid."""
    if lo is None or hi is None or hi <= lo:
        return lo, hi
    width = hi - lo
    bits = 3 - (int(width.numerator).bit_length() - int(width.denominator).bit_length())
    if bits < 0:
        bits = 0
    a, b = round_up(lo, bits), round_down(hi, bits)
    if a > b:
        return lo, hi
    return a, b


class SchemeFailed(NlsmtError):
    """Internal: a linearisation scheme could not verify its polytope."""


class Linearisation:
    """An emitted clause together with its provenance for traces and plots."""

    __slots__ = ("clause", "atom", "scheme", "d", "polytope", "point")

    def __init__(self, clause, atom, scheme, d=None, polytope=None, point=None):
        self.clause = clause
        self.atom = atom
        self.scheme = scheme
        self.d = d
        self.polytope = polytope
        self.point = point


class _Ctx:
    __slots__ = ("atom", "fn", "cx", "cy", "upper", "strict", "p0", "bounds_hint", "window_hint")

    def __init__(self, atom: NonLinearAtom, values, p0: int, bounds_hint=None, window_hint=None):
        self.atom = atom
        self.fn = atom.fn
        self.cx = values[atom.defined_var]
        self.cy = atom.evaluate_args(values)
        # rel in {<=, <} bounds x above by g: a conflict means cx is too big,
        # so the clause must cap x from above; {>=, >} is the mirror image.
        self.upper = atom.rel in (LE, LT)
        self.strict = atom.rel in (LT, GT)
        self.p0 = p0
        self.bounds_hint = bounds_hint
        self.window_hint = window_hint


def _atom_le(var: int, bound, strict=False) -> LinearAtom:
    return LinearAtom(LinearTerm({var: Q1}, -bound), strict)


def _atom_ge(var: int, bound, strict=False) -> LinearAtom:
    return LinearAtom(LinearTerm({var: Rat(-1)}, bound), strict)


def _box_polytope(ctx: _Ctx, box) -> list:
    """Conjunctive atoms stating args lie in the box; infinite sides omitted."""
    atoms = []
    for var, iv in zip(ctx.atom.args, box):
        if iv.lo is not None:
            atoms.append(_atom_ge(var, iv.lo, iv.lo_open))
        if iv.hi is not None:
            atoms.append(_atom_le(var, iv.hi, iv.hi_open))
    return atoms


def _emit(ctx: _Ctx, scheme: str, extra_atoms, polytope_atoms, d=None) -> Linearisation:
    clause_atoms = [a.negated() for a in polytope_atoms] + list(extra_atoms)
    clause = Clause(clause_atoms, origin="linearisation")
    point = {ctx.atom.defined_var: ctx.cx}
    point.update(zip(ctx.atom.args, ctx.cy))
    return Linearisation(clause, ctx.atom, scheme, d=d, polytope=list(polytope_atoms), point=point)


def exact_cap_linearisation(values, atom: NonLinearAtom, p0: int = 16) -> Linearisation:
    """For rational-valued functions: y = c_y implies x rel g(c_y), exactly.

    Strictly stronger than the half-line scheme (the cap sits at the function
    value instead of at the trail value) and the only cut that terminates
    bound descents onto an exactly representable function value.
    """
    ctx = _Ctx(atom, values, p0)
    exact = ctx.fn.exact_value(ctx.cy)
    if exact is None:
        raise SchemeFailed("function value not rational at the conflict point")
    x = atom.defined_var
    cap = (
        _atom_le(x, exact, ctx.strict) if ctx.upper else _atom_ge(x, exact, ctx.strict)
    )
    pins = list(zip(atom.args, ctx.cy))
    if exact == 0 and isinstance(ctx.fn, Monomial):
        # a single zero factor already forces a zero product: pin only it,
        # leaving the cut valid across the whole range of the other arguments
        zeros = [(v, c) for v, c in pins if c == 0]
        if zeros:
            pins = zeros[:1]
    poly = [_atom_le(v, c) for v, c in pins]
    poly += [_atom_ge(v, c) for v, c in pins]
    return _emit(ctx, "exact", [cap], poly, d=exact)


def point_linearisation(values, atom: NonLinearAtom, p0: int = 16) -> Linearisation:
    """Exclude exactly the conflicting point: y = c_y implies x != c_x."""
    ctx = _Ctx(atom, values, p0)
    x = atom.defined_var
    extra = [_atom_le(x, ctx.cx, True), _atom_ge(x, ctx.cx, True)]
    poly = [_atom_le(v, c) for v, c in zip(atom.args, ctx.cy)]
    poly += [_atom_ge(v, c) for v, c in zip(atom.args, ctx.cy)]
    return _emit(ctx, "point", extra, poly)


def halfline_linearisation(values, atom: NonLinearAtom, p0: int = 16) -> Linearisation:
    """Exclude the closed half-line from c_x away from the function value."""
    ctx = _Ctx(atom, values, p0)
    x = atom.defined_var
    bound = _atom_le(x, ctx.cx, True) if ctx.upper else _atom_ge(x, ctx.cx, True)
    poly = [_atom_le(v, c) for v, c in zip(atom.args, ctx.cy)]
    poly += [_atom_ge(v, c) for v, c in zip(atom.args, ctx.cy)]
    return _emit(ctx, "halfline", [bound], poly)


def _separating_d(ctx: _Ctx):
    """Rational d strictly between g(c_y) and c_x (midpoint rule)."""
    fn, cy, cx = ctx.fn, ctx.cy, ctx.cx
    exact = fn.exact_value(cy)
    if exact is not None:
        if exact == cx:
            raise SchemeFailed("no separating value: c_x equals g(c_y)")
        return (cx + exact) / 2
    box = point_box(cy)
    p = ctx.p0
    for _ in range(D_REFINE_ROUNDS):
        iv = fn.enclosure(box, p)
        if ctx.upper and iv.hi is not None and iv.hi < cx:
            return (cx + iv.hi) / 2
        if not ctx.upper and iv.lo is not None and iv.lo > cx:
            return (cx + iv.lo) / 2
        p *= 2
    raise SchemeFailed("could not separate c_x from g(c_y)")


def _verified(ctx: _Ctx, box, d) -> bool:
    """sup g(box) <= d (upper direction) / inf g(box) >= d, by enclosure."""
    try:
        iv = ctx.fn.enclosure(box, max(ctx.p0, 32))
    except NlsmtError:
        return False
    if ctx.upper:
        return iv.hi is not None and iv.hi <= d
    return iv.lo is not None and iv.lo >= d


def _search_box(ctx: _Ctx, d, verify) -> list:
    """Shrink a unit box to pass `verify`, then widen sides while it holds."""
    cy = ctx.cy
    h = Q1
    box = None
    for _ in range(BOX_HALVINGS):
        cand = [Interval(c - h, c + h) for c in cy]
        if verify(cand):
            box = cand
            break
        h = h / 2
    if box is None:
        raise SchemeFailed("box verification failed at maximal shrink")
    for i in range(len(box)):
        for side in ("lo", "hi"):
            # unbounded first: monotone or bounded behaviour often allows it
            cand = list(box)
            cand[i] = (
                Interval(None, box[i].hi, True, box[i].hi_open)
                if side == "lo"
                else Interval(box[i].lo, None, box[i].lo_open, True)
            )
            if verify(cand):
                box = cand
                continue
            step = h
            for _ in range(SIDE_WIDENINGS):
                step = step * 2
                cand = list(box)
                if side == "lo":
                    cand[i] = Interval(
                        box[i].lo - step, box[i].hi, box[i].lo_open, box[i].hi_open
                    )
                else:
                    cand[i] = Interval(
                        box[i].lo, box[i].hi + step, box[i].lo_open, box[i].hi_open
                    )
                if not verify(cand):
                    break
                box = cand
    snapped = []
    for iv, c in zip(box, cy):
        if iv.lo is None or iv.hi is None:
            snapped.append(iv)
            continue
        lo, hi = _snap_in(iv.lo, iv.hi)
        if not (lo <= c <= hi):
            lo, hi = iv.lo, iv.hi
        snapped.append(Interval(lo, hi, iv.lo_open, iv.hi_open))
    return snapped


def _reuse_box(ctx: _Ctx):
    """Box built from bounds already known for the argument variables.

    Only boxes at least as wide as the fresh search's starting box are worth
    reusing; narrow residual windows would needlessly localize the cut.
    """
    if ctx.bounds_hint is None:
        return None
    box = []
    for var, c in zip(ctx.atom.args, ctx.cy):
        iv = ctx.bounds_hint(var)
        if iv is None or not iv.contains(c):
            return None
        lo_ok = iv.lo is None or c - iv.lo >= 1
        hi_ok = iv.hi is None or iv.hi - c >= 1
        if not (lo_ok and hi_ok):
            return None
        box.append(iv)
    return box


def _recip_piece(ctx: _Ctx, d) -> list:
    """Exact unbounded polytope for the reciprocal's monotone pieces."""
    cy = ctx.cy[0]
    if ctx.upper:
        if cy > 0:
            # sup 1/y over y > 1/d is d (see the worked unsat system)
            if d <= 0:
                raise SchemeFailed("nonpositive separator on the positive piece")
            return [_atom_ge(ctx.atom.args[0], 1 / d, True)]
        if d >= 0:
            return [_atom_le(ctx.atom.args[0], Q0, True)]
        return [_atom_ge(ctx.atom.args[0], 1 / d), _atom_le(ctx.atom.args[0], Q0, True)]
    if cy > 0:
        if d <= 0:
            return [_atom_ge(ctx.atom.args[0], Q0, True)]
        return [_atom_le(ctx.atom.args[0], 1 / d), _atom_ge(ctx.atom.args[0], Q0, True)]
    if d >= 0:
        raise SchemeFailed("nonnegative separator on the negative piece")
    return [_atom_le(ctx.atom.args[0], 1 / d, True)]


def interval_linearisation(values, atom: NonLinearAtom, p0: int = 16, bounds_hint=None) -> Linearisation:
    """Clause `y in R -> x <= d` with sup g(R) <= d (mirrored for >=)."""
    ctx = _Ctx(atom, values, p0, bounds_hint)
    if not ctx.fn.domain_test(ctx.cy):
        raise SchemeFailed("conflict point outside the function domain")
    d = _separating_d(ctx)
    x = atom.defined_var
    bound_atom = _atom_le(x, d) if ctx.upper else _atom_ge(x, d)

    if ctx.fn.name == "recip":
        poly = _recip_piece(ctx, d)
        return _emit(ctx, "interval", [bound_atom], poly, d=d)

    hull = ctx.fn.range_hull()
    if ctx.upper and hull.hi is not None and d >= hull.hi:
        return _emit(ctx, "interval", [bound_atom], [], d=d)
    if not ctx.upper and hull.lo is not None and d <= hull.lo:
        return _emit(ctx, "interval", [bound_atom], [], d=d)

    verify = lambda box: _verified(ctx, box, d)
    reuse = _reuse_box(ctx)
    if reuse is not None and verify(reuse):
        box = reuse
    else:
        box = _search_box(ctx, d, verify)
    return _emit(ctx, "interval", [bound_atom], _box_polytope(ctx, box), d=d)


def _gradient(ctx: _Ctx):
    grads = []
    box = point_box(ctx.cy)
    for i in range(len(ctx.cy)):
        iv = ctx.fn.derivative_enclosure(box, i, max(ctx.p0, 32))
        if iv is None or iv.lo is None or iv.hi is None:
            raise SchemeFailed("derivative enclosure unavailable")
        mid = (iv.lo + iv.hi) / 2
        # a coarse nearby slope keeps cuts canonical; the interval check
        # still guards validity whatever slope is used
        slack = max(abs(mid) / 32, Rat(1, 32))
        grads.append(_snap_near(mid, slack))
    return grads


def _tangent_verified(ctx: _Ctx, box, d, grads) -> bool:
    """Mean-value check of g(r) <= d + grad . (r - c) over the box (or >=)."""
    fn, cy = ctx.fn, ctx.cy
    for iv in box:
        if iv.lo is None or iv.hi is None:
            return False
    try:
        g_at_c = fn.enclosure(point_box(cy), max(ctx.p0, 32))
    except NlsmtError:
        return False
    total = (g_at_c.hi - d) if ctx.upper else (d - g_at_c.lo)
    for i, iv in enumerate(box):
        div = fn.derivative_enclosure(box, i, max(ctx.p0, 32))
        if div is None or div.lo is None or div.hi is None:
            return False
        mag = max(abs(div.lo - grads[i]), abs(div.hi - grads[i]))
        h = max(abs(iv.lo - cy[i]), abs(iv.hi - cy[i]))
        total += mag * h
    return total <= 0


def _corner_recheck(ctx: _Ctx, box, d, grads):
    """Exact corner evaluation for rational functions; a failed corner is a bug."""
    if "rational" not in ctx.fn.tags or len(box) > 4:
        return
    corners = [()]
    for iv in box:
        corners = [c + (v,) for c in corners for v in (iv.lo, iv.hi)]
    for corner in corners:
        g = ctx.fn.exact_value(corner)
        if g is None:
            continue
        affine = d + sum(gr * (r - c) for gr, r, c in zip(grads, corner, ctx.cy))
        ok = g <= affine if ctx.upper else g >= affine
        assert ok, f"tangent corner recheck failed at {corner}"


def _global_convex_tangent(ctx: _Ctx, d):
    """Whole-space tangent for exact-derivative convex (resp. concave) cases.

    For convex g the tangent plane at c lies below g everywhere, so with an
    exact gradient and d < g(c) the lower-direction clause needs no polytope;
    mirrored for concave g in the upper direction.
    """
    box = point_box(ctx.cy)
    convexity = ctx.fn.convexity_on([Interval(None, None)] * len(ctx.cy))
    if convexity is None:
        return None
    if ctx.upper and convexity != "concave":
        return None
    if not ctx.upper and convexity != "convex":
        return None
    grads = []
    for i in range(len(ctx.cy)):
        iv = ctx.fn.derivative_enclosure(box, i, max(ctx.p0, 32))
        if iv is None or not iv.is_point():
            return None
        grads.append(iv.lo)
    return grads


def tangent_linearisation(values, atom: NonLinearAtom, p0: int = 16, bounds_hint=None) -> Linearisation:
    """Clause `y in R -> x <= d + grad . (y - c_y)` (mirrored for >=)."""
    ctx = _Ctx(atom, values, p0, bounds_hint)
    if not ctx.fn.domain_test(ctx.cy):
        raise SchemeFailed("conflict point outside the function domain")
    d = _separating_d(ctx)
    x = atom.defined_var

    grads = _global_convex_tangent(ctx, d)
    if grads is not None:
        box = None
    else:
        grads = _gradient(ctx)
        verify = lambda b: _tangent_verified(ctx, b, d, grads)
        reuse = _reuse_box(ctx)
        if reuse is not None and verify(reuse):
            box = reuse
        else:
            box = _search_box(ctx, d, verify)
        _corner_recheck(ctx, box, d, grads)

    # x <= d + sum grad_i (y_i - c_i)  <=>  x - sum grad_i y_i + (sum grad_i c_i - d) <= 0
    coeffs = {x: Q1 if ctx.upper else Rat(-1)}
    const = sum((g * c for g, c in zip(grads, ctx.cy)), -d)
    if not ctx.upper:
        const = -const
    for var, g in zip(atom.args, grads):
        if g != 0:
            coeffs[var] = -g if ctx.upper else g
    bound_atom = LinearAtom(LinearTerm(coeffs, const), False)
    poly = [] if box is None else _box_polytope(ctx, box)
    return _emit(ctx, "tangent", [bound_atom], poly, d=d)


def _hint_interval(ctx: _Ctx, i: int) -> Interval:
    c = ctx.cy[i]
    iv = None
    if ctx.bounds_hint is not None:
        iv = ctx.bounds_hint(ctx.atom.args[i])
    if iv is None or not iv.contains(c):
        return Interval(c - 1, c + 1)
    lo = iv.lo if iv.lo is not None else min(c - 1, iv.hi - 2)
    hi = iv.hi if iv.hi is not None else max(c + 1, lo + 2)
    return Interval(lo, hi)


def _affine_atom(ctx: _Ctx, const, coeffs: dict) -> LinearAtom:
    """x <= const + sum coeffs[v]*v (upper) or x >= ... (lower), non-strict."""
    x = ctx.atom.defined_var
    sign = Q1 if ctx.upper else Rat(-1)
    terms = {x: sign}
    for v, c in coeffs.items():
        if c != 0:
            terms[v] = -c * sign
    return LinearAtom(LinearTerm(terms, -const * sign), False)


def _chord_over(ctx: _Ctx, a, b):
    """Valid, trail-false chord cut over [a, b], or None."""
    if a >= b:
        return None
    conv = ctx.fn.convexity_on((Interval(a, b),))
    want = "convex" if ctx.upper else "concave"
    if conv != want:
        return None
    ga_exact = ctx.fn.exact_value((a,))
    gb_exact = ctx.fn.exact_value((b,))
    if ga_exact is not None and gb_exact is not None:
        ga, gb = ga_exact, gb_exact
    else:
        try:
            ia = ctx.fn.enclosure((Interval.point(a),), max(ctx.p0, 32))
            ib = ctx.fn.enclosure((Interval.point(b),), max(ctx.p0, 32))
        except NlsmtError:
            return None
        ga, gb = (ia.hi, ib.hi) if ctx.upper else (ia.lo, ib.lo)
        if ga is None or gb is None:
            return None
    slope = (gb - ga) / (b - a)
    const = ga - slope * a
    cut_at_c = const + slope * ctx.cy[0]
    if ctx.upper and not cut_at_c < ctx.cx:
        return None
    if not ctx.upper and not cut_at_c > ctx.cx:
        return None
    y = ctx.atom.args[0]
    poly = [_atom_ge(y, a), _atom_le(y, b)]
    bound = _affine_atom(ctx, const, {y: slope})
    return _emit(ctx, "secant", [bound], poly, d=cut_at_c)


def _secant_cut(ctx: _Ctx):
    """Chord cuts for convex (upper) / concave (lower) univariate pieces.

    One chord spans the widest gap-driven symmetric box around the conflict
    (doubling the half-width while the chord still cuts the trail point off),
    one spans the bounds already known for the argument (so its literals
    dedup against existing clauses), and one spans the residual window the
    trail currently allows, which refutes tightly forced bounds in one step.
    """
    if ctx.fn.arity != 1:
        return None
    out = []
    c = ctx.cy[0]
    h = Q1
    best = None
    for _ in range(64):
        cand = _chord_over(ctx, *_snap_out(c - h, c + h))
        if cand is None:
            break
        best = cand
        h = h * 2
    if best is not None:
        out.append(best)
    iv = _hint_interval(ctx, 0)
    if iv.lo is not None and iv.hi is not None:
        cand = _chord_over(ctx, iv.lo, iv.hi)
        if cand is not None:
            out.append(cand)
    if ctx.window_hint is not None:
        win = ctx.window_hint(ctx.atom.args[0])
        if win is not None and win.lo is not None and win.hi is not None and win.contains(c):
            cand = _chord_over(ctx, *_snap_out(win.lo, win.hi))
            if cand is not None:
                out.append(cand)
    return out or None


def _product_corner_cut(ctx: _Ctx, bu, bv, kinds):
    """One planar envelope cut for u*v anchored at corner (bu, bv).

    The identity u*v - (bv*u + bu*v - bu*bv) = (u - bu)(v - bv) makes the
    affine function an under-estimator where the factors agree in sign with
    the corner quadrant and an over-estimator where they differ.
    """
    u, v = ctx.atom.args
    cu, cv = ctx.cy
    quad = [
        _atom_le(u, bu) if kinds[0] == "le" else _atom_ge(u, bu),
        _atom_le(v, bv) if kinds[1] == "le" else _atom_ge(v, bv),
    ]
    pv = _point_values(ctx)
    if not all(at.evaluate(pv) is True for at in quad):
        return None
    affine_c = bv * cu + bu * cv - bu * bv
    if ctx.upper and not affine_c < ctx.cx:
        return None
    if not ctx.upper and not affine_c > ctx.cx:
        return None
    bound = _affine_atom(ctx, Q0 - bu * bv, {u: bv, v: bu})
    return _emit(ctx, "secant", [bound], quad, d=affine_c)


def _product_cut(ctx: _Ctx):
    """Planar envelope cuts for two-variable products over sign quadrants:
    under-estimators for >= conflicts (same-sign corners), over-estimators
    for <= conflicts (mixed corners).  Corner offsets double while the cut
    still excludes the trail point; known bounds supply extra corners."""
    if ctx.fn.name != "mul":
        return None
    cu, cv = ctx.cy
    corner_kinds = (
        ((1, 1, ("le", "le")), (-1, -1, ("ge", "ge")))
        if not ctx.upper
        else ((1, -1, ("le", "ge")), (-1, 1, ("ge", "le")))
    )
    out = []
    for su, sv, kinds in corner_kinds:
        h = Q1
        best = None
        for _ in range(64):
            bu = _snap_near(cu + su * h, h / 8)
            bv = _snap_near(cv + sv * h, h / 8)
            cand = _product_corner_cut(ctx, bu, bv, kinds)
            if cand is None:
                break
            best = cand
            h = h * 2
        if best is not None:
            out.append(best)
    hu = _hint_interval(ctx, 0)
    hv = _hint_interval(ctx, 1)
    for su, sv, kinds in corner_kinds:
        bu = hu.hi if su > 0 else hu.lo
        bv = hv.hi if sv > 0 else hv.lo
        if bu is None or bv is None:
            continue
        cand = _product_corner_cut(ctx, bu, bv, kinds)
        if cand is not None:
            out.append(cand)
    return out or None


def _point_values(ctx: _Ctx):
    n = max((ctx.atom.defined_var, *ctx.atom.args)) + 1
    values = [None] * n
    values[ctx.atom.defined_var] = ctx.cx
    for var, c in zip(ctx.atom.args, ctx.cy):
        values[var] = c
    return values


def envelope_cuts(values, atom: NonLinearAtom, p0: int, bounds_hint, window_hint=None) -> list:
    """Extra clauses from convex/concave envelopes; possibly empty."""
    ctx = _Ctx(atom, values, p0, bounds_hint, window_hint)
    if not ctx.fn.domain_test(ctx.cy):
        return []
    out = []
    cuts = _secant_cut(ctx)
    if cuts:
        out.extend(cuts)
    cuts = _product_cut(ctx)
    if cuts:
        out.extend(cuts)
    return out


SCHEME_FNS = {
    "point": point_linearisation,
    "halfline": halfline_linearisation,
    "interval": interval_linearisation,
    "tangent": tangent_linearisation,
}


def select_scheme(atom: NonLinearAtom, values) -> list:
    """Ordered scheme names to attempt, dispatched on function shape tags."""
    fn = atom.fn
    if fn.name == "recip":
        return ["interval", "tangent", "halfline", "point"]
    if "bounded" in fn.tags:
        cx = values[atom.defined_var]
        hull = fn.range_hull()
        upper = atom.rel in (LE, LT)
        far = (upper and hull.hi is not None and cx > hull.hi) or (
            not upper and hull.lo is not None and cx < hull.lo
        )
        if far:
            return ["interval", "tangent", "halfline", "point"]
        return ["tangent", "interval", "halfline", "point"]
    if "differentiable" in fn.tags:
        return ["tangent", "interval", "halfline", "point"]
    return ["interval", "halfline", "point"]


def linearise(values, violated, p0: int = 16, bounds_hint=None, window_hint=None) -> list:
    """Linearisations for the violated atoms: per atom the first succeeding
    scheme, plus an exact cap clause when the function value is rational
    (rule (L) admits a set of clauses)."""
    assert violated, "rule (L) requires at least one violated atom"
    out = []
    for atom in violated:
        lin = None
        for scheme in select_scheme(atom, values):
            fn = SCHEME_FNS[scheme]
            try:
                if scheme in ("interval", "tangent"):
                    lin = fn(values, atom, p0, bounds_hint)
                else:
                    lin = fn(values, atom, p0)
                break
            except SchemeFailed:
                continue
        assert lin is not None, "point scheme cannot fail"
        lins = [lin]
        if atom.fn.exact_value(atom.evaluate_args(values)) is not None:
            try:
                cap = exact_cap_linearisation(values, atom, p0)
                lins.append(cap)
            except SchemeFailed:
                pass
        lins.extend(envelope_cuts(values, atom, p0, bounds_hint, window_hint))
        seen = set()
        unique = []
        for li in lins:
            if li.clause.key() in seen:
                continue
            seen.add(li.clause.key())
            ev = li.clause.evaluate(values)
            assert ev is False, f"linearisation clause not false under trail: {li.clause}"
            unique.append(li)
        out.extend(unique)
    return out
