"""Non-linear function descriptors and predicate decision under a trail.

Each function bundles the decidable pieces the solver needs: rational domain
membership, rational graph membership, a sound interval enclosure, optional
per-argument derivative enclosures, and shape information (monotonicity,
convexity, bounded range) used to enlarge linearisation polytopes.

Truth of `x rel f(args)` under a full rational assignment is decided exactly:
rational-valued functions evaluate exactly; for transcendental ones the
enclosure is refined (doubling precision) until the assigned value falls
outside, which happens whenever the value is off the (decidable) graph.
"""

from __future__ import annotations

from . import enclosures, intervals
from .errors import DomainViolation, NlsmtError, UnknownFunctionSymbol
from .intervals import Interval
from .rationals import Q0, Q1, Rat, is_integer
from .terms import GE, GT, LE, LT

REFINE_CAP = 64
DEFAULT_P0 = 16

FULL_LINE = None  # lazily created full-line interval


def _full() -> Interval:
    return Interval(None, None)


class FdecFunction:
    """Base descriptor; subclasses fill in the per-family behaviour."""

    name: str
    arity: int
    tags: frozenset

    def domain_test(self, point) -> bool:
        return True

    def graph_test(self, point, value) -> bool:
        exact = self.exact_value(point)
        return exact is not None and exact == value

    def exact_value(self, point):
        """Exact rational value, or None when the point is off the rational graph."""
        return None

    def enclosure(self, box, p: int) -> Interval:
        raise NotImplementedError

    def derivative_enclosure(self, box, i: int, p: int):
        return None

    def monotone_on(self, box, i: int):
        """+1 / -1 when provably monotone in argument i over box, else None."""
        try:
            d = self.derivative_enclosure(box, i, DEFAULT_P0)
        except NlsmtError:
            return None
        if d is None:
            return None
        if d.lo is not None and d.lo >= 0:
            return 1
        if d.hi is not None and d.hi <= 0:
            return -1
        return None

    def convexity_on(self, box):
        """'convex' / 'concave' over box when known, else None (univariate only)."""
        return None

    def range_hull(self) -> Interval:
        return _full()

    def __repr__(self):
        return f"<fn {self.name}/{self.arity}>"


class Monomial(FdecFunction):
    """Product of argument powers with all exponents >= 1 and total degree >= 2."""

    def __init__(self, exponents):
        exponents = tuple(int(e) for e in exponents)
        assert all(e >= 1 for e in exponents) and sum(exponents) >= 2
        self.exponents = exponents
        self.arity = len(exponents)
        if exponents == (1, 1):
            self.name = "mul"
        elif len(exponents) == 1:
            self.name = f"pow{exponents[0]}"
        else:
            self.name = "mon_" + "_".join(map(str, exponents))
        tags = {"differentiable", "rational"}
        if len(exponents) == 1 and exponents[0] % 2 == 0:
            tags.add("convex")
        self.tags = frozenset(tags)

    def exact_value(self, point):
        out = Q1
        for v, e in zip(point, self.exponents):
            out *= v**e
        return out

    def enclosure(self, box, p: int) -> Interval:
        out = Interval.point(Q1)
        for iv, e in zip(box, self.exponents):
            out = intervals.mul(out, intervals.int_pow(iv, e))
        return out

    def derivative_enclosure(self, box, i: int, p: int) -> Interval:
        out = Interval.point(Rat(self.exponents[i]))
        for j, (iv, e) in enumerate(zip(box, self.exponents)):
            e_eff = e - 1 if j == i else e
            if e_eff:
                out = intervals.mul(out, intervals.int_pow(iv, e_eff))
        return out

    def convexity_on(self, box):
        if self.arity != 1:
            return None
        k = self.exponents[0]
        if k % 2 == 0:
            return "convex"
        iv = box[0]
        if iv.lo is not None and iv.lo >= 0:
            return "convex"
        if iv.hi is not None and iv.hi <= 0:
            return "concave"
        return None

    def range_hull(self) -> Interval:
        if len(self.exponents) == 1 and self.exponents[0] % 2 == 0:
            return Interval(Q0, None)
        return _full()


class Recip(FdecFunction):
    name = "recip"
    arity = 1
    tags = frozenset({"differentiable", "rational", "piecewise"})

    def domain_test(self, point) -> bool:
        return point[0] != 0

    def exact_value(self, point):
        if point[0] == 0:
            return None
        return 1 / point[0]

    def enclosure(self, box, p: int) -> Interval:
        try:
            return intervals.recip(box[0])
        except NlsmtError:
            # the image over a zero-spanning box is unbounded on both sides
            return _full()

    def derivative_enclosure(self, box, i: int, p: int):
        try:
            inv = intervals.recip(box[0])
        except NlsmtError:
            return None
        return intervals.neg(intervals.int_pow(inv, 2))

    def monotone_on(self, box, i: int):
        iv = box[0]
        if iv.contains(Q0):
            return None
        return -1

    def convexity_on(self, box):
        iv = box[0]
        if iv.lo is not None and iv.lo >= 0:
            return "convex"
        if iv.hi is not None and iv.hi <= 0:
            return "concave"
        return None


class Elementary(FdecFunction):
    """exp, ln, sin, cos, tan, arctan backed by the Taylor enclosures."""

    arity = 1

    _GRAPH = {
        "exp": (Q0, Q1),
        "ln": (Q1, Q0),
        "sin": (Q0, Q0),
        "cos": (Q0, Q1),
        "tan": (Q0, Q0),
        "arctan": (Q0, Q0),
    }
    _TAGS = {
        "exp": {"differentiable", "convex", "transcendental", "monotone"},
        "ln": {"differentiable", "concave", "transcendental", "monotone"},
        "sin": {"differentiable", "piecewise", "bounded", "transcendental"},
        "cos": {"differentiable", "piecewise", "bounded", "transcendental"},
        "tan": {"differentiable", "piecewise", "transcendental"},
        "arctan": {"differentiable", "piecewise", "bounded", "transcendental", "monotone"},
    }

    def __init__(self, name: str):
        self.name = name
        self.tags = frozenset(self._TAGS[name])

    def domain_test(self, point) -> bool:
        if self.name == "ln":
            return point[0] > 0
        # tan is defined at every rational (poles are irrational)
        return True

    def exact_value(self, point):
        gx, gy = self._GRAPH[self.name]
        return gy if point[0] == gx else None

    def enclosure(self, box, p: int) -> Interval:
        return enclosures.enclose_elementary(self.name, box[0], p)

    def derivative_enclosure(self, box, i: int, p: int):
        iv = box[0]
        try:
            if self.name == "exp":
                return enclosures.enclose_elementary("exp", iv, p)
            if self.name == "ln":
                return intervals.recip(iv)
            if self.name == "sin":
                return enclosures.enclose_elementary("cos", iv, p)
            if self.name == "cos":
                return intervals.neg(enclosures.enclose_elementary("sin", iv, p))
            if self.name == "tan":
                t = enclosures.enclose_elementary("tan", iv, p)
                return intervals.add(Interval.point(Q1), intervals.int_pow(t, 2))
            if self.name == "arctan":
                denom = intervals.add(Interval.point(Q1), intervals.int_pow(iv, 2))
                return intervals.recip(denom)
        except NlsmtError:
            return None
        return None

    def monotone_on(self, box, i: int):
        if self.name in ("exp", "arctan", "ln"):
            return 1
        return super().monotone_on(box, i)

    def convexity_on(self, box):
        if self.name == "exp":
            return "convex"
        if self.name == "ln":
            return "concave"
        if self.name == "arctan":
            iv = box[0]
            if iv.hi is not None and iv.hi <= 0:
                return "convex"
            if iv.lo is not None and iv.lo >= 0:
                return "concave"
            return None
        if self.name in ("sin", "cos"):
            # convex where the second derivative -f is >= 0
            try:
                second = enclosures.enclose_elementary(self.name, box[0], DEFAULT_P0)
            except DomainViolation:
                return None
            if second.hi is not None and second.hi <= 0:
                return "convex"
            if second.lo is not None and second.lo >= 0:
                return "concave"
        return None

    def range_hull(self) -> Interval:
        if self.name in ("sin", "cos"):
            return Interval(Rat(-1), Q1)
        if self.name == "arctan":
            # 11/7 > pi/2, rational outer bound of the range
            return Interval(Rat(-11, 7), Rat(11, 7))
        if self.name == "exp":
            return Interval(Q0, None, True, True)
        return _full()


class LogB(FdecFunction):
    """log base b for a positive rational b != 1; rational graph {(b^n, n)}."""

    arity = 1

    def __init__(self, base):
        base = Rat(base)
        assert base > 0 and base != 1
        self.base = base
        self.name = f"log_{base}"
        self.tags = frozenset(
            {"differentiable", "transcendental", "monotone"}
            | ({"concave"} if base > 1 else {"convex"})
        )

    def domain_test(self, point) -> bool:
        return point[0] > 0

    def exact_value(self, point):
        z = point[0]
        if z <= 0:
            return None
        n = self._int_log(z)
        return None if n is None else Rat(n)

    def _int_log(self, z):
        if z == 1:
            return 0
        b = self.base if self.base > 1 else 1 / self.base
        sign = 1 if self.base > 1 else -1
        if z > 1:
            t, n = Q1, 0
            while t < z:
                t *= b
                n += 1
            return sign * n if t == z else None
        t, n = Q1, 0
        while t > z:
            t /= b
            n += 1
        return -sign * n if t == z else None

    def graph_test(self, point, value) -> bool:
        if not is_integer(value):
            return False
        n = self._int_log(point[0]) if point[0] > 0 else None
        return n is not None and Rat(n) == value

    def enclosure(self, box, p: int) -> Interval:
        return enclosures.enclose_elementary("log_b", box[0], p, base=self.base)

    def derivative_enclosure(self, box, i: int, p: int):
        try:
            ln_b = Interval(*enclosures._ln_point(self.base, p + 16))
            return intervals.recip(intervals.mul(box[0], ln_b))
        except NlsmtError:
            return None

    def monotone_on(self, box, i: int):
        return 1 if self.base > 1 else -1

    def convexity_on(self, box):
        return "concave" if self.base > 1 else "convex"


_SINGLETONS: dict[str, FdecFunction] = {
    name: Elementary(name) for name in ("exp", "ln", "sin", "cos", "tan", "arctan")
}
_SINGLETONS["recip"] = Recip()
_MONOMIALS: dict[tuple, Monomial] = {}
_LOGS: dict = {}


def monomial_fn(exponents) -> Monomial:
    exponents = tuple(int(e) for e in exponents)
    fn = _MONOMIALS.get(exponents)
    if fn is None:
        fn = Monomial(exponents)
        _MONOMIALS[exponents] = fn
    return fn


def log_fn(base) -> LogB:
    base = Rat(base)
    fn = _LOGS.get(base)
    if fn is None:
        fn = LogB(base)
        _LOGS[base] = fn
    return fn


def get_function(name: str) -> FdecFunction:
    fn = _SINGLETONS.get(name)
    if fn is not None:
        return fn
    if name == "mul":
        return monomial_fn((1, 1))
    if name.startswith("pow") and name[3:].isdigit():
        return monomial_fn((int(name[3:]),))
    raise UnknownFunctionSymbol(name)


def point_box(values) -> tuple:
    return tuple(Interval.point(v) for v in values)


TRUE, FALSE, UNDETERMINED = True, False, None


def eval_nl_atom(atom, values, p0: int = DEFAULT_P0):
    """Decide `x rel f(args)` under a trail: True, False, or None (undetermined).

    Points outside dom(f) make the atom False: there is no function value to
    bound the defined variable, so the constraint cannot hold there.
    """
    cx = values[atom.defined_var]
    if cx is None:
        return UNDETERMINED
    z = atom.evaluate_args(values)
    if any(v is None for v in z):
        return UNDETERMINED
    fn = atom.fn
    if not fn.domain_test(z):
        return FALSE
    exact = fn.exact_value(z)
    if exact is not None:
        return _cmp(cx, atom.rel, exact)
    if fn.graph_test(z, cx):
        return atom.rel in (LE, GE)
    box = point_box(z)
    p = p0
    for _ in range(REFINE_CAP):
        iv = fn.enclosure(box, p)
        if not iv.contains(cx):
            below = iv.lo is not None and (
                cx < iv.lo or (cx == iv.lo and iv.lo_open)
            )
            if below:
                return atom.rel in (LE, LT)
            return atom.rel in (GE, GT)
        p *= 2
    raise AssertionError(
        f"enclosure refinement did not separate {cx} from {fn.name}{z} "
        f"within {REFINE_CAP} rounds"
    )


def _cmp(cx, rel, value):
    if rel == LE:
        return cx <= value
    if rel == LT:
        return cx < value
    if rel == GE:
        return cx >= value
    return cx > value


def check_N(nonlinear, values, p0: int = DEFAULT_P0):
    """Exactly the atoms that evaluate to False; undetermined atoms are skipped."""
    return [a for a in nonlinear if eval_nl_atom(a, values, p0) is FALSE]
