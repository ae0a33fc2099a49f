"""Terms, atoms, clauses, and problems in separated linear form.

Linear atoms are kept in the canonical orientation `term <= 0` / `term < 0`
(relations > and >= are folded in by negating the term), scaled so the
coefficient of the smallest variable has magnitude 1.  The non-linear part of
a problem is a set of unit atoms `x rel f(args)` over plain variables; learned
clauses are always linear.
"""

from __future__ import annotations

from .rationals import Q0, Q1, Rat

# relations for non-linear atoms
LE, LT, GE, GT = "<=", "<", ">=", ">"
_FLIP = {LE: GE, LT: GT, GE: LE, GT: LT}


def flip_rel(rel: str) -> str:
    """Mirror a relation across the equality axis (for term negation)."""
    return _FLIP[rel]


class LinearTerm:
    """Sparse rational linear combination plus constant; no zero coefficients."""

    __slots__ = ("coeffs", "const", "_key")

    def __init__(self, coeffs=None, const=Q0):
        cleaned = {}
        if coeffs:
            for v, c in coeffs.items():
                if c != 0:
                    cleaned[v] = Rat(c)
        self.coeffs = cleaned
        self.const = Rat(const)
        self._key = None

    def key(self):
        if self._key is None:
            self._key = (tuple(sorted(self.coeffs.items())), self.const)
        return self._key

    def variables(self):
        return self.coeffs.keys()

    def scaled(self, q) -> "LinearTerm":
        if q == 1:
            return self
        return LinearTerm({v: c * q for v, c in self.coeffs.items()}, self.const * q)

    def plus(self, other: "LinearTerm") -> "LinearTerm":
        coeffs = dict(self.coeffs)
        for v, c in other.coeffs.items():
            s = coeffs.get(v, Q0) + c
            if s == 0:
                coeffs.pop(v, None)
            else:
                coeffs[v] = s
        out = LinearTerm.__new__(LinearTerm)
        out.coeffs = coeffs
        out.const = self.const + other.const
        out._key = None
        return out

    def evaluate(self, values) -> "LinearTerm":
        """Substitute assigned variables; values maps var id -> rational or None."""
        coeffs = {}
        const = self.const
        for v, c in self.coeffs.items():
            q = values[v]
            if q is None:
                coeffs[v] = c
            else:
                const += c * q
        out = LinearTerm.__new__(LinearTerm)
        out.coeffs = coeffs
        out.const = const
        out._key = None
        return out

    def __eq__(self, other):
        return isinstance(other, LinearTerm) and self.key() == other.key()

    def __hash__(self):
        return hash(self.key())

    def render(self, names) -> str:
        bits = []
        for v, c in sorted(self.coeffs.items()):
            name = names[v] if names else f"v{v}"
            if c == 1:
                bits.append(f"+ {name}")
            elif c == -1:
                bits.append(f"- {name}")
            elif c > 0:
                bits.append(f"+ {c}*{name}")
            else:
                bits.append(f"- {-c}*{name}")
        if self.const != 0 or not bits:
            bits.append(f"+ {self.const}" if self.const >= 0 else f"- {-self.const}")
        text = " ".join(bits)
        if text.startswith("+ "):
            text = text[2:]
        return text

    def __repr__(self):
        return self.render(None)


class LinearAtom:
    """`term <= 0` (or `< 0` when strict), scaled to a canonical representative."""

    __slots__ = ("term", "strict", "_key")

    def __init__(self, term: LinearTerm, strict: bool):
        if term.coeffs:
            lead = min(term.coeffs)
            mag = abs(term.coeffs[lead])
            if mag != 1:
                term = term.scaled(1 / mag)
        elif term.const != 0:
            term = LinearTerm({}, Q1 if term.const > 0 else Rat(-1))
        self.term = term
        self.strict = bool(strict)
        self._key = None

    @staticmethod
    def make(coeffs, const, rel: str) -> "LinearAtom":
        """Build from `coeffs . x + const rel 0` for any of the four relations."""
        term = LinearTerm(coeffs, const)
        if rel in (GE, GT):
            term = term.scaled(Rat(-1))
        return LinearAtom(term, rel in (LT, GT))

    def key(self):
        if self._key is None:
            self._key = (self.term.key(), self.strict)
        return self._key

    def variables(self):
        return self.term.coeffs.keys()

    def is_constant(self) -> bool:
        return not self.term.coeffs

    def constant_truth(self) -> bool:
        c = self.term.const
        return c < 0 if self.strict else c <= 0

    def negated(self) -> "LinearAtom":
        """not(t <= 0) == (-t < 0); not(t < 0) == (-t <= 0)."""
        return LinearAtom(self.term.scaled(Rat(-1)), not self.strict)

    def evaluate(self, values):
        """True / False / residual LinearAtom under a partial assignment."""
        t = self.term.evaluate(values)
        if t.coeffs:
            return LinearAtom(t, self.strict)
        return t.const < 0 if self.strict else t.const <= 0

    def direction(self):
        """(unit-lead coefficient vector, bound, is_upper, strict).

        The atom constrains dir.x <= bound (is_upper) or dir.x >= bound,
        where dir has +1 on its smallest variable.  Constants return None.
        """
        if not self.term.coeffs:
            return None
        lead = min(self.term.coeffs)
        sign = 1 if self.term.coeffs[lead] > 0 else -1
        if sign > 0:
            dirkey = tuple(sorted(self.term.coeffs.items()))
            return dirkey, -self.term.const, True, self.strict
        dirkey = tuple(sorted((v, -c) for v, c in self.term.coeffs.items()))
        return dirkey, self.term.const, False, self.strict

    def __eq__(self, other):
        return isinstance(other, LinearAtom) and self.key() == other.key()

    def __hash__(self):
        return hash(self.key())

    def render(self, names) -> str:
        op = "<" if self.strict else "<="
        return f"{self.term.render(names)} {op} 0"

    def __repr__(self):
        return self.render(None)


def _clause_is_tautology(atoms) -> bool:
    uppers = {}
    lowers = {}
    for a in atoms:
        if a.is_constant():
            if a.constant_truth():
                return True
            continue
        d = a.direction()
        dirkey, bound, is_upper, strict = d
        side = uppers if is_upper else lowers
        prev = side.get(dirkey)
        if prev is None or _looser(bound, strict, prev, is_upper):
            side[dirkey] = (bound, strict)
    for dirkey, (u, u_strict) in uppers.items():
        got = lowers.get(dirkey)
        if got is None:
            continue
        l, l_strict = got
        if l < u or (l == u and not (u_strict and l_strict)):
            return True
    return False


def _looser(bound, strict, prev, is_upper) -> bool:
    pb, ps = prev
    if is_upper:
        return bound > pb or (bound == pb and ps and not strict)
    return bound < pb or (bound == pb and ps and not strict)


class Clause:
    """Disjunction of linear atoms; duplicates and absorbed literals removed,
    tautologies flagged.  Absorption: of two literals bounding the same
    direction vector the same way, only the weaker constrains the disjunction
    (t <= 1 or t <= 5 is just t <= 5)."""

    __slots__ = ("atoms", "origin", "tautology", "_vars", "_key")

    def __init__(self, atoms, origin: str = "input"):
        weakest = {}
        constant_true = None
        constant_false = None
        for a in atoms:
            if a.is_constant():
                # false constants never help a disjunction; keep one
                # representative only when nothing else remains
                if a.constant_truth():
                    constant_true = a
                elif constant_false is None:
                    constant_false = a
                continue
            dirkey, bound, is_upper, strict = a.direction()
            slot = (dirkey, is_upper)
            prev = weakest.get(slot)
            if prev is None or _looser(bound, strict, prev[1:], is_upper):
                weakest[slot] = (a, bound, strict)
        kept = [entry[0] for entry in weakest.values()]
        if constant_true is not None:
            kept.append(constant_true)
        elif not kept and constant_false is not None:
            kept.append(constant_false)
        ordered = tuple(sorted(kept, key=lambda a: a.key()))
        self.atoms = ordered
        self.origin = origin
        self.tautology = _clause_is_tautology(ordered)
        self._vars = None
        self._key = None

    def key(self):
        if self._key is None:
            self._key = tuple(a.key() for a in self.atoms)
        return self._key

    def variables(self) -> frozenset:
        if self._vars is None:
            vs = set()
            for a in self.atoms:
                vs.update(a.variables())
            self._vars = frozenset(vs)
        return self._vars

    def is_ground_false(self) -> bool:
        return all(a.is_constant() and not a.constant_truth() for a in self.atoms)

    def evaluate(self, values):
        """True / False / residual Clause under a partial assignment."""
        residual = []
        for a in self.atoms:
            r = a.evaluate(values)
            if r is True:
                return True
            if r is not False:
                residual.append(r)
        if not residual:
            return False
        return Clause(residual, origin=self.origin)

    def render(self, names) -> str:
        if not self.atoms:
            return "false"
        return " | ".join(a.render(names) for a in self.atoms)

    def __repr__(self):
        return self.render(None)


class NonLinearAtom:
    """Unit constraint `defined_var rel fn(args)` over plain variables."""

    __slots__ = ("defined_var", "rel", "fn", "args", "_key")

    def __init__(self, defined_var: int, rel: str, fn, args):
        assert defined_var not in args
        self.defined_var = defined_var
        self.rel = rel
        self.fn = fn
        self.args = tuple(args)
        self._key = None

    def key(self):
        if self._key is None:
            self._key = (self.defined_var, self.rel, self.fn.name, self.args)
        return self._key

    def variables(self):
        return (self.defined_var,) + self.args

    def evaluate_args(self, values):
        """Argument values under a trail; None where unassigned."""
        return tuple(values[a] for a in self.args)

    def __eq__(self, other):
        return isinstance(other, NonLinearAtom) and self.key() == other.key()

    def __hash__(self):
        return hash(self.key())

    def render(self, names) -> str:
        args = ", ".join(names[a] if names else f"v{a}" for a in self.args)
        name = names[self.defined_var] if names else f"v{self.defined_var}"
        return f"{name} {self.rel} {self.fn.name}({args})"

    def __repr__(self):
        return self.render(None)


class Problem:
    """Separated linear form: linear CNF plus non-linear unit atoms."""

    __slots__ = ("names", "linear", "nonlinear", "n_original")

    def __init__(self, names, linear, nonlinear, n_original=None):
        self.names = list(names)
        self.linear = [c for c in linear if not c.tautology]
        self.nonlinear = tuple(nonlinear)
        self.n_original = len(self.names) if n_original is None else n_original
        for atom in self.nonlinear:
            for v in atom.variables():
                assert 0 <= v < len(self.names)

    @property
    def n_vars(self) -> int:
        return len(self.names)

    def render(self) -> str:
        lines = [f"vars: {', '.join(self.names)}"]
        for c in self.linear:
            lines.append("L: " + c.render(self.names))
        for a in self.nonlinear:
            lines.append("N: " + a.render(self.names))
        return "\n".join(lines)
