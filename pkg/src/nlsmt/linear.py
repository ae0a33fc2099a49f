"""Trail management, univariate feasibility, value selection, and resolution.

A clause that depends only on one unassigned variable z under the current
trail denotes a union of at most two half-bounded intervals.  Intersecting
these allowed sets over all such clauses either yields a non-empty feasible
set (extend the trail) or a conflict.  Conflicts are resolved by arithmetical
resolution on z:

    A | (c z + d <= 0)     B | (-c' z + d' <= 0)
    -------------------------------------------    (c, c' > 0)
    A | B | (c' d + c d' <= 0)

with a strict conclusion when either premise is strict.  For a conflict we
select a minimal chain of clauses whose forbidden regions cover the real
line and combine, for every cross-clause pair of a lower and an upper bound
literal that contradict under the trail, the pair's resolution consequence
into one learned clause.  That clause carries no literal on z, is false
under the trail, and is satisfied by every assignment satisfying the chain.
"""

from __future__ import annotations

from .errors import EmptyFeasibleSet, NotResolvable, PreconditionViolated
from .intervals import Interval, IntervalSet
from .rationals import Q0, Rat
from .selection import choose_simplest
from .terms import Clause, LinearAtom, LinearTerm


class Trail:
    """Ordered single-variable rational assignments with O(1) lookup."""

    __slots__ = ("values", "order")

    def __init__(self, n_vars: int):
        self.values = [None] * n_vars
        self.order = []

    def __len__(self):
        return len(self.order)

    def is_assigned(self, var: int) -> bool:
        return self.values[var] is not None

    def value(self, var: int):
        return self.values[var]

    def push(self, var: int, q):
        assert self.values[var] is None, "variable assigned twice"
        self.values[var] = q
        self.order.append((var, q))

    def pop(self):
        var, q = self.order.pop()
        self.values[var] = None
        return var, q

    def position(self, var: int):
        """1-based trail position of var, or None."""
        for i, (v, _) in enumerate(self.order):
            if v == var:
                return i + 1
        return None

    def as_dict(self) -> dict:
        return dict(self.order)

    def snapshot(self) -> tuple:
        return tuple(self.order)


class ZLiteral:
    """A clause literal seen as a bound on z under the current trail."""

    __slots__ = ("atom", "coeff", "bound", "is_upper", "strict")

    def __init__(self, atom: LinearAtom, coeff, bound, is_upper: bool, strict: bool):
        self.atom = atom
        self.coeff = coeff
        self.bound = bound
        self.is_upper = is_upper
        self.strict = strict

    def allowed(self) -> Interval:
        if self.is_upper:
            return Interval(None, self.bound, True, self.strict)
        return Interval(self.bound, None, self.strict, True)


class ClauseView:
    """A clause univariate in z: its z-literals and allowed set under the trail."""

    __slots__ = ("clause", "zlits", "allowed", "kind", "margin")

    def __init__(self, clause: Clause, zlits, allowed: IntervalSet, kind: str, margin=None):
        self.clause = clause
        self.zlits = zlits
        self.allowed = allowed
        self.kind = kind  # 'two-sided' | 'lower' | 'upper' | 'tautology'
        # min distance-to-truth of the non-z literals: how far the trail can
        # move before the clause stops excluding; pins give margin 0
        self.margin = margin

    def max_upper(self):
        best = None
        for lit in self.zlits:
            if lit.is_upper and (
                best is None
                or lit.bound > best.bound
                or (lit.bound == best.bound and best.strict and not lit.strict)
            ):
                best = lit
        return best

    def min_lower(self):
        best = None
        for lit in self.zlits:
            if not lit.is_upper and (
                best is None
                or lit.bound < best.bound
                or (lit.bound == best.bound and best.strict and not lit.strict)
            ):
                best = lit
        return best


class Feasible:
    __slots__ = ("set",)

    def __init__(self, s: IntervalSet):
        assert not s.is_empty()
        self.set = s


class Conflict:
    __slots__ = ("witness",)

    def __init__(self, witness):
        self.witness = witness


def classify_clause(clause: Clause, values, z: int):
    """ClauseView when the clause depends exactly on z under values, else None.

    Satisfied clauses and clauses with another unassigned variable are
    excluded; tautologies (case iv) come back flagged for dropping.
    """
    zlits = []
    margin = None
    for atom in clause.atoms:
        coeff = Q0
        const = atom.term.const
        decided = True
        for v, c in atom.term.coeffs.items():
            if v == z:
                coeff = c
                continue
            q = values[v]
            if q is None:
                decided = False
                break
            const += c * q
        if not decided:
            return None
        if coeff == 0:
            sat = const < 0 if atom.strict else const <= 0
            if sat:
                return None
            # false literal sitting at value `const`; its distance to truth
            if margin is None or const < margin:
                margin = const
            continue
        bound = -const / coeff
        zlits.append(ZLiteral(atom, coeff, bound, coeff > 0, atom.strict))
    if not zlits:
        # every literal is decided false: the clause itself is false
        raise PreconditionViolated("clause already false under the trail")
    allowed = IntervalSet([lit.allowed() for lit in zlits])
    has_upper = any(l.is_upper for l in zlits)
    has_lower = any(not l.is_upper for l in zlits)
    if len(allowed.parts) == 1 and allowed.parts[0].lo is None and allowed.parts[0].hi is None:
        kind = "tautology"
    elif has_upper and has_lower:
        kind = "two-sided"
    elif has_lower:
        kind = "lower"
    else:
        kind = "upper"
    return ClauseView(clause, zlits, allowed, kind, margin)


def univariate_clauses(clauses, values, z: int):
    """Views of the clauses that only depend on z, tautologies dropped."""
    views = []
    for clause in clauses:
        view = classify_clause(clause, values, z)
        if view is not None and view.kind != "tautology":
            views.append(view)
    return views


def feasible_set(clauses, values, z: int):
    """Feasible(IntervalSet) or Conflict(witness) for extending the trail at z."""
    views = univariate_clauses(clauses, values, z)
    acc = IntervalSet.real_line()
    for view in views:
        acc = acc.intersect(view.allowed)
        if acc.is_empty():
            return Conflict(views)
    return Feasible(acc)


def choose_value(feasible: IntervalSet, strategy: str = "dyadic"):
    if feasible.is_empty():
        raise EmptyFeasibleSet("choose_value on empty set")
    return choose_simplest(feasible, strategy)


def _combine(upper: LinearAtom, lower: LinearAtom, z: int) -> LinearAtom:
    """Resolution consequence on z of an upper literal (z-coeff c > 0) and a
    lower literal (z-coeff -c' < 0): the atom c'*term_up + c*term_low rel 0,
    in which z cancels; strict when either premise is strict."""
    c = upper.term.coeffs[z]
    cp = -lower.term.coeffs[z]
    assert c > 0 and cp > 0
    term = upper.term.scaled(cp).plus(lower.term.scaled(c))
    assert z not in term.coeffs
    return LinearAtom(term, upper.strict or lower.strict)


def resolve(d: Clause, e: Clause, z: int) -> Clause:
    """Single arithmetical resolution on z between two clauses.

    Takes the first literal of d with positive z coefficient and the first of
    e with negative z coefficient (canonical atom order).
    """
    lit_d = next((a for a in d.atoms if a.term.coeffs.get(z, Q0) > 0), None)
    lit_e = next((a for a in e.atoms if a.term.coeffs.get(z, Q0) < 0), None)
    if lit_d is None or lit_e is None:
        raise NotResolvable(f"no opposing bounds on variable {z}")
    ground = _combine(lit_d, lit_e, z)
    rest = [a for a in d.atoms if a is not lit_d] + [a for a in e.atoms if a is not lit_e]
    return Clause(rest + [ground], origin="resolvent")


def _conflicting(low: ZLiteral, up: ZLiteral) -> bool:
    """No z satisfies both bounds under the trail."""
    if up.bound < low.bound:
        return True
    return up.bound == low.bound and (up.strict or low.strict)


def _excludes_point(view: ClauseView, q) -> bool:
    return not view.allowed.contains(q)


def _excludes_above(view: ClauseView, q) -> bool:
    """Allowed set misses (q, q + delta) for some positive delta."""
    up = view.max_upper()
    if up is not None and up.bound > q:
        return False
    low = view.min_lower()
    if low is None:
        return True  # no lower piece: everything above the uppers is excluded
    return low.bound > q


def _pref_key(view: ClauseView):
    """Participant preference: clauses excluding a whole region around the
    trail (larger margin of their decided literals) beat point-pinned ones,
    so resolvents stay wide; bulky participants lose ties."""
    return (1, Q0) if view.margin is None else (0, view.margin)


def _cover_chain(witness):
    """Greedy subset of views whose forbidden regions cover the line."""
    start = None
    start_key = None
    for view in witness:
        if view.kind != "lower":
            continue
        low = view.min_lower()
        key = (_pref_key(view), low.bound, low.strict)
        if start is None or key > start_key:
            start, start_key = view, key
    if start is None:
        raise PreconditionViolated("conflict without a pure lower-bound clause")
    chain = [start]
    low = start.min_lower()
    frontier = (low.bound, "above" if low.strict else "point")
    guard = 0
    while True:
        guard += 1
        if guard > len(witness) + 2:
            raise PreconditionViolated("cover chain failed to terminate")
        q, kind = frontier
        best = None
        best_key = None
        for view in witness:
            if view in chain:
                continue
            hit = _excludes_point(view, q) if kind == "point" else _excludes_above(view, q)
            if not hit:
                continue
            low = view.min_lower()
            ext = (1, Q0, False) if low is None else (0, low.bound, low.strict)
            key = (_pref_key(view), ext)
            if best is None or key > best_key:
                best, best_key = view, key
        if best is None:
            raise PreconditionViolated("conflict witness does not cover the line")
        chain.append(best)
        low = best.min_lower()
        if low is None:
            return chain
        frontier = (low.bound, "above" if low.strict else "point")


RESOLVENT_PAIR_CAP = 4096
RESOLVENT_SIZE_CAP = 400


def _pair_count(chain) -> int:
    n_low = sum(sum(1 for l in v.zlits if not l.is_upper) for v in chain)
    n_up = sum(sum(1 for l in v.zlits if l.is_upper) for v in chain)
    return n_low * n_up


def _point_exclusion(chain, values) -> Clause:
    """Fallback certificate: some assigned variable of the participating
    clauses must change.  Sound because, with all of them fixed, the chain
    proves no value for z exists; used when the pairwise certificate would
    blow up the clause database."""
    support = set()
    for view in chain:
        for v in view.clause.variables():
            if values[v] is not None:
                support.add(v)
    atoms = []
    for v in sorted(support):
        q = values[v]
        atoms.append(LinearAtom(LinearTerm({v: Rat(1)}, -q), True))
        atoms.append(LinearAtom(LinearTerm({v: Rat(-1)}, q), True))
    return Clause(atoms, origin="resolvent")


def conflict_resolvents(witness, z: int, values) -> list:
    """Learned clauses from a conflict on z; each is false under the trail.

    A minimal cover chain is selected from the witness; the learned clause
    collects every participant's non-z literals plus the resolution
    consequence of every cross-clause contradicting (lower, upper) pair.
    Every total assignment satisfying the participating clauses satisfies
    the result, and under the current trail all its literals are false.
    Oversized certificates degrade to a point-exclusion clause.
    """
    chain = _cover_chain(witness)
    if _pair_count(chain) > RESOLVENT_PAIR_CAP:
        # retry the cover without bulky participants before giving up
        slim = [v for v in witness if len(v.zlits) <= 4]
        try:
            alt = _cover_chain(slim)
        except PreconditionViolated:
            alt = None
        if alt is not None and _pair_count(alt) <= RESOLVENT_PAIR_CAP:
            chain = alt
        else:
            return [_point_exclusion(chain, values)]
    atoms = []
    for view in chain:
        zatoms = {id(l.atom) for l in view.zlits}
        atoms.extend(a for a in view.clause.atoms if id(a) not in zatoms)
    seen = set()
    for i, vi in enumerate(chain):
        for j, vj in enumerate(chain):
            if i == j:
                continue
            for low in vi.zlits:
                if low.is_upper:
                    continue
                for up in vj.zlits:
                    if not up.is_upper:
                        continue
                    if not _conflicting(low, up):
                        continue
                    ground = _combine(up.atom, low.atom, z)
                    if ground.key() in seen:
                        continue
                    seen.add(ground.key())
                    atoms.append(ground)
    out = Clause(atoms, origin="resolvent")
    if len(out.atoms) > RESOLVENT_SIZE_CAP:
        return [_point_exclusion(chain, values)]
    assert not out.tautology, "conflict resolvent must not be a tautology"
    return [out]
