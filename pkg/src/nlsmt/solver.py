"""The conflict-driven solver loop over separated linear form.

Four transition rules drive the search: extend the trail with a value kept
feasible by the univariate clauses (A); on a linear conflict learn resolvents
(R); on a falsified non-linear atom learn linearisation clauses (L); when the
clause set is false under the trail, backjump to the longest prefix that is
not (B).  Learned clauses are always linear and the non-linear atom set never
changes.  The run ends with a verified model, with the trivially false clause
proving unsatisfiability, or with a resource-limit verdict.
"""

from __future__ import annotations

import heapq
import time

from .errors import PreconditionViolated
from .functions import FALSE, TRUE, check_N, eval_nl_atom
from .intervals import Interval, IntervalSet
from .linear import (
    Conflict,
    Feasible,
    Trail,
    choose_value,
    classify_clause,
    conflict_resolvents,
    feasible_set,
)
from .linearise import linearise
from .rationals import Rat
from .terms import Problem


_MISS = object()


class Limits:
    __slots__ = ("max_steps", "timeout", "cancel")

    def __init__(self, max_steps: int = 10_000_000, timeout=None, cancel=None):
        self.max_steps = max_steps
        self.timeout = timeout
        self.cancel = cancel


class Stats:
    FIELDS = (
        "decisions",
        "resolutions",
        "linearisations",
        "backjumps",
        "steps",
        "learned_clauses",
        "max_trail",
        "wall_time",
    )

    def __init__(self):
        for f in self.FIELDS:
            setattr(self, f, 0)

    def as_dict(self):
        return {f: getattr(self, f) for f in self.FIELDS}


class Verdict:
    __slots__ = ("status", "model", "reason", "stats")

    def __init__(self, status: str, model=None, reason=None, stats=None):
        self.status = status
        self.model = model
        self.reason = reason
        self.stats = stats

    def __repr__(self):
        return f"Verdict({self.status})"


class Solver:
    def __init__(
        self,
        problem: Problem,
        strategy: str = "dyadic",
        p0: int = 16,
        seeds=None,
        trace=None,
        debug: bool = False,
    ):
        self.problem = problem
        self.strategy = strategy
        self.p0 = p0
        self.seeds = list(seeds or [])
        self.trace = trace
        self.debug = debug

        n = problem.n_vars
        self.trail = Trail(n)
        self.pos = [0] * n  # trail depth at assignment time, 1-based
        self.clauses = []
        self.clause_keys = set()
        self.clause_unassigned = []
        self.var_clauses = [[] for _ in range(n)]
        self.false_clauses = []
        self.unsat = False
        for c in problem.linear:
            self._add_clause(c, initial=True)
        self.natoms = problem.nonlinear
        self.natom_unassigned = []
        self.var_natoms = [[] for _ in range(n)]
        for i, a in enumerate(self.natoms):
            vs = set(a.variables())
            self.natom_unassigned.append(len(vs))
            for v in vs:
                self.var_natoms[v].append(i)
        self._nl_cache = {}
        self._view_cache = {}
        self._hint_cache = {}
        self._unit_counts = [0] * n
        for cid, c in enumerate(self.clauses):
            self._count_unit(c)
        self.order = self._variable_order()
        self.stats = Stats()
        self._seen_conflict_trails = set()

    def _count_unit(self, clause):
        if len(clause.atoms) == 1 and len(clause.variables()) == 1:
            (v,) = clause.variables()
            self._unit_counts[v] += 1

    # ------------------------------------------------------------------ setup

    def _variable_order(self):
        """Ascending ids, with non-linear argument variables before the
        variables they define so atoms become checkable early."""
        n = self.problem.n_vars
        succs = [[] for _ in range(n)]
        indeg = [0] * n
        seen = set()
        for a in self.natoms:
            for arg in set(a.args):
                edge = (arg, a.defined_var)
                if edge in seen:
                    continue
                seen.add(edge)
                succs[arg].append(a.defined_var)
                indeg[a.defined_var] += 1
        ready = [v for v in range(n) if indeg[v] == 0]
        heapq.heapify(ready)
        out = []
        placed = [False] * n
        remaining = n
        while remaining:
            if not ready:
                ready = [min(v for v in range(n) if not placed[v])]
            v = heapq.heappop(ready)
            if placed[v]:
                continue
            placed[v] = True
            out.append(v)
            remaining -= 1
            for w in succs[v]:
                indeg[w] -= 1
                if indeg[w] == 0 and not placed[w]:
                    heapq.heappush(ready, w)
        return out

    def _add_clause(self, clause, initial=False):
        if clause.tautology:
            return False
        key = clause.key()
        if key in self.clause_keys:
            return False
        self.clause_keys.add(key)
        cid = len(self.clauses)
        self.clauses.append(clause)
        unassigned = sum(1 for v in clause.variables() if not self.trail.is_assigned(v))
        self.clause_unassigned.append(unassigned)
        for v in clause.variables():
            self.var_clauses[v].append(cid)
        if clause.is_ground_false():
            self.unsat = True
        if not initial:
            self.stats.learned_clauses += 1
            self._count_unit(clause)
        return True

    # ------------------------------------------------------------- bookkeeping

    def _assign(self, var, q):
        self.trail.push(var, q)
        self.pos[var] = len(self.trail)
        for cid in self.var_clauses[var]:
            self.clause_unassigned[cid] -= 1
        for aid in self.var_natoms[var]:
            self.natom_unassigned[aid] -= 1
        self.stats.max_trail = max(self.stats.max_trail, len(self.trail))

    def _unassign(self):
        var, _ = self.trail.pop()
        self.pos[var] = 0
        for cid in self.var_clauses[var]:
            self.clause_unassigned[cid] += 1
        for aid in self.var_natoms[var]:
            self.natom_unassigned[aid] += 1

    def _univariate_ids(self, z):
        return [cid for cid in self.var_clauses[z] if self.clause_unassigned[cid] == 1]

    def _views_for(self, z):
        """Views of the clauses univariate in z under the trail, memoized on
        the other variables' values.  Works whether or not z is assigned; an
        assignment of z itself is ignored for the analysis."""
        values = self.trail.values
        saved = values[z]
        target = 0 if saved is not None else 1
        values[z] = None
        views = []
        cache = self._view_cache
        try:
            for cid in self.var_clauses[z]:
                if self.clause_unassigned[cid] != target:
                    continue
                clause = self.clauses[cid]
                key = (cid, z, tuple(values[v] for v in clause.variables() if v != z))
                got = cache.get(key, _MISS)
                if got is _MISS:
                    got = classify_clause(clause, values, z)
                    if len(cache) > 200_000:
                        cache.clear()
                    cache[key] = got
                if got is not None and got.kind != "tautology":
                    views.append(got)
        finally:
            values[z] = saved
        return views

    def _feasible(self, z):
        views = self._views_for(z)
        acc = IntervalSet.real_line()
        for view in views:
            acc = acc.intersect(view.allowed)
            if acc.is_empty():
                return Conflict(views)
        return Feasible(acc)

    def _violated_atoms(self):
        values = self.trail.values
        out = []
        for i, a in enumerate(self.natoms):
            if self.natom_unassigned[i]:
                continue
            key = (i, self.trail.values[a.defined_var], a.evaluate_args(values))
            got = self._nl_cache.get(key)
            if got is None:
                got = eval_nl_atom(a, values, self.p0)
                if len(self._nl_cache) > 100_000:
                    self._nl_cache.clear()
                self._nl_cache[key] = got
            if got is FALSE:
                out.append(a)
        return out

    def _bounds_hint(self, var):
        """Hull of unit-clause bounds on var in the database (for polytope
        reuse: input boxes and learned global bounds)."""
        key = (var, self._unit_counts[var])
        got = self._hint_cache.get(key, _MISS)
        if got is not _MISS:
            return got
        acc = Interval(None, None)
        found = False
        for cid in self.var_clauses[var]:
            clause = self.clauses[cid]
            if len(clause.atoms) != 1:
                continue
            atom = clause.atoms[0]
            if set(atom.term.coeffs) != {var}:
                continue
            c = atom.term.coeffs[var]
            bound = -atom.term.const / c
            iv = (
                Interval(None, bound, True, atom.strict)
                if c > 0
                else Interval(bound, None, atom.strict, True)
            )
            hit = acc.intersect(iv)
            if hit is None:
                acc = None
                break
            acc = hit
            found = True
        out = acc if found else None
        if len(self._hint_cache) > 4096:
            self._hint_cache.clear()
        self._hint_cache[key] = out
        return out

    def _window_hint(self, var):
        """Bounds on var under the current trail, counting clauses that are
        univariate in var after substitution (bands around assigned peers)."""
        acc = None
        for view in self._views_for(var):
            if len(view.allowed.parts) != 1:
                continue
            piece = view.allowed.parts[0]
            acc = piece if acc is None else acc.intersect(piece)
            if acc is None:
                return None
        return acc

    # ------------------------------------------------------------------- rules

    def apply_A(self, z, q):
        if self.trail.is_assigned(z):
            raise PreconditionViolated("variable already assigned")
        self._assign(z, q)
        self.stats.decisions += 1
        self._trace("A", self.problem.names[z], str(q))

    def apply_R(self, z, witness):
        learned = conflict_resolvents(witness, z, self.trail.values)
        for c in learned:
            assert c.evaluate(self.trail.values) is False
            if self._add_clause(c):
                self.false_clauses.append(c)
            if self.trace is not None:
                self._trace(
                    "R", self.problem.names[z], "clause=" + _clause_sexpr(c, self.problem.names)
                )
        self.stats.resolutions += 1
        self._note_conflict_point()

    def apply_L(self, violated):
        lins = linearise(
            self.trail.values, violated, self.p0, self._bounds_hint, self._window_hint
        )
        names = self.problem.names
        for lin in lins:
            if self._add_clause(lin.clause):
                self.false_clauses.append(lin.clause)
            if self.trace is not None:
                point = ",".join(f"{names[v]}={q}" for v, q in sorted(lin.point.items()))
                self._trace(
                    "L",
                    lin.scheme,
                    f"d={lin.d}" if lin.d is not None else "d=-",
                    f"point=({point})",
                    "clause=" + _clause_sexpr(lin.clause, names),
                )
        self.stats.linearisations += 1
        self._note_conflict_point()

    def apply_B(self):
        if not self.false_clauses:
            raise PreconditionViolated("backjump without a false clause")
        target = None
        for c in self.false_clauses:
            vs = c.variables()
            if not vs:
                self.unsat = True
                return
            h = max(self.pos[v] for v in vs)
            assert h > 0, "false clause with unassigned variable"
            target = h - 1 if target is None else min(target, h - 1)
        while len(self.trail) > target:
            self._unassign()
        self.false_clauses = []
        self.stats.backjumps += 1
        self._trace("B", str(len(self.trail)))

    # ------------------------------------------------------------------- main

    def solve(self, limits: Limits | None = None) -> Verdict:
        limits = limits or Limits()
        start = time.monotonic()
        deadline = None if limits.timeout is None else start + limits.timeout
        seeds = list(self.seeds)
        verdict = None
        while verdict is None:
            self.stats.steps += 1
            if self.stats.steps > limits.max_steps:
                verdict = Verdict("unknown", reason="step-limit")
                break
            if deadline is not None and time.monotonic() > deadline:
                verdict = Verdict("unknown", reason="time-limit")
                break
            if limits.cancel is not None and limits.cancel():
                verdict = Verdict("unknown", reason="time-limit")
                break
            if self.unsat:
                verdict = Verdict("unsat")
                break
            if self.false_clauses:
                self.apply_B()
                continue
            violated = self._violated_atoms()
            if violated:
                self.apply_L(violated)
                continue
            if len(self.trail) == self.problem.n_vars:
                model = self._verified_model()
                verdict = Verdict("sat", model=model)
                break
            z, forced = self._pick_variable(seeds)
            fs = self._feasible(z)
            if isinstance(fs, Feasible):
                if forced is not None and fs.set.contains(forced):
                    q = forced
                else:
                    q = choose_value(fs.set, self.strategy)
                self.apply_A(z, q)
            else:
                if forced is not None:
                    seeds.insert(0, (self.problem.names[z], forced))
                self.apply_R(z, fs.witness)
        self.stats.wall_time = time.monotonic() - start
        verdict.stats = self.stats
        self._trace("verdict", verdict.status)
        return verdict

    def _pick_variable(self, seeds):
        while seeds:
            name, value = seeds[0]
            try:
                var = self.problem.names.index(name)
            except ValueError:
                seeds.pop(0)
                continue
            if self.trail.is_assigned(var):
                seeds.pop(0)
                continue
            seeds.pop(0)
            return var, Rat(value)
        for v in self.order:
            if not self.trail.is_assigned(v):
                return v, None
        raise PreconditionViolated("no unassigned variable")

    def _verified_model(self):
        values = self.trail.values
        for clause in self.clauses:
            if clause.tautology:
                continue
            if clause.evaluate(values) is not True:
                raise AssertionError(f"model fails clause {clause.render(self.problem.names)}")
        for atom in self.natoms:
            if eval_nl_atom(atom, values, self.p0) is not TRUE:
                raise AssertionError(f"model fails atom {atom.render(self.problem.names)}")
        return {self.problem.names[v]: q for v, q in self.trail.order}

    def _note_conflict_point(self):
        if not self.debug:
            return
        snap = self.trail.snapshot()
        assert snap not in self._seen_conflict_trails, (
            "conflicting trail revisited: search space did not shrink"
        )
        self._seen_conflict_trails.add(snap)

    def _trace(self, *fields):
        if self.trace is not None:
            self.trace.write(" ".join(fields) + "\n")


def _clause_sexpr(clause, names) -> str:
    from .lowering import _render_linear_atom

    atoms = [_render_linear_atom(a, names) for a in clause.atoms]
    if len(atoms) == 1:
        return atoms[0]
    return "(or " + " ".join(atoms) + ")"


def solve(problem: Problem, limits: Limits | None = None, **kwargs) -> Verdict:
    return Solver(problem, **kwargs).solve(limits)
