"""Monotonic flattening of extended terms into separated linear form.

Terms are kept in polynomial normal form: a map from monomial keys to
rational coefficients, where a key is a sorted tuple of (base, exponent)
pairs and a base is either a variable id or an application of a registered
non-linear function to argument terms.  Flattening walks each atom's
monomials: a non-linear occurrence q*m + p <= 0 becomes q*v + p <= 0 with a
fresh v bounded one-sidedly in the direction dictated by the sign of q
(v >= m for q > 0 under <= or <, else v <= m), which preserves
satisfiability in both directions.  Nested non-linear arguments get a fresh
variable bounded on both sides, and unit atoms already shaped like
`x rel f(args)` pass through without an auxiliary variable.
"""

from __future__ import annotations

from .errors import CnfBlowup
from .functions import FdecFunction, monomial_fn
from .rationals import Q0, Q1, Rat
from .terms import GE, GT, LE, LT, Clause, LinearAtom, LinearTerm, NonLinearAtom, Problem

POLY_KEY_BUDGET = 100_000
BOTH = "both"


class App:
    """Application of a non-linear function to argument polynomials."""

    __slots__ = ("fn", "args", "_key")

    def __init__(self, fn: FdecFunction, args):
        self.fn = fn
        self.args = tuple(a if isinstance(a, tuple) else _freeze(a) for a in args)
        self._key = (fn.name, self.args)

    def key(self):
        return self._key

    def __eq__(self, other):
        return isinstance(other, App) and self._key == other._key

    def __hash__(self):
        return hash(self._key)

    def __repr__(self):
        return f"{self.fn.name}/{len(self.args)}"


def _base_sort_key(b):
    if isinstance(b, int):
        return (0, b, "")
    return (1, 0, repr(b.key()))


def _mono_sort_key(item):
    key, _coeff = item
    return tuple((_base_sort_key(b), e) for b, e in key)


def _freeze(poly: dict) -> tuple:
    return tuple(sorted(poly.items(), key=_mono_sort_key))


def _thaw(frozen) -> dict:
    return dict(frozen)


def p_const(q) -> dict:
    q = Rat(q)
    return {(): q} if q != 0 else {}


def p_var(v: int) -> dict:
    return {((v, 1),): Q1}


def p_app(fn: FdecFunction, args) -> dict:
    return {((App(fn, args), 1),): Q1}


def p_add(a: dict, b: dict) -> dict:
    out = dict(a)
    for k, c in b.items():
        s = out.get(k, Q0) + c
        if s == 0:
            out.pop(k, None)
        else:
            out[k] = s
    return out


def p_scale(a: dict, q) -> dict:
    if q == 0:
        return {}
    return {k: c * q for k, c in a.items()}


def p_neg(a: dict) -> dict:
    return {k: -c for k, c in a.items()}


def p_sub(a: dict, b: dict) -> dict:
    return p_add(a, p_neg(b))


def _mono_mul(k1: tuple, k2: tuple) -> tuple:
    exps = {}
    for b, e in k1 + k2:
        exps[b] = exps.get(b, 0) + e
    return tuple(sorted(exps.items(), key=lambda it: _base_sort_key(it[0])))


def p_mul(a: dict, b: dict) -> dict:
    out = {}
    for k1, c1 in a.items():
        for k2, c2 in b.items():
            k = _mono_mul(k1, k2)
            s = out.get(k, Q0) + c1 * c2
            if s == 0:
                out.pop(k, None)
            else:
                out[k] = s
            if len(out) > POLY_KEY_BUDGET:
                raise CnfBlowup("polynomial expansion exceeds the term budget")
    return out


def p_pow(a: dict, n: int) -> dict:
    if n < 0:
        raise ValueError("negative exponents are lowered through the reciprocal")
    out = p_const(1)
    for _ in range(n):
        out = p_mul(out, a)
    return out


def p_is_const(a: dict):
    if not a:
        return Q0
    if len(a) == 1 and () in a:
        return a[()]
    return None


def p_single_var(a: dict):
    if len(a) == 1:
        (key, coeff), = a.items()
        if coeff == 1 and len(key) == 1 and isinstance(key[0][0], int) and key[0][1] == 1:
            return key[0][0]
    return None


def p_is_linear(a: dict) -> bool:
    for key in a:
        if key == ():
            continue
        if len(key) != 1:
            return False
        b, e = key[0]
        if not isinstance(b, int) or e != 1:
            return False
    return True


def _is_var_key(key) -> bool:
    return len(key) == 1 and isinstance(key[0][0], int) and key[0][1] == 1


def _is_app_key(key) -> bool:
    return len(key) == 1 and not isinstance(key[0][0], int) and key[0][1] == 1


class Flattener:
    def __init__(self, names):
        self.names = list(names)
        self.n_original = len(self.names)
        self.natoms = []
        self.natom_keys = set()
        self.clauses = []
        self.app_cache = {}
        self.def_cache = {}
        self.mono_cache = {}

    def fresh(self, hint: str) -> int:
        v = len(self.names)
        self.names.append(f".{hint}{v}")
        return v

    def add_natom(self, var: int, rel: str, fn, args):
        atom = NonLinearAtom(var, rel, fn, args)
        if atom.key() not in self.natom_keys:
            self.natom_keys.add(atom.key())
            self.natoms.append(atom)

    def resolve_arg(self, poly: dict) -> int:
        """A variable constrained to equal the argument polynomial's value."""
        v = p_single_var(poly)
        if v is not None:
            return v
        if len(poly) == 1:
            (key, coeff), = poly.items()
            if coeff == 1 and _is_app_key(key):
                return self.var_for_app(key[0][0], BOTH)
        key = _freeze(poly)
        got = self.def_cache.get(key)
        if got is not None:
            return got
        if p_is_linear(poly):
            w = self.fresh("t")
            self.def_cache[key] = w
            diff = self._linear_term(p_sub(poly, p_var(w)))
            self.clauses.append(Clause([LinearAtom(diff, False)]))
            self.clauses.append(Clause([LinearAtom(diff.scaled(Rat(-1)), False)]))
            return w
        # nested non-linear inner term: bound the fresh variable on both sides
        w = self.fresh("u")
        self.def_cache[key] = w
        diff = p_sub(poly, p_var(w))
        self.flatten_atom(diff, False, None)            # poly - w <= 0: w >= poly
        self.flatten_atom(p_neg(diff), False, None)     # w - poly <= 0: w <= poly
        return w

    def var_for_app(self, app: App, rel: str) -> int:
        """A variable v with `v rel app` (or both bounds) in the non-linear part."""
        arg_vars = tuple(self.resolve_arg(_thaw(f)) for f in app.args)
        both_key = (app.fn.name, arg_vars, BOTH)
        got = self.app_cache.get(both_key)
        if got is not None:
            return got
        if rel != BOTH:
            one_key = (app.fn.name, arg_vars, rel)
            got = self.app_cache.get(one_key)
            if got is not None:
                return got
            v = self.fresh("n")
            self.app_cache[one_key] = v
            self.add_natom(v, rel, app.fn, arg_vars)
            return v
        v = self.fresh("n")
        self.app_cache[both_key] = v
        self.add_natom(v, LE, app.fn, arg_vars)
        self.add_natom(v, GE, app.fn, arg_vars)
        return v

    def var_for_monomial(self, key: tuple, rel: str) -> int:
        """A variable bounded in direction rel by a degree >= 2 monomial."""
        merged = {}
        for b, e in key:
            base = b if isinstance(b, int) else self.var_for_app(b, BOTH)
            merged[base] = merged.get(base, 0) + e
        pairs = sorted(merged.items())
        bases = tuple(b for b, _ in pairs)
        fn = monomial_fn([e for _, e in pairs])
        cache_key = (fn.name, bases, rel)
        got = self.mono_cache.get(cache_key)
        if got is not None:
            return got
        v = self.fresh("m")
        self.mono_cache[cache_key] = v
        self.add_natom(v, rel, fn, bases)
        return v

    def _linear_term(self, poly: dict) -> LinearTerm:
        coeffs = {}
        const = Q0
        for key, c in poly.items():
            if key == ():
                const = c
            else:
                (b, _), = key
                coeffs[b] = coeffs.get(b, Q0) + c
        return LinearTerm(coeffs, const)

    def _direct_form(self, poly: dict, strict: bool) -> bool:
        """Consume unit atoms of shape `a*x - a*m rel 0` (x a variable, m a
        non-linear monomial or application) as a direct non-linear atom."""
        if len(poly) != 2 or () in poly:
            return False
        var_part = None
        nl_part = None
        for key, c in poly.items():
            if _is_var_key(key):
                var_part = (key[0][0], c)
            else:
                nl_part = (key, c)
        if var_part is None or nl_part is None:
            return False
        x, a = var_part
        key, b = nl_part
        if a != -b:
            return False
        if _is_app_key(key):
            app = key[0][0]
            arg_vars = tuple(self.resolve_arg(_thaw(f)) for f in app.args)
            if x in arg_vars:
                return False
            rel = (LT if strict else LE) if a > 0 else (GT if strict else GE)
            self.add_natom(x, rel, app.fn, arg_vars)
            return True
        if all(isinstance(bs, int) for bs, _ in key):
            bases = tuple(bs for bs, _ in key)
            if x in bases:
                return False
            fn = monomial_fn([e for _, e in key])
            rel = (LT if strict else LE) if a > 0 else (GT if strict else GE)
            self.add_natom(x, rel, fn, bases)
            return True
        return False

    def flatten_atom(self, poly: dict, strict: bool, clause_atoms):
        """Rewrite one atom `poly <= 0` / `poly < 0`; unit when clause_atoms is None."""
        unit = clause_atoms is None
        if unit and self._direct_form(poly, strict):
            return
        linear = {}
        for key, c in poly.items():
            if key == () or _is_var_key(key):
                linear[key] = linear.get(key, Q0) + c
                continue
            if _is_app_key(key):
                v = self.var_for_app(key[0][0], GE if c > 0 else LE)
            else:
                v = self.var_for_monomial(key, GE if c > 0 else LE)
            vk = ((v, 1),)
            linear[vk] = linear.get(vk, Q0) + c
        atom = LinearAtom(self._linear_term(linear), strict)
        if unit:
            self.clauses.append(Clause([atom]))
        else:
            clause_atoms.append(atom)

    def run(self, cnf) -> Problem:
        for clause in cnf:
            if len(clause) == 1:
                poly, strict = clause[0]
                self.flatten_atom(poly, strict, None)
                continue
            atoms = []
            for poly, strict in clause:
                self.flatten_atom(poly, strict, atoms)
            self.clauses.append(Clause(atoms))
        return Problem(self.names, self.clauses, self.natoms, self.n_original)


def flatten(cnf, names) -> Problem:
    """cnf: clauses of (polynomial, strict) atoms meaning `poly <= 0` / `< 0`."""
    return Flattener(names).run(cnf)
