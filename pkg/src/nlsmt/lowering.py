"""Lowering parsed scripts to separated linear form, and printing back.

Boolean structure goes through negation normal form and then distribution to
CNF under a configurable atom budget; equalities split into two inequalities;
division by a non-constant routes through the reciprocal function.  Atoms are
polynomials compared against zero with the orientation folded to <= / <.
"""

from __future__ import annotations

from .errors import CnfBlowup, DivisionByZeroConstant, SmtSyntaxError, SortError
from .flatten import (
    App,
    flatten,
    p_add,
    p_app,
    p_const,
    p_is_const,
    p_mul,
    p_neg,
    p_pow,
    p_scale,
    p_sub,
    p_var,
)
from .functions import get_function, log_fn
from .rationals import Rat, is_integer
from .smtlib import Node, Script, format_rational, parse_numeral
from .terms import GE, GT, LE, LT, Problem

DEFAULT_ATOM_BUDGET = 100_000

_TRUE = ("true",)
_FALSE = ("false",)


def lower(script: Script, atom_budget: int = DEFAULT_ATOM_BUDGET) -> Problem:
    var_ids = {name: i for i, name in enumerate(script.declarations)}
    cnf = []
    budget = [atom_budget]
    for node in script.assertions:
        tree = _formula(node, var_ids)
        tree = _nnf(tree, True)
        for clause in _distribute(tree, budget):
            cnf.append(clause)
    return flatten(cnf, script.declarations)


# --------------------------------------------------------------------- terms


def _term(node: Node, var_ids) -> dict:
    if node.kind == "atom":
        q = parse_numeral(node.value)
        if q is not None:
            return p_const(q)
        v = var_ids.get(node.value)
        if v is None:
            raise SmtSyntaxError(f"unknown symbol {node.value}", node.line, node.col)
        return p_var(v)
    if not node.items:
        raise SmtSyntaxError("empty term", node.line, node.col)
    head = node.items[0]
    if head.kind != "atom":
        raise SmtSyntaxError("expected an operator", node.line, node.col)
    op = head.value
    args = node.items[1:]
    if op == "+":
        out = p_const(0)
        for a in args:
            out = p_add(out, _term(a, var_ids))
        return out
    if op == "-":
        if not args:
            raise SmtSyntaxError("- needs arguments", node.line, node.col)
        if len(args) == 1:
            return p_neg(_term(args[0], var_ids))
        out = _term(args[0], var_ids)
        for a in args[1:]:
            out = p_sub(out, _term(a, var_ids))
        return out
    if op == "*":
        out = p_const(1)
        for a in args:
            out = p_mul(out, _term(a, var_ids))
        return out
    if op == "/":
        if len(args) < 2:
            raise SmtSyntaxError("/ needs two arguments", node.line, node.col)
        out = _term(args[0], var_ids)
        for a in args[1:]:
            den = _term(a, var_ids)
            c = p_is_const(den)
            if c is not None:
                if c == 0:
                    raise DivisionByZeroConstant(
                        f"division by zero at line {node.line}, column {node.col}"
                    )
                out = p_scale(out, 1 / c)
            else:
                out = p_mul(out, p_app(get_function("recip"), [den]))
        return out
    if op == "^":
        if len(args) != 2:
            raise SmtSyntaxError("^ needs two arguments", node.line, node.col)
        base = _term(args[0], var_ids)
        exp = p_is_const(_term(args[1], var_ids))
        if exp is None or not is_integer(exp):
            raise SortError("only constant integer exponents are supported")
        n = int(exp.numerator)
        if n >= 0:
            return p_pow(base, n)
        return p_app(get_function("recip"), [p_pow(base, -n)])
    if op in ("exp", "ln", "sin", "cos", "tan", "arctan", "atan"):
        if len(args) != 1:
            raise SmtSyntaxError(f"{op} needs one argument", node.line, node.col)
        name = "arctan" if op == "atan" else op
        return p_app(get_function(name), [_term(args[0], var_ids)])
    if op == "log":
        if len(args) != 2:
            raise SmtSyntaxError("log needs base and argument", node.line, node.col)
        base = p_is_const(_term(args[0], var_ids))
        if base is None or base <= 0 or base == 1:
            raise SortError("log base must be a positive rational constant other than 1")
        return p_app(log_fn(base), [_term(args[1], var_ids)])
    raise SmtSyntaxError(f"unknown operator {op}", node.line, node.col)


# ------------------------------------------------------------------ formulas


def _atom(op: str, lhs: dict, rhs: dict):
    """(atom, poly, strict) with poly rel 0 folded to <= / <."""
    if op == "<=":
        return ("atom", p_sub(lhs, rhs), False)
    if op == "<":
        return ("atom", p_sub(lhs, rhs), True)
    if op == ">=":
        return ("atom", p_sub(rhs, lhs), False)
    if op == ">":
        return ("atom", p_sub(rhs, lhs), True)
    raise AssertionError(op)


def _formula(node: Node, var_ids):
    if node.kind == "atom":
        if node.value == "true":
            return _TRUE
        if node.value == "false":
            return _FALSE
        raise SortError(f"expected a formula, found {node.value}")
    if not node.items:
        raise SmtSyntaxError("empty formula", node.line, node.col)
    head = node.items[0]
    if head.kind != "atom":
        raise SmtSyntaxError("expected a connective", node.line, node.col)
    op = head.value
    args = node.items[1:]
    if op == "and":
        return ("and", [_formula(a, var_ids) for a in args])
    if op == "or":
        return ("or", [_formula(a, var_ids) for a in args])
    if op == "not":
        if len(args) != 1:
            raise SmtSyntaxError("not takes one formula", node.line, node.col)
        return ("not", _formula(args[0], var_ids))
    if op == "=>":
        if len(args) < 2:
            raise SmtSyntaxError("=> takes at least two formulas", node.line, node.col)
        out = _formula(args[-1], var_ids)
        for a in reversed(args[:-1]):
            out = ("or", [("not", _formula(a, var_ids)), out])
        return out
    if op in ("<", "<=", ">", ">="):
        if len(args) < 2:
            raise SmtSyntaxError(f"{op} takes two arguments", node.line, node.col)
        terms = [_term(a, var_ids) for a in args]
        parts = [_atom(op, a, b) for a, b in zip(terms, terms[1:])]
        return parts[0] if len(parts) == 1 else ("and", parts)
    if op == "=":
        if len(args) < 2:
            raise SmtSyntaxError("= takes two arguments", node.line, node.col)
        terms = [_term(a, var_ids) for a in args]
        parts = []
        for a, b in zip(terms, terms[1:]):
            parts.append(_atom("<=", a, b))
            parts.append(_atom("<=", b, a))
        return ("and", parts) if len(parts) > 1 else parts[0]
    raise SortError(f"expected a formula, found operator {op}")


def _nnf(tree, positive: bool):
    tag = tree[0]
    if tag == "true":
        return _TRUE if positive else _FALSE
    if tag == "false":
        return _FALSE if positive else _TRUE
    if tag == "atom":
        _, poly, strict = tree
        if positive:
            return tree
        # not (t <= 0) is -t < 0; not (t < 0) is -t <= 0
        return ("atom", p_neg(poly), not strict)
    if tag == "not":
        return _nnf(tree[1], not positive)
    if tag == "and":
        parts = [_nnf(t, positive) for t in tree[1]]
        return ("and" if positive else "or", parts)
    if tag == "or":
        parts = [_nnf(t, positive) for t in tree[1]]
        return ("or" if positive else "and", parts)
    raise AssertionError(tag)


def _distribute(tree, budget) -> list:
    """NNF tree to a list of clauses (lists of (poly, strict) atoms)."""
    tag = tree[0]
    if tag == "true":
        return []
    if tag == "false":
        return [[]]
    if tag == "atom":
        return [[(tree[1], tree[2])]]
    if tag == "and":
        out = []
        for t in tree[1]:
            out.extend(_distribute(t, budget))
        return out
    assert tag == "or"
    out = [[]]
    for t in tree[1]:
        sub = _distribute(t, budget)
        merged = []
        for left in out:
            for right in sub:
                merged.append(left + right)
                budget[0] -= len(right)
                if budget[0] < 0:
                    raise CnfBlowup("CNF distribution exceeds the atom budget")
        out = merged
    return out


# ------------------------------------------------------------------- printing


def _render_monomial_factor(name: str, exp: int) -> str:
    return name if exp == 1 else f"(^ {name} {exp})"


def _render_fn(atom, names) -> str:
    fn = atom.fn
    args = [names[a] for a in atom.args]
    if fn.name == "recip":
        return f"(/ 1 {args[0]})"
    if fn.name == "mul":
        return f"(* {args[0]} {args[1]})"
    if fn.name.startswith("pow"):
        return _render_monomial_factor(args[0], int(fn.name[3:]))
    if fn.name.startswith("mon_"):
        exps = [int(e) for e in fn.name[4:].split("_")]
        factors = [_render_monomial_factor(a, e) for a, e in zip(args, exps)]
        return "(* " + " ".join(factors) + ")"
    if fn.name.startswith("log_"):
        return f"(log {format_rational(fn.base)} {args[0]})"
    return f"({fn.name} {args[0]})"


def _render_term(term, names) -> str:
    parts = []
    for v, c in sorted(term.coeffs.items()):
        if c == 1:
            parts.append(names[v])
        else:
            parts.append(f"(* {format_rational(c)} {names[v]})")
    if term.const != 0 or not parts:
        parts.append(format_rational(term.const))
    if len(parts) == 1:
        return parts[0]
    return "(+ " + " ".join(parts) + ")"


def _render_linear_atom(atom, names) -> str:
    op = "<" if atom.strict else "<="
    return f"({op} {_render_term(atom.term, names)} 0)"


def problem_to_smtlib(problem: Problem) -> str:
    """Print a separated-form problem as a script that re-lowers identically."""
    lines = []
    for name in problem.names:
        lines.append(f"(declare-fun {name} () Real)")
    for clause in problem.linear:
        atoms = [_render_linear_atom(a, problem.names) for a in clause.atoms]
        body = atoms[0] if len(atoms) == 1 else "(or " + " ".join(atoms) + ")"
        lines.append(f"(assert {body})")
    for atom in problem.nonlinear:
        body = f"({atom.rel} {problem.names[atom.defined_var]} {_render_fn(atom, problem.names)})"
        lines.append(f"(assert {body})")
    lines.append("(check-sat)")
    return "\n".join(lines) + "\n"
