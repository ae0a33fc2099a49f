"""Generators for the sphere-packing benchmark families.

K(n, d): n points in the d-dimensional box [-1, 1]^d, pairwise squared
euclidean distance above 4 (balls of radius 1 in a box of radius 2 without
touching).  C(r2): a point within 1/100 of a sphere of squared radius r2
around the origin must leave the ball of radius 8.  Both are emitted as
square-root-free SMT-LIB scripts, byte-identical for identical arguments.
"""

from __future__ import annotations

from .rationals import Rat
from .smtlib import format_rational


def gen_K(n: int, d: int) -> str:
    assert n >= 1 and d >= 1
    names = [[f"x{i}_{c}" for c in range(1, d + 1)] for i in range(1, n + 1)]
    lines = ["(set-logic QF_NRA)"]
    for row in names:
        for name in row:
            lines.append(f"(declare-fun {name} () Real)")
    for row in names:
        for name in row:
            lines.append(f"(assert (<= (- 1) {name}))")
            lines.append(f"(assert (<= {name} 1))")
    for i in range(n):
        for j in range(i + 1, n):
            sq = [
                f"(* (- {names[i][c]} {names[j][c]}) (- {names[i][c]} {names[j][c]}))"
                for c in range(d)
            ]
            dist = sq[0] if d == 1 else "(+ " + " ".join(sq) + ")"
            lines.append(f"(assert (> {dist} 4))")
    lines.append("(check-sat)")
    return "\n".join(lines) + "\n"


def gen_C(r_squared) -> str:
    r2 = Rat(r_squared)
    assert r2 >= 0
    xs = [f"x{c}" for c in (1, 2, 3)]
    ys = [f"y{c}" for c in (1, 2, 3)]
    lines = ["(set-logic QF_NRA)"]
    for name in xs + ys:
        lines.append(f"(declare-fun {name} () Real)")
    sq = lambda vs: "(+ " + " ".join(f"(* {v} {v})" for v in vs) + ")"
    lines.append(f"(assert (<= {sq(xs)} {format_rational(r2)}))")
    lines.append(f"(assert (>= {sq(ys)} 64))")
    for x, y in zip(xs, ys):
        lines.append(f"(assert (<= (- {x} {y}) (/ 1 100)))")
        lines.append(f"(assert (<= (- {y} {x}) (/ 1 100)))")
    lines.append("(check-sat)")
    return "\n".join(lines) + "\n"
