"""Linearisation diagrams from two-variable solver traces.

Each linearisation record turns into one SVG showing the input constraint
boundaries, the conflicting trail point, and the region the learned clause
excludes (the intersection of the negated clause literals).  Traces over
more than two variables cannot be drawn and raise NonPlanarTrace.
"""

from __future__ import annotations

import os

from .errors import NonPlanarTrace
from .rationals import Rat
from .smtlib import parse_numeral, parse_sexprs


def _parse_linear_sexpr(node, var_index):
    """(<= term 0) or (< term 0) -> (coeff_x, coeff_y, const, strict)."""
    assert node.kind == "list" and len(node.items) == 3
    op = node.items[0].value
    coeffs = [0.0, 0.0, 0.0]  # x, y, const

    def walk(term, scale=1.0):
        if term.kind == "atom":
            q = parse_numeral(term.value)
            if q is not None:
                coeffs[2] += scale * float(q.numerator) / float(q.denominator)
                return
            coeffs[var_index[term.value]] += scale
            return
        head = term.items[0].value
        args = term.items[1:]
        if head == "+":
            for a in args:
                walk(a, scale)
        elif head == "-":
            if len(args) == 1:
                walk(args[0], -scale)
            else:
                walk(args[0], scale)
                for a in args[1:]:
                    walk(a, -scale)
        elif head == "*":
            q = parse_numeral(args[0].value) if args[0].kind == "atom" else None
            if q is None and args[0].kind == "list":
                inner = _try_const(args[0])
                q = inner
            assert q is not None, "nonlinear term in a trace clause"
            walk(args[1], scale * float(q.numerator) / float(q.denominator))
        elif head == "/":
            a = _try_const(term)
            assert a is not None
            coeffs[2] += scale * float(a.numerator) / float(a.denominator)
        else:
            raise AssertionError(f"unsupported term {head} in trace clause")

    walk(node.items[1])
    return coeffs[0], coeffs[1], coeffs[2], op == "<"


def _try_const(node):
    if node.kind == "atom":
        return parse_numeral(node.value)
    head = node.items[0].value
    if head == "-" and len(node.items) == 2:
        inner = _try_const(node.items[1])
        return None if inner is None else -inner
    if head == "/" and len(node.items) == 3:
        a = _try_const(node.items[1])
        b = _try_const(node.items[2])
        if a is None or b is None or b == 0:
            return None
        return a / b
    return None


def _clip(polygon, a, b, c):
    """Sutherland-Hodgman clip of polygon against a*x + b*y + c <= 0."""
    out = []
    n = len(polygon)
    for i in range(n):
        px, py = polygon[i]
        qx, qy = polygon[(i + 1) % n]
        pin = a * px + b * py + c <= 1e-12
        qin = a * qx + b * qy + c <= 1e-12
        if pin:
            out.append((px, py))
        if pin != qin:
            denom = a * (qx - px) + b * (qy - py)
            if denom != 0:
                t = -(a * px + b * py + c) / denom
                out.append((px + t * (qx - px), py + t * (qy - py)))
    return out


def _parse_trace(path):
    names = None
    inputs = []
    lins = []
    with open(path, "r") as fh:
        for line in fh:
            line = line.strip()
            if not line:
                continue
            if line.startswith("vars "):
                names = line.split()[1:]
            elif line.startswith("I ") or line.startswith("L "):
                head, _, sexpr = line.partition("clause=")
                clause = parse_sexprs(sexpr)[0] if sexpr else None
                if line.startswith("I "):
                    inputs.append(clause)
                else:
                    fields = head.split()
                    point = {}
                    for f in fields:
                        if f.startswith("point=("):
                            for part in f[7:-1].split(","):
                                k, _, v = part.partition("=")
                                q = Rat(v)
                                point[k] = float(q.numerator) / float(q.denominator)
                    lins.append((fields[1], point, clause))
    return names, inputs, lins


def plot_trace(path: str, outdir: str = ".") -> list:
    """Write one SVG per linearisation record; returns the file paths."""
    names, inputs, lins = _parse_trace(path)
    if not lins:
        return []
    if names is None or len(names) != 2:
        raise NonPlanarTrace(
            f"trace covers {0 if names is None else len(names)} variables, need exactly 2"
        )
    import matplotlib

    matplotlib.use("Agg")
    import matplotlib.pyplot as plt

    var_index = {names[0]: 0, names[1]: 1}
    span = 6.0
    box = [(-span, -span), (span, -span), (span, span), (-span, span)]
    files = []
    for k, (scheme, point, clause) in enumerate(lins, start=1):
        fig, ax = plt.subplots(figsize=(5, 5))
        # excluded region: every clause literal false, i.e. its negation holds
        poly = list(box)
        atoms = clause.items[1:] if clause.items[0].value == "or" else [clause]
        for atom in atoms:
            a, b, c, strict = _parse_linear_sexpr(atom, var_index)
            # literal a x + b y + c <= 0 is false iff -(ax+by+c) < 0
            poly = _clip(poly, -a, -b, -c)
            if not poly:
                break
        if poly:
            xs = [p[0] for p in poly] + [poly[0][0]]
            ys = [p[1] for p in poly] + [poly[0][1]]
            ax.fill(xs, ys, alpha=0.35, color="tab:red", label="excluded")
        for clause_node in inputs:
            atoms = (
                clause_node.items[1:]
                if clause_node.items and clause_node.items[0].value == "or"
                else [clause_node]
            )
            for atom in atoms:
                a, b, c, _ = _parse_linear_sexpr(atom, var_index)
                if b != 0:
                    xs = [-span, span]
                    ys = [(-c - a * x) / b for x in xs]
                elif a != 0:
                    xs = [-c / a, -c / a]
                    ys = [-span, span]
                else:
                    continue
                ax.plot(xs, ys, color="tab:blue", linewidth=0.8)
        if point:
            ax.plot(
                [point.get(names[0], 0.0)],
                [point.get(names[1], 0.0)],
                "ko",
                markersize=5,
                label="conflict point",
            )
        ax.set_xlim(-span, span)
        ax.set_ylim(-span, span)
        ax.set_xlabel(names[0])
        ax.set_ylabel(names[1])
        ax.set_title(f"linearisation {k} ({scheme})")
        ax.legend(loc="upper right", fontsize=8)
        out = os.path.join(outdir, f"linearisation_{k:03d}.svg")
        fig.savefig(out)
        plt.close(fig)
        files.append(out)
    return files
