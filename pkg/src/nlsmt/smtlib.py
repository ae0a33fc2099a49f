"""SMT-LIB 2 subset parser: scripts over quantifier-free real arithmetic.

Supported commands: set-logic (at most once), declare-const / declare-fun
with zero arguments and sort Real, assert, check-sat, get-model, exit;
set-info is accepted and ignored.  The term language covers the Boolean
connectives, the four orderings and equality, +, -, *, /, ^ and the
non-linear symbols exp, ln, sin, cos, tan, arctan (also spelled atan) and
log with a rational base.  Numerals and decimals are read exactly as
rationals; nothing is ever converted through floating point.
"""

from __future__ import annotations

from .errors import SmtSyntaxError, SortError, UnsupportedCommand
from .rationals import Rat

BOOL_OPS = {"and", "or", "not", "=>"}
REL_OPS = {"<", "<=", ">", ">=", "="}
ARITH_OPS = {"+", "-", "*", "/", "^"}
FUN_OPS = {"exp", "ln", "sin", "cos", "tan", "arctan", "atan", "log"}


class Node:
    """S-expression with source position: either an atom or a list."""

    __slots__ = ("kind", "value", "items", "line", "col")

    def __init__(self, kind, value, items, line, col):
        self.kind = kind  # 'atom' | 'list'
        self.value = value
        self.items = items
        self.line = line
        self.col = col

    def __repr__(self):
        if self.kind == "atom":
            return self.value
        return "(" + " ".join(map(repr, self.items)) + ")"


def tokenize(text: str):
    line, col = 1, 0
    i, n = 0, len(text)
    while i < n:
        ch = text[i]
        if ch == "\n":
            line += 1
            col = 0
            i += 1
            continue
        col += 1
        if ch in " \t\r":
            i += 1
            continue
        if ch == ";":
            while i < n and text[i] != "\n":
                i += 1
            continue
        if ch in "()":
            yield (ch, line, col)
            i += 1
            continue
        if ch == "|":
            j = text.find("|", i + 1)
            if j < 0:
                raise SmtSyntaxError("unterminated quoted symbol", line, col)
            yield (text[i : j + 1], line, col)
            col += j - i
            i = j + 1
            continue
        if ch == '"':
            j = i + 1
            while j < n and text[j] != '"':
                j += 1
            if j >= n:
                raise SmtSyntaxError("unterminated string", line, col)
            yield (text[i : j + 1], line, col)
            col += j - i
            i = j + 1
            continue
        j = i
        while j < n and text[j] not in " \t\r\n();|\"":
            j += 1
        yield (text[i:j], line, col)
        col += j - i - 1
        i = j


def parse_sexprs(text: str):
    """All top-level s-expressions with positions."""
    stack = []
    top = []
    for tok, line, col in tokenize(text):
        if tok == "(":
            node = Node("list", None, [], line, col)
            if stack:
                stack[-1].items.append(node)
            else:
                top.append(node)
            stack.append(node)
        elif tok == ")":
            if not stack:
                raise SmtSyntaxError("unbalanced ')'", line, col)
            stack.pop()
        else:
            node = Node("atom", tok, None, line, col)
            if stack:
                stack[-1].items.append(node)
            else:
                top.append(node)
    if stack:
        raise SmtSyntaxError("unbalanced '('", stack[-1].line, stack[-1].col)
    return top


class Script:
    """Parsed command sequence: declarations, assertions, actions."""

    def __init__(self):
        self.logic = None
        self.declarations = []  # variable names in order
        self.assertions = []  # formula Nodes
        self.actions = []  # ('check-sat',) / ('get-model',) / ('exit',)


def _expect_atom(node, what):
    if node.kind != "atom":
        raise SmtSyntaxError(f"expected {what}", node.line, node.col)
    return node.value


def parse(text) -> Script:
    """Parse an SMT-LIB script; raises positioned errors for bad input."""
    if isinstance(text, bytes):
        text = text.decode("utf-8")
    script = Script()
    seen = set()
    for node in parse_sexprs(text):
        if node.kind != "list" or not node.items:
            raise SmtSyntaxError("expected a command", node.line, node.col)
        head = _expect_atom(node.items[0], "a command name")
        args = node.items[1:]
        if head == "set-logic":
            if script.logic is not None:
                raise UnsupportedCommand("multiple set-logic commands")
            if len(args) != 1:
                raise SmtSyntaxError("set-logic takes one argument", node.line, node.col)
            script.logic = _expect_atom(args[0], "a logic name")
        elif head in ("set-info", "set-option"):
            continue
        elif head in ("declare-const", "declare-fun"):
            if head == "declare-const":
                if len(args) != 2:
                    raise SmtSyntaxError("declare-const takes name and sort", node.line, node.col)
                name, sort = args[0], args[1]
            else:
                if len(args) != 3:
                    raise SmtSyntaxError(
                        "declare-fun takes name, argument sorts, and sort", node.line, node.col
                    )
                name, params, sort = args[0], args[1], args[2]
                if params.kind != "list" or params.items:
                    raise UnsupportedCommand("only 0-ary function declarations are supported")
            name = _expect_atom(name, "a symbol")
            if _expect_atom(sort, "a sort") != "Real":
                raise SortError(f"unsupported sort for {name}; only Real is available")
            if name in seen:
                raise SmtSyntaxError(f"redeclaration of {name}", node.line, node.col)
            seen.add(name)
            script.declarations.append(name)
        elif head == "assert":
            if len(args) != 1:
                raise SmtSyntaxError("assert takes one formula", node.line, node.col)
            script.assertions.append(args[0])
        elif head in ("check-sat", "get-model", "exit"):
            if args:
                raise SmtSyntaxError(f"{head} takes no arguments", node.line, node.col)
            script.actions.append(head)
        else:
            raise UnsupportedCommand(
                f"command {head} at line {node.line}, column {node.col} is not supported"
            )
    return script


def parse_numeral(token: str):
    """Exact rational from an SMT-LIB numeral or decimal, or None."""
    body = token
    if not body:
        return None
    if body[0] in "+-":
        sign = -1 if body[0] == "-" else 1
        body = body[1:]
    else:
        sign = 1
    if not body:
        return None
    if body.isdigit():
        return sign * Rat(int(body))
    if "." in body:
        whole, _, frac = body.partition(".")
        if (whole == "" and frac == "") or not (whole + frac).isdigit():
            return None
        whole = whole or "0"
        scale = 10 ** len(frac)
        return sign * Rat(int(whole) * scale + int(frac or 0), scale)
    return None


def format_rational(q) -> str:
    """SMT-LIB rendering of an exact rational."""
    n, d = int(q.numerator), int(q.denominator)
    if d == 1:
        return str(n) if n >= 0 else f"(- {-n})"
    if n >= 0:
        return f"(/ {n} {d})"
    return f"(- (/ {-n} {d}))"
