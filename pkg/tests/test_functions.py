import random

import pytest

from helpers import rand_rat, ref_value, to_mpf
from nlsmt.functions import (
    FALSE,
    TRUE,
    UNDETERMINED,
    check_N,
    eval_nl_atom,
    get_function,
    log_fn,
    monomial_fn,
    point_box,
)
from nlsmt.errors import UnknownFunctionSymbol
from nlsmt.rationals import Rat
from nlsmt.terms import GE, GT, LE, LT, NonLinearAtom


def natom(defined, rel, fn, args):
    return NonLinearAtom(defined, rel, fn, args)


def test_worked_example_point():
    # x <= 1/y is false at (8/3, 2)
    a = natom(0, LE, get_function("recip"), (1,))
    assert eval_nl_atom(a, [Rat(8, 3), Rat(2)]) is FALSE
    assert eval_nl_atom(a, [Rat(1, 3), Rat(2)]) is TRUE


def test_graph_point_decisions():
    exp = get_function("exp")
    assert eval_nl_atom(natom(0, LE, exp, (1,)), [Rat(1), Rat(0)]) is TRUE  # 1 <= exp(0)
    sin = get_function("sin")
    assert eval_nl_atom(natom(0, LT, sin, (1,)), [Rat(0), Rat(0)]) is FALSE  # 0 < sin(0)
    assert eval_nl_atom(natom(0, GE, sin, (1,)), [Rat(0), Rat(0)]) is TRUE


def test_undetermined_when_unassigned():
    a = natom(0, LE, get_function("exp"), (1,))
    assert eval_nl_atom(a, [Rat(1), None]) is UNDETERMINED
    assert eval_nl_atom(a, [None, Rat(0)]) is UNDETERMINED


def test_domain_violation_is_false():
    a = natom(0, LE, get_function("recip"), (1,))
    assert eval_nl_atom(a, [Rat(1), Rat(0)]) is FALSE
    b = natom(0, GE, get_function("ln"), (1,))
    assert eval_nl_atom(b, [Rat(1), Rat(-2)]) is FALSE


def test_polynomials_match_exact_evaluation():
    rng = random.Random(5150)
    mul = get_function("mul")
    sq = monomial_fn((2,))
    cube = monomial_fn((3,))
    recip = get_function("recip")
    for _ in range(2500):
        x = rand_rat(rng, 40, 8)
        y = rand_rat(rng, 40, 8)
        c = rand_rat(rng, 40, 8)
        for fn, args, val in (
            (mul, (x, y), x * y),
            (sq, (x,), x * x),
            (cube, (x,), x**3),
        ):
            rel = rng.choice([LE, LT, GE, GT])
            a = natom(0, rel, fn, tuple(range(1, 1 + len(args))))
            got = eval_nl_atom(a, [c, *args])
            want = {
                LE: c <= val,
                LT: c < val,
                GE: c >= val,
                GT: c > val,
            }[rel]
            assert got == want
        if y != 0:
            a = natom(0, LE, recip, (1,))
            assert eval_nl_atom(a, [c, y]) == (c <= 1 / y)


def test_transcendental_matches_reference_sign():
    rng = random.Random(6021)
    for _ in range(400):
        y = rand_rat(rng, 30, 10)
        name = rng.choice(["exp", "sin", "cos", "tan", "arctan", "ln"])
        if name == "ln" and y <= 0:
            continue
        fn = get_function(name)
        c = rand_rat(rng, 30, 10)
        ref = ref_value(name, y)
        diff = to_mpf(c) - ref
        if abs(diff) < 1e-50:
            continue
        a = natom(0, LE, fn, (1,))
        got = eval_nl_atom(a, [c, y])
        assert got == (diff < 0), (name, c, y)


def test_log_b_graph():
    lg = log_fn(Rat(2))
    assert lg.graph_test((Rat(8),), Rat(3))
    assert lg.graph_test((Rat(1, 4),), Rat(-2))
    assert not lg.graph_test((Rat(3),), Rat(1))
    assert not lg.graph_test((Rat(8),), Rat(Rat(7, 2)))
    assert eval_nl_atom(natom(0, GE, lg, (1,)), [Rat(3), Rat(8)]) is TRUE
    lg.exact_value((Rat(8),)) == Rat(3)
    half = log_fn(Rat(1, 2))
    assert half.graph_test((Rat(4),), Rat(-2))


def test_check_N_filters():
    recip = get_function("recip")
    p = natom(0, LE, recip, (1,))
    q = natom(2, GE, get_function("exp"), (1,))
    violated = check_N([p, q], [Rat(8, 3), Rat(2), None])
    assert violated == [p]  # q undetermined, skipped
    assert check_N([p, q], [None, None, None]) == []


def test_refinement_terminates_quickly():
    # value very close to the function value still decides within the cap
    sin = get_function("sin")
    close = Rat(8414709848078965066, 10**19)  # ~ sin(1) to 19 digits
    a = natom(0, LE, sin, (1,))
    got = eval_nl_atom(a, [close, Rat(1)])
    assert got in (TRUE, FALSE)


def test_unknown_symbol():
    with pytest.raises(UnknownFunctionSymbol):
        get_function("gamma")


def test_monomial_enclosure_and_derivative():
    mon = monomial_fn((2, 1))
    box = point_box((Rat(2), Rat(3)))
    iv = mon.enclosure(box, 16)
    assert iv.contains(Rat(12)) and iv.is_point()
    d0 = mon.derivative_enclosure(box, 0, 16)
    assert d0.contains(Rat(12))  # 2*x*y at (2,3)
    d1 = mon.derivative_enclosure(box, 1, 16)
    assert d1.contains(Rat(4))  # x^2 at (2,3)
