import pytest

from nlsmt.errors import (
    CnfBlowup,
    DivisionByZeroConstant,
    SmtSyntaxError,
    SortError,
    UnsupportedCommand,
)
from nlsmt.lowering import lower, problem_to_smtlib
from nlsmt.rationals import Rat
from nlsmt.smtlib import format_rational, parse, parse_numeral


def lower_text(text):
    return lower(parse(text))


def test_parse_simple_assert():
    s = parse("(declare-fun x () Real)(declare-fun y () Real)(assert (<= x (/ 1 y)))")
    assert s.declarations == ["x", "y"]
    assert len(s.assertions) == 1


def test_decimals_exact():
    assert parse_numeral("0.1") == Rat(1, 10)
    assert parse_numeral("4.0") == Rat(4)
    assert parse_numeral("2.50") == Rat(5, 2)
    prob = lower_text("(declare-fun x () Real)(assert (> x 0.1))")
    (clause,) = prob.linear
    (atom,) = clause.atoms
    assert atom.term.const == Rat(1, 10)


def test_syntax_error_has_position():
    with pytest.raises(SmtSyntaxError) as err:
        parse("(asser")
    assert err.value.line == 1


def test_unsupported_command():
    with pytest.raises(UnsupportedCommand):
        parse("(push 1)")
    with pytest.raises(UnsupportedCommand):
        parse("(set-logic A)(set-logic B)")


def test_sort_errors():
    with pytest.raises(SortError):
        parse("(declare-fun b () Bool)")
    with pytest.raises(SortError):
        lower_text("(declare-fun x () Real)(assert (+ x 1))")


def test_set_info_ignored():
    s = parse('(set-info :status sat)(declare-fun x () Real)(assert (>= x 0))')
    assert s.declarations == ["x"]


def test_division():
    prob = lower_text("(declare-fun x () Real)(assert (<= (/ x 4) 1))")
    (clause,) = prob.linear
    (atom,) = clause.atoms
    assert not prob.nonlinear
    with pytest.raises(DivisionByZeroConstant):
        lower_text("(declare-fun x () Real)(assert (<= (/ x 0) 1))")
    prob = lower_text("(declare-fun x () Real)(declare-fun y () Real)(assert (<= x (/ 1 y)))")
    (atom,) = prob.nonlinear
    assert atom.fn.name == "recip"


def test_worked_example_lowering():
    text = """
    (declare-fun x () Real)
    (declare-fun y () Real)
    (assert (and (>= x (+ (/ y 4) 1)) (<= x (* 4 (- y 1))) (<= x (/ 1 y))))
    (check-sat)
    """
    prob = lower_text(text)
    assert len(prob.linear) == 2
    assert len(prob.nonlinear) == 1
    atom = prob.nonlinear[0]
    assert prob.names[atom.defined_var] == "x"
    assert atom.fn.name == "recip"
    assert prob.names[atom.args[0]] == "y"


def test_or_lowered_to_single_clause():
    prob = lower_text("(declare-fun x () Real)(assert (or (< x 1) (> x 3)))")
    assert len(prob.linear) == 1
    assert len(prob.linear[0].atoms) == 2


def test_equality_splits():
    prob = lower_text("(declare-fun x () Real)(assert (= x 2))")
    assert len(prob.linear) == 2
    # negated equality becomes a two-literal clause
    prob = lower_text("(declare-fun x () Real)(assert (not (= x 2)))")
    assert len(prob.linear) == 1
    assert len(prob.linear[0].atoms) == 2


def test_implication_and_nnf():
    prob = lower_text(
        "(declare-fun x () Real)(assert (not (and (<= x 1) (or (< x 0) (> x 5)))))"
    )
    # distribution gives (x>1 or x>=0) and (x>1 or x<=5); the second clause
    # covers the line and is dropped as a tautology
    assert len(prob.linear) == 1
    view = prob.linear[0]
    assert view.evaluate([Rat(-1)]) is False
    assert view.evaluate([Rat(2)]) is True


def test_pow_expansion():
    prob = lower_text("(declare-fun y () Real)(declare-fun x () Real)(assert (<= x (^ y 2)))")
    (atom,) = prob.nonlinear
    assert atom.fn.name == "pow2"
    with pytest.raises(SortError):
        lower_text("(declare-fun y () Real)(assert (<= (^ y y) 1))")


def test_cnf_blowup_guard():
    inner = " ".join(
        "(and (<= x {0}) (>= x -{0}))".format(i) for i in range(1, 20)
    )
    text = "(declare-fun x () Real)(assert (or %s))" % inner
    with pytest.raises(CnfBlowup):
        lower(parse(text), atom_budget=50)


def test_k22_script_lowering_counts():
    from nlsmt.bench import gen_K

    prob = lower_text(gen_K(2, 2))
    # 4 point coordinates, 8 box unit clauses, 1 distance clause
    assert prob.n_original == 4
    unit_boxes = [c for c in prob.linear if len(c.atoms) == 1 and len(c.variables()) == 1]
    assert len(unit_boxes) == 8
    assert len(prob.nonlinear) == 6  # 2 squares per point + 2 products per pair


def test_round_trip_identical():
    texts = [
        "(declare-fun x () Real)(declare-fun y () Real)"
        "(assert (and (>= x (+ (/ y 4) 1)) (<= x (* 4 (- y 1))) (<= x (/ 1 y))))",
        "(declare-fun a () Real)(assert (or (< a 1) (> a 3)))",
        "(declare-fun u () Real)(declare-fun v () Real)"
        "(assert (<= (+ (* u u) (* v v)) 4))(assert (>= (* u v) (- 1)))",
        "(declare-fun w () Real)(declare-fun t () Real)(assert (< t (sin w)))"
        "(assert (> t (exp w)))(assert (<= t (log 2 w)))",
    ]
    for text in texts:
        p1 = lower_text(text)
        printed = problem_to_smtlib(p1)
        p2 = lower_text(printed)
        assert p1.names == p2.names
        assert {c.key() for c in p1.linear} == {c.key() for c in p2.linear}
        assert {a.key() for a in p1.nonlinear} == {a.key() for a in p2.nonlinear}


def test_format_rational():
    assert format_rational(Rat(2)) == "2"
    assert format_rational(Rat(-2)) == "(- 2)"
    assert format_rational(Rat(19, 12)) == "(/ 19 12)"
    assert format_rational(Rat(-19, 12)) == "(- (/ 19 12))"
