import random

from helpers import rand_rat
from nlsmt.rationals import Rat
from nlsmt.terms import GE, LE, Clause, LinearAtom, LinearTerm


def atom(coeffs, const, rel):
    return LinearAtom.make({k: Rat(v) for k, v in coeffs.items()}, Rat(const), rel)


def test_evaluate_substitutes_and_folds():
    # 2x + y - 4 <= 0 under x = 1 leaves y - 2 <= 0
    a = atom({0: 2, 1: 1}, -4, LE)
    res = a.evaluate([Rat(1), None])
    assert isinstance(res, LinearAtom)
    assert res.term.coeffs == {1: Rat(1)}
    assert res.term.const == Rat(-2)


def test_evaluate_clause_false_and_true():
    # x < 1 or x > 3 at x = 2 is false
    c = Clause([atom({0: 1}, -1, "<"), atom({0: -1}, 3, "<")])
    assert c.evaluate([Rat(2)]) is False
    assert c.evaluate([Rat(0)]) is True


def test_zero_coefficients_never_stored():
    t = LinearTerm({0: Rat(1), 1: Rat(0)}, Rat(0))
    assert 1 not in t.coeffs
    a = atom({0: 1, 1: 0}, 0, GE)
    res = a.evaluate([None, Rat(5)])
    assert isinstance(res, LinearAtom)
    assert set(res.term.coeffs) == {0}


def test_negate_atom():
    a = atom({0: 1}, -1, LE)  # x - 1 <= 0
    n = a.negated()  # 1 - x < 0, i.e. x > 1
    assert n.strict
    assert n.evaluate([Rat(2)]) is True
    assert n.evaluate([Rat(1)]) is False
    assert n.negated() == a  # involution


def test_negate_canonicalizes():
    a = atom({0: 1}, 0, "<")  # x < 0
    n = a.negated()  # x >= 0 as -x <= 0
    assert not n.strict
    assert n.evaluate([Rat(0)]) is True


def test_tautology_detection():
    # x < 1 or x > 0 covers the line
    c = Clause([atom({0: 1}, -1, "<"), atom({0: -1}, 0, "<")])
    assert c.tautology
    # x < 1 or x > 3 does not
    c = Clause([atom({0: 1}, -1, "<"), atom({0: -1}, 3, "<")])
    assert not c.tautology
    # boundary: x <= 1 or x >= 1 covers; x < 1 or x > 1 misses the point
    assert Clause([atom({0: 1}, -1, LE), atom({0: -1}, 1, LE)]).tautology
    assert not Clause([atom({0: 1}, -1, "<"), atom({0: -1}, 1, "<")]).tautology


def test_absorption_keeps_weakest():
    # (x <= 1 or x <= 5) is x <= 5
    c = Clause([atom({0: 1}, -1, LE), atom({0: 1}, -5, LE)])
    assert len(c.atoms) == 1
    assert c.evaluate([Rat(3)]) is True
    assert c.evaluate([Rat(6)]) is False


def test_duplicate_atoms_removed():
    c = Clause([atom({0: 1}, -1, LE), atom({0: 1}, -1, LE)])
    assert len(c.atoms) == 1


def test_evaluate_monotone_under_extension():
    rng = random.Random(77)
    for _ in range(300):
        nvars = 3
        atoms = []
        for _ in range(rng.randint(1, 3)):
            coeffs = {v: rand_rat(rng, 5, 3) for v in range(nvars) if rng.random() < 0.8}
            atoms.append(LinearAtom(LinearTerm(coeffs, rand_rat(rng, 5, 3)), rng.random() < 0.5))
        c = Clause(atoms)
        values = [rand_rat(rng, 5, 3) if rng.random() < 0.5 else None for _ in range(nvars)]
        before = c.evaluate(values)
        extended = [
            q if q is not None else (rand_rat(rng, 5, 3) if rng.random() < 0.7 else None)
            for q in values
        ]
        after = c.evaluate(extended)
        if before is True:
            assert after is True
        if before is False:
            assert after is False


def test_ground_false_clause():
    c = Clause([atom({}, 1, LE)])  # 1 <= 0
    assert c.is_ground_false()
    assert c.evaluate([None]) is False
    empty = Clause([])
    assert empty.is_ground_false()
