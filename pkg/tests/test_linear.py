import random

import pytest

from nlsmt.errors import EmptyFeasibleSet, NotResolvable
from nlsmt.intervals import Interval, IntervalSet
from nlsmt.linear import (
    Conflict,
    Feasible,
    Trail,
    choose_value,
    classify_clause,
    conflict_resolvents,
    feasible_set,
    resolve,
    univariate_clauses,
)
from nlsmt.rationals import Rat
from nlsmt.terms import LE, Clause, LinearAtom, LinearTerm


def atom(coeffs, const, rel="<="):
    return LinearAtom.make({k: Rat(v) for k, v in coeffs.items()}, Rat(const), rel)


def clause(*atoms_):
    return Clause(list(atoms_))


def test_trail_single_assignment():
    t = Trail(3)
    t.push(1, Rat(5))
    assert t.is_assigned(1) and t.value(1) == 5
    with pytest.raises(AssertionError):
        t.push(1, Rat(6))
    t.pop()
    assert not t.is_assigned(1)


# ---------------------------------------------------------------- univariate


def test_univariate_unit_bounds():
    cs = [clause(atom({0: -1}, 1)), clause(atom({0: 1}, -3, "<"))]  # x >= 1, x < 3
    views = univariate_clauses(cs, [None], 0)
    kinds = sorted(v.kind for v in views)
    assert kinds == ["lower", "upper"]
    fs = feasible_set(cs, [None], 0)
    assert isinstance(fs, Feasible)
    assert fs.set == IntervalSet([Interval(1, 3, False, True)])


def test_univariate_two_sided_case():
    c = clause(atom({0: 1}, -1, "<"), atom({0: -1}, 3, "<"))  # x < 1 or x > 3
    (view,) = univariate_clauses([c], [None], 0)
    assert view.kind == "two-sided"
    assert view.allowed == IntervalSet(
        [Interval(None, 1, True, True), Interval(3, None, True, True)]
    )


def test_univariate_tautology_dropped():
    c = clause(atom({0: 1}, -1, "<"), atom({0: -1}, 0, "<"))  # x < 1 or x > 0
    assert univariate_clauses([c], [None], 0) == []


def test_feasible_with_gap():
    cs = [
        clause(atom({0: 1}, -1, "<"), atom({0: -1}, 3, "<")),
        clause(atom({0: -1}, 0)),  # x >= 0
        clause(atom({0: 1}, -4)),  # x <= 4
    ]
    fs = feasible_set(cs, [None], 0)
    assert isinstance(fs, Feasible)
    assert fs.set == IntervalSet(
        [Interval(0, 1, False, True), Interval(3, 4, True, False)]
    )


def test_conflict_detected():
    cs = [clause(atom({0: 1}, -1, "<")), clause(atom({0: -1}, 1))]  # x < 1, x >= 1
    fs = feasible_set(cs, [None], 0)
    assert isinstance(fs, Conflict)


def _brute_force_feasible(cs, z, probes):
    ok = []
    for q in probes:
        values = [q]
        good = True
        for c in cs:
            if c.evaluate(values) is not True:
                good = False
                break
        if good:
            ok.append(q)
    return ok


def test_feasible_against_brute_force_oracle():
    rng = random.Random(4242)
    for _ in range(400):
        cs = []
        bounds = set()
        for _ in range(rng.randint(1, 4)):
            lits = []
            for _ in range(rng.randint(1, 2)):
                b = Rat(rng.randint(-6, 6), rng.randint(1, 3))
                sign = rng.choice([1, -1])
                rel = rng.choice(["<=", "<"])
                lits.append(atom({0: sign}, -sign * b if sign > 0 else sign * -b, rel))
                bounds.add(b)
            c = Clause(lits)
            if not c.tautology:
                cs.append(c)
        if not cs:
            continue
        # probe all endpoints and midpoints of consecutive gaps, plus outliers
        pts = sorted(bounds)
        probes = set(pts)
        for a, b in zip(pts, pts[1:]):
            probes.add((a + b) / 2)
        if pts:
            probes.add(pts[0] - 1)
            probes.add(pts[-1] + 1)
        probes.add(Rat(0))
        fs = feasible_set(cs, [None], 0)
        sat_probes = _brute_force_feasible(cs, 0, sorted(probes))
        if isinstance(fs, Feasible):
            for q in sorted(probes):
                assert fs.set.contains(q) == (q in sat_probes), (cs, q)
            assert sat_probes or not fs.set.is_empty()
        else:
            assert not sat_probes, (cs, sat_probes)


# ----------------------------------------------------------------- choosing


def test_choose_value_examples():
    assert choose_value(IntervalSet([Interval(1, 3, False, True)]), "dyadic") == 1
    s = IntervalSet([Interval(0, 1, False, True), Interval(3, 4, True, False)])
    assert choose_value(s, "dyadic") == 0
    point = IntervalSet([Interval(Rat(19, 12), Rat(19, 12))])
    assert choose_value(point, "dyadic") == Rat(19, 12)
    assert choose_value(point, "cf") == Rat(19, 12)
    with pytest.raises(EmptyFeasibleSet):
        choose_value(IntervalSet([]), "dyadic")


def test_choose_value_deterministic():
    rng = random.Random(9)
    for _ in range(50):
        a = Rat(rng.randint(-9, 9), rng.randint(1, 4))
        b = a + Rat(rng.randint(0, 9), rng.randint(1, 4))
        s = IntervalSet([Interval(a, b)])
        assert choose_value(s, "dyadic") == choose_value(s, "dyadic")
        assert choose_value(s, "cf") == choose_value(s, "cf")


# ---------------------------------------------------------------- resolution


def test_resolve_paper_formula():
    # (2x + y - 4 <= 0) with (-x + y <= 0) resolves to 3y - 4 <= 0
    d = clause(atom({0: 2, 1: 1}, -4))
    e = clause(atom({0: -1, 1: 1}, 0))
    r = resolve(d, e, 0)
    assert len(r.atoms) == 1
    expected = atom({1: 3}, -4)
    assert r.atoms[0] == expected


def test_resolve_contradictory_bounds():
    d = clause(atom({0: 1}, -1, "<"))  # x - 1 < 0
    e = clause(atom({0: -1}, 1))  # -x + 1 <= 0
    r = resolve(d, e, 0)
    assert r.is_ground_false()
    assert r.atoms and r.atoms[0].strict  # the trivially false (0 < 0)


def test_resolve_carries_side_literals():
    # (A or x <= 0) with (B or -x + 1 <= 0) gives A or B or (1 <= 0)
    a_lit = atom({1: 1}, -5)
    b_lit = atom({2: 1}, -7)
    d = clause(a_lit, atom({0: 1}, 0))
    e = clause(b_lit, atom({0: -1}, 1))
    r = resolve(d, e, 0)
    assert a_lit in r.atoms and b_lit in r.atoms
    # the ground literal 1 <= 0 is constant-false, absorbed away
    assert len(r.atoms) == 2


def test_resolve_not_resolvable():
    d = clause(atom({0: 1}, 0))
    e = clause(atom({0: 1}, -1))
    with pytest.raises(NotResolvable):
        resolve(d, e, 0)


def test_resolution_soundness_sampled():
    """Resolvent satisfied by every sampled assignment satisfying both premises."""
    rng = random.Random(31337)
    done = 0
    while done < 2000:
        nv = 3
        z = 0
        d_lit = atom({z: rng.randint(1, 3), 1: rng.randint(-2, 2)}, rng.randint(-4, 4),
                     rng.choice(["<=", "<"]))
        e_lit = atom({z: -rng.randint(1, 3), 2: rng.randint(-2, 2)}, rng.randint(-4, 4),
                     rng.choice(["<=", "<"]))
        d = clause(d_lit, atom({1: 1}, rng.randint(-3, 3)))
        e = clause(e_lit, atom({2: 1}, rng.randint(-3, 3)))
        if d.tautology or e.tautology:
            continue
        try:
            r = resolve(d, e, z)
        except NotResolvable:
            continue
        for _ in range(5):
            beta = [Rat(rng.randint(-8, 8), rng.randint(1, 3)) for _ in range(nv)]
            if d.evaluate(beta) is True and e.evaluate(beta) is True:
                assert r.evaluate(beta) is True, (d, e, r, beta)
                done += 1
        done += 1


def test_conflict_resolvents_false_under_trail():
    # simplest conflict: x < 1 and x >= 1
    cs = [clause(atom({0: 1}, -1, "<")), clause(atom({0: -1}, 1))]
    fs = feasible_set(cs, [None], 0)
    assert isinstance(fs, Conflict)
    out = conflict_resolvents(fs.witness, 0, [None])
    assert out
    for c in out:
        assert c.evaluate([None]) is False
    assert out[0].is_ground_false()


def test_conflict_resolvents_random_univariate():
    """Property: resolvents false under the generating trail (other vars fixed)."""
    rng = random.Random(777)
    produced = 0
    while produced < 300:
        values = [None, Rat(rng.randint(-3, 3)), Rat(rng.randint(-3, 3))]
        cs = []
        for _ in range(rng.randint(2, 4)):
            lits = []
            for _ in range(rng.randint(1, 2)):
                coeffs = {0: Rat(rng.choice([-2, -1, 1, 2]))}
                if rng.random() < 0.5:
                    coeffs[rng.choice([1, 2])] = Rat(rng.randint(-2, 2))
                lits.append(LinearAtom(LinearTerm(coeffs, Rat(rng.randint(-4, 4))),
                                       rng.random() < 0.5))
            c = Clause(lits)
            if not c.tautology and c.evaluate(values) is not False:
                cs.append(c)
        if not cs:
            continue
        try:
            fs = feasible_set(cs, values, 0)
        except Exception:
            continue
        if isinstance(fs, Feasible):
            continue
        out = conflict_resolvents(fs.witness, 0, values)
        assert out
        for c in out:
            assert c.evaluate(values) is False, (cs, values, c)
        produced += 1
