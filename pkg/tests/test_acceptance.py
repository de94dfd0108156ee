"""The nine acceptance criteria, each at its stated tolerance and time budget.

Every test appends one ``PASS``/``FAIL`` line to ``conftest.ACCEPTANCE``;
the lines are printed in the terminal summary (and directly with ``-s``).
"""

import random
import time
from contextlib import contextmanager
from fractions import Fraction
from itertools import combinations, product

from pcpp_dichotomy.adversary import (
    build_demo,
    combine_and,
    combine_or,
    combine_xor,
    pair_keys,
    run_attack,
)
from pcpp_dichotomy.classify import (
    FAMILY_POLYMORPHISM,
    all_tables,
    classify_constraint,
    classify_set,
    closed_under,
    synthesize_clauses,
)
from pcpp_dichotomy.core import (
    ID,
    NOT,
    Application,
    Constraint,
    ConstraintSet,
    Formula,
    clause_constraint,
    evaluate,
)
from pcpp_dichotomy.gadget import (
    Gadget,
    one_in_three_library,
    reduce_3sat,
    search_gadget,
    verify_perfect,
)
from pcpp_dichotomy.oracle import linear_attack, max_sat

from conftest import ACCEPTANCE, ANDN, F1, F2, NAND, ONE_IN_THREE, OR2, XOR2
from oracles import holds, sat_tuples, satisfiable_split


@contextmanager
def criterion(number, title, budget):
    """Record one result line; the body must finish within ``budget`` seconds."""
    start = time.perf_counter()
    detail = {}
    try:
        yield detail
        elapsed = time.perf_counter() - start
        assert elapsed < budget, f"took {elapsed:.2f}s, budget {budget}s"
    except AssertionError as exc:
        elapsed = time.perf_counter() - start
        line = f"FAIL criterion {number} ({title}) in {elapsed:.2f}s: {exc}"
        ACCEPTANCE.append(line)
        print(line)
        raise
    extra = ", ".join(f"{k}={v}" for k, v in detail.items())
    line = f"PASS criterion {number} ({title}) in {elapsed:.2f}s" + (f": {extra}" if extra else "")
    ACCEPTANCE.append(line)
    print(line)


def test_1_classifier_cross_validation():
    with criterion(1, "clause synthesis agrees with closure", 10) as d:
        relations = mismatches = 0
        for arity in (1, 2, 3):
            for c in all_tables(arity):
                relations += 1
                for family, op in FAMILY_POLYMORPHISM.items():
                    if (synthesize_clauses(c, family) is not None) != closed_under(c, op):
                        mismatches += 1
        assert relations == 276
        assert mismatches == 0, f"{mismatches} mismatches"
        d["relations"], d["mismatches"] = relations, mismatches


def test_2_example_classifications():
    with criterion(2, "example classifications", 10):
        lin = classify_set(ConstraintSet((F1, F2)))
        assert lin.tractable_classes == ["linear", "2cnf"] and lin.flags["c-closed"]
        assert classify_set(ConstraintSet((ONE_IN_THREE,))).np_hard
        core_four = {"weakly-positive", "weakly-negative", "linear", "2cnf"}
        id_flags = {k for k, v in classify_set(ConstraintSet((ID,))).flags.items() if v}
        not_flags = {k for k, v in classify_set(ConstraintSet((NOT,))).flags.items() if v}
        assert id_flags == core_four | {"1-valid"}, id_flags
        assert not_flags == core_four | {"0-valid"}, not_flags


def _maj(*xs):
    return tuple(int(sum(col) >= 2) for col in zip(*xs))


def test_3_polymorphism_combinations():
    with criterion(3, "combined satisfying tuples stay satisfying, arity <= 3", 30) as d:
        checked = violations = 0
        for arity in (1, 2, 3):
            for c in all_tables(arity):
                flags = classify_constraint(c)
                rel = sat_tuples(c)
                combos = []
                if flags.linear:
                    combos += [combine_xor(t) for k in (1, 3, 5) for t in product(rel, repeat=k)]
                if flags.weakly_positive:
                    combos += [combine_or(t) for k in range(1, len(rel) + 1) for t in combinations(rel, k)]
                if flags.weakly_negative:
                    combos += [combine_and(t) for k in range(1, len(rel) + 1) for t in combinations(rel, k)]
                if flags.two_cnf:
                    combos += [_maj(*t) for t in product(rel, repeat=3)]
                for x in combos:
                    checked += 1
                    violations += not holds(c, x)
        assert violations == 0, f"{violations} violations"
        d["combinations"], d["violations"] = checked, violations


EPS_GRID = list(product((Fraction(0), Fraction(1, 20)), repeat=3))


def _check_pairwise_demo(tag, n, m, eps):
    demo = build_demo(tag, n, m, eps)
    res = run_attack(tag, demo.psi, demo.witnesses, demo.alphas)
    assert res.satisfied_fraction_pruned == 1
    assert res.epsilon_per_witness == list(eps)
    assert res.satisfied_fraction_original >= 1 - sum(eps)
    assert res.distances == [1 - Fraction(1, m)] * m
    return res


def test_4_linear_demo():
    with criterion(4, "linear attack demo n=2 m=3", 1) as d:
        for eps in EPS_GRID:
            _check_pairwise_demo("linear", 2, 3, eps)
        d["eps_vectors"] = len(EPS_GRID)


def test_5_or_and_demos():
    with criterion(5, "OR and AND attack demos n=2 m=3", 1) as d:
        for tag in ("weakly-positive", "weakly-negative"):
            for eps in EPS_GRID:
                _check_pairwise_demo(tag, 2, 3, eps)
        d["runs"] = 2 * len(EPS_GRID)


def test_6_two_cnf_demo():
    with criterion(6, "2cnf proof construction n=1 m=3", 1) as d:
        m = 3
        demo = build_demo("2cnf", 1, m)
        res = run_attack("2cnf", demo.psi, demo.witnesses, demo.alphas)
        assert evaluate(res.pruned, res.combined) == 1
        ones = (1 << (m * m)) - 1
        dmat = []
        for j in range(1, m + 1):
            dj = 0
            for p, q in product(range(1, m + 1), repeat=2):
                if j in (p, q):
                    dj |= 1 << ((p - 1) * m + (q - 1))
            dmat.append(dj)
        values = {c.matrix: c.value for c in res.classes}
        for A in values:
            for dj in dmat:
                # D^j <= A <= 1 - D^j
                assert not (dj & ~A == 0 and A & dj == 0)
            if ones ^ A in values:
                assert values[ones ^ A] != values[A]
        assert len(demo.alphas) == len([k for k in pair_keys(m) if k[0] != k[1]])
        assert res.distances == [Fraction(1, 3)] * len(demo.alphas)
        d["classes"] = len(res.classes)


def _random_linear_formula(rng, n):
    s = ConstraintSet((
        F1, F2, ID, NOT,
        Constraint.from_string("X3", "01101001"),
        Constraint.from_string("E3", "10010110"),
    ))
    apps = []
    for _ in range(rng.randint(1, 2 * n)):
        c = rng.choice(s.constraints)
        apps.append((Application(c.name, tuple(rng.randint(1, n) for _ in range(c.arity))), rng.randint(1, 3)))
    return Formula(n, s, tuple(apps))


def test_7_linear_attack_vs_oracle():
    with criterion(7, "GF(2) attack vs exhaustive oracle", 30) as d:
        rng = random.Random(1)
        disagreements = solved = 0
        cases = 1200
        for _ in range(cases):
            phi = _random_linear_formula(rng, rng.randint(1, 12))
            a = linear_attack(phi)
            best, _ = max_sat(phi)
            if (a is not None) != (best == 1):
                disagreements += 1
            if a is not None:
                solved += 1
                if evaluate(phi, a) != 1:
                    disagreements += 1
        assert disagreements == 0, f"{disagreements} disagreements"
        assert 0 < solved < cases
        d["cases"], d["solved"], d["disagreements"] = cases, solved, disagreements


def _random_3sat(rng, n):
    apps, used = [], {}
    for _ in range(rng.randint(n, 5 * n)):
        idx = tuple(rng.sample(range(1, n + 1), 3))
        pattern = "".join(rng.choice("pn") for _ in idx)
        c = used.setdefault(pattern, clause_constraint(pattern))
        apps.append((Application(c.name, idx), 1))
    return Formula(n, ConstraintSet(tuple(used.values())), tuple(apps))


def test_8_gadget_suite():
    with criterion(8, "gadget verification, search and 3SAT reduction", 120) as d:
        s = ConstraintSet((ONE_IN_THREE,))
        assert verify_perfect(Gadget(ANDN, 0, (Application("1in3", (1, 2, 2)),)), s)
        assert verify_perfect(Gadget(NAND, 1, (Application("1in3", (1, 2, 3)),)), s)
        assert search_gadget(NAND, s, 1, 1) is not None
        assert search_gadget(OR2, s, 5, 4) is not None
        assert search_gadget(XOR2, ConstraintSet((OR2,)), 3, 6) is None
        library = one_in_three_library()
        rng = random.Random(8)
        outcomes = []
        for _ in range(20):
            phi = _random_3sat(rng, rng.randint(3, 8))
            sat = max_sat(phi)[0] == 1
            reduced = reduce_3sat(phi, s, library)
            assert satisfiable_split(reduced, phi.num_vars) == sat
            outcomes.append(sat)
        assert any(outcomes) and not all(outcomes)
        d["corpus"], d["satisfiable"] = len(outcomes), sum(outcomes)


def test_9_constant_classes():
    with criterion(9, "constant assignment on 0-valid and 1-valid sets", 30) as d:
        rng = random.Random(9)
        violations = 0
        for valid, fill in (("1-valid", 1), ("0-valid", 0)):
            for _ in range(100):
                cs = []
                for k in range(rng.randint(1, 3)):
                    arity = rng.randint(1, 3)
                    table = rng.randrange(1 << (1 << arity))
                    pos = (1 << arity) - 1 if fill else 0
                    cs.append(Constraint(f"c{k}", arity, table | (1 << pos)))
                s = ConstraintSet(tuple(cs))
                assert classify_set(s).flags[valid]
                n = rng.randint(1, 10)
                apps = tuple(
                    (Application(c.name, tuple(rng.randint(1, n) for _ in range(c.arity))), rng.randint(1, 5))
                    for c in (rng.choice(cs) for _ in range(rng.randint(1, 12)))
                )
                phi = Formula(n, s, apps)
                violations += evaluate(phi, (fill,) * n) != 1
        assert violations == 0
        d["formulas"], d["violations"] = 200, violations
