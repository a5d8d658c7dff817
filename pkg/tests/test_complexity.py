import numpy as np
import pytest

from pralg.complexity import (
    InvarianceReport,
    RdepthProfile,
    Violation,
    dominates,
    grz_bound,
    min_rdepth,
    rdepth,
    scheme_profile,
    theorem2_check,
)
from pralg.generate import random_term
from pralg.prover import replay
from pralg.rules import Direction, Group, lifted_zero
from pralg.schemes import add, id_scheme, insertion_sort_scheme, max_scheme, monus, mult, pred
from pralg.terms import Brack, CircT, Comp, Id, Null, Proj, Rec, Succ, const


def test_rdepth():
    assert rdepth(Succ()) == 0
    assert rdepth(add()) == 1
    assert rdepth(pred()) == 1
    assert rdepth(monus()) == 2
    assert rdepth(mult()) == 2
    assert rdepth(Brack(add(), Comp(Proj(2, 1), Succ()))) == 1


def test_rdepth_of_deep_terms():
    assert rdepth(const(1200)) == 0
    t = Succ()
    for _ in range(1500):
        t = Comp(t, Succ())
    assert rdepth(Rec(Id(1), Comp(Proj(2, 2), t))) == 1


def test_grz_bound():
    assert str(grz_bound(Succ())) == "E^1"
    assert str(grz_bound(add())) == "E^2"
    assert str(grz_bound(mult())) == "E^3"
    assert grz_bound(add()).report == "function is in E^2"


def test_min_rdepth_of_a_leaf():
    bound = min_rdepth(Succ())
    assert (bound.bound, bound.witness) == (0, Succ())
    assert len(bound.proof) == 0


def test_min_rdepth_prunes_dead_recursion():
    t = CircT(Rec(Comp(Succ(), Succ()), Comp(Proj(2, 2), Succ())), lifted_zero(1))
    assert rdepth(t) == 1
    bound = min_rdepth(t, budget=100)
    assert bound.bound == 0
    assert replay(bound.proof) == bound.witness


def test_min_rdepth_with_coherence_only_keeps_rdepth():
    rng = np.random.default_rng(2)
    for _ in range(5):
        f = random_term(rng, 1, 1, 1, allow_rec=False)
        t = Rec(f, add())
        assert min_rdepth(t, budget=200, groups=[Group.II]).bound == rdepth(t)


def test_rdepth_invariance_small():
    report = theorem2_check(trials=100, max_depth=5, seed=1)
    assert report.passed, report.counterexample
    assert report.group_ii_steps > 0
    assert report.group_i_steps > 0
    assert list(report.to_frame()["violations"]) == [0, 0]


@pytest.mark.slow
def test_rdepth_invariance():
    report = theorem2_check(trials=1000, max_depth=7, seed=0)
    assert report.passed, report.counterexample


def test_report_counts_violations(tmp_path):
    report = InvarianceReport(trials=1, seed=0)
    before = Rec(Null(), Comp(Proj(2, 2), Succ()))
    report.violations.append(Violation("II.9", Direction.FORWARD, (), before, Null()))
    assert not report.passed
    assert len(report.group_ii_violations) == 1
    assert report.group_i_violations == []
    assert (report.counterexample.rdepth_before, report.counterexample.rdepth_after) == (1, 0)

    report.save(tmp_path / "report.pkl")
    loaded = InvarianceReport.load(tmp_path / "report.pkl")
    assert loaded.violations == report.violations
    assert loaded.to_frame().equals(report.to_frame())


def test_profiles():
    identity = scheme_profile(id_scheme(), 5)
    assert identity.values == {n: 0 for n in range(1, 6)}
    assert identity.to_csv() == "n,rdepth\n1,0\n2,0\n3,0\n4,0\n5,0\n"
    assert list(identity.to_frame().columns) == ["n", "rdepth"]

    insertion = scheme_profile(insertion_sort_scheme(), 5)
    values = [insertion.values[n] for n in range(1, 6)]
    assert values == sorted(values)
    assert scheme_profile(max_scheme(), 1).values == {1: 0}

    assert dominates(insertion, identity)
    assert not dominates(identity, insertion)


def test_minimized_profile_of_identity():
    assert scheme_profile(id_scheme(), 3, minimize=True, budget=50).values == {1: 0, 2: 0, 3: 0}


def test_dominates_on_common_indices():
    p = RdepthProfile("p", {1: 1, 2: 2})
    q = RdepthProfile("q", {2: 2, 3: 9})
    assert dominates(p, q)
    assert not dominates(q, RdepthProfile("r", {2: 3}))
    assert dominates(p, RdepthProfile("empty", {}))


def test_brackets_take_the_deeper_side():
    assert rdepth(Brack(Id(1), Comp(Brack(Id(1), Id(1)), monus()))) == 2
