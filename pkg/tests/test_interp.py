import numpy as np
import pytest

from pralg.errors import ArityMismatch, FuelExhausted
from pralg.generate import random_term, random_typed_term
from pralg.interp import Equal, NotEqual, evaluate, ext_equal, sample_inputs
from pralg.terms import (
    BoxTimes,
    CircT,
    Comp,
    Diag,
    Id,
    MultiProj,
    Null,
    Prod,
    Proj,
    Rec,
    Succ,
    Twist,
    Zero,
    const,
    expand_macros,
)

ADD = Rec(Id(1), Comp(Proj(2, 2), Succ()))


def test_basic_functions():
    assert evaluate(Zero(), ()) == (0,)
    assert evaluate(Null(), (9,)) == (0,)
    assert evaluate(Succ(), (9,)) == (10,)
    assert evaluate(Proj(3, 2), (4, 5, 6)) == (5,)
    assert evaluate(Comp(Null(), Succ()), (7,)) == (1,)


def test_macros_by_their_formulas():
    assert evaluate(MultiProj(3, (3, 1, 3)), (4, 5, 6)) == (6, 4, 6)
    assert evaluate(MultiProj(3, ()), (4, 5, 6)) == ()
    assert evaluate(Id(2), (4, 5)) == (4, 5)
    assert evaluate(Diag(2), (1, 2)) == (1, 2, 1, 2)
    assert evaluate(Twist(1, 2), (1, 2, 3)) == (2, 3, 1)
    assert evaluate(Prod(Succ(), Twist(1, 1)), (1, 2, 3)) == (2, 3, 2)
    assert evaluate(BoxTimes(Succ(), Null()), (4, 5)) == (5, 0)
    assert evaluate(BoxTimes(ADD, ADD), (10, 1, 2)) == (11, 12)
    # add(x, x + 1)
    assert evaluate(CircT(ADD, Succ()), (3,)) == (7,)


def test_recursion():
    assert evaluate(ADD, (3, 4)) == (7,)
    assert evaluate(ADD, (3, 0)) == (3,)
    assert evaluate(const(3, 2), (5, 6)) == (3,)


def test_big_integers():
    assert evaluate(Succ(), (10**30,)) == (10**30 + 1,)
    assert evaluate(ADD, (10**30, 3)) == (10**30 + 3,)


def test_input_checks():
    with pytest.raises(ArityMismatch):
        evaluate(Succ(), (1, 2))
    with pytest.raises(ValueError):
        evaluate(Succ(), (-1,))


def test_fuel():
    with pytest.raises(FuelExhausted) as info:
        evaluate(ADD, (1, 100), fuel=10)
    assert info.value.fuel == 10
    assert info.value.input == (1, 100)


def test_long_composition_chains():
    assert evaluate(const(1200), ()) == (1200,)
    chain = Succ()
    for _ in range(1500):
        chain = Comp(Succ(), chain)
    assert evaluate(chain, (3,)) == (1504,)
    assert evaluate(Rec(Id(1), Comp(Proj(2, 2), chain)), (0, 2)) == (3002,)


def test_sample_inputs():
    inputs = sample_inputs(2, 50, 20, seed=3)
    assert inputs[:2] == [(0, 0), (0, 1)]
    assert len(set(inputs)) == len(inputs)
    assert all(0 <= v <= 20 for x in inputs for v in x)
    assert inputs == sample_inputs(2, 50, 20, seed=3)
    assert sample_inputs(0, 10, 5, seed=0) == [()]


def test_ext_equal():
    assert isinstance(ext_equal(Comp(Id(1), Succ()), Succ()), Equal)

    verdict = ext_equal(Succ(), Null())
    assert verdict == NotEqual((0,), (1,), (0,))

    with pytest.raises(ArityMismatch):
        ext_equal(Succ(), ADD)


@pytest.mark.parametrize("seed", range(5))
def test_macros_agree_with_their_expansion(seed):
    rng = np.random.default_rng(seed)
    for _ in range(30):
        t = random_typed_term(rng, 3, allow_rec=False)
        assert isinstance(ext_equal(t, expand_macros(t), samples=20, seed=seed), Equal)


def test_recursion_agrees_with_its_expansion():
    rng = np.random.default_rng(7)
    for _ in range(20):
        f = random_term(rng, 1, 1, 1, allow_rec=False)
        g = random_term(rng, 2, 1, 1, allow_rec=False)
        t = Rec(f, g)
        assert isinstance(ext_equal(t, expand_macros(t), samples=20, max_value=8), Equal)
