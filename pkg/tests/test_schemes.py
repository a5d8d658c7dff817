import itertools

import numpy as np
import pytest

from pralg.complexity import rdepth
from pralg.errors import InvalidSize, UnknownScheme
from pralg.interp import Equal, evaluate, ext_equal
from pralg.prover import Unknown, equiv
from pralg.schemes import (
    SCHEMES,
    add,
    compare_exchange,
    get_scheme,
    insertion_sort,
    iszero,
    leq,
    max2,
    maximum,
    merge_sort,
    min2,
    monus,
    mult,
    pred,
    rec_with_counter,
    simple_rec,
    zero_const,
)
from pralg.terms import Comp, Id, MultiProj, Succ


def _table(t, bound):
    return {x: evaluate(t, x)[0] for x in itertools.product(range(bound + 1), repeat=t.src)}


def test_unary_combinators():
    assert _table(pred(), 20) == {(n,): max(n - 1, 0) for n in range(21)}
    assert _table(iszero(), 20) == {(n,): int(n == 0) for n in range(21)}


def test_binary_combinators():
    values = list(itertools.product(range(21), repeat=2))
    assert _table(monus(), 20) == {(x, y): max(x - y, 0) for x, y in values}
    assert _table(leq(), 20) == {(x, y): int(x <= y) for x, y in values}
    assert _table(min2(), 20) == {(x, y): min(x, y) for x, y in values}
    assert _table(max2(), 20) == {(x, y): max(x, y) for x, y in values}

    small = list(itertools.product(range(11), repeat=2))
    assert _table(add(), 10) == {(x, y): x + y for x, y in small}
    assert _table(mult(), 10) == {(x, y): x * y for x, y in small}


def test_compare_exchange():
    assert evaluate(compare_exchange(), (9, 4)) == (4, 9)
    assert evaluate(compare_exchange(), (4, 9)) == (4, 9)
    assert evaluate(compare_exchange(), (3, 3)) == (3, 3)


def test_recursion_helpers():
    # h(x, n) = x + 0 + 1 + ... + (n - 1)
    h = rec_with_counter(Id(1), Comp(MultiProj(3, (2, 3)), add()))
    assert h.signature == (2, 1)
    for x, n in itertools.product(range(5), range(8)):
        assert evaluate(h, (x, n)) == (x + n * (n - 1) // 2,)

    assert evaluate(simple_rec(2, Succ()), (5,)) == (7,)
    assert evaluate(simple_rec(3, Succ()), (0,)) == (3,)
    assert evaluate(zero_const(2), (3, 4)) == (0,)


@pytest.mark.parametrize(
    "build, x",
    [
        (insertion_sort, (3, 1, 2)),
        (insertion_sort, (7,)),
        (insertion_sort, (5, 5, 1, 5)),
        (merge_sort, (4, 3, 2, 1)),
        (merge_sort, (7,)),
        (merge_sort, (2, 2)),
        (merge_sort, (0, 9, 1, 8, 2)),
    ],
)
def test_sorting_examples(build, x):
    assert evaluate(build(len(x)), x) == tuple(sorted(x))


def test_maximum():
    assert evaluate(maximum(3), (2, 9, 4)) == (9,)
    assert evaluate(maximum(1), (6,)) == (6,)
    assert evaluate(maximum(4), (0, 0, 0, 0)) == (0,)
    assert maximum(1) == Id(1)


@pytest.mark.parametrize("name", list(SCHEMES))
def test_schemes_match_their_shape(name):
    scheme = get_scheme(name)
    assert scheme.name == name
    for n in range(1, 6):
        assert scheme.generate(n).signature == scheme.arity_shape(n)
    with pytest.raises(InvalidSize):
        scheme.generate(0)


def test_unknown_scheme():
    with pytest.raises(UnknownScheme):
        get_scheme("bogo-sort")


def test_scheme_rdepth():
    assert rdepth(insertion_sort(1)) == 0
    assert rdepth(insertion_sort(3)) == rdepth(monus()) == 2
    assert rdepth(merge_sort(4)) == 2
    assert rdepth(maximum(5)) == 2


def _random_lists(count: int, seed: int) -> list[tuple[int, ...]]:
    rng = np.random.default_rng(seed)
    lists = []
    for _ in range(count):
        n = int(rng.integers(1, 7))
        lists.append(tuple(int(v) for v in rng.integers(0, 16, size=n)))
    return lists


def test_sorting_random_lists():
    for x in _random_lists(30, seed=0):
        assert evaluate(insertion_sort(len(x)), x) == tuple(sorted(x))
        assert evaluate(merge_sort(len(x)), x) == tuple(sorted(x))


@pytest.mark.slow
@pytest.mark.parametrize(
    "build, n",
    [(insertion_sort, n) for n in range(1, 7)] + [(merge_sort, n) for n in range(1, 6)],
)
def test_sorting_200_lists_per_size(build, n):
    rng = np.random.default_rng(n)
    t = build(n)
    for row in rng.integers(0, 16, size=(200, n)):
        x = tuple(int(v) for v in row)
        assert evaluate(t, x) == tuple(sorted(x))


def test_two_sorting_algorithms():
    t1, t2 = insertion_sort(4), merge_sort(4)
    assert t1 != t2
    assert isinstance(ext_equal(t1, t2, samples=300, max_value=15), Equal)
    assert isinstance(equiv(t1, t2, budget=300), Unknown)


@pytest.mark.slow
def test_two_sorting_algorithms_at_full_budget():
    assert isinstance(equiv(insertion_sort(4), merge_sort(4), budget=100_000), Unknown)
