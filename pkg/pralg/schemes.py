"""
Standard combinators and schemes: families of terms indexed by the input size.

There is no conditional in the term language, so the sorting schemes are
oblivious compare-exchange networks over ``min2`` and ``max2``. They compute the
same function as the value-dependent definitions and keep their recursive
shape: insertion sort inserts the last input into a sorted prefix, merge sort
sorts both halves and merges them.
"""

from __future__ import annotations

from collections.abc import Callable
from dataclasses import dataclass
from functools import cache

from pralg.errors import InvalidSize, UnknownScheme
from pralg.terms import (
    Brack,
    Comp,
    Id,
    Null,
    Prod,
    Proj,
    Rec,
    Signature,
    Succ,
    Term,
    Twist,
    Zero,
    const,
    proj_leaf,
    span,
)

# combinators


def zero_const(a: int) -> Term:
    return const(0, a)


@cache
def pred() -> Term:
    """
    n - 1 cut off at 0. Iterates (a, b) -> (a + 1, a) from (0, 0) and keeps the
    second component, since the recursion step does not see the counter.
    """
    step = Brack(Comp(Proj(2, 1), Succ()), Proj(2, 1))
    return Comp(Rec(Brack(Zero(), Zero()), step), Proj(2, 2))


@cache
def add() -> Term:
    return Rec(Id(1), Comp(Proj(2, 2), Succ()))


@cache
def monus() -> Term:
    """
    x - y cut off at 0.
    """
    return Rec(Id(1), Comp(Proj(2, 2), pred()))


@cache
def iszero() -> Term:
    return Rec(Comp(Zero(), Succ()), Null())


@cache
def leq() -> Term:
    """
    1 if x <= y else 0.
    """
    return Comp(monus(), iszero())


@cache
def min2() -> Term:
    # x - (x - y)
    return Comp(Brack(Proj(2, 1), monus()), monus())


@cache
def max2() -> Term:
    # x + (y - x)
    return Comp(Brack(Proj(2, 1), Comp(Twist(1, 1), monus())), add())


@cache
def compare_exchange() -> Term:
    return Brack(min2(), max2())


@cache
def mult() -> Term:
    return Rec(Null(), Comp(Twist(1, 1), add()))


def rec_with_counter(f: Term, g: Term) -> Term:
    """
    h(x, 0) = f(x), h(x, n + 1) = g(x, h(x, n), n) for f: A -> B and
    g: A x B x N -> B. The counter is carried next to the accumulator and
    projected away at the end.
    """
    a, b = f.signature
    start = Brack(f, zero_const(a))
    step = Brack(g, Comp(Proj(a + b + 1, a + b + 1), Succ()))
    return Comp(Rec(start, step), proj_leaf(b + 1, span(1, b)))


def simple_rec(k: int, g: Term) -> Term:
    """
    h(0) = k, h(n + 1) = g(h(n)) for g: N -> N.
    """
    return Rec(const(k, 0), g)


# networks


def _widen(t: Term, before: int, after: int) -> Term:
    """
    ``t`` with identity wires around it; zero-width wires are left out.
    """
    if before:
        t = Prod(Id(before), t)
    if after:
        t = Prod(t, Id(after))
    return t


def gate(i: int, n: int) -> Term:
    """
    Compare-exchange of wires i and i + 1 out of n, smaller value first.
    """
    return _widen(compare_exchange(), i - 1, n - i - 1)


def _chain(stages: list[Term]) -> Term:
    term = stages[0]
    for stage in stages[1:]:
        term = Comp(term, stage)
    return term


def bubble_down(j: int, n: int) -> Term:
    """
    Moves the value on wire j into the sorted wires 1..j-1.
    """
    return _chain([gate(i, n) for i in range(j - 1, 0, -1)])


@cache
def insertion_sort(n: int) -> Term:
    if n == 1:
        return Id(1)
    return Comp(Prod(insertion_sort(n - 1), Id(1)), bubble_down(n, n))


def merge(h: int, n: int) -> Term:
    """
    Merges sorted wires 1..h with sorted wires h+1..n.
    """
    return _chain([bubble_down(j, n) for j in range(h + 1, n + 1)])


@cache
def merge_sort(n: int) -> Term:
    if n == 1:
        return Id(1)
    h = n // 2
    return Comp(Prod(merge_sort(h), merge_sort(n - h)), merge(h, n))


@cache
def maximum(n: int) -> Term:
    if n == 1:
        return Id(1)
    h = n // 2
    return Comp(Prod(maximum(h), maximum(n - h)), max2())


# schemes


@dataclass(frozen=True)
class Scheme:
    name: str
    arity_shape: Callable[[int], Signature]
    build: Callable[[int], Term]
    min_index: int = 1

    def generate(self, n: int) -> Term:
        if n < self.min_index:
            raise InvalidSize(n, self.min_index)
        return self.build(n)


def id_scheme() -> Scheme:
    return Scheme("id", lambda n: Signature(n, n), Id)


def max_scheme() -> Scheme:
    return Scheme("max", lambda n: Signature(n, 1), maximum)


def insertion_sort_scheme() -> Scheme:
    return Scheme("insertion-sort", lambda n: Signature(n, n), insertion_sort)


def merge_sort_scheme() -> Scheme:
    return Scheme("merge-sort", lambda n: Signature(n, n), merge_sort)


SCHEMES: dict[str, Callable[[], Scheme]] = {
    "id": id_scheme,
    "max": max_scheme,
    "insertion-sort": insertion_sort_scheme,
    "merge-sort": merge_sort_scheme,
}


def get_scheme(name: str) -> Scheme:
    try:
        return SCHEMES[name]()
    except KeyError:
        raise UnknownScheme(name) from None
