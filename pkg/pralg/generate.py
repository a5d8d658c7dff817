"""
Seeded random well-typed terms, for property tests and the Rdepth checks.

Everything takes a ``numpy.random.Generator``; numpy integers are turned into
Python ints before they reach a constructor.
"""

from __future__ import annotations

from collections.abc import Callable

import numpy as np

from pralg.errors import UnknownRule
from pralg.rules import hexagon_lhs, lifted_succ, lifted_zero
from pralg.terms import (
    BoxTimes,
    Brack,
    CircT,
    Comp,
    Diag,
    Id,
    MultiProj,
    Null,
    Prod,
    Rec,
    Succ,
    Term,
    Twist,
    Zero,
    proj_leaf,
    span,
)

MAX_ARITY = 3
STOP_PROBABILITY = 0.3


def _int(rng: np.random.Generator, lo: int, hi: int) -> int:
    """
    Uniform integer in lo..hi inclusive.
    """
    return int(rng.integers(lo, hi + 1))


def random_leaf(rng: np.random.Generator, src: int, dst: int) -> Term:
    if dst == 0:
        return MultiProj(src, ())
    if src == 0:
        term: Term = Zero()
        for _ in range(dst - 1):
            term = Brack(Zero(), term)
        return term

    def twist() -> Term:
        a = _int(rng, 1, src - 1)
        return Twist(a, src - a)

    options: list[Callable[[], Term]] = [
        lambda: proj_leaf(src, [_int(rng, 1, src) for _ in range(dst)])
    ]
    if (src, dst) == (1, 1):
        options += [Null, Succ, lambda: Id(1)]
    if src == dst:
        options.append(lambda: Id(src))
        if src >= 2:
            options.append(twist)
    if dst == 2 * src:
        options.append(lambda: Diag(src))
    return options[_int(rng, 0, len(options) - 1)]()


def random_term(
    rng: np.random.Generator,
    src: int,
    dst: int,
    depth: int,
    allow_rec: bool = True,
) -> Term:
    """
    A random term of signature ``src -> dst`` with at most ``depth`` nested
    nodes. Without ``allow_rec`` no recursion node is used, which keeps
    evaluation cheap.
    """
    if depth <= 0 or rng.random() < STOP_PROBABILITY:
        return random_leaf(rng, src, dst)

    constructors = ["comp", "bcomp"]
    if dst >= 2:
        constructors.append("brack")
    if allow_rec and src >= 1 and dst >= 1:
        constructors.append("rec")
    if src >= 2 and dst >= 2:
        constructors.append("prod")
    if dst >= 2 and dst % 2 == 0 and src >= dst:
        constructors.append("bprod")

    def sub(s: int, d: int) -> Term:
        return random_term(rng, s, d, depth - 1, allow_rec)

    match constructors[_int(rng, 0, len(constructors) - 1)]:
        case "comp":
            mid = _int(rng, 1, MAX_ARITY)
            return Comp(sub(src, mid), sub(mid, dst))
        case "bcomp":
            d, a = _int(rng, 1, 2), _int(rng, 0, src)
            return CircT(sub(a + d, dst), sub(src, d))
        case "brack":
            b = _int(rng, 1, dst - 1)
            return Brack(sub(src, b), sub(src, dst - b))
        case "rec":
            return Rec(sub(src - 1, dst), sub(src - 1 + dst, dst))
        case "prod":
            a, b = _int(rng, 1, src - 1), _int(rng, 1, dst - 1)
            return Prod(sub(a, b), sub(src - a, dst - b))
        case "bprod":
            b = dst // 2
            a = src - 2 * b
            return BoxTimes(sub(a + b, b), sub(a + b, b))
    raise AssertionError("unreachable")


def random_signature(rng: np.random.Generator, max_arity: int = MAX_ARITY) -> tuple[int, int]:
    return _int(rng, 0, max_arity), _int(rng, 1, max_arity)


def random_typed_term(
    rng: np.random.Generator, depth: int, max_arity: int = MAX_ARITY, allow_rec: bool = True
) -> Term:
    src, dst = random_signature(rng, max_arity)
    return random_term(rng, src, dst, depth, allow_rec)


def redex_instance(
    name: str, rng: np.random.Generator, depth: int = 1, allow_rec: bool = False
) -> Term:
    """
    A random instance of the left-hand side of the named rule, with random
    subterms of the given depth for its metavariables.
    """

    def rt(s: int, d: int) -> Term:
        return random_term(rng, s, d, depth, allow_rec)

    a, b, c = _int(rng, 0, 2), _int(rng, 1, 2), _int(rng, 1, 2)
    match name:
        case "I.1":
            return Comp(Comp(rt(a + 1, 1), Succ()), Null())
        case "I.2":
            return Comp(Brack(rt(a, b), rt(a, c)), proj_leaf(b + c, span(1, b)))
        case "I.3":
            return Comp(Brack(rt(a, b), rt(a, c)), proj_leaf(b + c, span(b + 1, b + c)))
        case "I.4":
            return CircT(Rec(rt(a, b), rt(a + b, b)), lifted_zero(a))
        case "II.1":
            return Comp(Comp(rt(a, b), rt(b, c)), rt(c, _int(rng, 1, 2)))
        case "II.2":
            f = rt(a, b)
            return Comp(Id(a), f) if rng.random() < 0.5 else Comp(f, Id(b))
        case "II.3":
            return Comp(rt(a, b), Brack(rt(b, c), rt(b, _int(rng, 1, 2))))
        case "II.4":
            return Brack(Brack(rt(a, b), rt(a, c)), rt(a, _int(rng, 1, 2)))
        case "II.5":
            return Brack(rt(a, b), rt(a, c))
        case "II.6":
            return Brack(Id(b), Id(b))
        case "II.7":
            return Comp(Twist(a, b), Twist(b, a))
        case "II.8":
            x, y, z = hexagon_lhs(a, b, c)
            return Comp(Comp(x, y), z)
        case "II.9":
            return Rec(Brack(rt(a, b), rt(a, b)), BoxTimes(rt(a + b, b), rt(a + b, b)))
        case "II.10":
            g1 = rt(a + c, b)
            return CircT(g1, Rec(rt(a, c), CircT(rt(a + b, c), g1)))
        case "II.11":
            return CircT(Rec(rt(a, b), rt(a + b, b)), lifted_succ(a))
        case "III.1":
            return Rec(rt(a, b), proj_leaf(a + b, span(a + 1, a + b)))
        case "Defn.Prod":
            return Prod(rt(a, b), rt(_int(rng, 0, 2), c))
        case "Defn.Diag":
            return Diag(b)
        case "Defn.Twist":
            return Twist(a, b)
        case "Defn.BoxTimes":
            return BoxTimes(rt(a + b, b), rt(a + b, b))
        case "Defn.CircT":
            d = _int(rng, 1, 2)
            return CircT(rt(a + d, b), rt(a + c, d))
        case "Defn.MultiProj":
            if rng.random() < 0.3:
                return Id(b)
            return MultiProj(b, tuple(_int(rng, 1, b) for _ in range(_int(rng, 1, 3))))
        case "D.1":
            return Comp(Prod(rt(a, b), rt(c, a + 1)), Prod(rt(b, c), rt(a + 1, b)))
        case "D.2":
            return Prod(Prod(rt(a, b), rt(b, c)), rt(c, a + 1))
        case "D.3":
            return Prod(Id(b), Id(c))
    raise UnknownRule(name)
