"""
Big-integer semantics of description trees and a seeded extensional-equality
tester. Macro constructors are evaluated by their defining formulas, never by
expansion.
"""

from __future__ import annotations

from collections.abc import Sequence
from dataclasses import dataclass

import numpy as np
from loguru import logger

from pralg.errors import ArityMismatch, FuelExhausted
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
    Proj,
    Rec,
    Succ,
    Term,
    Twist,
    Zero,
)

DEFAULT_FUEL = 10**7
DEFAULT_SAMPLES = 100
DEFAULT_MAX_VALUE = 20

Values = tuple[int, ...]


class _Meter:
    def __init__(self, fuel: int, input: Values) -> None:
        self.fuel = fuel
        self.remaining = fuel
        self.input = input

    def tick(self) -> None:
        self.remaining -= 1
        if self.remaining < 0:
            raise FuelExhausted(self.fuel, self.input)


def evaluate(t: Term, x: Sequence[int], fuel: int = DEFAULT_FUEL) -> Values:
    """
    Value of ``t`` at ``x``. Fuel counts node visits plus iterations of
    recursion steps.
    """
    if fuel <= 0:
        raise ValueError("fuel must be positive")
    x = tuple(int(v) for v in x)
    if len(x) != t.src:
        raise ArityMismatch((), t.src, len(x))
    if any(v < 0 for v in x):
        raise ValueError(f"inputs must be natural numbers, got {x}")
    return _run(t, x, _Meter(fuel, x))


def _run(t: Term, x: Values, meter: _Meter) -> Values:
    meter.tick()
    match t:
        case Zero() | Null():
            return (0,)
        case Succ():
            return (x[0] + 1,)
        case Proj(_, i):
            return (x[i - 1],)
        case MultiProj(_, xs):
            return tuple(x[i - 1] for i in xs)
        case Id():
            return x
        case Diag():
            return x + x
        case Twist(a, _):
            return x[a:] + x[:a]
        case Comp(f, g):
            stages: list[Term] = [g, f]
            while stages:
                stage = stages.pop()
                if isinstance(stage, Comp):
                    meter.tick()
                    stages += [stage.g, stage.f]
                else:
                    x = _run(stage, x, meter)
            return x
        case Brack(f, g):
            return _run(f, x, meter) + _run(g, x, meter)
        case Prod(f, g):
            return _run(f, x[: f.src], meter) + _run(g, x[f.src :], meter)
        case Rec(f, g):
            params, n = x[:-1], x[-1]
            acc = _run(f, params, meter)
            for _ in range(n):
                meter.tick()
                acc = _run(g, params + acc, meter)
            return acc
        case BoxTimes(g1, g2):
            a, b = t.a, t.b
            params = x[:a]
            return _run(g1, params + x[a : a + b], meter) + _run(g2, params + x[a + b :], meter)
        case CircT(g1, g2):
            return _run(g1, x[: t.a] + _run(g2, x, meter), meter)
    raise TypeError(f"not a term: {t!r}")


@dataclass(frozen=True)
class Equal:
    """
    No distinguishing input was found among ``samples`` inputs. Not a proof.
    """

    samples: int


@dataclass(frozen=True)
class NotEqual:
    witness: Values
    left: Values
    right: Values


Verdict = Equal | NotEqual


def sample_inputs(arity: int, samples: int, max_value: int, seed: int) -> list[Values]:
    """
    The all-zeros tuple, (0, ..., 0, 1), then ``samples`` uniform tuples, without
    repeats and in a seed-determined order.
    """
    rng = np.random.default_rng(seed)
    fixed = [(0,) * arity]
    if arity > 0:
        fixed.append((0,) * (arity - 1) + (1,))
    drawn = rng.integers(0, max_value + 1, size=(samples, arity))
    inputs = dict.fromkeys(fixed + [tuple(int(v) for v in row) for row in drawn])
    return list(inputs)


def ext_equal(
    t1: Term,
    t2: Term,
    samples: int = DEFAULT_SAMPLES,
    max_value: int = DEFAULT_MAX_VALUE,
    seed: int = 0,
    fuel: int = DEFAULT_FUEL,
) -> Verdict:
    if t1.signature != t2.signature:
        raise ArityMismatch((), t1.signature, t2.signature)
    inputs = sample_inputs(t1.src, samples, max_value, seed)
    for x in inputs:
        left, right = evaluate(t1, x, fuel), evaluate(t2, x, fuel)
        if left != right:
            logger.debug(f"Inputs {x} distinguish the terms: {left} != {right}")
            return NotEqual(x, left, right)
    return Equal(len(inputs))
