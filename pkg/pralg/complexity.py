"""
Rdepth: the largest number of nested recursion nodes on a root-to-leaf path.

Terms of Rdepth n denote functions in the Grzegorczyk class E^(n+1). Rewriting
by the coherence equations (group II) keeps Rdepth fixed, and the pruning
equations (group I) never raise it; ``theorem2_check`` tests both claims on
random terms.
"""

from __future__ import annotations

import pickle
from collections.abc import Iterable, Mapping
from dataclasses import dataclass, field
from functools import lru_cache
from pathlib import Path
from typing import TYPE_CHECKING, NamedTuple

import numpy as np
import pandas as pd
from loguru import logger

from pralg.generate import random_typed_term, redex_instance
from pralg.prover import DEFAULT_BUDGET, Normalizer, Proof, SearchLimits, SearchTree
from pralg.rules import DEFAULT_GROUPS, Direction, Group, rules_for
from pralg.terms import Leaf, Position, Rec, Term, positions, replace

if TYPE_CHECKING:
    from pralg.schemes import Scheme


@lru_cache(maxsize=1 << 16)
def rdepth(t: Term) -> int:
    # by object id, children before parents
    depths: dict[int, int] = {}
    stack = [t]
    while stack:
        current = stack[-1]
        if isinstance(current, Leaf):
            depths[id(stack.pop())] = 0
            continue
        pending = [c for c in current.children if id(c) not in depths]
        if pending:
            stack += pending
            continue
        stack.pop()
        below = max(depths[id(c)] for c in current.children)
        depths[id(current)] = below + isinstance(current, Rec)
    return depths[id(t)]


@dataclass(frozen=True)
class GrzClass:
    index: int

    def __str__(self) -> str:
        return f"E^{self.index}"

    @property
    def report(self) -> str:
        return f"function is in {self}"


def grz_bound(t: Term) -> GrzClass:
    return GrzClass(rdepth(t) + 1)


class RdepthBound(NamedTuple):
    bound: int
    witness: Term
    proof: Proof


def min_rdepth(
    t: Term,
    budget: int = DEFAULT_BUDGET,
    groups: Iterable[Group] = DEFAULT_GROUPS,
    limits: SearchLimits | None = None,
) -> RdepthBound:
    """
    The least Rdepth among the terms reachable from ``t`` within the budget,
    with a term attaining it and a proof that connects ``t`` to that term. This
    is an upper bound on the minimum over the whole equivalence class.
    """
    groups = frozenset(groups)
    limits = limits or SearchLimits()
    tree = SearchTree(t, Normalizer.for_groups(groups))
    best = min(tree.parents, key=rdepth)
    cap = limits.size_cap(t)

    while tree.frontier and len(tree) < budget and rdepth(best) > 0:
        for y in tree.expand(groups, cap):
            if rdepth(y) < rdepth(best):
                best = y
            if len(tree) >= budget:
                break

    logger.info(f"Rdepth {rdepth(t)} lowered to {rdepth(best)} within {len(tree)} terms")
    return RdepthBound(rdepth(best), best, tree.proof_to(best))


# invariance under the equations


@dataclass(frozen=True)
class Violation:
    rule: str
    direction: Direction
    position: Position
    before: Term
    after: Term

    @property
    def group(self) -> str:
        return self.rule.split(".")[0]

    @property
    def rdepth_before(self) -> int:
        return rdepth(self.before)

    @property
    def rdepth_after(self) -> int:
        return rdepth(self.after)


@dataclass
class InvarianceReport:
    trials: int
    seed: int
    group_ii_steps: int = 0
    group_i_steps: int = 0
    violations: list[Violation] = field(default_factory=list)

    @property
    def group_ii_violations(self) -> list[Violation]:
        return [v for v in self.violations if v.group == Group.II]

    @property
    def group_i_violations(self) -> list[Violation]:
        return [v for v in self.violations if v.group == Group.I]

    @property
    def passed(self) -> bool:
        return not self.violations

    @property
    def counterexample(self) -> Violation | None:
        return self.violations[0] if self.violations else None

    def to_frame(self) -> pd.DataFrame:
        return pd.DataFrame(
            {
                "claim": ["group II keeps Rdepth", "group I never raises Rdepth"],
                "steps": [self.group_ii_steps, self.group_i_steps],
                "violations": [len(self.group_ii_violations), len(self.group_i_violations)],
            }
        ).set_index("claim")

    def save(self, path: Path) -> None:
        with open(path, "wb") as f:
            pickle.dump(self, f, pickle.HIGHEST_PROTOCOL)

    @staticmethod
    def load(path: Path) -> InvarianceReport:
        with open(path, "rb") as f:
            return pickle.load(f)


def _check_steps(t: Term, report: InvarianceReport) -> None:
    before = rdepth(t)
    subterms = list(positions(t))
    for rule in rules_for([Group.II]):
        for direction in Direction:
            for position, sub in subterms:
                for result in rule.rewrite(sub, direction):
                    after = replace(t, position, result)
                    report.group_ii_steps += 1
                    if rdepth(after) != before:
                        violation = Violation(rule.name, direction, position, t, after)
                        report.violations.append(violation)
    for rule in rules_for([Group.I]):
        for position, sub in subterms:
            for result in rule.rewrite(sub, Direction.FORWARD):
                after = replace(t, position, result)
                report.group_i_steps += 1
                if rdepth(after) > before:
                    report.violations.append(
                        Violation(rule.name, Direction.FORWARD, position, t, after)
                    )


def theorem2_check(trials: int = 1000, max_depth: int = 7, seed: int = 0) -> InvarianceReport:
    """
    Apply every group-II rewrite (both directions) and every group-I forward
    rewrite to random terms and record each step that changes Rdepth the wrong
    way. Every other trial uses a random instance of one of those rules, so
    that each rule fires regularly.
    """
    rng = np.random.default_rng(seed)
    report = InvarianceReport(trials, seed)
    names = [rule.name for rule in rules_for([Group.I, Group.II])]
    for trial in range(trials):
        if trial % 2 == 0:
            t = random_typed_term(rng, int(rng.integers(0, max_depth + 1)))
        else:
            name = names[(trial // 2) % len(names)]
            t = redex_instance(name, rng, depth=min(2, max_depth), allow_rec=True)
        _check_steps(t, report)

    logger.info(
        f"Checked {report.group_ii_steps} group II and {report.group_i_steps} group I steps "
        f"on {trials} terms: {len(report.violations)} violation(s)"
    )
    return report


# profiles


@dataclass(frozen=True)
class RdepthProfile:
    name: str
    values: Mapping[int, int]

    def to_frame(self) -> pd.DataFrame:
        return pd.DataFrame({"n": list(self.values), "rdepth": list(self.values.values())})

    def to_csv(self) -> str:
        return self.to_frame().to_csv(index=False, lineterminator="\n")


def scheme_profile(
    s: Scheme,
    n_max: int,
    minimize: bool = False,
    budget: int = DEFAULT_BUDGET,
    groups: Iterable[Group] = DEFAULT_GROUPS,
) -> RdepthProfile:
    """
    Rdepth of each term of the scheme from its smallest index to ``n_max``. With
    ``minimize`` each value is the bound found by ``min_rdepth`` instead.
    """
    values = {}
    for n in range(s.min_index, n_max + 1):
        t = s.generate(n)
        values[n] = min_rdepth(t, budget, groups).bound if minimize else rdepth(t)
        logger.debug(f"{s.name}[{n}]: rdepth {values[n]}")
    return RdepthProfile(s.name, values)


def dominates(p: RdepthProfile, q: RdepthProfile) -> bool:
    """
    True when ``p`` is at least ``q`` at every index both profiles share.
    """
    return all(p.values[n] >= q.values[n] for n in p.values.keys() & q.values.keys())
