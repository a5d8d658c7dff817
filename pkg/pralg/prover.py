"""
Normalization, pruning and the bounded equivalence prover.

The prover searches the rewrite graph from both terms at once, breadth first,
and stops when the two searches meet. Every discovered term is first brought to
a normal form by a terminating oriented subset of the rules, so the frontiers
hold one representative per normal form. Proofs record the normalization steps
too, and replay step by step.
"""

from __future__ import annotations

import dataclasses
import json
from collections.abc import Callable, Iterable, Iterator
from dataclasses import dataclass
from typing import Any

from loguru import logger

from pralg.errors import ArityMismatch, InvalidPosition, SchemaError, StepMismatch
from pralg.interp import DEFAULT_MAX_VALUE, DEFAULT_SAMPLES, NotEqual, Values, ext_equal
from pralg.rules import (
    DEFAULT_GROUPS,
    RULES,
    Direction,
    Group,
    Rule,
    get_rule,
    one_step_rewrites,
    rules_for,
)
from pralg.surface import from_dict, to_dict
from pralg.terms import ROOT, MultiProj, Node, Position, Side, Term, positions, replace, subterm

DEFAULT_BUDGET = 10_000


@dataclass(frozen=True)
class SearchLimits:
    """
    ``budget`` bounds the distinct normal forms admitted; terms larger than
    ``size_factor * max(size(t1), size(t2)) + size_slack`` are never admitted.
    """

    budget: int = DEFAULT_BUDGET
    size_factor: int = 3
    size_slack: int = 12

    def size_cap(self, *terms: Term) -> int:
        return self.size_factor * max(t.size for t in terms) + self.size_slack


# proofs


@dataclass(frozen=True)
class ProofStep:
    """
    Rewrite the subterm at ``position`` with ``rule`` in ``direction``. ``alt``
    picks among several results; ``term`` names the result explicitly for
    directions the rule can not enumerate.
    """

    position: Position
    rule: str
    direction: Direction
    alt: int = 0
    term: Term | None = None

    def under(self, side: int) -> ProofStep:
        return dataclasses.replace(self, position=(side, *self.position))

    def to_dict(self) -> dict[str, Any]:
        obj: dict[str, Any] = {
            "pos": [int(p) for p in self.position],
            "rule": self.rule,
            "dir": self.direction.value,
        }
        if self.alt:
            obj["alt"] = self.alt
        if self.term is not None:
            obj["term"] = to_dict(self.term)
        return obj

    @classmethod
    def from_dict(cls, obj: Any, path: str = "$") -> ProofStep:
        if not isinstance(obj, dict):
            raise SchemaError(path, "expected a proof step object")
        extra = sorted(set(obj) - {"pos", "rule", "dir", "alt", "term"})
        if extra:
            raise SchemaError(path, f"unexpected field(s) {', '.join(extra)}")
        pos = obj.get("pos")
        if not isinstance(pos, list) or any(p not in (0, 1) or isinstance(p, bool) for p in pos):
            raise SchemaError(f"{path}.pos", "expected a list of 0/1 steps")
        if obj.get("rule") not in RULES:
            raise SchemaError(f"{path}.rule", f"unknown rule {obj.get('rule')!r}")
        try:
            direction = Direction(obj.get("dir"))
        except ValueError as exc:
            raise SchemaError(f"{path}.dir", "expected 'fwd' or 'bwd'") from exc
        alt = obj.get("alt", 0)
        if not isinstance(alt, int) or isinstance(alt, bool) or alt < 0:
            raise SchemaError(f"{path}.alt", "expected a non-negative integer")
        term = from_dict(obj["term"], f"{path}.term") if "term" in obj else None
        return cls(tuple(Side(p) for p in pos), obj["rule"], direction, alt, term)

    def __str__(self) -> str:
        return f"{self.rule} {self.direction.value} at {list(map(int, self.position))}"


@dataclass(frozen=True)
class Proof:
    start: Term
    steps: tuple[ProofStep, ...]
    end: Term

    def __len__(self) -> int:
        return len(self.steps)

    def to_json(self) -> str:
        return json.dumps([step.to_dict() for step in self.steps], separators=(",", ":"))

    @classmethod
    def from_json(cls, text: str, start: Term) -> Proof:
        try:
            obj = json.loads(text)
        except json.JSONDecodeError as exc:
            raise SchemaError("$", f"invalid JSON: {exc.msg} at line {exc.lineno}") from exc
        if not isinstance(obj, list):
            raise SchemaError("$", "expected a list of proof steps")
        steps = tuple(ProofStep.from_dict(step, f"$[{i}]") for i, step in enumerate(obj))
        return cls(start, steps, replay_steps(start, steps))


def _explicitly_reached(rule: Rule, sub: Term, step: ProofStep) -> bool:
    return step.term in rule.rewrite(sub, step.direction) or sub in rule.rewrite(
        step.term, step.direction.flipped
    )


def apply_step(t: Term, step: ProofStep, index: int = 0) -> Term:
    rule = get_rule(step.rule)
    try:
        sub = subterm(t, step.position)
    except InvalidPosition as exc:
        raise StepMismatch(index, step) from exc

    if step.term is None:
        candidates = rule.rewrite(sub, step.direction)
        if step.alt >= len(candidates):
            raise StepMismatch(index, step)
        result = candidates[step.alt]
    elif _explicitly_reached(rule, sub, step):
        result = step.term
    else:
        raise StepMismatch(index, step)

    try:
        return replace(t, step.position, result)
    except ArityMismatch as exc:
        raise StepMismatch(index, step) from exc


def replay_steps(start: Term, steps: Iterable[ProofStep]) -> Term:
    current = start
    for index, step in enumerate(steps):
        current = apply_step(current, step, index)
    return current


def replay(proof: Proof) -> Term:
    return replay_steps(proof.start, proof.steps)


def reverse_steps(start: Term, steps: Iterable[ProofStep]) -> tuple[Term, list[ProofStep]]:
    """
    The end of ``steps`` from ``start``, and steps leading from that end back to
    ``start``.
    """
    terms = [start]
    steps = list(steps)
    for index, step in enumerate(steps):
        terms.append(apply_step(terms[-1], step, index))

    backwards = []
    for i in reversed(range(len(steps))):
        step, before, after = steps[i], terms[i], terms[i + 1]
        rule = get_rule(step.rule)
        want = subterm(before, step.position)
        candidates = rule.rewrite(subterm(after, step.position), step.direction.flipped)
        if want in candidates:
            backwards.append(
                ProofStep(step.position, step.rule, step.direction.flipped, candidates.index(want))
            )
        else:
            backwards.append(
                ProofStep(step.position, step.rule, step.direction.flipped, term=want)
            )
    return terms[-1], backwards


# normalization

Guard = Callable[[Term], bool]


def _singleton(t: Term) -> bool:
    return isinstance(t, MultiProj) and len(t.xs) == 1


class Normalizer:
    """
    Innermost rewriting to a fixed point with a fixed list of forward rules,
    memoized per instance. Returns the normal form and the steps taken.
    """

    def __init__(self, actions: list[tuple[Rule, Guard | None]]) -> None:
        self.actions = actions
        self._cache: dict[Term, tuple[Term, tuple[ProofStep, ...]]] = {}

    @classmethod
    def for_groups(cls, groups: Iterable[Group]) -> Normalizer:
        groups = frozenset(groups)
        names: list[tuple[str, Guard | None]] = []
        if Group.I in groups:
            names += [("I.1", None), ("I.2", None), ("I.3", None), ("I.4", None)]
        if Group.II in groups:
            names += [("II.1", None), ("II.2", None), ("II.7", None)]
        if Group.DEFN in groups:
            names.append(("Defn.MultiProj", _singleton))
        return cls([(RULES[name], guard) for name, guard in names])

    @classmethod
    def from_names(cls, *names: str) -> Normalizer:
        return cls([(RULES[name], None) for name in names])

    def __call__(self, t: Term) -> tuple[Term, tuple[ProofStep, ...]]:
        cached = self._cache.get(t)
        if cached is not None:
            return cached

        current, steps = t, ()
        if isinstance(t, Node):
            left, left_steps = self(t.left)
            right, right_steps = self(t.right)
            current = t.rebuild(left, right)
            steps = (
                *(s.under(Side.LEFT) for s in left_steps),
                *(s.under(Side.RIGHT) for s in right_steps),
            )

        out = current, steps
        for rule, guard in self.actions:
            if guard is not None and not guard(current):
                continue
            results = rule.rewrite(current, Direction.FORWARD)
            if results:
                normal, rest = self(results[0])
                out = normal, (*steps, ProofStep(ROOT, rule.name, Direction.FORWARD), *rest)
                break

        self._cache[t] = out
        return out


def normalize(
    t: Term, groups: Iterable[Group] = DEFAULT_GROUPS
) -> tuple[Term, tuple[ProofStep, ...]]:
    return Normalizer.for_groups(groups)(t)


def prune(t: Term) -> Term:
    """
    Remove wasteful subdescriptions: group I left to right, innermost, to a
    fixed point.
    """
    pruned, steps = Normalizer.from_names("I.1", "I.2", "I.3", "I.4")(t)
    logger.debug(f"Pruned with {len(steps)} step(s)")
    return pruned


def simplify(t: Term) -> Term:
    normal, steps = Normalizer.from_names(
        "II.1", "II.2", "II.4", "II.7", "I.1", "I.2", "I.3", "I.4"
    )(t)
    logger.debug(f"Simplified with {len(steps)} step(s)")
    return normal


def is_intelligent(t: Term) -> bool:
    """
    True when no group-I equation applies anywhere in ``t``.
    """
    rules = rules_for([Group.I])
    return not any(
        rule.rewrite(sub, Direction.FORWARD) for _, sub in positions(t) for rule in rules
    )


# search


class SearchTree:
    """
    One side of a search: every admitted normal form with the term and steps
    that first reached it.
    """

    def __init__(self, root: Term, normalizer: Normalizer) -> None:
        self.root = root
        self.normalizer = normalizer
        self.parents: dict[Term, tuple[Term, tuple[ProofStep, ...]] | None] = {root: None}
        normal, steps = normalizer(root)
        if normal != root:
            self.parents[normal] = (root, steps)
        self.frontier: list[Term] = [normal]

    def __contains__(self, t: Term) -> bool:
        return t in self.parents

    def __len__(self) -> int:
        return len(self.parents)

    def successors(self, x: Term, groups: Iterable[Group]) -> Iterator[tuple[Term, tuple]]:
        for rewrite in one_step_rewrites(x, groups):
            normal, steps = self.normalizer(rewrite.result)
            first = ProofStep(rewrite.position, rewrite.rule.name, rewrite.direction, rewrite.alt)
            yield normal, (first, *steps)

    def expand(self, groups: Iterable[Group], cap: int) -> Iterator[Term]:
        """
        Expand the current frontier by one level, yielding each newly admitted
        normal form. Terms larger than ``cap`` are skipped.
        """
        frontier, self.frontier = self.frontier, []
        for x in frontier:
            for y, steps in self.successors(x, groups):
                if y in self.parents or y.size > cap:
                    continue
                self.parents[y] = (x, steps)
                self.frontier.append(y)
                yield y

    def steps_to(self, t: Term) -> list[ProofStep]:
        chunks = []
        while (entry := self.parents[t]) is not None:
            t, steps = entry
            chunks.append(steps)
        return [step for chunk in reversed(chunks) for step in chunk]

    def proof_to(self, t: Term) -> Proof:
        return Proof(self.root, tuple(self.steps_to(t)), t)


@dataclass(frozen=True)
class Proved:
    proof: Proof
    states_explored: int


@dataclass(frozen=True)
class Refuted:
    witness: Values
    left: Values
    right: Values


@dataclass(frozen=True)
class Unknown:
    states_explored: int


EquivResult = Proved | Refuted | Unknown


def _join(t1: Term, t2: Term, a: SearchTree, b: SearchTree, meet: Term) -> Proof:
    there = a.steps_to(meet)
    _, back = reverse_steps(t2, b.steps_to(meet))
    return Proof(t1, tuple(there + back), t2)


def equiv(
    t1: Term,
    t2: Term,
    budget: int = DEFAULT_BUDGET,
    groups: Iterable[Group] = DEFAULT_GROUPS,
    seed: int = 0,
    limits: SearchLimits | None = None,
    samples: int = DEFAULT_SAMPLES,
    max_value: int = DEFAULT_MAX_VALUE,
) -> EquivResult:
    """
    Decide ``t1 ~ t2`` in the quotient by the enabled groups, up to a budget.

    Random testing runs first, and a distinguishing input refutes at once.
    Otherwise both terms are searched breadth first, always expanding the
    smaller frontier, until the searches meet (Proved), the budget of admitted
    terms runs out, or both searches are exhausted (Unknown).
    """
    if t1.signature != t2.signature:
        raise ArityMismatch(ROOT, t1.signature, t2.signature)
    groups = frozenset(groups)
    limits = dataclasses.replace(limits or SearchLimits(), budget=budget)

    verdict = ext_equal(t1, t2, samples=samples, max_value=max_value, seed=seed)
    if isinstance(verdict, NotEqual):
        logger.info(f"Refuted by input {verdict.witness}")
        return Refuted(verdict.witness, verdict.left, verdict.right)

    normalizer = Normalizer.for_groups(groups)
    a, b = SearchTree(t1, normalizer), SearchTree(t2, normalizer)
    for meet in a.parents:
        if meet in b:
            logger.info("Proved by normalization")
            return Proved(_join(t1, t2, a, b, meet), len(a) + len(b))

    cap = limits.size_cap(t1, t2)
    admitted = len(a) + len(b)
    while a.frontier or b.frontier:
        if a.frontier and (not b.frontier or len(a.frontier) <= len(b.frontier)):
            side, other = a, b
        else:
            side, other = b, a
        logger.debug(f"Expanding {len(side.frontier)} term(s), {admitted} admitted")
        for y in side.expand(groups, cap):
            admitted += 1
            if y in other:
                proof = _join(t1, t2, a, b, y)
                logger.info(f"Proved with {len(proof)} step(s), {admitted} admitted")
                return Proved(proof, admitted)
            if admitted >= limits.budget:
                logger.info(f"Unknown: budget of {limits.budget} terms exhausted")
                return Unknown(admitted)

    logger.info(f"Unknown: search exhausted after {admitted} terms")
    return Unknown(admitted)
