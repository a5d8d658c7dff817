"""
The equations between descriptions, as executable rewrites.

Each rule knows how to rewrite a subterm forward (left to right) and, where the
equation can be read the other way, backward. Matching is syntactic at the
macro level; the ``Defn`` rules bridge macros and their definitions.

Groups:

- ``I``: information-losing equations, used left to right only.
- ``II``: coherence equations; these preserve Rdepth.
- ``III``: recursion over a projection, disabled by default.
- ``Defn``: unfolding of macros.
- ``Derived``: consequences of the above, disabled by default.
"""

from __future__ import annotations

from collections.abc import Callable, Iterable, Iterator
from dataclasses import dataclass
from typing import NamedTuple

try:
    from enum import StrEnum
except ImportError:  # Python < 3.11
    from enum import Enum

    class StrEnum(str, Enum):
        __str__ = str.__str__
        __format__ = str.__format__

        @staticmethod
        def _generate_next_value_(name: str, start: int, count: int, last_values: list) -> str:
            return name.lower()

import pandas as pd

from pralg.errors import ArityMismatch, BadIndex, UnknownRule
from pralg.terms import (
    BoxTimes,
    Brack,
    CircT,
    Comp,
    Diag,
    Id,
    Leaf,
    MultiProj,
    Null,
    Position,
    Prod,
    Proj,
    Rec,
    Succ,
    Term,
    Twist,
    Zero,
    indices,
    is_identity,
    positions,
    proj_leaf,
    replace,
    span,
    unfold,
)


class Group(StrEnum):
    I = "I"  # noqa: E741
    II = "II"
    III = "III"
    DEFN = "Defn"
    DERIVED = "Derived"


class Direction(StrEnum):
    FORWARD = "fwd"
    BACKWARD = "bwd"

    @property
    def flipped(self) -> Direction:
        return Direction.BACKWARD if self is Direction.FORWARD else Direction.FORWARD


DEFAULT_GROUPS = frozenset({Group.I, Group.II, Group.DEFN})

Rewriter = Callable[[Term], list[Term]]


@dataclass(frozen=True)
class Rule:
    """
    ``backward`` is None when the equation can only be used left to right as a
    search move. When ``expansive`` is set the backward rewriter exists but
    would match almost every subterm, so it is only used to replay proofs.
    A derived rule is offered only when the groups it is derived from, listed
    in ``requires``, are enabled too.
    """

    name: str
    group: Group
    title: str
    lhs: str
    rhs: str
    forward: Rewriter
    backward: Rewriter | None = None
    expansive: bool = False
    requires: frozenset[Group] = frozenset()

    def rewrite(self, t: Term, direction: Direction) -> list[Term]:
        rewriter = self.forward if direction is Direction.FORWARD else self.backward
        if rewriter is None:
            return []
        try:
            candidates = rewriter(t)
        except (ArityMismatch, BadIndex):
            return []
        results: list[Term] = []
        for candidate in candidates:
            if candidate.signature == t.signature and candidate not in results:
                results.append(candidate)
        return results

    def searchable(self, direction: Direction) -> bool:
        if direction is Direction.FORWARD:
            return True
        return self.backward is not None and not self.expansive

    @property
    def directions(self) -> str:
        if self.backward is None:
            return "fwd"
        return "fwd, bwd (replay only)" if self.expansive else "fwd, bwd"


# helpers shared by several rules


def lifted_zero(a: int) -> Term:
    """
    Zero as a map from N^a: the map to the terminal arity, then zero.
    """
    return Comp(MultiProj(a, ()), Zero())


def lifted_succ(a: int) -> Term:
    """
    Successor of the last of a + 1 inputs.
    """
    return Comp(Proj(a + 1, a + 1), Succ())


def _is_lifted_zero(t: Term, a: int) -> bool:
    return t == lifted_zero(a) or (a == 0 and t == Zero())


def _is_lifted_succ(t: Term, a: int) -> bool:
    return t == lifted_succ(a) or (a == 0 and t == Succ())


def hexagon_lhs(a: int, b: int, c: int) -> list[Term]:
    return [Prod(Twist(a, b), Id(c)), Prod(Id(b), Twist(a, c)), Prod(Twist(b, c), Id(a))]


def hexagon_rhs(a: int, b: int, c: int) -> list[Term]:
    return [Prod(Id(a), Twist(b, c)), Prod(Twist(a, c), Id(b)), Prod(Id(c), Twist(a, b))]


def _chains(t: Term) -> Iterator[tuple[list[Term], Callable[[list[Term]], Term]]]:
    """
    Three-factor composition chains in either association, each with a function
    rebuilding a chain in the same association.
    """
    match t:
        case Comp(Comp(x, y), z):
            yield [x, y, z], lambda fs: Comp(Comp(fs[0], fs[1]), fs[2])
    match t:
        case Comp(x, Comp(y, z)):
            yield [x, y, z], lambda fs: Comp(fs[0], Comp(fs[1], fs[2]))


# group I


def _null_absorbs(t: Term) -> list[Term]:
    match t:
        case Comp(f, Null()) if f.src >= 1 and f != Proj(f.src, 1):
            return [Comp(Proj(f.src, 1), Null())]
    return []


def _bracket_first(t: Term) -> list[Term]:
    match t:
        case Comp(Brack(f, _), p) if indices(p) == span(1, f.dst):
            return [f]
    return []


def _bracket_second(t: Term) -> list[Term]:
    match t:
        case Comp(Brack(f, g), p) if indices(p) == span(f.dst + 1, f.dst + g.dst):
            return [g]
    return []


def _recursion_null(t: Term) -> list[Term]:
    match t:
        case CircT(Rec(f, _), z) if _is_lifted_zero(z, f.src):
            return [f]
    return []


# group II


def _comp_assoc_right(t: Term) -> list[Term]:
    match t:
        case Comp(Comp(f, g), h):
            return [Comp(f, Comp(g, h))]
    return []


def _comp_assoc_left(t: Term) -> list[Term]:
    match t:
        case Comp(f, Comp(g, h)):
            return [Comp(Comp(f, g), h)]
    return []


def _identity_elim(t: Term) -> list[Term]:
    match t:
        case Comp(f, g):
            return [x for p, x in ((f, g), (g, f)) if is_identity(p)]
    return []


def _identity_intro(t: Term) -> list[Term]:
    return [Comp(Id(t.src), t), Comp(t, Id(t.dst))]


def _distribute(t: Term) -> list[Term]:
    match t:
        case Comp(g, Brack(f1, f2)):
            return [Brack(Comp(g, f1), Comp(g, f2))]
    return []


def _factor(t: Term) -> list[Term]:
    match t:
        case Brack(Comp(g, f1), Comp(h, f2)) if g == h:
            return [Comp(g, Brack(f1, f2))]
    return []


def _brack_assoc_right(t: Term) -> list[Term]:
    match t:
        case Brack(Brack(f, g), h):
            return [Brack(f, Brack(g, h))]
    return []


def _brack_assoc_left(t: Term) -> list[Term]:
    match t:
        case Brack(f, Brack(g, h)):
            return [Brack(Brack(f, g), h)]
    return []


def _brack_swap(t: Term) -> list[Term]:
    match t:
        case Brack(f, g):
            return [Comp(Brack(g, f), Twist(g.dst, f.dst))]
    return []


def _brack_unswap(t: Term) -> list[Term]:
    match t:
        case Comp(Brack(g, f), Twist(a, b)) if a == g.dst and b == f.dst:
            return [Brack(f, g)]
    return []


def _diag_fold(t: Term) -> list[Term]:
    match t:
        case Brack(p, q) if is_identity(p) and is_identity(q):
            return [Diag(p.src)]
    return []


def _diag_unfold(t: Term) -> list[Term]:
    match t:
        case Diag(k):
            return [Brack(Id(k), Id(k))]
    return []


def _twist_cancel(t: Term) -> list[Term]:
    match t:
        case Comp(Twist(a, b), Twist(c, d)) if (c, d) == (b, a):
            return [Id(a + b)]
    return []


def _twist_split(t: Term) -> list[Term]:
    if not isinstance(t, Leaf) or not is_identity(t):
        return []
    k = t.src
    return [Comp(Twist(a, k - a), Twist(k - a, a)) for a in range(k + 1)]


def _hexagon(source: Callable[..., list[Term]], target: Callable[..., list[Term]]) -> Rewriter:
    def rewrite(t: Term) -> list[Term]:
        results = []
        for factors, rebuild in _chains(t):
            match factors[0]:
                case Prod(Twist(a, b), Id(c)) if source is hexagon_lhs:
                    pass
                case Prod(Id(a), Twist(b, c)) if source is hexagon_rhs:
                    pass
                case _:
                    continue
            if factors == source(a, b, c):
                results.append(rebuild(target(a, b, c)))
        return results

    return rewrite


def _rec_bracket_split(t: Term) -> list[Term]:
    match t:
        case Rec(Brack(f1, f2), BoxTimes(g1, g2)):
            return [Brack(Rec(f1, g1), Rec(f2, g2))]
    return []


def _rec_bracket_join(t: Term) -> list[Term]:
    match t:
        case Brack(Rec(f1, g1), Rec(f2, g2)):
            return [Rec(Brack(f1, f2), BoxTimes(g1, g2))]
    return []


def _unwind(t: Term) -> list[Term]:
    match t:
        case CircT(g1, Rec(f, CircT(g2, h))) if h == g1:
            return [Rec(CircT(g1, f), CircT(g1, g2))]
    return []


def _rewind(t: Term) -> list[Term]:
    match t:
        case Rec(CircT(g1, f), CircT(h, g2)) if h == g1:
            return [CircT(g1, Rec(f, CircT(g2, g1)))]
    return []


def _rec_succ_step(t: Term) -> list[Term]:
    match t:
        case CircT(Rec(f, g) as h, s) if _is_lifted_succ(s, f.src):
            return [CircT(g, h)]
    return []


def _rec_succ_unstep(t: Term) -> list[Term]:
    match t:
        case CircT(g, Rec(f, h) as r) if h == g:
            return [CircT(r, lifted_succ(f.src))]
    return []


# group III


def _rec_projection(t: Term) -> list[Term]:
    match t:
        case Rec(f, p) if indices(p) == span(f.src + 1, f.src + f.dst):
            return [Comp(proj_leaf(f.src + 1, span(1, f.src)), f)]
    return []


def _rec_projection_intro(t: Term) -> list[Term]:
    match t:
        case Comp(p, f) if p.src == f.src + 1 and indices(p) == span(1, f.src):
            k = f.src + f.dst
            return [Rec(f, proj_leaf(k, span(f.src + 1, k)))]
    return []


# Defn


def _unfolds(*types: type[Term]) -> Rewriter:
    def rewrite(t: Term) -> list[Term]:
        if not isinstance(t, types):
            return []
        unfolded = unfold(t)
        return [] if unfolded is t else [unfolded]

    return rewrite


def _fold_prod(t: Term) -> list[Term]:
    match t:
        case Brack(Comp(p, f), Comp(q, g)):
            k = f.src + g.src
            if p.src == k and indices(p) == span(1, f.src) and indices(q) == span(f.src + 1, k):
                return [Prod(f, g)]
    return []


def _fold_diag(t: Term) -> list[Term]:
    match t:
        case MultiProj(k, xs) if k >= 1 and xs == span(1, k) * 2:
            return [Diag(k)]
    return []


def _fold_twist(t: Term) -> list[Term]:
    match t:
        case Brack(p, q) if indices(p) is not None and indices(q) is not None:
            b, a = len(indices(p)), len(indices(q))
            k = p.src
            if a + b == k and indices(p) == span(a + 1, k) and indices(q) == span(1, a):
                return [Twist(a, b)]
    return []


def _fold_boxtimes(t: Term) -> list[Term]:
    match t:
        case Brack(Comp(p, g1), Comp(q, g2)):
            a, b = g1.src - g1.dst, g1.dst
            k = a + 2 * b
            if (
                a >= 0
                and p.src == k
                and indices(p) == span(1, a + b)
                and indices(q) == span(1, a) + span(a + b + 1, k)
            ):
                return [BoxTimes(g1, g2)]
    return []


def _fold_circt(t: Term) -> list[Term]:
    match t:
        case Comp(Brack(p, g2), g1) if indices(p) is not None:
            xs = indices(p)
            if xs == span(1, len(xs)):
                return [CircT(g1, g2)]
    return []


def _fold_multiproj(t: Term) -> list[Term]:
    match t:
        case Proj(k, i):
            return [MultiProj(k, (i,))]
        case MultiProj(k, xs) if k >= 1 and xs == span(1, k):
            return [Id(k)]
        case Brack(Proj(k, i), Proj(_, j)):
            return [MultiProj(k, (i, j))]
        case Brack(Proj(k, i), MultiProj(_, xs)) if len(xs) >= 2:
            return [MultiProj(k, (i, *xs))]
    return []


# Derived


def _interchange(t: Term) -> list[Term]:
    match t:
        case Comp(Prod(f1, g1), Prod(f2, g2)):
            return [Prod(Comp(f1, f2), Comp(g1, g2))]
    return []


def _interchange_back(t: Term) -> list[Term]:
    match t:
        case Prod(Comp(f1, f2), Comp(g1, g2)):
            return [Comp(Prod(f1, g1), Prod(f2, g2))]
    return []


def _prod_assoc_right(t: Term) -> list[Term]:
    match t:
        case Prod(Prod(f, g), h):
            return [Prod(f, Prod(g, h))]
    return []


def _prod_assoc_left(t: Term) -> list[Term]:
    match t:
        case Prod(f, Prod(g, h)):
            return [Prod(Prod(f, g), h)]
    return []


def _prod_identity(t: Term) -> list[Term]:
    match t:
        case Prod(Id(a), Id(b)):
            return [Id(a + b)]
    return []


def _prod_identity_split(t: Term) -> list[Term]:
    match t:
        case Id(k):
            return [Prod(Id(a), Id(k - a)) for a in range(1, k)]
    return []


# groups the interchange and product laws are derived from
_FROM_BASE = frozenset({Group.I, Group.II, Group.DEFN})

CATALOG: tuple[Rule, ...] = (
    Rule(
        "I.1", Group.I, "null absorbs its input",
        "comp(f, n)", "comp(pi[A,1], n)", _null_absorbs,
    ),
    Rule(
        "I.2", Group.I, "bracket then first projection",
        "comp(br(f, g), mpi[B+C; 1..B])", "f", _bracket_first,
    ),
    Rule(
        "I.3", Group.I, "bracket then second projection",
        "comp(br(f, g), mpi[B+C; B+1..B+C])", "g", _bracket_second,
    ),
    Rule(
        "I.4", Group.I, "recursion at zero",
        "bcomp(rec(f, g), comp(mpi[A;], z))", "f", _recursion_null,
    ),
    Rule(
        "II.1", Group.II, "composition is associative",
        "comp(comp(f, g), h)", "comp(f, comp(g, h))", _comp_assoc_right, _comp_assoc_left,
    ),
    Rule(
        "II.2", Group.II, "identities for composition",
        "comp(id[A], f) | comp(f, id[B])", "f", _identity_elim, _identity_intro,
        expansive=True,
    ),
    Rule(
        "II.3", Group.II, "composition distributes over the bracket on the right",
        "comp(g, br(f1, f2))", "br(comp(g, f1), comp(g, f2))", _distribute, _factor,
    ),
    Rule(
        "II.4", Group.II, "bracket is associative",
        "br(br(f, g), h)", "br(f, br(g, h))", _brack_assoc_right, _brack_assoc_left,
    ),
    Rule(
        "II.5", Group.II, "bracket commutes up to a twist",
        "br(f, g)", "comp(br(g, f), tw[C,B])", _brack_swap, _brack_unswap,
    ),
    Rule(
        "II.6", Group.II, "bracket of identities is the diagonal",
        "br(id[A], id[A])", "diag[A]", _diag_fold, _diag_unfold,
    ),
    Rule(
        "II.7", Group.II, "twist is idempotent",
        "comp(tw[A,B], tw[B,A])", "id[A+B]", _twist_cancel, _twist_split,
        expansive=True,
    ),
    Rule(
        "II.8", Group.II, "twists satisfy the hexagon",
        "comp(comp(prod(tw[A,B], id[C]), prod(id[B], tw[A,C])), prod(tw[B,C], id[A]))",
        "comp(comp(prod(id[A], tw[B,C]), prod(tw[A,C], id[B])), prod(id[C], tw[A,B]))",
        _hexagon(hexagon_lhs, hexagon_rhs), _hexagon(hexagon_rhs, hexagon_lhs),
    ),
    Rule(
        "II.9", Group.II, "recursion of a bracket",
        "rec(br(f1, f2), bprod(g1, g2))", "br(rec(f1, g1), rec(f2, g2))",
        _rec_bracket_split, _rec_bracket_join,
    ),
    Rule(
        "II.10", Group.II, "unwinding a recursive loop",
        "bcomp(g1, rec(f, bcomp(g2, g1)))", "rec(bcomp(g1, f), bcomp(g1, g2))",
        _unwind, _rewind,
    ),
    Rule(
        "II.11", Group.II, "recursion at a successor",
        "bcomp(rec(f, g), comp(pi[A+1,A+1], s))", "bcomp(g, rec(f, g))",
        _rec_succ_step, _rec_succ_unstep,
    ),
    Rule(
        "III.1", Group.III, "recursion over a projection",
        "rec(f, mpi[A+B; A+1..A+B])", "comp(mpi[A+1; 1..A], f)",
        _rec_projection, _rec_projection_intro,
    ),
    Rule(
        "Defn.Prod", Group.DEFN, "product",
        "prod(f, g)", "br(comp(mpi[A+C; 1..A], f), comp(mpi[A+C; A+1..A+C], g))",
        _unfolds(Prod), _fold_prod,
    ),
    Rule(
        "Defn.Diag", Group.DEFN, "diagonal",
        "diag[A]", "mpi[A; 1..A,1..A]", _unfolds(Diag), _fold_diag,
    ),
    Rule(
        "Defn.Twist", Group.DEFN, "twist",
        "tw[A,B]", "br(mpi[A+B; A+1..A+B], mpi[A+B; 1..A])", _unfolds(Twist), _fold_twist,
    ),
    Rule(
        "Defn.BoxTimes", Group.DEFN, "second-variable product",
        "bprod(g1, g2)",
        "br(comp(mpi[A+2B; 1..A+B], g1), comp(mpi[A+2B; 1..A,A+B+1..A+2B], g2))",
        _unfolds(BoxTimes), _fold_boxtimes,
    ),
    Rule(
        "Defn.CircT", Group.DEFN, "second-variable composition",
        "bcomp(g1, g2)", "comp(br(mpi[A+C; 1..A], g2), g1)", _unfolds(CircT), _fold_circt,
    ),
    Rule(
        "Defn.MultiProj", Group.DEFN, "multiple projection",
        "id[A] | mpi[A; x] | mpi[A; x,xs]", "mpi[A; 1..A] | pi[A,x] | br(pi[A,x], mpi[A; xs])",
        _unfolds(Id, MultiProj), _fold_multiproj,
    ),
    Rule(
        "D.1", Group.DERIVED, "interchange",
        "comp(prod(f1, g1), prod(f2, g2))", "prod(comp(f1, f2), comp(g1, g2))",
        _interchange, _interchange_back, requires=_FROM_BASE,
    ),
    Rule(
        "D.2", Group.DERIVED, "product is associative",
        "prod(prod(f, g), h)", "prod(f, prod(g, h))", _prod_assoc_right, _prod_assoc_left,
        requires=_FROM_BASE,
    ),
    Rule(
        "D.3", Group.DERIVED, "product of identities",
        "prod(id[A], id[B])", "id[A+B]", _prod_identity, _prod_identity_split,
        requires=frozenset({Group.II, Group.DEFN}),
    ),
)  # fmt: skip

RULES: dict[str, Rule] = {rule.name: rule for rule in CATALOG}


def get_rule(name: str) -> Rule:
    try:
        return RULES[name]
    except KeyError as exc:
        raise UnknownRule(name) from exc


def parse_groups(text: str | Iterable[str]) -> frozenset[Group]:
    """
    Groups from a comma-separated list such as ``"I,II,Defn"``.
    """
    names = text.split(",") if isinstance(text, str) else list(text)
    groups = set()
    for name in (n.strip() for n in names):
        if not name:
            continue
        try:
            groups.add(Group(name))
        except ValueError as exc:
            raise UnknownRule(name) from exc
    return frozenset(groups)


def rules_for(groups: Iterable[Group]) -> list[Rule]:
    groups = frozenset(groups)
    return [rule for rule in CATALOG if rule.group in groups and rule.requires <= groups]


def catalog_frame(groups: Iterable[Group] | None = None) -> pd.DataFrame:
    shown = frozenset(Group) if groups is None else frozenset(groups)
    rules = [rule for rule in CATALOG if rule.group in shown]
    return pd.DataFrame(
        [
            {
                "rule": rule.name,
                "group": rule.group.value,
                "title": rule.title,
                "lhs": rule.lhs,
                "rhs": rule.rhs,
                "directions": rule.directions,
            }
            for rule in rules
        ]
    )


class Rewrite(NamedTuple):
    rule: Rule
    position: Position
    direction: Direction
    alt: int
    result: Term


def one_step_rewrites(t: Term, groups: Iterable[Group]) -> list[Rewrite]:
    """
    Every single-step rewrite of ``t`` by the enabled rules: catalog order, then
    direction (forward first), then preorder position.
    """
    rules = rules_for(groups)
    subterms = list(positions(t))
    rewrites = []
    for rule in rules:
        for direction in Direction:
            if not rule.searchable(direction):
                continue
            for position, sub in subterms:
                for alt, result in enumerate(rule.rewrite(sub, direction)):
                    rewrites.append(
                        Rewrite(rule, position, direction, alt, replace(t, position, result))
                    )
    return rewrites
