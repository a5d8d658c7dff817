"""
Description trees for primitive recursive functions.

A term is an immutable, hash-consed tree. Leaves are the basic functions
(zero, null, successor, projections) and the macro leaves (multiple
projections, identities, diagonals, twists). Nodes are composition,
recursion and bracket plus the macro nodes (product, second-variable product
and second-variable composition).

Arities are the exponents of powers of N, so an arity is a plain ``int`` and
the product of arities adds them. Every constructor type-checks eagerly; an
ill-typed node can not be built.

``Comp(f, g)`` is stored in diagrammatic order: it means "f, then g", the
function ``g . f``.
"""

from __future__ import annotations

from collections.abc import Iterator, Sequence
from dataclasses import dataclass, field, fields
from enum import IntEnum
from functools import cache
from typing import ClassVar, NamedTuple

from pralg.errors import ArityMismatch, BadIndex, InvalidPosition


class Side(IntEnum):
    LEFT = 0
    RIGHT = 1


Position = tuple[int, ...]
ROOT: Position = ()


class Signature(NamedTuple):
    src: int
    dst: int

    def __str__(self) -> str:
        return f"{self.src} -> {self.dst}"


@cache
def _structural_fields(cls: type) -> tuple[str, ...]:
    return tuple(f.name for f in fields(cls) if f.init)


def _check_arity(*values: int) -> None:
    for value in values:
        if not isinstance(value, int) or value < 0:
            raise ArityMismatch(ROOT, "a non-negative arity", value)


def span(lo: int, hi: int) -> tuple[int, ...]:
    """
    The 1-based index block lo..hi (empty when hi < lo).
    """
    return tuple(range(lo, hi + 1))


@dataclass(frozen=True, eq=False)
class Term:
    src: int = field(init=False, repr=False)
    dst: int = field(init=False, repr=False)
    size: int = field(init=False, repr=False)
    _key: tuple = field(init=False, repr=False)
    _digest: int = field(init=False, repr=False)

    symbol: ClassVar[str] = ""
    is_macro: ClassVar[bool] = False

    def __post_init__(self) -> None:
        src, dst = self._signature()
        key = tuple(getattr(self, name) for name in _structural_fields(type(self)))
        object.__setattr__(self, "src", src)
        object.__setattr__(self, "dst", dst)
        object.__setattr__(self, "_key", key)
        object.__setattr__(self, "size", 1 + sum(c.size for c in self.children))
        object.__setattr__(self, "_digest", hash((self.symbol, *key)))

    def _signature(self) -> Signature:
        raise NotImplementedError

    @property
    def signature(self) -> Signature:
        return Signature(self.src, self.dst)

    @property
    def key(self) -> tuple:
        return self._key

    @property
    def children(self) -> tuple[Term, ...]:
        return ()

    def __eq__(self, other: object) -> bool:
        if self is other:
            return True
        if not isinstance(other, Term):
            return NotImplemented
        pending = [(self, other)]
        while pending:
            a, b = pending.pop()
            if a is b:
                continue
            if type(a) is not type(b) or a._digest != b._digest:
                return False
            if isinstance(a, Node):
                pending.extend(zip(a._key, b._key))
            elif a._key != b._key:
                return False
        return True

    def __hash__(self) -> int:
        return self._digest

    def __reduce__(self) -> tuple:
        # string hashes are salted per process, so the digest is recomputed on load
        return type(self), self._key

    def __str__(self) -> str:
        from pralg.surface import print_term

        return print_term(self)


@dataclass(frozen=True, eq=False)
class Leaf(Term):
    pass


@dataclass(frozen=True, eq=False)
class Node(Term):
    @property
    def children(self) -> tuple[Term, ...]:
        return self._key

    @property
    def left(self) -> Term:
        return self._key[0]

    @property
    def right(self) -> Term:
        return self._key[1]

    def rebuild(self, left: Term, right: Term) -> Term:
        if left is self._key[0] and right is self._key[1]:
            return self
        return type(self)(left, right)


# leaves


@dataclass(frozen=True, eq=False)
class Zero(Leaf):
    symbol: ClassVar[str] = "z"

    def _signature(self) -> Signature:
        return Signature(0, 1)


@dataclass(frozen=True, eq=False)
class Null(Leaf):
    symbol: ClassVar[str] = "n"

    def _signature(self) -> Signature:
        return Signature(1, 1)


@dataclass(frozen=True, eq=False)
class Succ(Leaf):
    symbol: ClassVar[str] = "s"

    def _signature(self) -> Signature:
        return Signature(1, 1)


@dataclass(frozen=True, eq=False)
class Proj(Leaf):
    k: int
    i: int

    symbol: ClassVar[str] = "pi"

    def _signature(self) -> Signature:
        _check_arity(self.k)
        if not 1 <= self.i <= self.k:
            raise BadIndex(ROOT, self.k, self.i)
        return Signature(self.k, 1)


@dataclass(frozen=True, eq=False)
class MultiProj(Leaf):
    """
    Outputs the inputs at positions ``xs`` in that order; with ``xs`` empty it
    is the unique map to the terminal arity 0.
    """

    k: int
    xs: tuple[int, ...]

    symbol: ClassVar[str] = "mpi"
    is_macro: ClassVar[bool] = True

    def __post_init__(self) -> None:
        object.__setattr__(self, "xs", tuple(self.xs))
        super().__post_init__()

    def _signature(self) -> Signature:
        _check_arity(self.k)
        for x in self.xs:
            if not 1 <= x <= self.k:
                raise BadIndex(ROOT, self.k, x)
        return Signature(self.k, len(self.xs))


@dataclass(frozen=True, eq=False)
class Id(Leaf):
    k: int

    symbol: ClassVar[str] = "id"
    is_macro: ClassVar[bool] = True

    def _signature(self) -> Signature:
        _check_arity(self.k)
        return Signature(self.k, self.k)


@dataclass(frozen=True, eq=False)
class Diag(Leaf):
    k: int

    symbol: ClassVar[str] = "diag"
    is_macro: ClassVar[bool] = True

    def _signature(self) -> Signature:
        _check_arity(self.k)
        return Signature(self.k, 2 * self.k)


@dataclass(frozen=True, eq=False)
class Twist(Leaf):
    a: int
    b: int

    symbol: ClassVar[str] = "tw"
    is_macro: ClassVar[bool] = True

    def _signature(self) -> Signature:
        _check_arity(self.a, self.b)
        return Signature(self.a + self.b, self.b + self.a)


# nodes


@dataclass(frozen=True, eq=False)
class Comp(Node):
    """
    ``f`` then ``g``.
    """

    f: Term
    g: Term

    symbol: ClassVar[str] = "comp"

    def _signature(self) -> Signature:
        if self.f.dst != self.g.src:
            raise ArityMismatch((Side.RIGHT,), self.f.dst, self.g.src)
        return Signature(self.f.src, self.g.dst)


@dataclass(frozen=True, eq=False)
class Rec(Node):
    """
    h(x, 0) = f(x), h(x, n + 1) = g(x, h(x, n)); the recursion variable is the
    last input.
    """

    f: Term
    g: Term

    symbol: ClassVar[str] = "rec"

    def _signature(self) -> Signature:
        a, b = self.f.signature
        if self.g.signature != (a + b, b):
            raise ArityMismatch((Side.RIGHT,), Signature(a + b, b), self.g.signature)
        return Signature(a + 1, b)


@dataclass(frozen=True, eq=False)
class Brack(Node):
    f: Term
    g: Term

    symbol: ClassVar[str] = "br"

    def _signature(self) -> Signature:
        if self.f.src != self.g.src:
            raise ArityMismatch((Side.RIGHT,), self.f.src, self.g.src)
        return Signature(self.f.src, self.f.dst + self.g.dst)


@dataclass(frozen=True, eq=False)
class Prod(Node):
    f: Term
    g: Term

    symbol: ClassVar[str] = "prod"
    is_macro: ClassVar[bool] = True

    def _signature(self) -> Signature:
        return Signature(self.f.src + self.g.src, self.f.dst + self.g.dst)


@dataclass(frozen=True, eq=False)
class BoxTimes(Node):
    """
    (g1 [x] g2)(a, b1, b2) = (g1(a, b1), g2(a, b2)).
    """

    g1: Term
    g2: Term

    symbol: ClassVar[str] = "bprod"
    is_macro: ClassVar[bool] = True

    def _signature(self) -> Signature:
        if self.g1.src < self.g1.dst:
            raise ArityMismatch((Side.LEFT,), f"source of at least {self.g1.dst}", self.g1.src)
        if self.g2.signature != self.g1.signature:
            raise ArityMismatch((Side.RIGHT,), self.g1.signature, self.g2.signature)
        return Signature(self.a + 2 * self.b, 2 * self.b)

    @property
    def a(self) -> int:
        return self.g1.src - self.g1.dst

    @property
    def b(self) -> int:
        return self.g1.dst


@dataclass(frozen=True, eq=False)
class CircT(Node):
    """
    (g1 o2 g2)(a, c) = g1(a, g2(a, c)), with g1: A x D -> B and g2: A x C -> D.
    """

    g1: Term
    g2: Term

    symbol: ClassVar[str] = "bcomp"
    is_macro: ClassVar[bool] = True

    def _signature(self) -> Signature:
        if self.a < 0:
            raise ArityMismatch((Side.LEFT,), f"source of at least {self.g2.dst}", self.g1.src)
        if self.c < 0:
            raise ArityMismatch((Side.RIGHT,), f"source of at least {self.a}", self.g2.src)
        return Signature(self.g2.src, self.g1.dst)

    @property
    def a(self) -> int:
        return self.g1.src - self.g2.dst

    @property
    def c(self) -> int:
        return self.g2.src - self.a


def arity_of(t: Term) -> Signature:
    return t.signature


# projection leaves


def proj_leaf(k: int, xs: Sequence[int]) -> Term:
    """
    The projection leaf onto ``xs``: a single ``Proj`` for one index, a
    ``MultiProj`` otherwise.
    """
    xs = tuple(xs)
    if len(xs) == 1:
        return Proj(k, xs[0])
    return MultiProj(k, xs)


def indices(t: Term) -> tuple[int, ...] | None:
    """
    The selected input positions if ``t`` is a projection leaf, else None.
    """
    match t:
        case Proj(_, i):
            return (i,)
        case MultiProj(_, xs):
            return xs
        case Id(k):
            return span(1, k)
    return None


def is_identity(t: Term) -> bool:
    return indices(t) == span(1, t.src)


def const(k: int, a: int = 0) -> Term:
    """
    The constant k as a map from N^a: successor applied k times after zero,
    preceded by the map to the terminal arity when a > 0.
    """
    _check_arity(k, a)
    term: Term = Zero()
    for _ in range(k):
        term = Comp(term, Succ())
    return Comp(MultiProj(a, ()), term)


# positions


def subterm(t: Term, position: Sequence[int]) -> Term:
    current = t
    for step in position:
        if not isinstance(current, Node) or step not in (Side.LEFT, Side.RIGHT):
            raise InvalidPosition(tuple(position))
        current = current.children[step]
    return current


def replace(t: Term, position: Sequence[int], s: Term) -> Term:
    position = tuple(position)
    old = subterm(t, position)
    if old.signature != s.signature:
        raise ArityMismatch(position, old.signature, s.signature)
    return _replace(t, position, s)


def _replace(t: Term, position: Position, s: Term) -> Term:
    if not position:
        return s
    left, right = t.children
    if position[0] == Side.LEFT:
        return t.rebuild(_replace(left, position[1:], s), right)
    return t.rebuild(left, _replace(right, position[1:], s))


def positions(t: Term) -> Iterator[tuple[Position, Term]]:
    """
    Every (position, subterm) pair in preorder, leftmost-outermost first.
    """
    stack: list[tuple[Position, Term]] = [(ROOT, t)]
    while stack:
        position, current = stack.pop()
        yield position, current
        if isinstance(current, Node):
            stack.append(((*position, Side.RIGHT), current.right))
            stack.append(((*position, Side.LEFT), current.left))


# macros


def unfold(t: Term) -> Term:
    """
    One level of definitional unfolding of a macro constructor. Core terms and
    the map to the terminal arity are returned unchanged.
    """
    match t:
        case Id(k):
            return MultiProj(k, span(1, k))
        case MultiProj(k, (x,)):
            return Proj(k, x)
        case MultiProj(k, xs) if len(xs) >= 2:
            return Brack(Proj(k, xs[0]), proj_leaf(k, xs[1:]))
        case Diag(k):
            return MultiProj(k, span(1, k) * 2)
        case Twist(a, b):
            return Brack(proj_leaf(a + b, span(a + 1, a + b)), proj_leaf(a + b, span(1, a)))
        case Prod(f, g):
            k = f.src + g.src
            return Brack(
                Comp(proj_leaf(k, span(1, f.src)), f),
                Comp(proj_leaf(k, span(f.src + 1, k)), g),
            )
        case BoxTimes(g1, g2):
            a, b = t.a, t.b
            k = a + 2 * b
            return Brack(
                Comp(proj_leaf(k, span(1, a + b)), g1),
                Comp(proj_leaf(k, span(1, a) + span(a + b + 1, k)), g2),
            )
        case CircT(g1, g2):
            return Comp(Brack(proj_leaf(g2.src, span(1, t.a)), g2), g1)
    return t


def expand_macros(t: Term) -> Term:
    """
    Rewrite every macro into zero, null, successor, projections, composition,
    recursion and bracket. ``MultiProj(k, ())`` has no core counterpart and is
    kept.
    """
    if isinstance(t, Node):
        t = t.rebuild(expand_macros(t.left), expand_macros(t.right))
    if not t.is_macro:
        return t
    unfolded = unfold(t)
    if unfolded is t:
        return t
    return expand_macros(unfolded)
