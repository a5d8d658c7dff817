"""
Text surface for description trees: the term DSL, JSON and Graphviz DOT.

``comp(f,g)`` reads "f then g", i.e. the function g . f, matching the child
order of the tree.
"""

from __future__ import annotations

import json
import re
from dataclasses import dataclass
from typing import Any

from pralg.errors import ParseError, SchemaError
from pralg.terms import (
    BoxTimes,
    Brack,
    CircT,
    Comp,
    Diag,
    Id,
    Leaf,
    MultiProj,
    Node,
    Null,
    Prod,
    Proj,
    Rec,
    Succ,
    Term,
    Twist,
    Zero,
)

GRAMMAR = """\
term := "z" | "n" | "s"
      | "pi[" INT "," INT "]" | "id[" INT "]" | "mpi[" INT ";" INT-LIST "]"
      | "diag[" INT "]" | "tw[" INT "," INT "]"
      | "comp(" term "," term ")" | "rec(" term "," term ")" | "br(" term "," term ")"
      | "prod(" term "," term ")" | "bprod(" term "," term ")" | "bcomp(" term "," term ")"
INT-LIST may be empty; whitespace is ignored.
"""

TOKEN = re.compile(
    r"(?P<int>\d+)|(?P<name>[a-z]+)|(?P<punct>[\[\](),;])|(?P<space>\s+)|(?P<bad>.)",
    re.DOTALL,
)

CONSTANTS: dict[str, type[Leaf]] = {"z": Zero, "n": Null, "s": Succ}
NODES: dict[str, type[Node]] = {
    cls.symbol: cls for cls in (Comp, Rec, Brack, Prod, BoxTimes, CircT)
}
PARAMETERS: dict[str, tuple[type[Leaf], tuple[str, ...]]] = {
    "pi": (Proj, ("k", "i")),
    "id": (Id, ("k",)),
    "diag": (Diag, ("k",)),
    "tw": (Twist, ("a", "b")),
    "mpi": (MultiProj, ("k", "xs")),
}

DOT_LABELS: dict[type[Node], str] = {
    Comp: "C",
    Rec: "R",
    Brack: "B",
    Prod: "x",
    BoxTimes: "[x]",
    CircT: "o2",
}


@dataclass(frozen=True)
class Token:
    kind: str
    text: str
    line: int
    column: int


def tokenize(src: str) -> list[Token]:
    tokens = []
    line, line_start = 1, 0
    for match in TOKEN.finditer(src):
        kind, text = match.lastgroup, match.group()
        column = match.start() - line_start + 1
        if kind == "bad":
            raise ParseError(f"unexpected character {text!r}", line, column)
        if kind == "space":
            newlines = text.count("\n")
            if newlines:
                line += newlines
                line_start = match.start() + text.rindex("\n") + 1
            continue
        tokens.append(Token(kind, text, line, column))
    return tokens


class _Parser:
    def __init__(self, src: str) -> None:
        self.tokens = tokenize(src)
        self.index = 0
        lines = src.split("\n")
        self.end = (len(lines), len(lines[-1]) + 1)

    def peek(self) -> Token | None:
        return self.tokens[self.index] if self.index < len(self.tokens) else None

    def fail(self, message: str) -> ParseError:
        token = self.peek()
        if token is None:
            return ParseError(f"{message}, found end of input", *self.end)
        return ParseError(f"{message}, found {token.text!r}", token.line, token.column)

    def take(self, kind: str, text: str | None = None) -> Token:
        token = self.peek()
        if token is None or token.kind != kind or (text is not None and token.text != text):
            raise self.fail(f"expected {text or kind}")
        self.index += 1
        return token

    def integer(self) -> int:
        return int(self.take("int").text)

    def term(self) -> Term:
        # open nodes, each with the children parsed so far
        frames: list[tuple[str, list[Term]]] = []
        while True:
            token = self.peek()
            if token is None or token.kind != "name":
                raise self.fail("expected a term")
            name = token.text
            if name in NODES:
                self.index += 1
                self.take("punct", "(")
                frames.append((name, []))
                continue
            if name in CONSTANTS:
                self.index += 1
                value: Term = CONSTANTS[name]()
            elif name in PARAMETERS:
                self.index += 1
                value = self.parameters(name)
            else:
                raise self.fail("expected a term")
            while frames:
                name, children = frames[-1]
                children.append(value)
                if len(children) == 1:
                    self.take("punct", ",")
                    break
                self.take("punct", ")")
                frames.pop()
                value = NODES[name](*children)
            else:
                return value

    def parameters(self, name: str) -> Term:
        cls, _ = PARAMETERS[name]
        self.take("punct", "[")
        if name == "mpi":
            k = self.integer()
            self.take("punct", ";")
            xs = []
            if self.peek() is not None and self.peek().kind == "int":
                xs.append(self.integer())
                while self.peek() is not None and self.peek().text == ",":
                    self.index += 1
                    xs.append(self.integer())
            self.take("punct", "]")
            return MultiProj(k, tuple(xs))
        values = [self.integer()]
        while self.peek() is not None and self.peek().text == ",":
            self.index += 1
            values.append(self.integer())
        self.take("punct", "]")
        expected = len(PARAMETERS[name][1])
        if len(values) != expected:
            raise self.fail(f"{name} takes {expected} integer(s)")
        return cls(*values)


def parse(src: str) -> Term:
    parser = _Parser(src)
    term = parser.term()
    if parser.peek() is not None:
        raise parser.fail("expected end of input")
    return term


def _leaf_text(t: Term) -> str:
    match t:
        case MultiProj(k, xs):
            return f"mpi[{k};{','.join(map(str, xs))}]"
        case Leaf() if t.symbol in CONSTANTS:
            return t.symbol
        case Leaf():
            _, names = PARAMETERS[t.symbol]
            return f"{t.symbol}[{','.join(str(getattr(t, name)) for name in names)}]"
    raise TypeError(f"not a term: {t!r}")


def print_term(t: Term) -> str:
    parts: list[str] = []
    stack: list[Term | str] = [t]
    while stack:
        item = stack.pop()
        if isinstance(item, str):
            parts.append(item)
        elif isinstance(item, Node):
            parts.append(f"{item.symbol}(")
            stack += [")", item.right, ",", item.left]
        else:
            parts.append(_leaf_text(item))
    return "".join(parts)


# JSON


def _leaf_dict(t: Term) -> dict[str, Any]:
    obj: dict[str, Any] = {"op": t.symbol}
    if t.symbol in CONSTANTS:
        return obj
    _, names = PARAMETERS[t.symbol]
    for name in names:
        value = getattr(t, name)
        obj[name] = list(value) if name == "xs" else value
    return obj


def to_dict(t: Term) -> dict[str, Any]:
    root: dict[str, Any] = {}
    stack = [(t, root)]
    while stack:
        current, obj = stack.pop()
        if isinstance(current, Node):
            obj.update(op=current.symbol, l={}, r={})
            stack += [(current.right, obj["r"]), (current.left, obj["l"])]
        else:
            obj.update(_leaf_dict(current))
    return root


def to_json(t: Term) -> str:
    return json.dumps(to_dict(t), separators=(",", ":"))


def _natural(obj: dict, name: str, path: str) -> int:
    if name not in obj:
        raise SchemaError(path, f"missing field {name!r}")
    value = obj[name]
    if not isinstance(value, int) or isinstance(value, bool) or value < 0:
        raise SchemaError(f"{path}.{name}", f"expected a non-negative integer, got {value!r}")
    return value


def _checked_op(obj: Any, path: str) -> str:
    if not isinstance(obj, dict):
        raise SchemaError(path, f"expected an object, got {type(obj).__name__}")
    op = obj.get("op")
    if not isinstance(op, str):
        raise SchemaError(f"{path}.op", f"expected an op name, got {op!r}")
    if op in CONSTANTS:
        allowed: tuple[str, ...] = ()
    elif op in PARAMETERS:
        allowed = PARAMETERS[op][1]
    elif op in NODES:
        allowed = ("l", "r")
    else:
        raise SchemaError(f"{path}.op", f"unknown op {op!r}")

    extra = sorted(set(obj) - {"op", *allowed})
    if extra:
        raise SchemaError(path, f"unexpected field(s) {', '.join(extra)} for op {op!r}")
    if op in NODES:
        for name in ("l", "r"):
            if name not in obj:
                raise SchemaError(path, f"missing field {name!r}")
    return op


def _leaf_from_dict(obj: dict, op: str, path: str) -> Term:
    if op in CONSTANTS:
        return CONSTANTS[op]()
    if op == "mpi":
        xs = obj.get("xs")
        if not isinstance(xs, list):
            raise SchemaError(f"{path}.xs", f"expected a list of indices, got {xs!r}")
        for i, x in enumerate(xs):
            if not isinstance(x, int) or isinstance(x, bool):
                raise SchemaError(f"{path}.xs[{i}]", f"expected an integer, got {x!r}")
        return MultiProj(_natural(obj, "k", path), tuple(xs))
    cls, names = PARAMETERS[op]
    return cls(*(_natural(obj, name, path) for name in names))


def from_dict(obj: Any, path: str = "$") -> Term:
    """
    Objects are validated in preorder, so the reported path is the first bad
    object reading left to right.
    """
    built: list[Term] = []
    # a node is pushed a second time, flagged, to be built from its children
    stack: list[tuple[Any, str, bool]] = [(obj, path, False)]
    while stack:
        current, where, children_built = stack.pop()
        if children_built:
            right = built.pop()
            left = built.pop()
            built.append(NODES[current["op"]](left, right))
            continue
        op = _checked_op(current, where)
        if op in NODES:
            stack += [
                (current, where, True),
                (current["r"], f"{where}.r", False),
                (current["l"], f"{where}.l", False),
            ]
        else:
            built.append(_leaf_from_dict(current, op, where))
    return built.pop()


def from_json(text: str) -> Term:
    try:
        obj = json.loads(text)
    except json.JSONDecodeError as exc:
        raise SchemaError("$", f"invalid JSON: {exc.msg} at line {exc.lineno}") from exc
    return from_dict(obj)


# DOT


def _dot_label(t: Term) -> str:
    head = DOT_LABELS[type(t)] if isinstance(t, Node) else _leaf_text(t)
    return f"{head} : {t.src} -> {t.dst}"


def _dot_shape(t: Term) -> str:
    if isinstance(t, Leaf):
        return "box"
    return "doublecircle" if t.is_macro else "circle"


def to_dot(t: Term) -> str:
    """
    Render a term as a rooted binary tree, children left to right. Nodes are
    numbered in preorder.
    """
    declarations, edges = [], []
    stack: list[tuple[Term, int | None]] = [(t, None)]
    counter = 0
    while stack:
        current, parent = stack.pop()
        ident = counter
        counter += 1
        declarations.append(
            f'  n{ident} [label="{_dot_label(current)}", shape={_dot_shape(current)}];'
        )
        if parent is not None:
            edges.append(f"  n{parent} -> n{ident};")
        if isinstance(current, Node):
            stack.append((current.right, ident))
            stack.append((current.left, ident))
    return "\n".join(["digraph term {", *declarations, *edges, "}"]) + "\n"
