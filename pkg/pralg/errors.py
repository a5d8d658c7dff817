"""
Exception hierarchy. Every domain failure is a ``PralgError`` so callers and the
CLI can tell bad input from programming errors.
"""

from __future__ import annotations

from typing import Any


class PralgError(ValueError):
    pass


class ArityMismatch(PralgError):
    def __init__(self, position: tuple[int, ...], expected: Any, found: Any) -> None:
        self.position = tuple(position)
        self.expected = expected
        self.found = found
        super().__init__(
            f"arity mismatch at {list(self.position)}: expected {expected}, found {found}"
        )


class BadIndex(PralgError):
    def __init__(self, position: tuple[int, ...], k: int, index: int) -> None:
        self.position = tuple(position)
        self.k = k
        self.index = index
        super().__init__(f"projection index {index} out of range 1..{k} at {list(self.position)}")


class InvalidPosition(PralgError):
    def __init__(self, position: tuple[int, ...]) -> None:
        self.position = tuple(position)
        super().__init__(f"position {list(self.position)} does not address a subterm")


class ParseError(PralgError):
    def __init__(self, message: str, line: int, column: int) -> None:
        self.message = message
        self.line = line
        self.column = column
        super().__init__(f"{line}:{column}: {message}")


class SchemaError(PralgError):
    def __init__(self, path: str, message: str) -> None:
        self.path = path
        self.message = message
        super().__init__(f"{path}: {message}")


class FuelExhausted(PralgError):
    def __init__(self, fuel: int, input: tuple[int, ...]) -> None:
        self.fuel = fuel
        self.input = tuple(input)
        super().__init__(f"fuel of {fuel} steps exhausted on input {self.input}")


class StepMismatch(PralgError):
    def __init__(self, index: int, step: Any) -> None:
        self.index = index
        self.step = step
        super().__init__(f"proof step {index} does not apply: {step}")


class UnknownRule(PralgError):
    def __init__(self, name: str) -> None:
        self.name = name
        super().__init__(f"unknown rule or group {name!r}")


class UnknownScheme(PralgError):
    def __init__(self, name: str) -> None:
        self.name = name
        super().__init__(f"unknown scheme {name!r}")


class InvalidSize(PralgError):
    def __init__(self, n: int, min_index: int) -> None:
        self.n = n
        self.min_index = min_index
        super().__init__(f"scheme size {n} is below the smallest index {min_index}")
