"""
Descriptions of primitive recursive functions: terms, their equations, a
bounded equivalence search and the recursion depth of descriptions.
"""

from pralg.complexity import grz_bound, min_rdepth, rdepth, theorem2_check
from pralg.errors import PralgError
from pralg.interp import evaluate, ext_equal
from pralg.prover import equiv, normalize, prune, replay, simplify
from pralg.surface import parse, print_term
from pralg.terms import Term, arity_of

__all__ = [
    "PralgError",
    "Term",
    "arity_of",
    "equiv",
    "evaluate",
    "ext_equal",
    "grz_bound",
    "min_rdepth",
    "normalize",
    "parse",
    "print_term",
    "prune",
    "rdepth",
    "replay",
    "simplify",
    "theorem2_check",
]
