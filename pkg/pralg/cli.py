"""
Command-line interface: ``python -m pralg <command> ...``.

Results go to stdout and are byte-stable for fixed flags; diagnostics go to
stderr through loguru. Exit codes: 0 success, 1 bad input, 2 refuted or
violated, 3 unknown, 64 usage.
"""

from __future__ import annotations

import argparse
import sys
from collections.abc import Callable, Sequence
from pathlib import Path
from typing import NoReturn

from loguru import logger

from pralg.complexity import grz_bound, min_rdepth, rdepth, scheme_profile, theorem2_check
from pralg.errors import PralgError
from pralg.interp import (
    DEFAULT_FUEL,
    DEFAULT_MAX_VALUE,
    DEFAULT_SAMPLES,
    NotEqual,
    evaluate,
    ext_equal,
)
from pralg.prover import DEFAULT_BUDGET, Proof, Proved, Refuted, equiv, prune, simplify
from pralg.rules import DEFAULT_GROUPS, catalog_frame, one_step_rewrites, parse_groups
from pralg.schemes import SCHEMES, get_scheme
from pralg.surface import GRAMMAR, from_json, parse, print_term, to_dot, to_json
from pralg.terms import Term

OK, DOMAIN_ERROR, REFUTED, UNKNOWN, USAGE = 0, 1, 2, 3, 64


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message: str) -> NoReturn:
        raise UsageError(f"{self.prog}: {message}")


def load_term(text: str) -> Term:
    """
    A term from JSON when the text starts with '{', from the surface syntax
    otherwise.
    """
    if text.lstrip().startswith("{"):
        return from_json(text)
    return parse(text)


def _read(path: str) -> str:
    try:
        return Path(path).read_text()
    except OSError as exc:
        raise UsageError(f"cannot read {path}: {exc.strerror}") from exc


def _term(args: argparse.Namespace) -> Term:
    if args.file is not None:
        return load_term(_read(args.file))
    return load_term(args.term)


def _operand(value: str) -> Term:
    """
    ``value`` names a file holding a term, or is a term itself.
    """
    if Path(value).is_file():
        return load_term(_read(value))
    return load_term(value)


def _naturals(text: str) -> tuple[int, ...]:
    try:
        values = tuple(int(v) for v in text.split(",") if v.strip())
    except ValueError as exc:
        raise UsageError(f"expected comma-separated naturals, got {text!r}") from exc
    if any(v < 0 for v in values):
        raise UsageError(f"expected comma-separated naturals, got {text!r}")
    return values


def _positive(text: str) -> int:
    try:
        value = int(text)
    except ValueError as exc:
        raise argparse.ArgumentTypeError(f"expected a positive integer, got {text!r}") from exc
    if value <= 0:
        raise argparse.ArgumentTypeError(f"expected a positive integer, got {text!r}")
    return value


def _out(line: str = "") -> None:
    sys.stdout.write(line + "\n")


# commands


def cmd_check(args: argparse.Namespace) -> int:
    _out(str(_term(args).signature))
    return OK


def cmd_eval(args: argparse.Namespace) -> int:
    result = evaluate(_term(args), _naturals(args.input), args.fuel)
    _out(",".join(map(str, result)))
    return OK


def cmd_print(args: argparse.Namespace) -> int:
    _out(print_term(_term(args)))
    return OK


def cmd_dot(args: argparse.Namespace) -> int:
    sys.stdout.write(to_dot(_term(args)))
    return OK


def cmd_json(args: argparse.Namespace) -> int:
    _out(to_json(_term(args)))
    return OK


def cmd_prune(args: argparse.Namespace) -> int:
    _out(print_term(prune(_term(args))))
    return OK


def cmd_simplify(args: argparse.Namespace) -> int:
    _out(print_term(simplify(_term(args))))
    return OK


def cmd_rewrite(args: argparse.Namespace) -> int:
    groups = parse_groups(args.groups) if args.groups else None
    if args.list:
        _out(catalog_frame(groups).to_markdown(index=False))
        return OK
    if args.term is None and args.file is None:
        raise UsageError("rewrite: give --list, --term or --file")
    for r in one_step_rewrites(_term(args), groups or DEFAULT_GROUPS):
        position = ",".join(str(int(p)) for p in r.position)
        _out(f"{r.rule.name}\t{r.direction.value}\t[{position}]\t{r.alt}\t{print_term(r.result)}")
    return OK


def cmd_equiv(args: argparse.Namespace) -> int:
    result = equiv(
        _operand(args.left),
        _operand(args.right),
        budget=args.budget,
        groups=parse_groups(args.groups),
        seed=args.seed,
    )
    match result:
        case Proved(proof, _):
            _out(proof.to_json())
            return OK
        case Refuted(witness, left, right):
            _out(f"refuted at ({','.join(map(str, witness))}): {left} != {right}")
            return REFUTED
    _out(f"unknown after {result.states_explored} terms")
    return UNKNOWN


def cmd_replay(args: argparse.Namespace) -> int:
    proof = Proof.from_json(_read(args.proof), _term(args))
    _out(print_term(proof.end))
    return OK


def cmd_rdepth(args: argparse.Namespace) -> int:
    t = _term(args)
    _out(str(rdepth(t)))
    if args.grz:
        _out(str(grz_bound(t)))
    return OK


def cmd_min_rdepth(args: argparse.Namespace) -> int:
    bound = min_rdepth(_term(args), budget=args.budget, groups=parse_groups(args.groups))
    _out(str(bound.bound))
    _out(print_term(bound.witness))
    return OK


def cmd_theorem2(args: argparse.Namespace) -> int:
    report = theorem2_check(args.trials, args.max_depth, args.seed)
    _out(report.to_frame().to_string())
    if report.counterexample is not None:
        v = report.counterexample
        _out(f"{v.rule} {v.direction.value}: {print_term(v.before)} => {print_term(v.after)}")
        return REFUTED
    return OK


def cmd_scheme(args: argparse.Namespace) -> int:
    _out(print_term(get_scheme(args.name).generate(args.n)))
    return OK


def cmd_profile(args: argparse.Namespace) -> int:
    profile = scheme_profile(
        get_scheme(args.name), args.max_n, minimize=args.minimize, budget=args.budget
    )
    sys.stdout.write(profile.to_csv())
    return OK


def cmd_exteq(args: argparse.Namespace) -> int:
    verdict = ext_equal(
        _operand(args.left),
        _operand(args.right),
        samples=args.samples,
        max_value=args.max_value,
        seed=args.seed,
    )
    if isinstance(verdict, NotEqual):
        witness = ",".join(map(str, verdict.witness))
        _out(f"not equal at ({witness}): {verdict.left} != {verdict.right}")
        return REFUTED
    _out(f"equal on {verdict.samples} inputs")
    return OK


# parser


def _term_source(p: argparse.ArgumentParser, required: bool = True) -> None:
    source = p.add_mutually_exclusive_group(required=required)
    source.add_argument("--term", help="term in surface syntax or JSON")
    source.add_argument("--file", help="file holding a term")


def _groups(p: argparse.ArgumentParser) -> None:
    p.add_argument(
        "--groups",
        default=",".join(sorted(DEFAULT_GROUPS)),
        help="comma-separated rule groups among I, II, III, Defn, Derived",
    )


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(
        prog="pralg",
        description="Descriptions of primitive recursive functions.",
        epilog=GRAMMAR,
        formatter_class=argparse.RawDescriptionHelpFormatter,
    )
    parser.add_argument("--verbose", action="store_true", help="log debug output to stderr")
    commands = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    def command(name: str, handler: Callable[[argparse.Namespace], int], text: str) -> _Parser:
        p = commands.add_parser(name, help=text, description=text)
        p.set_defaults(handler=handler)
        return p

    for name, handler, text in [
        ("check", cmd_check, "print the signature of a term"),
        ("print", cmd_print, "print a term in canonical surface syntax"),
        ("dot", cmd_dot, "render a term as a Graphviz digraph"),
        ("json", cmd_json, "print a term as JSON"),
        ("prune", cmd_prune, "normalize by the pruning equations"),
        ("simplify", cmd_simplify, "prune and drop identities, associating to the right"),
    ]:
        _term_source(command(name, handler, text))

    p = command("eval", cmd_eval, "evaluate a term on naturals")
    _term_source(p)
    p.add_argument("--input", default="", help="comma-separated naturals")
    p.add_argument("--fuel", type=_positive, default=DEFAULT_FUEL)

    p = command("rewrite", cmd_rewrite, "list the rule catalog or the one-step rewrites of a term")
    _term_source(p, required=False)
    p.add_argument("--list", action="store_true", help="print the rule catalog")
    p.add_argument("--groups", help="restrict to these comma-separated groups")

    p = command("equiv", cmd_equiv, "search for a proof that two terms are equivalent")
    p.add_argument("--left", required=True, help="term or file")
    p.add_argument("--right", required=True, help="term or file")
    p.add_argument("--budget", type=int, default=DEFAULT_BUDGET)
    p.add_argument("--seed", type=int, default=0)
    _groups(p)

    p = command("replay", cmd_replay, "check a proof and print the term it ends at")
    _term_source(p)
    p.add_argument("--proof", required=True, help="file holding a JSON proof")

    p = command("rdepth", cmd_rdepth, "print the recursion depth of a term")
    _term_source(p)
    p.add_argument("--grz", action="store_true", help="also print the Grzegorczyk class")

    p = command("min-rdepth", cmd_min_rdepth, "search equivalent terms for a lower Rdepth")
    _term_source(p)
    p.add_argument("--budget", type=int, default=DEFAULT_BUDGET)
    _groups(p)

    p = command("theorem2", cmd_theorem2, "check that the equations respect Rdepth")
    p.add_argument("--trials", type=int, default=1000)
    p.add_argument("--max-depth", type=int, default=7)
    p.add_argument("--seed", type=int, default=0)

    p = command("scheme", cmd_scheme, "print the term of a scheme at size n")
    p.add_argument("--name", required=True, choices=list(SCHEMES))
    p.add_argument("--n", type=int, required=True)

    p = command("profile", cmd_profile, "print the Rdepth profile of a scheme as CSV")
    p.add_argument("--name", required=True, choices=list(SCHEMES))
    p.add_argument("--max-n", type=int, required=True)
    p.add_argument("--minimize", action="store_true", help="use the min-rdepth bound")
    p.add_argument("--budget", type=int, default=DEFAULT_BUDGET)

    p = command("exteq", cmd_exteq, "compare two terms on random inputs")
    p.add_argument("--left", required=True, help="term or file")
    p.add_argument("--right", required=True, help="term or file")
    p.add_argument("--samples", type=int, default=DEFAULT_SAMPLES)
    p.add_argument("--max-value", type=int, default=DEFAULT_MAX_VALUE)
    p.add_argument("--seed", type=int, default=0)

    return parser


def main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
        logger.remove()
        logger.add(sys.stderr, level="DEBUG" if args.verbose else "WARNING")
        return args.handler(args)
    except UsageError as exc:
        sys.stderr.write(f"{exc}\n\n{GRAMMAR}")
        return USAGE
    except PralgError as exc:
        logger.error(str(exc))
        return DOMAIN_ERROR
    except RecursionError:
        logger.error("term is nested too deeply")
        return DOMAIN_ERROR
