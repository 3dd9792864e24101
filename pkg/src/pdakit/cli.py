"""Command-line interface.

Exit codes: 0 success, 1 parse/validation failure (and non-accepting
``run``), 2 domain errors, 64 usage errors.
"""
from __future__ import annotations

import argparse
import os
import sys

from .core import PdaError, ValidationError, classify
from .fileformat import ParseError, parse, serialize
from .search import (
    DEFAULT_CEILING, BadBounds, SearchBounds, search_acceptors,
)
from .simulator import Verdict, enumerate_language, run
from .transforms import to_realtime
from .witnesses import BadSpec, Family, WitnessSpec, build, witness_language

EXIT_INVALID = 1
EXIT_DOMAIN = 2
EXIT_USAGE = 64

BUDGET_ENV = "PDA_EPSILON_BUDGET"


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


def _load(path):
    try:
        with open(path, encoding="utf-8") as fh:
            return parse(fh.read())
    except OSError as exc:
        raise UsageError(f"cannot read {path}: {exc.strerror}") from exc


def _budget(args):
    if args.budget is not None:
        return args.budget
    env = os.environ.get(BUDGET_ENV)
    if env:
        try:
            return int(env)
        except ValueError as exc:
            raise UsageError(f"{BUDGET_ENV} must be an integer, got {env!r}") from exc
    return None


def cmd_validate(args, out):
    m = _load(args.file)
    out.write("valid\n")
    out.write(classify(m).to_text())
    return 0


def cmd_classify(args, out):
    out.write(classify(_load(args.file)).to_text())
    return 0


def cmd_run(args, out):
    m = _load(args.file)
    word = "" if args.input == "eps" else args.input
    outcome = run(m, word, _budget(args))
    if args.trace:
        for c in outcome.trace:
            out.write(c.render() + "\n")
    out.write(outcome.verdict.value + "\n")
    return 0 if outcome.verdict is Verdict.ACCEPTED else 1


def cmd_enumerate(args, out):
    m = _load(args.file)
    sample = enumerate_language(m, args.max_len, _budget(args))
    for s in sample.sorted_strings():
        out.write((s or "eps") + "\n")
    if sample.diverged:
        out.write("# diverged:\n")
        sep = "" if sample.single_char else " "
        for w in sorted(sample.diverged, key=lambda w: (len(w), w)):
            out.write((sep.join(w) or "eps") + "\n")
    return 0


def cmd_realtime(args, out):
    m = _load(args.file)
    result, log = to_realtime(m)
    text = serialize(result)
    if args.output:
        with open(args.output, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        out.write(text)
    sys.stderr.write(log.summary())
    return 0


def _spec(args):
    return WitnessSpec(Family(args.family), n=args.n, m=args.m, c=args.c)


def cmd_witness(args, out):
    spec = _spec(args)
    if args.language:
        for s in sorted(witness_language(spec), key=lambda w: (len(w), w)):
            out.write((s or "eps") + "\n")
    else:
        out.write(serialize(build(spec)))
    return 0


def cmd_search(args, out):
    family = Family(args.target_family)
    if family is Family.EXAMPLE:
        family = Family.MSTATE
    target = witness_language(WitnessSpec(family, n=args.n, m=args.m, c=args.c))
    bounds = SearchBounds(
        max_pushdown_symbols=args.gamma,
        max_push_length=args.max_push,
        max_initial_length=args.max_alpha,
        length_bound=args.max_len,
        max_states=args.states,
    )
    ceiling = args.ceiling
    if ceiling is None and args.states > 1:
        ceiling = DEFAULT_CEILING
    report = search_acceptors(target, bounds, ceiling=ceiling)
    out.write(report.to_text())
    return 0


def build_parser():
    p = _Parser(prog="pdakit", description="Pushdown automata toolkit.")
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    s = sub.add_parser("validate", help="check a .pda file and print its class report")
    s.add_argument("file")
    s.set_defaults(func=cmd_validate)

    s = sub.add_parser("classify", help="print the class report of a .pda file")
    s.add_argument("file")
    s.set_defaults(func=cmd_classify)

    s = sub.add_parser("run", help="run a deterministic machine on one input")
    s.add_argument("file")
    s.add_argument("--input", required=True)
    s.add_argument("--budget", type=int)
    s.add_argument("--trace", action="store_true",
                   help="print each configuration as 'state | stack | remaining' (top rightmost)")
    s.set_defaults(func=cmd_run)

    s = sub.add_parser("enumerate", help="list accepted strings up to a length, shortlex")
    s.add_argument("file")
    s.add_argument("--max-len", type=int, required=True)
    s.add_argument("--budget", type=int)
    s.set_defaults(func=cmd_enumerate)

    s = sub.add_parser("realtime", help="remove ε-moves from a stateless deterministic machine")
    s.add_argument("file")
    s.add_argument("-o", "--output")
    s.set_defaults(func=cmd_realtime)

    families = [f.value for f in Family]
    s = sub.add_parser("witness", help="print a witness machine or its language")
    s.add_argument("--family", required=True, choices=families)
    s.add_argument("-m", type=int)
    s.add_argument("-n", type=int)
    s.add_argument("-c", type=int)
    s.add_argument("--language", action="store_true")
    s.set_defaults(func=cmd_witness)

    s = sub.add_parser("search", help="exhaustively search a bounded machine space")
    s.add_argument("--target-family", required=True, choices=families)
    s.add_argument("-m", type=int)
    s.add_argument("-n", type=int)
    s.add_argument("-c", type=int)
    s.add_argument("--gamma", type=int, required=True)
    s.add_argument("--max-push", type=int, required=True)
    s.add_argument("--max-alpha", type=int, required=True)
    s.add_argument("--max-len", type=int, required=True)
    s.add_argument("--states", type=int, default=1)
    s.add_argument("--ceiling", type=int)
    s.set_defaults(func=cmd_search)
    return p


def main(argv=None, out=None) -> int:
    out = out if out is not None else sys.stdout
    args = build_parser().parse_args(argv)
    try:
        return args.func(args, out)
    except (UsageError, ValueError) as exc:
        sys.stderr.write(f"pdakit: {exc}\n")
        return EXIT_USAGE
    except (ParseError, ValidationError) as exc:
        sys.stderr.write(f"pdakit: invalid machine: {exc}\n")
        return EXIT_INVALID
    except (BadSpec, BadBounds) as exc:
        sys.stderr.write(f"pdakit: {exc}\n")
        return EXIT_USAGE
    except PdaError as exc:
        # EpsilonLanguage, SpaceTooLarge, NotDeterministic, NotStateless
        sys.stderr.write(f"pdakit: {exc}\n")
        return EXIT_DOMAIN


if __name__ == "__main__":
    sys.exit(main())
