"""Command-line driver: ``tanglegrams <verb> [options] [FILE]``.

Exit codes::

    0  success
    2  usage error (argparse)
    3  unreadable or malformed input
    4  inconsistent multideck (no tanglegram of the covered kind has it)
    5  verification failure: multideck collision in scope, or a failed round trip
    6  ambiguous multideck (several tanglegrams share it)
"""

from __future__ import annotations

import argparse
import sys
from typing import Sequence, TextIO

from .enumeration import DEFAULT_CEILING, enumerate_caterpillar_tanglegrams, enumerate_tanglegrams
from .reconstruction import (
    AmbiguousMultideck,
    InconsistentMultideck,
    reconstruct,
    roundtrip_report,
    verify_multideck_uniqueness,
)
from .tanglegram import tanglegram_multideck
from .textio import ParseError, format_multideck, format_tanglegram, parse_multideck, parse_tanglegram
from .trees import parse_newick, to_newick

EXIT_OK = 0
EXIT_PARSE = 3
EXIT_INCONSISTENT = 4
EXIT_VERIFY = 5
EXIT_AMBIGUOUS = 6


class _InputError(Exception):
    pass


def _read(path: str | None) -> str:
    if path is None or path == "-":
        return sys.stdin.read()
    try:
        with open(path, encoding="utf-8") as fh:
            return fh.read()
    except OSError as exc:
        raise _InputError(f"cannot read {path}: {exc.strerror}") from exc


def _content(text: str) -> list[str]:
    return [ln.strip() for ln in text.splitlines() if ln.strip() and not ln.lstrip().startswith("#")]


def _single_tanglegram(text: str):
    lines = _content(text)
    if len(lines) != 1:
        raise ParseError(f"expected exactly one tanglegram line, got {len(lines)}")
    return parse_tanglegram(lines[0])


def _cmd_canon(args, out: TextIO) -> int:
    for line in _content(_read(args.input)):
        if "|" in line:
            print(format_tanglegram(parse_tanglegram(line), args.format), file=out)
        else:
            try:
                tree = parse_newick(line)
            except ValueError as exc:
                raise ParseError(str(exc)) from exc
            print(to_newick(tree), file=out)
    return EXIT_OK


def _cmd_multideck(args, out: TextIO) -> int:
    t = _single_tanglegram(_read(args.input))
    out.write(format_multideck(tanglegram_multideck(t), args.format))
    return EXIT_OK


def _cmd_deck(args, out: TextIO) -> int:
    t = _single_tanglegram(_read(args.input))
    d = tanglegram_multideck(t)
    print(f"n={t.size}", file=out)
    for card in d.cards():
        print(format_tanglegram(card, args.format), file=out)
    return EXIT_OK


def _cmd_reconstruct(args, out: TextIO) -> int:
    d = parse_multideck(_read(args.input))
    res = reconstruct(d)
    print(format_tanglegram(res.tanglegram, args.format), file=out)
    print(f"method={res.method.value}", file=out)
    return EXIT_OK


def _cmd_enumerate(args, out: TextIO) -> int:
    if args.caterpillar_only:
        items = enumerate_caterpillar_tanglegrams(args.size, ceiling=args.ceiling)
    else:
        items = enumerate_tanglegrams(args.size, ceiling=args.ceiling, workers=args.workers)
    for t in items:
        print(format_tanglegram(t, args.format), file=out)
    print(len(items), file=out)
    return EXIT_OK


def _cmd_verify(args, out: TextIO) -> int:
    report = verify_multideck_uniqueness(
        args.size, args.caterpillar_only, use_decks=args.deck_variant, ceiling=args.ceiling
    )
    scope = "caterpillar" if args.caterpillar_only else "all"
    print(f"n={report.n} variant={report.variant} scope={scope} checked={report.checked} "
          f"collisions={len(report.collisions)}", file=out)
    for group in report.collisions:
        print("collision:", file=out)
        for t in group:
            print(f"  {format_tanglegram(t, args.format)}", file=out)
    # deck collisions and out-of-scope sizes are data, not failures
    in_scope = report.variant == "multideck" and args.caterpillar_only and args.size >= 5
    return EXIT_VERIFY if in_scope and report.collisions else EXIT_OK


def _cmd_roundtrip(args, out: TextIO) -> int:
    report = roundtrip_report(
        args.size, check_oracle=not args.no_oracle, ceiling=args.ceiling, workers=args.workers
    )
    print(f"n={report.n} total={report.total} recovered={report.recovered} "
          f"failures={len(report.failures)}", file=out)
    if report.oracle_checked:
        print(f"oracle agreement={report.oracle_agreements}/{report.oracle_checked}", file=out)
    for method in sorted(report.methods, key=lambda m: m.value):
        print(f"method {method.value}={report.methods[method]}", file=out)
    for t, why in report.failures:
        print(f"FAIL {format_tanglegram(t, args.format)} :: {why}", file=out)
    print("PASS" if report.ok else "FAIL", file=out)
    return EXIT_OK if report.ok else EXIT_VERIFY


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="tanglegrams",
        description="Canonical forms, (multi)decks, enumeration and reconstruction of tanglegrams.",
    )
    sub = parser.add_subparsers(dest="verb", required=True, metavar="VERB")

    def add(name: str, func, help: str, *, reads: bool = False, sized: bool = False):
        p = sub.add_parser(name, help=help)
        if reads:
            p.add_argument("input", nargs="?", help="input file (default: standard input)")
        if sized:
            p.add_argument("--size", "-n", type=int, required=True, metavar="N")
            p.add_argument("--ceiling", type=int, default=None, metavar="N",
                           help=f"raise the enumeration ceiling (default {DEFAULT_CEILING})")
        p.add_argument("--format", choices=("perm", "labels"), default="perm",
                       help="tanglegram output format (default: perm)")
        p.set_defaults(func=func)
        return p

    add("canon", _cmd_canon, "re-emit trees or tanglegrams in canonical form", reads=True)
    add("deck", _cmd_deck, "distinct cards of a tanglegram", reads=True)
    add("multideck", _cmd_multideck, "cards of a tanglegram with multiplicities", reads=True)
    add("reconstruct", _cmd_reconstruct, "recover a tanglegram from a multideck file", reads=True)

    p = add("enumerate", _cmd_enumerate, "list all tanglegrams of a size", sized=True)
    p.add_argument("--caterpillar-only", action="store_true")
    p.add_argument("--workers", type=int, default=None)

    p = add("verify", _cmd_verify, "report tanglegrams sharing a multideck", sized=True)
    p.add_argument("--caterpillar-only", action="store_true")
    p.add_argument("--deck-variant", action="store_true", help="compare decks instead of multidecks")

    p = add("roundtrip", _cmd_roundtrip, "reconstruct every caterpillar tanglegram of a size", sized=True)
    p.add_argument("--no-oracle", action="store_true", help="skip the exhaustive oracle comparison")
    p.add_argument("--workers", type=int, default=None)
    return parser


def main(argv: Sequence[str] | None = None, out: TextIO | None = None) -> int:
    args = build_parser().parse_args(argv)
    out = sys.stdout if out is None else out
    try:
        return args.func(args, out)
    except (_InputError, ParseError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_PARSE
    except AmbiguousMultideck as exc:
        print(f"ambiguous: {exc}", file=sys.stderr)
        for t in exc.candidates:
            print(f"  {format_tanglegram(t, args.format)}", file=sys.stderr)
        return EXIT_AMBIGUOUS
    except ValueError as exc:
        # InconsistentMultideck, sizes outside a procedure's range, ceilings
        label = "inconsistent" if isinstance(exc, InconsistentMultideck) else "error"
        print(f"{label}: {exc}", file=sys.stderr)
        return EXIT_INCONSISTENT


if __name__ == "__main__":
    sys.exit(main())
