"""Command-line entry point: ``kodaira <subcommand> ...``.

Exit status: 0 on success with no violations, 1 if any verdict is
non-compliant, 2 on unreadable input or invalid arguments.
"""

from __future__ import annotations

import argparse
import json
import logging
import sys

from . import __version__
from .corpus import local_data_json, parse_corpus, report_json, run_scan
from .curve_core import (
    DomainError,
    WeierstrassModel,
    format_rational,
    quadratic_twist,
    squarefree_part,
    to_rational,
)
from .factor import FactorizationError
from .isogeny_catalog import catalog_as_json, lookup_ell_by_j
from .local_reduction import ClassificationError, local_data_all, tate_local_data
from .theorems import verdict

EXIT_OK, EXIT_VIOLATION, EXIT_FATAL = 0, 1, 2


def parse_ainvs(tokens: list[str]) -> WeierstrassModel:
    """Five coefficients, as separate tokens or one bracketed/comma list."""
    joined = " ".join(tokens).strip()
    if joined.startswith("[") and joined.endswith("]"):
        joined = joined[1:-1]
    parts = [x for x in joined.replace(",", " ").split() if x]
    if len(parts) not in (2, 5):
        raise DomainError(f"expected 5 a-invariants (or a4 a6), got {len(parts)}")
    return WeierstrassModel.from_ainvs(parts)


def _emit(obj) -> None:
    sys.stdout.write(json.dumps(obj, indent=2, ensure_ascii=False) + "\n")


def cmd_localdata(args) -> int:
    m = parse_ainvs(args.ainvs)
    if args.prime is not None:
        data = [tate_local_data(m, args.prime)]
    else:
        data = list(local_data_all(m).values())
    _emit({"a_invariants": m.ainvs_str(), "local_data": [local_data_json(d) for d in data]})
    return EXIT_OK


def cmd_twist(args) -> int:
    if args.reduce is not None:
        d = int(args.reduce)
        _emit({"d": d, "squarefree_part": squarefree_part(d)})
        return EXIT_OK
    if args.d is None:
        raise DomainError("twist needs --d D (squarefree) or --reduce D")
    m = parse_ainvs(args.ainvs)
    t = quadratic_twist(m, args.d)
    _emit({
        "d": args.d,
        "a_invariants": m.ainvs_str(),
        "twist": t.ainvs_str(),
        "j": format_rational(t.invariants.j),
    })
    return EXIT_OK


def cmd_classify(args) -> int:
    if args.dump_catalog:
        _emit(catalog_as_json())
        return EXIT_OK
    if args.j is not None:
        j = to_rational(args.j)
    elif args.ainvs:
        j = parse_ainvs(args.ainvs).invariants.j
    else:
        raise DomainError("classify needs a-invariants, --j J or --dump-catalog")
    _emit({"j": format_rational(j), "catalogued_ells": sorted(lookup_ell_by_j(j))})
    return EXIT_OK


def cmd_verify(args) -> int:
    m = parse_ainvs(args.ainvs)
    report = verdict(m, args.ell, args.id)
    _emit(report_json(report))
    return EXIT_VIOLATION if report.violations() else EXIT_OK


def cmd_scan(args) -> int:
    try:
        if args.file == "-":
            lines = sys.stdin.read().splitlines()
        else:
            with open(args.file, encoding="utf-8") as fh:
                lines = fh.read().splitlines()
    except (OSError, UnicodeDecodeError) as exc:
        print(f"kodaira: cannot read {args.file}: {exc}", file=sys.stderr)
        return EXIT_FATAL
    report = run_scan(parse_corpus(lines), jobs=args.jobs, timestamps=args.timestamps)
    text = report.dumps() if args.format == "json" else report.dumps_tsv()
    if args.output:
        try:
            with open(args.output, "w", encoding="utf-8") as fh:
                fh.write(text)
        except OSError as exc:
            print(f"kodaira: cannot write {args.output}: {exc}", file=sys.stderr)
            return EXIT_FATAL
    else:
        sys.stdout.write(text)
    return report.exit_code


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="kodaira", description=__doc__.splitlines()[0])
    ap.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    ap.add_argument("-v", "--verbose", action="store_true", help="debug logging on stderr")
    sub = ap.add_subparsers(dest="command", required=True)

    ainvs_help = "a1 a2 a3 a4 a6 as exact rationals (use -- before negative values)"

    p = sub.add_parser("localdata", help="Tate's algorithm at one prime or at every bad prime")
    p.add_argument("--prime", "-p", type=int, help="prime (default: all bad primes)")
    p.add_argument("ainvs", nargs="+", help=ainvs_help)
    p.set_defaults(func=cmd_localdata)

    p = sub.add_parser("twist", help="quadratic twist by a squarefree d")
    p.add_argument("--d", type=int, help="squarefree twist parameter")
    p.add_argument("--reduce", metavar="D", help="print the squarefree part of D and exit")
    p.add_argument("ainvs", nargs="*", help=ainvs_help)
    p.set_defaults(func=cmd_twist)

    p = sub.add_parser("classify", help="catalogued isogeny degrees of a j-invariant")
    p.add_argument("--dump-catalog", action="store_true", help="print the j-catalog as JSON")
    p.add_argument("--j", help="j-invariant instead of a model")
    p.add_argument("ainvs", nargs="*", help=ainvs_help)
    p.set_defaults(func=cmd_classify)

    p = sub.add_parser("verify", help="check one curve against the admissible-type rules")
    p.add_argument("--ell", type=int, help="asserted isogeny degree (prime > 3)")
    p.add_argument("--id", default="", help="label to carry into the report")
    p.add_argument("ainvs", nargs="+", help=ainvs_help)
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("scan", help="batch-verify a JSON-lines or TSV corpus")
    p.add_argument("file", nargs="?", default="-", help="input path, or - for stdin")
    p.add_argument("--jobs", "-j", type=int, default=1)
    p.add_argument("--format", choices=("json", "tsv"), default="json")
    p.add_argument("--timestamps", action="store_true", help="add a generation time to the report")
    p.add_argument("--output", "-o", help="write the report here instead of stdout")
    p.set_defaults(func=cmd_scan)
    return ap


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    logging.basicConfig(level=logging.DEBUG if args.verbose else logging.WARNING,
                        format="%(levelname)s %(name)s: %(message)s")
    if getattr(args, "jobs", 1) < 1:
        print("kodaira: --jobs must be >= 1", file=sys.stderr)
        return EXIT_FATAL
    try:
        return args.func(args)
    except (DomainError, ClassificationError, FactorizationError, ValueError, ZeroDivisionError) as exc:
        print(f"kodaira: {exc}", file=sys.stderr)
        return EXIT_FATAL


if __name__ == "__main__":
    sys.exit(main())
