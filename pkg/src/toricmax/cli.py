"""Command-line interface: ``toricmax <command> ...``.

Exit status of ``check``: 0 when maximality is certified, 2 when the
sequence does not degenerate (undetermined), 1 on any error.
"""
from __future__ import annotations

import argparse
import json
import logging
import sys

from . import fan as fanmod
from .orbit_complex import build_orbit_complex
from .report import check_fan, emit_report, generate_corpus, report_to_json, write_corpus
from .spectral import FilteredComplexView, s_table

log = logging.getLogger("toricmax")

EXIT_OK, EXIT_ERROR, EXIT_UNDETERMINED = 0, 1, 2


def _write_fan(f: fanmod.Fan, out: str | None) -> None:
    text = fanmod.fan_to_json(f)
    if out:
        with open(out, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _cmd_check(args) -> int:
    report = check_fan(fanmod.load_fan(args.fan), args.max_r)
    if args.report:
        emit_report(report, args.report)
    else:
        sys.stdout.write(report_to_json(report))
    log.info("verdict: %s", report.verdict)
    return EXIT_OK if report.degenerate_at_one else EXIT_UNDETERMINED


def _cmd_builtin(args) -> int:
    params = {}
    if args.name == "projective":
        params["k"] = args.k
    elif args.name == "hirzebruch":
        params["a"] = args.a
    _write_fan(fanmod.builtin_fan(args.name, **params), args.out)
    return EXIT_OK


def _cmd_product(args) -> int:
    _write_fan(fanmod.product_fan(fanmod.load_fan(args.a), fanmod.load_fan(args.b)), args.out)
    return EXIT_OK


def _cmd_subdivide(args) -> int:
    _write_fan(fanmod.star_subdivision(fanmod.load_fan(args.fan), args.cone), args.out)
    return EXIT_OK


def _cmd_corpus(args) -> int:
    paths = write_corpus(generate_corpus(args.seed, args.count, args.dim), args.out_dir)
    log.info("wrote %d fans to %s", len(paths), args.out_dir)
    return EXIT_OK


def _cmd_s_conditions(args) -> int:
    view = FilteredComplexView(build_orbit_complex(fanmod.load_fan(args.fan)))
    table = s_table(view)
    doc = {"s_conditions": [[p, q, ok] for (p, q), ok in sorted(table.items())], "all": all(table.values())}
    sys.stdout.write(json.dumps(doc, sort_keys=True) + "\n")
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="toricmax", description="Mod-2 maximality checks for real toric varieties.")
    ap.add_argument("-v", "--verbose", action="store_true")
    sub = ap.add_subparsers(dest="command", required=True)

    p = sub.add_parser("check", help="run the full pipeline on a fan")
    p.add_argument("fan")
    p.add_argument("--report", help="write the JSON report here instead of stdout")
    p.add_argument("--max-r", type=int, default=None, help="last page to report (default n+2)")
    p.set_defaults(func=_cmd_check)

    p = sub.add_parser("builtin", help="emit a builtin fan")
    p.add_argument("--name", required=True, choices=["projective", "hirzebruch", "weighted_p112"])
    p.add_argument("--k", type=int, default=1)
    p.add_argument("--a", type=int, default=0)
    p.add_argument("--out")
    p.set_defaults(func=_cmd_builtin)

    p = sub.add_parser("product", help="product of two fans")
    p.add_argument("a")
    p.add_argument("b")
    p.add_argument("--out", required=True)
    p.set_defaults(func=_cmd_product)

    p = sub.add_parser("subdivide", help="star subdivision at a cone")
    p.add_argument("fan")
    p.add_argument("--cone", type=int, required=True)
    p.add_argument("--out", required=True)
    p.set_defaults(func=_cmd_subdivide)

    p = sub.add_parser("corpus", help="write a reproducible corpus of complete fans")
    p.add_argument("--seed", type=int, required=True)
    p.add_argument("--count", type=int, required=True)
    p.add_argument("--dim", type=int, required=True)
    p.add_argument("--out-dir", required=True)
    p.set_defaults(func=_cmd_corpus)

    p = sub.add_parser("s-conditions", help="tabulate the s_pq conditions")
    p.add_argument("fan")
    p.set_defaults(func=_cmd_s_conditions)
    return ap


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING, format="%(message)s")
    try:
        return args.func(args)
    except (ValueError, OSError, ArithmeticError, RuntimeError) as exc:
        print(f"toricmax: error: {exc}", file=sys.stderr)
        return EXIT_ERROR


if __name__ == "__main__":
    sys.exit(main())
