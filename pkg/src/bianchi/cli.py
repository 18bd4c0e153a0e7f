"""Command-line interface.

    bianchi classify --m 33 [--max-roots N] [--max-weight-sq Q] [--json P] [--dot P]
    bianchi scan --from 1 --to 50 [--jobs J] [--out DIR]
    bianchi scan --list FILE [--jobs J] [--out DIR]
    bianchi tables --which m33_vectors|m33_completions|m17_vectors|m21_vectors

Exit codes: 0 on success, 1 on usage errors, 2 when a recomputed table
differs from the published one.
"""

from __future__ import annotations

import argparse
import json
import sys
from fractions import Fraction
from pathlib import Path

from . import pipeline
from .coxeter import export_dot
from .errors import BianchiError
from .vinberg import Budget


class _Parser(argparse.ArgumentParser):
    def error(self, message):  # usage errors exit 1, not argparse's 2
        self.print_usage(sys.stderr)
        print(f"{self.prog}: error: {message}", file=sys.stderr)
        raise SystemExit(1)


def _budget(args) -> Budget:
    default = Budget()
    max_roots = args.max_roots if args.max_roots else default.max_roots
    if args.max_weight_sq:
        try:
            cap = Fraction(args.max_weight_sq)
        except (ValueError, ZeroDivisionError):
            print(f"invalid --max-weight-sq: {args.max_weight_sq}", file=sys.stderr)
            raise SystemExit(1)
    else:
        cap = default.max_weight_sq
    return Budget(max_roots=max_roots, max_weight_sq=cap)


def _summary(v: pipeline.Verdict) -> str:
    parts = [
        f"m={v.m}",
        f"extended: {v.hat_status.describe()}",
        f"plain: {v.bi_status.describe()}",
        f"mirrors: {len(v.roots)}",
        f"run: {v.run_status}",
    ]
    if v.cusps is not None:
        parts.append(f"cusps: {v.cusps}")
    if v.certificate is not None:
        parts.append(f"certificate: {type(v.certificate).__name__}")
    return "  ".join(parts)


def _cmd_classify(args) -> int:
    v = pipeline.classify(args.m, _budget(args))
    print(_summary(v))
    for w in v.warnings:
        print(f"warning: {w}", file=sys.stderr)
    if args.json:
        Path(args.json).write_text(json.dumps(pipeline.to_json(v), indent=2) + "\n")
    if args.dot:
        if v.diagram is None:
            print("no diagram for this m; --dot skipped", file=sys.stderr)
        else:
            Path(args.dot).write_text(export_dot(v.diagram))
    return 0


def _cmd_scan(args) -> int:
    if args.list:
        values = [
            int(line.split()[0])
            for line in Path(args.list).read_text().splitlines()
            if line.strip() and not line.strip().startswith("#")
        ]
    elif args.start is not None and args.stop is not None:
        values = list(range(args.start, args.stop + 1))
    else:
        print("scan needs --from/--to or --list", file=sys.stderr)
        return 1
    verdicts, skipped = pipeline.scan(values, _budget(args), jobs=args.jobs)
    for m in skipped:
        print(f"warning: skipping m={m} (not square-free)", file=sys.stderr)
    out_dir = Path(args.out) if args.out else None
    if out_dir:
        out_dir.mkdir(parents=True, exist_ok=True)
    for v in verdicts:
        print(_summary(v))
        if out_dir:
            path = out_dir / f"m{v.m}.json"
            path.write_text(json.dumps(pipeline.to_json(v), indent=2) + "\n")
    return 0


def _cmd_tables(args) -> int:
    text, ok = pipeline.reproduce_table(args.which)
    print(text, end="")
    return 0 if ok else 2


def main(argv=None) -> int:
    parser = _Parser(prog="bianchi", description=__doc__,
                     formatter_class=argparse.RawDescriptionHelpFormatter)
    sub = parser.add_subparsers(dest="command", required=True)

    p_classify = sub.add_parser("classify", help="verdict for one m")
    p_classify.add_argument("--m", type=int, required=True)
    p_classify.add_argument("--max-roots", type=int, default=None)
    p_classify.add_argument("--max-weight-sq", type=str, default=None)
    p_classify.add_argument("--json", type=str, default=None)
    p_classify.add_argument("--dot", type=str, default=None)
    p_classify.set_defaults(func=_cmd_classify)

    p_scan = sub.add_parser("scan", help="verdicts for a range or list of m")
    p_scan.add_argument("--from", dest="start", type=int, default=None)
    p_scan.add_argument("--to", dest="stop", type=int, default=None)
    p_scan.add_argument("--list", type=str, default=None)
    p_scan.add_argument("--jobs", type=int, default=1)
    p_scan.add_argument("--out", type=str, default=None)
    p_scan.add_argument("--max-roots", type=int, default=None)
    p_scan.add_argument("--max-weight-sq", type=str, default=None)
    p_scan.set_defaults(func=_cmd_scan)

    p_tables = sub.add_parser("tables", help="recompute a published table")
    p_tables.add_argument("--which", required=True, choices=pipeline.TABLE_IDS)
    p_tables.set_defaults(func=_cmd_tables)

    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except BianchiError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    raise SystemExit(main())
