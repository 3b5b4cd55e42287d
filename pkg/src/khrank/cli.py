"""Command-line front end.

Thin client over the service handlers: every command builds a request
model, calls the handler in process, and prints either aligned text or
sorted JSON. Exit codes: 0 success or all checks pass, 1 a table check
failed, 2 usage or parse error.
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path
from typing import List, Optional, Sequence

from .classify import CheckRecord, TableReport
from .service import (AlexRequest, BurauRequest, ClassifyRequest, KhRequest,
                      VerifyRequest, alex_report, burau_report,
                      classify_report, kh_report, verify_report)

__all__ = ["main"]


def _build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--json", action="store_true", dest="as_json",
                        help="emit a JSON report instead of text")
    common.add_argument("--max-crossings", type=int, default=None,
                        metavar="N",
                        help="crossing cap (default 14, or "
                             "KHRANK_MAX_CROSSINGS)")
    common.add_argument("--jobs", type=int, default=None, metavar="N",
                        help="worker processes for verify-table "
                             "(default: processor count)")

    parser = argparse.ArgumentParser(
        prog="khrank",
        description="Khovanov rank reports, Burau matrices, Alexander "
                    "polynomials, and link-table verification")
    sub = parser.add_subparsers(dest="command", required=True)

    kh = sub.add_parser("kh", parents=[common],
                        help="rank report for a link")
    kh.add_argument("link", help="pd:, braid:, axis:, or name: spec")
    kh.add_argument("--reduced", action="store_true",
                    help="include the reduced bigraded table")
    kh.add_argument("--mirror", action="store_true",
                    help="mirror the diagram first")

    burau = sub.add_parser("burau", parents=[common],
                           help="reduced Burau matrix of a braid word")
    burau.add_argument("braid", help="braid word, e.g. 3:1 -2 1 -2")

    alex = sub.add_parser("alex", parents=[common],
                          help="axis-link Alexander polynomial report")
    alex.add_argument("braid", help="braid word with connected closure")

    classify = sub.add_parser("classify", parents=[common],
                              help="rank-based identification over the "
                                   "builtin table")
    classify.add_argument("link", help="pd:, braid:, axis:, or name: spec")

    verify = sub.add_parser("verify-table", parents=[common],
                            help="run every consistency check over a table")
    verify.add_argument("table", nargs="?", default=None,
                        help="table file, one JSON entry per line")
    verify.add_argument("--builtin", action="store_true",
                        help="use the shipped table")
    return parser


def _print_json(obj: object) -> None:
    print(json.dumps(obj, sort_keys=True, indent=2))


def _aligned(rows: List[List[str]]) -> List[str]:
    widths = [max(len(s) for s in col) for col in zip(*rows)]
    return ["  ".join(s.rjust(w) for s, w in zip(row, widths)) for row in rows]


def _model_json(model) -> dict:
    return {k: v for k, v in model.model_dump().items() if v is not None}


def _cmd_kh(args: argparse.Namespace) -> int:
    resp = kh_report(KhRequest(link=args.link, reduced=args.reduced,
                               mirror=args.mirror,
                               max_crossings=args.max_crossings))
    if args.as_json:
        _print_json(_model_json(resp))
        return 0
    if resp.name is not None:
        print(f"name: {resp.name}")
    print(f"components: {resp.components}")
    print(f"total: {resp.total}")
    print(f"reduced total: {resp.reduced_total}")
    print("bigraded ranks (i, j, rank):")
    for line in _aligned([[str(v) for v in row] for row in resp.bigraded]):
        print(f"  {line}")
    if resp.reduced_bigraded is not None:
        print("reduced bigraded ranks (i, j, rank):")
        rows = [[str(v) for v in row] for row in resp.reduced_bigraded]
        for line in _aligned(rows):
            print(f"  {line}")
    return 0


def _cmd_burau(args: argparse.Namespace) -> int:
    resp = burau_report(BurauRequest(braid=args.braid))
    if args.as_json:
        _print_json(_model_json(resp))
        return 0
    for row in resp.entries:
        print("[" + ", ".join(row) + "]")
    return 0


def _cmd_alex(args: argparse.Namespace) -> int:
    resp = alex_report(AlexRequest(braid=args.braid))
    if args.as_json:
        obj = _model_json(resp)
        obj["axis_form"] = resp.axis_form.model_dump()
        _print_json(obj)
        return 0
    print(f"braid: {resp.braid}")
    print(f"strands: {resp.strands}")
    print(f"delta: {resp.delta}")
    print(f"torres: {'true' if resp.torres else 'false'}")
    print(f"axis form a: {resp.axis_form.a}")
    print(f"axis form f: {', '.join(resp.axis_form.f) or '(none)'}")
    print(f"stat: {resp.stat}")
    print(f"flags: {'; '.join(resp.flags) or '(none)'}")
    return 0


def _cmd_classify(args: argparse.Namespace) -> int:
    resp = classify_report(ClassifyRequest(link=args.link,
                                           max_crossings=args.max_crossings))
    if args.as_json:
        obj = resp.model_dump()
        if obj["name"] is None:
            del obj["name"]
        _print_json(obj)
        return 0
    if resp.name is not None:
        print(f"name: {resp.name}")
    print(f"components: {resp.components}")
    print(f"total: {resp.total}")
    print(f"reduced total: {resp.reduced_total}")
    print(f"parity ok: {'true' if resp.parity_ok else 'false'}")
    print(f"lower bound ok: {'true' if resp.lower_bound_ok else 'false'}")
    batson = "n/a" if resp.batson_ok is None else (
        "true" if resp.batson_ok else "false")
    print(f"bipartition margins ok: {batson}")
    print(f"match: {resp.rank_class}")
    print(f"flags: {'; '.join(resp.flags) or '(none)'}")
    print(f"caveat: {resp.caveat}")
    return 0


def _cmd_verify(args: argparse.Namespace, parser: argparse.ArgumentParser
                ) -> int:
    if args.builtin == (args.table is not None):
        parser.error("verify-table needs a table path or --builtin, not both")
    table_text: Optional[str] = None
    if args.table is not None:
        try:
            table_text = Path(args.table).read_text(encoding="utf-8")
        except OSError as exc:
            raise ValueError(f"cannot read table {args.table}: {exc}") from exc
    resp = verify_report(VerifyRequest(table_text=table_text, jobs=args.jobs,
                                       max_crossings=args.max_crossings))
    if args.as_json:
        _print_json(resp.model_dump())
    else:
        # reuse the aggregate formatter so text output matches the library
        report = TableReport(
            entry_count=resp.entries,
            records=tuple(CheckRecord(**c.model_dump()) for c in resp.checks))
        print(report.format_text())
    return 0 if resp.all_pass else 1


def main(argv: Optional[Sequence[str]] = None) -> int:
    parser = _build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        if args.command == "kh":
            return _cmd_kh(args)
        if args.command == "burau":
            return _cmd_burau(args)
        if args.command == "alex":
            return _cmd_alex(args)
        if args.command == "classify":
            return _cmd_classify(args)
        return _cmd_verify(args, parser)
    except SystemExit as exc:  # parser.error inside a command
        return int(exc.code or 0)
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    raise SystemExit(main())
