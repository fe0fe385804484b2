"""Command-line entry point: ingest-check, analyze, review serve/apply, report.

Exit codes: 0 success, 1 usage error, 2 data error, 3 I/O error.
"""

from __future__ import annotations

import argparse
import glob
import json
import sys
from pathlib import Path

from pmnharvest.report import (
    PathUnwritable,
    export_provenance,
    format_summary,
    summarize,
    write_summary_tsv,
)
from pmnharvest.resolver import (
    ResolverError,
    analysis_from_dict,
    analysis_to_dict,
    run_pipeline,
)
from pmnharvest.review import (
    LogUnwritable,
    MalformedLogLine,
    ReviewError,
    apply_decisions,
    cross_validate,
)
from pmnharvest.snapshot import FileUnreadable, SnapshotError, load_snapshots

EXIT_OK = 0
EXIT_USAGE = 1
EXIT_DATA = 2
EXIT_IO = 3


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):  # exit 1, not argparse's default 2
        raise UsageError(message)


def _expand_snapshots(patterns: list[str]) -> list[str]:
    paths: list[str] = []
    for pattern in patterns:
        matches = sorted(glob.glob(pattern))
        if matches:
            paths.extend(matches)
        else:
            paths.append(pattern)  # literal path; load will report if missing
    if not paths:
        raise UsageError("--snapshots matched no files")
    return paths


def _analysis_bytes(analysis) -> bytes:
    doc = analysis_to_dict(analysis)
    return (json.dumps(doc, indent=2, sort_keys=True) + "\n").encode("utf-8")


def _load_analysis(path: str):
    doc = json.loads(Path(path).read_text(encoding="utf-8"))
    return analysis_from_dict(doc)


def cmd_ingest_check(args) -> int:
    snapshots = load_snapshots(_expand_snapshots(args.snapshots))
    for year in sorted(snapshots):
        snap, _ = snapshots[year]
        print(f"OK year={year} descriptors={len(snap.descriptors)} scrs={len(snap.scrs)}")
    return EXIT_OK


def cmd_analyze(args) -> int:
    if args.year_from > args.year_to:
        raise UsageError("--from must not exceed --to")
    if args.k < 1:
        raise UsageError("--k must be >= 1")
    snapshots = load_snapshots(_expand_snapshots(args.snapshots))
    analysis = run_pipeline(snapshots, (args.year_from, args.year_to), k=args.k)
    try:
        Path(args.out).write_bytes(_analysis_bytes(analysis))
    except OSError as exc:
        raise PathUnwritable(f"cannot write {args.out}: {exc}") from exc
    table = summarize(analysis)
    print(format_summary(table))
    if args.report_tsv:
        write_summary_tsv(table, args.report_tsv)
    return EXIT_OK


def cmd_review_serve(args) -> int:
    import uvicorn

    from pmnharvest.server import create_app

    if not 1 <= args.port <= 65535:
        raise UsageError("--port must be in [1, 65535]")
    if not Path(args.analysis).is_file():
        raise FileUnreadable(f"analysis file missing: {args.analysis}")
    indices = None
    if args.snapshots:
        loaded = load_snapshots(_expand_snapshots(args.snapshots))
        indices = {year: index for year, (_, index) in loaded.items()}
    app = create_app(args.analysis, args.decisions, indices=indices, ui_dir=args.ui_dir)
    uvicorn.run(app, host=args.host, port=args.port)
    return EXIT_OK


def cmd_review_apply(args) -> int:
    analysis = _load_analysis(args.analysis)
    updated = apply_decisions(analysis, args.decisions)
    out = args.out or args.analysis
    try:
        Path(out).write_bytes(_analysis_bytes(updated))
    except OSError as exc:
        raise PathUnwritable(f"cannot write {out}: {exc}") from exc
    print(format_summary(summarize(updated)))
    return EXIT_OK


def cmd_report(args) -> int:
    analysis = _load_analysis(args.analysis)
    if args.decisions:
        analysis = apply_decisions(analysis, args.decisions)
    table = summarize(analysis)
    print(format_summary(table))
    if args.report_tsv:
        write_summary_tsv(table, args.report_tsv)
    if args.export:
        agreements = []
        if args.snapshots:
            loaded = load_snapshots(_expand_snapshots(args.snapshots))
            indices = {year: index for year, (_, index) in loaded.items()}
            agreements = cross_validate(analysis, indices)
        export_provenance(analysis, agreements, args.export)
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="pmnharvest", description=__doc__)
    sub = parser.add_subparsers(dest="command", required=True)

    def add_snapshots(p, required=True):
        p.add_argument("--snapshots", nargs="+", default=[], required=required,
                       help="snapshot JSON files or globs")

    p = sub.add_parser("ingest-check", help="load and validate snapshot files")
    add_snapshots(p)
    p.set_defaults(func=cmd_ingest_check)

    p = sub.add_parser("analyze", help="run the resolution pipeline")
    add_snapshots(p)
    p.add_argument("--from", dest="year_from", type=int, required=True)
    p.add_argument("--to", dest="year_to", type=int, required=True)
    p.add_argument("--k", type=int, default=5, help="edit-distance candidates per item")
    p.add_argument("--out", required=True, help="analysis JSON output path")
    p.add_argument("--report-tsv", default=None)
    p.set_defaults(func=cmd_analyze)

    review = sub.add_parser("review", help="adjudication workflow")
    review_sub = review.add_subparsers(dest="review_command", required=True)

    p = review_sub.add_parser("serve", help="serve the review API and UI")
    p.add_argument("--analysis", required=True)
    p.add_argument("--decisions", default="decisions.jsonl")
    p.add_argument("--port", type=int, default=8080)
    p.add_argument("--host", default="127.0.0.1")
    add_snapshots(p, required=False)
    p.add_argument("--ui-dir", default=None, help="static review UI assets")
    p.set_defaults(func=cmd_review_serve)

    p = review_sub.add_parser("apply", help="fold the decision log into an analysis")
    p.add_argument("--analysis", required=True)
    p.add_argument("--decisions", default="decisions.jsonl")
    p.add_argument("--out", default=None, help="defaults to rewriting --analysis")
    p.set_defaults(func=cmd_review_apply)

    p = sub.add_parser("report", help="print the summary table and export datasets")
    p.add_argument("--analysis", required=True)
    p.add_argument("--decisions", default=None)
    add_snapshots(p, required=False)
    p.add_argument("--report-tsv", default=None)
    p.add_argument("--export", default=None, help="provenance TSV output path")
    p.set_defaults(func=cmd_report)

    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
        return args.func(args)
    except UsageError as exc:
        print(f"usage error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except (FileUnreadable, LogUnwritable, PathUnwritable) as exc:
        print(f"i/o error: {exc}", file=sys.stderr)
        return EXIT_IO
    except (SnapshotError, ResolverError, ReviewError, MalformedLogLine) as exc:
        print(f"data error: {exc}", file=sys.stderr)
        return EXIT_DATA
    except OSError as exc:
        print(f"i/o error: {exc}", file=sys.stderr)
        return EXIT_IO
    except json.JSONDecodeError as exc:
        print(f"data error: {exc}", file=sys.stderr)
        return EXIT_DATA


if __name__ == "__main__":
    sys.exit(main())
