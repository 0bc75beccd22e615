"""Command-line interface.

    gitrank measure --input repos.txt --out metrics/ [--shard i/N] [--jobs K]
                    [--fixtures DIR] [--workdir DIR] [--force]
    gitrank rank    --metrics metrics/ [--csv out.csv] [--html out.html] [-v|-vv]
    gitrank run     ... both phases back to back

Exit codes: 0 success, 1 fatal configuration error, 2 no measured repos.
GITRANK_TOKEN supplies the hosting-API token in live mode.
"""

import argparse
import logging
import sys
from pathlib import Path

from gitrank.config import load_config
from gitrank.errors import FatalConfig, NoMeasuredRepos
from gitrank.pipeline import load_records, phase1, phase2
from gitrank.report import emit_csv, emit_html, table_columns, table_rows

log = logging.getLogger("gitrank")

EXIT_OK = 0
EXIT_FATAL_CONFIG = 1
EXIT_NO_MEASURED = 2


def _add_measure_args(parser):
    parser.add_argument("--input", help="file with one repository URL per line")
    parser.add_argument("--out", dest="metrics_dir", help="directory for JSON records")
    parser.add_argument("--shard", help="this worker's share, as i/N")
    parser.add_argument("--jobs", type=int, help="parallel repository workers")
    parser.add_argument("--fixtures", help="offline metadata snapshot directory")
    parser.add_argument("--workdir", help="where working copies are cloned")
    parser.add_argument("--force", action="store_true", default=None,
                        help="re-measure repositories with existing records")
    parser.add_argument("--evaluated-at", dest="evaluated_at",
                        help="pin the evaluation timestamp (ISO-8601)")


def _add_rank_args(parser, with_metrics=True):
    if with_metrics:
        parser.add_argument("--metrics", dest="metrics_dir",
                            help="directory of phase-1 JSON records")
    parser.add_argument("--csv", help="write the ranking as CSV here")
    parser.add_argument("--html", help="write the ranking as HTML here")
    parser.add_argument("-v", "--verbose", action="count", default=0,
                        help="-v adds category scores, -vv adds raw measures")


def build_parser():
    parser = argparse.ArgumentParser(
        prog="gitrank",
        description="Rank Git repositories by quality, maintainability, and popularity.",
    )
    parser.add_argument("--config", help="TOML configuration file")
    parser.add_argument("--quiet", action="store_true", help="warnings only")
    sub = parser.add_subparsers(dest="command", required=True)

    measure = sub.add_parser("measure", help="phase 1: measure repositories")
    _add_measure_args(measure)

    rank_cmd = sub.add_parser("rank", help="phase 2: score, rank, report")
    _add_rank_args(rank_cmd)

    run = sub.add_parser("run", help="phase 1 then phase 2")
    _add_measure_args(run)
    _add_rank_args(run, with_metrics=False)

    return parser


def _config_from_args(args):
    overrides = {}
    for key in ("input", "metrics_dir", "shard", "jobs", "fixtures",
                "workdir", "force", "evaluated_at"):
        if hasattr(args, key):
            overrides[key] = getattr(args, key)
    if getattr(args, "verbose", None):
        overrides["verbosity"] = min(args.verbose, 2)
    return load_config(Path(args.config) if args.config else None, **overrides)


def _print_table(ranked, dropped, verbosity):
    rows = [table_columns(verbosity)] + table_rows(ranked, verbosity)
    widths = [max(len(row[i]) for row in rows) for i in range(len(rows[0]))]
    for row in rows:
        print("  ".join(cell.rjust(w) for cell, w in zip(row, widths)))
    for record in dropped:
        print(f"dropped: {record.name} ({record.reason})")


def _rank_and_report(args, config) -> None:
    ranked, dropped = phase2(config.metrics_dir, config)
    records = load_records(config.metrics_dir)
    evaluated_at = next((r.evaluated_at for r in records if r.evaluated_at), None)
    for record in dropped:
        log.warning("dropped %s: %s", record.name, record.reason)
    wrote_any = False
    if args.csv:
        emit_csv(ranked, config.verbosity, Path(args.csv))
        log.info("wrote %s", args.csv)
        wrote_any = True
    if args.html:
        emit_html(ranked, config.verbosity, Path(args.html),
                  evaluated_at=evaluated_at, dropped=dropped)
        log.info("wrote %s", args.html)
        wrote_any = True
    if not wrote_any:
        _print_table(ranked, dropped, config.verbosity)


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    logging.basicConfig(
        level=logging.WARNING if args.quiet else logging.INFO,
        format="%(levelname)s %(name)s: %(message)s",
    )
    try:
        config = _config_from_args(args)
        if args.command in ("measure", "run"):
            if config.input is None:
                raise FatalConfig("measure needs --input (or [run] input in the config)")
            written = phase1(config)
            log.info("phase 1 wrote %d records under %s", len(written), config.metrics_dir)
        if args.command in ("rank", "run"):
            _rank_and_report(args, config)
    except FatalConfig as exc:
        log.error("%s", exc)
        return EXIT_FATAL_CONFIG
    except NoMeasuredRepos as exc:
        log.error("%s", exc)
        return EXIT_NO_MEASURED
    return EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
