import argparse
import logging
import sys
from pathlib import Path
from typing import List, Optional, Sequence, Tuple

from algebra.sdproduct import OddDimensionError
from config.settings import settings
from report.report_manager import report_manager
from splitting.lemmas import run_lemma_suite
from splitting.search import DimensionBoundError, SearchMode, SplitVerdict, search_witness, verdict
from weyl.weylnum import run_weyl_checks

logger = logging.getLogger(__name__)

EXIT_OK = 0
EXIT_FAILED = 1
EXIT_USAGE = 2
EXIT_IO = 3


class UsageError(ValueError):
    """Bad command-line input that argparse itself cannot catch."""


def parse_dims(text: str) -> List[int]:
    """'a..b' (inclusive) or a single integer."""
    try:
        if ".." in text:
            low, high = (int(part) for part in text.split("..", 1))
        else:
            low = high = int(text)
    except ValueError:
        raise UsageError(f"bad dimension range '{text}', expected a..b")
    if low < 2 or high < low:
        raise UsageError(f"bad dimension range '{text}'")
    return list(range(low, high + 1))


def cmd_verdict(args) -> int:
    logger.info("cmd_verdict called with dim=%d", args.dim)
    try:
        result = verdict(args.dim, max_dim=args.max_dim)
    except OddDimensionError as e:
        print("Error: even dimensions only")
        if args.dim % 2 == 1:
            print(f"note: {e}")
        return EXIT_USAGE
    print(report_manager.format_verdict(result))
    logger.info("cmd_verdict completed")
    return EXIT_OK


def cmd_search(args) -> int:
    logger.info("cmd_search called with dim=%d", args.dim)
    bound = args.max_dim if args.max_dim is not None else settings.MAX_SEARCH_DIM
    result = search_witness(
        args.dim,
        exhaustive=args.exhaustive,
        count=args.count,
        jobs=args.jobs,
        max_dim=bound,
    )
    print(report_manager.format_search(result))
    logger.info("cmd_search completed")
    return EXIT_OK


def cmd_relations(args) -> int:
    if args.dim < 2:
        raise UsageError(f"dimension must be >= 2, got {args.dim}")
    table = report_manager.relations_table(args.dim)
    print(table.to_string(index=False))
    counts = table["family"].value_counts()
    summary = ", ".join(f"{counts.get(name, 0)} {name}" for name in ("order_t", "order_r", "commute", "square", "braid"))
    print(f"\n{len(table)} relations: {summary}")
    return EXIT_OK


def cmd_lemmas(args) -> int:
    logger.info("cmd_lemmas called with dim=%d", args.dim)
    checks = run_lemma_suite(args.dim, max_exp=args.max_exp, samples=args.samples, seed=args.seed)
    for check in checks:
        status = "ok" if check.passed else "FAIL"
        print(f"{check.name:<28} {status:<5} {check.cases} cases")
        for detail in check.failures:
            print(f"    {detail}")
    failed = [check for check in checks if not check.passed]
    print(f"\n{len(checks) - len(failed)} of {len(checks)} identities hold at N={args.dim}")
    return EXIT_FAILED if failed else EXIT_OK


def cmd_weyl(args) -> int:
    logger.info("cmd_weyl called with dim=%d", args.dim)
    checks = run_weyl_checks(args.dim, seed=args.seed)
    for check in checks:
        line = f"{check.name:<24} {'ok' if check.passed else 'FAIL'}"
        if check.detail:
            line += f"  ({check.detail})"
        print(line)
    failed = [check for check in checks if not check.passed]
    return EXIT_FAILED if failed else EXIT_OK


def _report_verdicts(dims: Sequence[int], args) -> Tuple[SearchMode, List[SplitVerdict]]:
    even = [n for n in dims if n % 2 == 0]
    skipped = [n for n in dims if n % 2 == 1]
    if skipped:
        logger.warning("Skipping odd dimensions %s", skipped)
    if args.exhaustive or args.search:
        bound = args.max_dim if args.max_dim is not None else settings.MAX_SEARCH_DIM
        mode = SearchMode.EXHAUSTIVE if args.exhaustive else SearchMode.DIRECT
        return mode, [
            search_witness(n, exhaustive=args.exhaustive, jobs=args.jobs, max_dim=bound) for n in even
        ]
    return SearchMode.CLOSED_FORM, [verdict(n, max_dim=args.max_dim) for n in even]


def cmd_report(args) -> int:
    logger.info("cmd_report called with dims=%s", args.dims)
    dims = parse_dims(args.dims)
    mode, verdicts = _report_verdicts(dims, args)
    document = report_manager.build_document(verdicts, mode, include_timestamp=not args.no_timestamp)
    print(report_manager.summary_table(document).to_string(index=False))
    if args.json:
        report_manager.write_json(document, Path(args.json))
        print(f"\nJSON report written to {args.json}")
    if args.csv:
        report_manager.write_csv(document, Path(args.csv))
        print(f"CSV summary written to {args.csv}")

    # A report cross-checks search results against the closed-form answer
    disagreements = [v.dim for v in verdicts if v.splits != (v.dim % 4 == 2)]
    if disagreements:
        logger.error("Verdict disagrees with N = 2 mod 4 at %s", disagreements)
        print(f"Error: verdict disagrees with closed form at N={disagreements}")
        return EXIT_FAILED
    logger.info("cmd_report completed")
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--max-dim", type=int, default=None, help="override the dimension bound")
    common.add_argument("--log-level", default=None, help="logging level (default from settings)")

    parser = argparse.ArgumentParser(
        prog="clifford-split",
        description="Decide whether the projective Clifford group in even dimension N splits",
    )
    parser.add_argument("--version", action="version", version=f"%(prog)s {settings.TOOL_VERSION}")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("verdict", parents=[common], help="closed-form verdict with witness")
    p.add_argument("--dim", type=int, required=True)
    p.set_defaults(handler=cmd_verdict)

    p = sub.add_parser("search", parents=[common], help="search the 64 N^4 candidate lifts")
    p.add_argument("--dim", type=int, required=True)
    p.add_argument("--exhaustive", action="store_true", help="evaluate every candidate literally")
    p.add_argument("--count", action="store_true", help="count all witnesses")
    p.add_argument("--jobs", type=int, default=None, help="worker processes")
    p.set_defaults(handler=cmd_search)

    p = sub.add_parser("relations", parents=[common], help="list the presentation relations")
    p.add_argument("--dim", type=int, required=True)
    p.set_defaults(handler=cmd_relations)

    p = sub.add_parser("lemmas", parents=[common], help="check the closed-form identities")
    p.add_argument("--dim", type=int, required=True)
    p.add_argument("--max-exp", type=int, default=None, help="largest exponent for power identities")
    p.add_argument("--samples", type=int, default=3, help="random vectors per bit pattern")
    p.add_argument("--seed", type=int, default=0)
    p.set_defaults(handler=cmd_lemmas)

    p = sub.add_parser("weyl", parents=[common], help="numerical Weyl operator checks")
    p.add_argument("--dim", type=int, required=True)
    p.add_argument("--seed", type=int, default=0)
    p.set_defaults(handler=cmd_weyl)

    p = sub.add_parser("report", parents=[common], help="batch verdicts over a range of dimensions")
    p.add_argument("--dims", required=True, help="inclusive range a..b")
    p.add_argument("--json", default=None, help="write the report document to this path")
    p.add_argument("--csv", default=None, help="write the summary table to this path")
    p.add_argument("--no-timestamp", action="store_true", help="omit generated_at and timings")
    p.add_argument("--search", action="store_true", help="use the criteria-pruned search")
    p.add_argument("--exhaustive", action="store_true", help="use the exhaustive search")
    p.add_argument("--jobs", type=int, default=None, help="worker processes")
    p.set_defaults(handler=cmd_report)
    return parser


def main(argv: Optional[Sequence[str]] = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    logging.basicConfig(
        level=(args.log_level or settings.LOG_LEVEL).upper(),
        format="%(asctime)s - %(name)s - %(levelname)s - %(message)s",
        handlers=[logging.StreamHandler()],
    )
    logger.info("Main execution started: %s", args.command)
    try:
        code = args.handler(args)
    except (OddDimensionError, DimensionBoundError, UsageError) as e:
        logger.error("Usage error: %s", e)
        print(f"Error: {e}")
        return EXIT_USAGE
    except OSError as e:
        logger.error("I/O failure: %s", e)
        print(f"Error: cannot write {e.filename}: {e.strerror}")
        return EXIT_IO
    except ValueError as e:
        logger.error("Invalid input: %s", e)
        print(f"Error: {e}")
        return EXIT_USAGE
    logger.info("Main execution completed with exit code %d", code)
    return code


if __name__ == "__main__":
    sys.exit(main())
