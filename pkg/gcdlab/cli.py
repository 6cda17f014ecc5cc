"""
Command-line entry point. Each subcommand module registers itself through
add_parser() and returns an exit code from run().
"""
import argparse
import asyncio
import sys
from datetime import datetime
from typing import List, Optional

from gcdlab import __version__, config, database
from gcdlab.core.errors import ConfigError, DomainError, InvariantViolation
from gcdlab.core.logger import configure_logging, get_logger
from gcdlab.commands import (
    candidates,
    exceptional_scan,
    gcd_growth,
    history,
    proof_trace,
    ratio_scan,
    selfcheck,
)
from gcdlab.commands.common import EXIT_CONFIG, EXIT_INVARIANT

logger = get_logger(__name__)

COMMANDS = (gcd_growth, ratio_scan, exceptional_scan, candidates, proof_trace, selfcheck, history)


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="gcd-heights",
        description="Exact experiments on gcd heights of S-unit pairs.",
    )
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    parser.add_argument("--log-level", default=None, help="DEBUG, INFO, WARNING or ERROR")
    subparsers = parser.add_subparsers(dest="command", required=True)
    for module in COMMANDS:
        module.add_parser(subparsers)
    return parser


def _default_params(args: argparse.Namespace) -> dict:
    skip = {"func", "command", "log_level", "record", "summary", "params"}
    return {k: v for k, v in vars(args).items() if k not in skip}


async def _record(command: str, params: dict, started_at: datetime, code: int, summary: str) -> None:
    await database.init_db()
    await database.log_run(command, params, started_at, code, summary)


def record_run(args: argparse.Namespace, started_at: datetime, code: int) -> None:
    if not config.RUN_LEDGER_ENABLED or not getattr(args, "record", True):
        return
    params = getattr(args, "params", None) or _default_params(args)
    summary = getattr(args, "summary", "") or ""
    try:
        asyncio.run(_record(args.command, params, started_at, code, summary))
    except Exception as e:
        logger.error(f"Failed to record run: {e}")


def main(argv: Optional[List[str]] = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    configure_logging(args.log_level)
    started_at = datetime.now()
    try:
        code = args.func(args)
    except InvariantViolation as e:
        logger.error(f"Invariant violated: {e}")
        args.summary = f"invariant violation: {e}"
        code = EXIT_INVARIANT
    except (ConfigError, DomainError) as e:
        logger.error(str(e))
        args.summary = f"error: {e}"
        code = EXIT_CONFIG
    record_run(args, started_at, code)
    return code


if __name__ == "__main__":
    sys.exit(main())
