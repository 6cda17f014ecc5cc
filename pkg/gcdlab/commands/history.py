"""Recent entries of the run ledger."""
import argparse
import asyncio

from gcdlab import database
from gcdlab.commands.common import EXIT_OK, open_output, write_json


def add_parser(subparsers) -> None:
    p = subparsers.add_parser("history", help="list or clear recorded runs")
    p.add_argument("--limit", type=int, default=20)
    p.add_argument("--command", dest="only_command", default=None, help="only runs of this subcommand")
    p.add_argument("--clear", action="store_true")
    p.add_argument("--output", "-o", default=None)
    p.set_defaults(func=run, record=False)


async def _fetch(args: argparse.Namespace):
    await database.init_db()
    if args.clear:
        await database.clear_runs(args.only_command)
        return []
    return await database.get_runs(args.limit, args.only_command)


def run(args: argparse.Namespace) -> int:
    runs = asyncio.run(_fetch(args))
    if not args.clear:
        with open_output(args.output) as out:
            write_json(out, runs)
    args.summary = "cleared" if args.clear else f"{len(runs)} runs"
    return EXIT_OK
