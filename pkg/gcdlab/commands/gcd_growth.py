"""gcd(a^n - 1, b^n - 1) against n, with the gcd read off the log-minus finite part."""
import argparse
from math import log
from typing import List, Tuple

from gcdlab.core import messages
from gcdlab.core.errors import ConfigError
from gcdlab.core.logger import get_logger
from gcdlab.arith.gcdcore import integer_gcd_bridge
from gcdlab.arith.sunits import dependence
from gcdlab.commands.common import EXIT_OK, float17, open_output, write_csv

logger = get_logger(__name__)

HEADER = ("n", "gcd", "log_gcd_over_n_float")


def growth_rows(a: int, b: int, n_max: int) -> List[Tuple[int, int, str]]:
    if a < 2 or b < 2:
        raise ConfigError("a, b: must be integers >= 2", field="a")
    if n_max < 1:
        raise ConfigError("n_max: must be >= 1", field="n_max")
    if dependence(a, b) is not None:
        logger.warning(messages.MSG_DEPENDENT_INPUTS.format(a=a, b=b))
    rows = []
    for n in range(1, n_max + 1):
        g = integer_gcd_bridge(a ** n - 1, b ** n - 1).finite_part
        rows.append((n, g, float17(log(g) / n)))
    return rows


def add_parser(subparsers) -> None:
    p = subparsers.add_parser("gcd-growth", help="gcd(a^n - 1, b^n - 1) for n = 1..n_max (CSV)")
    p.add_argument("a", type=int)
    p.add_argument("b", type=int)
    p.add_argument("--n-max", type=int, default=60)
    p.add_argument("--output", "-o", default=None)
    p.set_defaults(func=run)


def run(args: argparse.Namespace) -> int:
    rows = growth_rows(args.a, args.b, args.n_max)
    with open_output(args.output) as out:
        write_csv(out, HEADER, rows)
    args.summary = f"{len(rows)} rows, max gcd {max(r[1] for r in rows)}"
    return EXIT_OK
