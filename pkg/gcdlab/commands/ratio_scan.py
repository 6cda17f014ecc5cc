"""
Heights of (u - 1)/(v - 1) against h(1:u:v) over a box of S-unit pairs.
"""
import argparse
from typing import List, Optional, Sequence

from gcdlab.core.logger import get_logger
from gcdlab.arith.gcdcore import RatioReport, TrendPoint, check_cor1_ratio, ratio_trend
from gcdlab.arith.qplaces import rational_str
from gcdlab.arith.sunits import enumerate_sunits
from gcdlab.commands.common import EXIT_OK, float17, open_output, write_csv, write_json
from gcdlab.commands.scan_args import add_scan_arguments, config_from_args

logger = get_logger(__name__)

HEADER = (
    "u", "v", "H_ratio", "H_1uv",
    "h_ratio_num_float", "h_1uv_float", "ratio_float",
    "dependent", "relation_p", "relation_q",
)


def collect(S, exponent_bound: int, signs: str = "both"):
    """Reports for every pair in enumeration order, and the number of skipped pairs."""
    units = [x.value for x in enumerate_sunits(S, exponent_bound, signs)]
    reports: List[RatioReport] = []
    skipped = 0
    for u in units:
        for v in units:
            if u == 1 or v == 1:
                skipped += 1
                continue
            reports.append(check_cor1_ratio(u, v))
    logger.info(f"Ratio scan over S={S}, bound {exponent_bound}: {len(reports)} rows, {skipped} skipped")
    return reports, skipped


def row(r: RatioReport) -> list:
    rel = r.relation
    return [
        rational_str(r.u),
        rational_str(r.v),
        rational_str(r.height_ratio.multiplicative),
        rational_str(r.height_1uv.multiplicative),
        float17(r.height_ratio.log),
        float17(r.height_1uv.log),
        float17(r.ratio),
        "true" if r.dependent else "false",
        "" if rel is None else rel.p,
        "" if rel is None else rel.q,
    ]


def trend_json(points: Sequence[TrendPoint]) -> list:
    return [
        {
            "threshold": p.threshold,
            "minimum_float": float17(p.minimum),
            "witness": None if p.witness is None else [rational_str(x) for x in p.witness],
            "count": p.count,
        }
        for p in points
    ]


def add_parser(subparsers) -> None:
    p = subparsers.add_parser("ratio-scan", help="h((u-1)/(v-1)) / h(1:u:v) over S-unit pairs (CSV)")
    add_scan_arguments(p)
    p.add_argument("--trend", default=None,
                   help="comma-separated thresholds H0; writes the minimum-ratio trend as JSON")
    p.add_argument("--trend-output", default=None)
    p.set_defaults(func=run)


def run(args: argparse.Namespace) -> int:
    cfg = config_from_args(args)
    reports, skipped = collect(cfg.place_set, cfg.exponent_bound, cfg.signs)
    with open_output(cfg.output) as out:
        write_csv(out, HEADER, (row(r) for r in reports), footer=[("skipped", skipped)])
    if args.trend:
        thresholds = [float(x) for x in args.trend.split(",")]
        with open_output(args.trend_output) as out:
            write_json(out, trend_json(ratio_trend(reports, thresholds)))
    args.summary = f"{len(reports)} rows, {skipped} skipped"
    args.params = cfg.to_json()
    return EXIT_OK
