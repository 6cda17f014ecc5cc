"""
Scan a box of S-unit pairs for solutions of the selected inequality and
classify them against the candidate subtori (JSON report).
"""
import argparse
from contextlib import contextmanager
from typing import Iterator, Optional

from gcdlab import config
from gcdlab.core import messages
from gcdlab.core.errors import DomainError
from gcdlab.core.logger import get_logger
from gcdlab.arith.gcdcore import prop2_case
from gcdlab.arith.qplaces import rational_str
from gcdlab.arith.scan import Inequality, Outcome, ScanResult, scan
from gcdlab.arith.subtori import ClassKind, Classified
from gcdlab.arith.sunits import parametrize
from gcdlab.commands.common import EXIT_OK, EXIT_UNDECIDED, open_output, write_json
from gcdlab.commands.scan_args import add_scan_arguments, config_from_args
from gcdlab.scan_config import ScanConfig

logger = get_logger(__name__)


@contextmanager
def run_settings(precision_bits: Optional[int], seed: Optional[int]) -> Iterator[None]:
    """Temporarily overrides the interval precision cap and the factorization rho seed."""
    saved = config.INTERVAL_MAX_BITS, config.RHO_SEED
    if precision_bits is not None:
        config.INTERVAL_MAX_BITS = precision_bits
    if seed is not None:
        config.RHO_SEED = seed
    try:
        yield
    finally:
        config.INTERVAL_MAX_BITS, config.RHO_SEED = saved


def _case(outcome: Outcome, cls: Classified) -> Optional[dict]:
    if cls.kind is not ClassKind.ON_CANDIDATE or cls.relation.w != 1:
        return None
    try:
        par = parametrize(*outcome.point, cls.relation)
    except DomainError:
        return None
    case = prop2_case(cls.relation, par.wbar)
    return {"case": case.case.value, "phi_degree": case.phi_degree}


def solution_json(outcome: Outcome, cls: Classified, with_case: bool) -> dict:
    u, v = outcome.point
    out = {
        "u": rational_str(u),
        "v": rational_str(v),
        "lhs": outcome.report.lhs.to_json(),
        "rhs": outcome.report.rhs.to_json(),
        "lhs_float": format(float(outcome.report.lhs), ".17g"),
        "rhs_float": format(float(outcome.report.rhs), ".17g"),
        "class": cls.kind.value,
    }
    if cls.relation is not None:
        out["relation"] = {"p": cls.relation.p, "q": cls.relation.q, "w": rational_str(cls.relation.w)}
    if with_case:
        case = _case(outcome, cls)
        if case is not None:
            out["case"] = case
    return out


def report_json(cfg: ScanConfig, result: ScanResult) -> dict:
    with_case = result.task.inequality in (Inequality.PROP2, Inequality.PROP2_OUTSIDE)
    counts = {k.value: 0 for k in ClassKind}
    for cls in result.classification:
        counts[cls.kind.value] += 1
    params = cfg.to_json()
    params.pop("output", None)
    return {
        "params": params,
        "candidates": [c.to_json() for c in result.candidates],
        "solutions": [solution_json(o, c, with_case) for o, c in zip(result.solutions, result.classification)],
        "skipped": result.skipped(),
        "undecided": [
            {"u": rational_str(o.point[0]), "v": rational_str(o.point[1]),
             "lhs": o.report.lhs.to_json(), "rhs": o.report.rhs.to_json()}
            for o in result.undecided
        ],
        "evaluated": result.evaluated,
        "class_counts": counts,
    }


def run_scan(cfg: ScanConfig) -> ScanResult:
    task = cfg.to_task()
    with run_settings(cfg.precision_bits, cfg.seed):
        return scan(task, cfg.exponent_bound, cfg.signs, cfg.workers)


def add_parser(subparsers) -> None:
    p = subparsers.add_parser("exceptional-scan", help="solutions of an inequality over S-unit pairs (JSON)")
    add_scan_arguments(p)
    p.set_defaults(func=run)


def run(args: argparse.Namespace) -> int:
    cfg = config_from_args(args)
    result = run_scan(cfg)
    payload = report_json(cfg, result)
    with open_output(cfg.output) as out:
        write_json(out, payload)
    args.params = cfg.to_json()
    args.summary = f"{len(result.solutions)} solutions, skipped {result.skipped()}"
    if result.undecided:
        logger.warning(messages.MSG_UNDECIDED.format(count=len(result.undecided)))
        return EXIT_UNDECIDED
    return EXIT_OK
