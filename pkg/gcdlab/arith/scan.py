"""
Scan driver: enumerate (O_S^x)^2 within an exponent bound, evaluate the
selected inequality at every point and classify the solutions.
"""
import multiprocessing
from concurrent.futures import ProcessPoolExecutor, ThreadPoolExecutor
from dataclasses import dataclass, field
from enum import Enum
from fractions import Fraction
from typing import List, Optional, Sequence, Tuple

from gcdlab import config
from gcdlab.core import messages
from gcdlab.core.errors import ConfigError
from gcdlab.core.logger import get_logger
from gcdlab.arith.gcdcore import (
    InequalityReport,
    Prop4Variant,
    check_main,
    check_prop1_s,
    check_prop2,
    check_prop3,
    check_prop4,
    check_thm1,
    resultants_of,
)
from gcdlab.arith.laurent import Function2, RationalFunction2, UniPoly, monomials
from gcdlab.arith.qplaces import PlaceSet, rational_str
from gcdlab.arith.subtori import (
    CandidateSet,
    Classified,
    classify_point,
    prop1_candidates,
    prop2_candidates,
    prop3_translates,
    prop4_candidates,
    refine_translates,
)
from gcdlab.arith.sunits import enumerate_sunits

logger = get_logger(__name__)


class Inequality(Enum):
    THM1 = "thm1"
    MAIN14 = "main14"
    MAIN15 = "main15"
    PROP1S = "prop1s"
    PROP2 = "prop2"
    PROP2_OUTSIDE = "prop2s"
    PROP3 = "prop3"
    PROP4 = "prop4"

    @classmethod
    def parse(cls, name: str) -> "Inequality":
        try:
            return cls(name.lower())
        except ValueError:
            choices = ", ".join(i.value for i in cls)
            raise ConfigError(f"inequality: unknown selector {name!r} (choose from {choices})", field="inequality")

    @property
    def needs_function(self) -> bool:
        return self in (Inequality.THM1, Inequality.MAIN14, Inequality.MAIN15, Inequality.PROP1S)


@dataclass(frozen=True)
class ScanTask:
    inequality: Inequality
    epsilon: Fraction
    S: PlaceSet
    function: Optional[RationalFunction2] = None
    r: Optional[UniPoly] = None
    s: Optional[UniPoly] = None
    theta: Optional[Fraction] = None
    eta: Optional[Fraction] = None
    variant: Prop4Variant = Prop4Variant.COMPLEMENT


@dataclass(frozen=True)
class Outcome:
    """kind is one of solution, miss, pole, zero, undecided."""
    kind: str
    index: Tuple[int, int]
    point: Tuple[Fraction, Fraction]
    report: Optional[InequalityReport] = None


@dataclass
class ScanResult:
    task: ScanTask
    candidates: CandidateSet
    solutions: List[Outcome] = field(default_factory=list)
    classification: List[Classified] = field(default_factory=list)
    undecided: List[Outcome] = field(default_factory=list)
    poles: int = 0
    zeros: int = 0
    evaluated: int = 0

    @property
    def solution_points(self) -> List[Tuple[Fraction, Fraction]]:
        return [o.point for o in self.solutions]

    def skipped(self) -> dict:
        return {"poles": self.poles, "zeros": self.zeros, "undecided": len(self.undecided)}


def _evaluate(task: ScanTask, u: Fraction, v: Fraction) -> Tuple[str, Optional[InequalityReport]]:
    ineq = task.inequality
    if ineq.needs_function:
        f = task.function
        den = f.denominator.eval(u, v)
        if den == 0:
            return "pole", None
        num = f.numerator.eval(u, v)
        if num == 0:
            return "zero", None
        if ineq is Inequality.THM1:
            report = check_thm1(f.numerator, f.denominator, u, v, task.epsilon)
        elif ineq is Inequality.PROP1S:
            report = check_prop1_s(f, u, v, task.epsilon, task.S)
        else:
            rep14, rep15 = check_main(f, u, v, task.epsilon)
            report = rep14 if ineq is Inequality.MAIN14 else rep15
    elif ineq in (Inequality.PROP2, Inequality.PROP2_OUTSIDE):
        if u == 1 or v == 1:
            return "zero", None
        rep = check_prop2(u, v, task.epsilon, task.S)
        report = rep.full if ineq is Inequality.PROP2 else rep.complement
    elif ineq is Inequality.PROP3:
        if u == task.theta and v == task.eta:
            return "zero", None
        report = check_prop3(u, v, task.theta, task.eta, task.epsilon)
    else:
        if task.r.eval(u) == 0 and task.s.eval(v) == 0:
            return "zero", None
        report = check_prop4(task.r, task.s, u, v, task.epsilon, task.S, task.variant)
    if report.undecided:
        return "undecided", report
    return ("solution" if report.satisfied else "miss"), report


def _scan_row(args) -> List[Outcome]:
    """One u against every v; top level so that process pools can pickle it."""
    task, iu, u, vs = args
    out = []
    for iv, v in enumerate(vs):
        kind, report = _evaluate(task, u, v)
        out.append(Outcome(kind, (iu, iv), (u, v), report))
    return out


def _make_executor(max_workers: int):
    """
    Try to create a ProcessPoolExecutor with 'fork' on Linux, fall back to threads.
    """
    try:
        ctx = multiprocessing.get_context("fork")
        return ProcessPoolExecutor(max_workers=max_workers, mp_context=ctx)
    except Exception as e:
        logger.warning(f"Could not start process pool with fork: {e}. Falling back to threads.")
        return ThreadPoolExecutor(max_workers=max_workers)


def candidates_for(task: ScanTask) -> CandidateSet:
    ineq = task.inequality
    if ineq in (Inequality.PROP2, Inequality.PROP2_OUTSIDE):
        return prop2_candidates(task.epsilon)
    if ineq is Inequality.PROP3:
        return prop3_translates(task.theta, task.eta, task.epsilon)
    if ineq is Inequality.PROP4:
        return prop4_candidates(task.r, task.s, task.epsilon)
    base = prop1_candidates(task.function)
    out = base | refine_translates(task.function, base)
    if ineq is Inequality.THM1 and task.epsilon > 0:
        res = resultants_of(task.function)
        out = out | prop4_candidates(res.r, res.s, task.epsilon)
    return out


def build_task(inequality: Inequality, epsilon: Fraction, S: PlaceSet,
               function: Optional[Function2] = None, r: Optional[UniPoly] = None,
               s: Optional[UniPoly] = None, theta: Optional[Fraction] = None,
               eta: Optional[Fraction] = None,
               variant: Prop4Variant = Prop4Variant.COMPLEMENT) -> ScanTask:
    if epsilon < 0 or (epsilon == 0 and inequality is not Inequality.THM1):
        raise ConfigError("epsilon: must be positive", field="epsilon")
    if inequality.needs_function:
        if function is None:
            raise ConfigError("function: required for this inequality", field="function")
        function = RationalFunction2.coerce(function)
        if inequality in (Inequality.MAIN14, Inequality.MAIN15) and not monomials(function).contains_one:
            raise ConfigError(f"function: {messages.MSG_MONOMIAL_ONE_REQUIRED}", field="function")
    if inequality is Inequality.PROP4:
        if r is None or s is None or r.is_zero() or s.is_zero():
            raise ConfigError("r, s: both nonzero polynomials are required for prop4", field="r")
        if variant is Prop4Variant.ALL and r.constant_term == 0 and s.constant_term == 0:
            raise ConfigError(f"r, s: {messages.MSG_BOTH_VANISH_AT_ZERO}", field="r")
    if inequality is Inequality.PROP3 and (not theta or not eta):
        raise ConfigError("theta, eta: nonzero shifts are required for prop3", field="theta")
    return ScanTask(inequality, epsilon, S, function, r, s, theta, eta, variant)


def scan(task: ScanTask, exponent_bound: int, signs: str = "both",
         workers: Optional[int] = None) -> ScanResult:
    """
    Deterministic scan. The result does not depend on the worker count:
    rows are computed independently and merged in enumeration order.
    """
    workers = config.SCAN_WORKERS if workers is None else workers
    units = [x.value for x in enumerate_sunits(task.S, exponent_bound, signs)]
    candidates = candidates_for(task)
    logger.info(
        f"Scanning {task.inequality.value} over S={task.S}, bound {exponent_bound}: "
        f"{len(units) ** 2} points, {len(candidates)} candidates, {workers} worker(s)"
    )
    jobs = [(task, iu, u, units) for iu, u in enumerate(units)]
    if workers > 1 and len(jobs) > 1:
        with _make_executor(workers) as executor:
            rows = list(executor.map(_scan_row, jobs))
    else:
        rows = [_scan_row(job) for job in jobs]

    result = ScanResult(task, candidates)
    for outcome in sorted((o for row in rows for o in row), key=lambda o: o.index):
        if outcome.kind == "pole":
            result.poles += 1
            continue
        if outcome.kind == "zero":
            result.zeros += 1
            continue
        result.evaluated += 1
        if outcome.kind == "undecided":
            result.undecided.append(outcome)
        elif outcome.kind == "solution":
            result.solutions.append(outcome)
            result.classification.append(classify_point(*outcome.point, candidates))
    logger.info(
        f"Scan finished: {len(result.solutions)} solutions, poles {result.poles}, "
        f"zeros {result.zeros}, undecided {len(result.undecided)}"
    )
    return result


def solution_key(points: Sequence[Tuple[Fraction, Fraction]]) -> List[Tuple[str, str]]:
    """Canonical string pairs, for set comparisons across independent reruns."""
    return sorted((rational_str(u), rational_str(v)) for u, v in points)
