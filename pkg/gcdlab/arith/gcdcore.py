"""
The gcd-analogue functional and the inequality testers built on it.

Every report carries both sides as exact LogForms; verdicts come from
gcdlab.arith.decide and are never guessed.
"""
from dataclasses import dataclass
from enum import Enum
from fractions import Fraction
from math import gcd
from typing import Iterable, List, Optional, Sequence, Tuple, Union

from gcdlab.core import messages
from gcdlab.core.errors import DomainError, InvariantViolation, NotSUnitError
from gcdlab.core.logger import get_logger
from gcdlab.arith.decide import LogForm, Verdict, decide, max_form
from gcdlab.arith.heights import (
    HeightValue,
    LogMinusSum,
    PlaceFilter,
    height_projective,
    height_rational,
    logminus_sum,
)
from gcdlab.arith.laurent import (
    Function2,
    LaurentPoly2,
    RationalFunction2,
    UniPoly,
    degrees,
    monomials,
    resultant_x,
    resultant_y,
)
from gcdlab.arith.qplaces import PlaceSet, RationalLike, as_rational, is_s_unit, rational_str
from gcdlab.arith.sunits import MultiplicativeRelation, dependence

logger = get_logger(__name__)

Point = Tuple[Fraction, Fraction]


@dataclass(frozen=True)
class InequalityReport:
    """
    lhs < rhs (strict) or lhs <= rhs for the inequality named by ``tag``.
    ``satisfied`` is True only for a certified verdict.
    """
    tag: str
    lhs: LogForm
    rhs: LogForm
    epsilon: Fraction
    point: Point
    verdict: Verdict
    strict: bool = True

    @property
    def satisfied(self) -> bool:
        return self.verdict is Verdict.TRUE

    @property
    def undecided(self) -> bool:
        return self.verdict is Verdict.UNDECIDED

    def to_json(self) -> dict:
        return {
            "tag": self.tag,
            "lhs": self.lhs.to_json(),
            "rhs": self.rhs.to_json(),
            "lhs_float": format(float(self.lhs), ".17g"),
            "rhs_float": format(float(self.rhs), ".17g"),
            "epsilon": rational_str(self.epsilon),
            "verdict": self.verdict.value,
            "strict": self.strict,
        }


def _report(tag: str, lhs: LogForm, rhs: LogForm, eps: Fraction, point: Point, strict: bool = True) -> InequalityReport:
    return InequalityReport(tag, lhs, rhs, eps, point, decide(lhs, rhs, strict), strict)


def _point(u: RationalLike, v: RationalLike) -> Point:
    return as_rational(u), as_rational(v)


def _fmt(point: Point) -> str:
    return f"({rational_str(point[0])}, {rational_str(point[1])})"


def max_height_form(u: Fraction, v: Fraction) -> LogForm:
    """max{h(u), h(v)} as an exact log form."""
    return LogForm.log_of(max(height_rational(u).multiplicative, height_rational(v).multiplicative))


def logminus_form(s: LogMinusSum) -> LogForm:
    return LogForm.build([(1, s.archimedean_factor), (-1, s.finite_part)])


def gcd_analogue(p: LaurentPoly2, q: LaurentPoly2, u: RationalLike, v: RationalLike,
                 place_filter: PlaceFilter) -> LogMinusSum:
    """sum over the filtered places of log^- max{|p(u,v)|, |q(u,v)|}."""
    a, b = p.eval(u, v), q.eval(u, v)
    if a == 0 and b == 0:
        raise DomainError(messages.MSG_COMMON_ZERO)
    return logminus_sum([a, b], place_filter)


@dataclass(frozen=True)
class GcdBridge:
    a: int
    b: int
    finite_part: int
    gcd: int


def integer_gcd_bridge(a: int, b: int) -> GcdBridge:
    """For integers the finite part of the log-minus sum is exactly gcd(|a|, |b|)."""
    if a == 0 or b == 0:
        raise DomainError(messages.MSG_ZERO_ARGUMENT.format(name="a, b"))
    m = logminus_sum([a, b], PlaceFilter.finite_only()).finite_part
    g = gcd(a, b)
    if m != g:
        raise InvariantViolation(f"log-minus finite part {m} != gcd {g} for ({a}, {b})")
    return GcdBridge(a, b, m, g)


@dataclass(frozen=True)
class DecompositionReport:
    """H(a:b:1) * exp(sum log^- max{|a|,|b|}) = H(a:b), with a = p(u,v), b = q(u,v)."""
    values: Tuple[Fraction, Fraction]
    height_with_one: HeightValue
    height_pair: HeightValue
    logminus: LogMinusSum

    @property
    def holds(self) -> bool:
        return (self.height_with_one.multiplicative * self.logminus.multiplicative
                == self.height_pair.multiplicative)


def decomposition_identity(p: LaurentPoly2, q: LaurentPoly2, u: RationalLike, v: RationalLike) -> DecompositionReport:
    a, b = p.eval(u, v), q.eval(u, v)
    if a == 0 and b == 0:
        raise DomainError(messages.MSG_COMMON_ZERO)
    report = DecompositionReport(
        (a, b),
        height_projective([a, b, 1]),
        height_projective([a, b]),
        logminus_sum([a, b], PlaceFilter.all()),
    )
    if not report.holds:
        raise InvariantViolation(messages.MSG_DECOMPOSITION.format(point=_fmt(_point(u, v))))
    return report


def _split(f: Union[Function2, Tuple[LaurentPoly2, LaurentPoly2]]) -> Tuple[LaurentPoly2, LaurentPoly2]:
    if isinstance(f, tuple):
        return f
    f = RationalFunction2.coerce(f)
    return f.numerator, f.denominator


def check_thm1(p: LaurentPoly2, q: LaurentPoly2, u: RationalLike, v: RationalLike,
               eps: RationalLike) -> InequalityReport:
    """
    h(p/q) < h(p:q:1) - eps * max{h(u), h(v)}. The equivalent gcd form is
    evaluated alongside and any certified disagreement raises.
    """
    pt = _point(u, v)
    eps = as_rational(eps)
    a, b = p.eval(*pt), q.eval(*pt)
    if b == 0:
        raise DomainError(messages.MSG_POLE)
    bound = max_height_form(*pt).scale(eps)
    lhs = LogForm.log_of(height_rational(a / b).multiplicative)
    rhs = LogForm.log_of(height_projective([a, b, 1]).multiplicative) - bound
    report = _report("gcd-height", lhs, rhs, eps, pt)
    companion = check_thm1_gcd(p, q, *pt, eps)
    if not (report.undecided or companion.undecided) and report.verdict != companion.verdict:
        raise InvariantViolation(messages.MSG_FORMULATIONS_DISAGREE.format(point=_fmt(pt)))
    return report


def check_thm1_gcd(p: LaurentPoly2, q: LaurentPoly2, u: RationalLike, v: RationalLike,
                   eps: RationalLike) -> InequalityReport:
    """sum over all places of log^- max{|p|,|q|} < -eps * max{h(u), h(v)}."""
    pt = _point(u, v)
    eps = as_rational(eps)
    total = logminus_form(gcd_analogue(p, q, *pt, PlaceFilter.all()))
    return _report("gcd-logminus", total, -max_height_form(*pt).scale(eps), eps, pt)


@dataclass(frozen=True)
class RatioReport:
    u: Fraction
    v: Fraction
    height_ratio: HeightValue
    height_1uv: HeightValue
    relation: Optional[MultiplicativeRelation]

    @property
    def dependent(self) -> bool:
        return self.relation is not None

    @property
    def ratio(self) -> Optional[float]:
        denom = self.height_1uv.log
        if denom == 0:
            return None
        return self.height_ratio.log / denom


def check_cor1_ratio(u: RationalLike, v: RationalLike) -> RatioReport:
    """h((u-1)/(v-1)) against h(1:u:v), with the dependence status of (u, v)."""
    u, v = _point(u, v)
    _require_not_one(u, v)
    rel = dependence(u, v) if u != 0 and v != 0 else None
    return RatioReport(u, v, height_rational((u - 1) / (v - 1)), height_projective([1, u, v]), rel)


@dataclass(frozen=True)
class TrendPoint:
    threshold: float
    minimum: Optional[float]
    witness: Optional[Point]
    count: int


def ratio_trend(rows: Iterable[RatioReport], thresholds: Sequence[float]) -> List[TrendPoint]:
    """Minimum ratio over independent pairs with h(1:u:v) >= threshold, per threshold."""
    independent = [r for r in rows if not r.dependent and r.ratio is not None]
    out: List[TrendPoint] = []
    for h0 in thresholds:
        pool = [r for r in independent if r.height_1uv.log >= h0]
        if not pool:
            out.append(TrendPoint(h0, None, None, 0))
            continue
        best = min(pool, key=lambda r: (r.ratio, r.u, r.v))
        out.append(TrendPoint(h0, best.ratio, (best.u, best.v), len(pool)))
    return out


def check_main(f: Function2, u: RationalLike, v: RationalLike,
               eps: RationalLike) -> Tuple[InequalityReport, InequalityReport]:
    """
    Monomial form: h(f) < (1 - eps) max_i h(T_i(u, v)).
    The degree form is reported for its exceptional side, h(f) <= (1 - eps) max{h(u)/2deg_Y f, h(v)/2deg_X f};
    a term with zero degree is left out of the max.
    """
    f = RationalFunction2.coerce(f)
    pt = _point(u, v)
    eps = as_rational(eps)
    T = monomials(f)
    if not T.contains_one:
        raise DomainError(messages.MSG_MONOMIAL_ONE_REQUIRED)
    value = f.eval(*pt)
    lhs = LogForm.log_of(height_rational(value).multiplicative)
    top = max(height_rational(m).multiplicative for m in T.values(*pt))
    rep14 = _report("monomial-height", lhs, LogForm.log_of(top).scale(1 - eps), eps, pt)

    deg_x, deg_y = degrees(f)
    terms = []
    if deg_y:
        terms.append(LogForm.log_of(height_rational(pt[0]).multiplicative, Fraction(1, 2 * deg_y)))
    if deg_x:
        terms.append(LogForm.log_of(height_rational(pt[1]).multiplicative, Fraction(1, 2 * deg_x)))
    rhs15 = max_form(terms) if terms else LogForm.zero()
    rep15 = _report("degree-height", lhs, rhs15.scale(1 - eps), eps, pt, strict=False)
    return rep14, rep15


@dataclass(frozen=True)
class Prop2Report:
    full: InequalityReport
    complement: InequalityReport


def _require_not_one(u: Fraction, v: Fraction) -> None:
    if u == 1:
        raise DomainError(messages.MSG_VALUE_IS_ONE.format(name="u"))
    if v == 1:
        raise DomainError(messages.MSG_VALUE_IS_ONE.format(name="v"))


def check_prop2(u: RationalLike, v: RationalLike, eps: RationalLike, S: PlaceSet) -> Prop2Report:
    """
    sum of log^- max{|u - 1|, |v - 1|} over all places against -eps * max{h(u), h(v)},
    and over the places outside S against half that bound.
    """
    pt = _point(u, v)
    eps = as_rational(eps)
    _require_not_one(*pt)
    values = [pt[0] - 1, pt[1] - 1]
    bound = max_height_form(*pt)
    full = logminus_form(logminus_sum(values, PlaceFilter.all()))
    outside = logminus_form(logminus_sum(values, PlaceFilter.complement_of(S)))
    return Prop2Report(
        _report("pair-all", full, -bound.scale(eps), eps, pt),
        _report("pair-outside", outside, -bound.scale(eps / 2), eps, pt),
    )


def check_prop3(u: RationalLike, v: RationalLike, theta: RationalLike, eta: RationalLike,
                eps: RationalLike) -> InequalityReport:
    """sum over all places of log^- max{|u - theta|, |v - eta|} < -eps * max{h(u), h(v)}."""
    pt = _point(u, v)
    theta, eta, eps = as_rational(theta), as_rational(eta), as_rational(eps)
    if theta == 0 or eta == 0:
        raise DomainError(messages.MSG_ZERO_ARGUMENT.format(name="theta, eta"))
    values = [pt[0] - theta, pt[1] - eta]
    if values[0] == 0 and values[1] == 0:
        raise DomainError(messages.MSG_COMMON_ZERO)
    total = logminus_form(logminus_sum(values, PlaceFilter.all()))
    return _report("shifted-pair", total, -max_height_form(*pt).scale(eps), eps, pt)


def check_prop1_s(f: Function2, u: RationalLike, v: RationalLike, eps: RationalLike,
                  S: PlaceSet) -> InequalityReport:
    """sum over mu in S of log^- |f(u, v)|_mu < -eps * max{h(u), h(v)}."""
    pt = _point(u, v)
    eps = as_rational(eps)
    value = f.eval(*pt)
    if value == 0:
        raise DomainError(messages.MSG_COMMON_ZERO)
    total = logminus_form(logminus_sum([value], PlaceFilter.within(S)))
    return _report("within-s", total, -max_height_form(*pt).scale(eps), eps, pt)


class Prop4Variant(Enum):
    COMPLEMENT = "complement"
    ALL = "all"


def check_prop4(r: UniPoly, s: UniPoly, u: RationalLike, v: RationalLike, eps: RationalLike,
                S: PlaceSet, variant: Prop4Variant = Prop4Variant.COMPLEMENT) -> InequalityReport:
    """sum of log^- max{|r(u)|, |s(v)|} outside S, or over all places."""
    pt = _point(u, v)
    eps = as_rational(eps)
    if r.is_zero() or s.is_zero():
        raise DomainError(messages.MSG_ZERO_ARGUMENT.format(name="r, s"))
    if variant is Prop4Variant.ALL and r.constant_term == 0 and s.constant_term == 0:
        raise DomainError(messages.MSG_BOTH_VANISH_AT_ZERO)
    values = [r.eval(pt[0]), s.eval(pt[1])]
    if values[0] == 0 and values[1] == 0:
        raise DomainError(messages.MSG_COMMON_ZERO)
    pf = PlaceFilter.complement_of(S) if variant is Prop4Variant.COMPLEMENT else PlaceFilter.all()
    tag = "resultant-outside" if variant is Prop4Variant.COMPLEMENT else "resultant-all"
    total = logminus_form(logminus_sum(values, pf))
    return _report(tag, total, -max_height_form(*pt).scale(eps), eps, pt)


@dataclass(frozen=True)
class Resultants:
    P: LaurentPoly2
    Q: LaurentPoly2
    r: UniPoly
    s: UniPoly


def resultants_of(f: Union[Function2, Tuple[LaurentPoly2, LaurentPoly2]]) -> Resultants:
    """r(X) = Res_Y(P, Q) and s(Y) = Res_X(P, Q) for the primitive integer forms of p, q."""
    p, q = _split(f)
    P, Q = p.primitive_integer(), q.primitive_integer()
    return Resultants(P, Q, resultant_y(P, Q), resultant_x(P, Q))


@dataclass(frozen=True)
class ResultantChainReport:
    """
    Outside S, gcd(P(u,v), Q(u,v)) divides gcd(r(u), s(v)); m_rs = 0 means
    r(u) = s(v) = 0.
    """
    point: Point
    m_pq: int
    m_rs: int

    @property
    def holds(self) -> bool:
        return self.m_rs % self.m_pq == 0


def resultant_chain(res: Resultants, u: RationalLike, v: RationalLike, S: PlaceSet) -> ResultantChainReport:
    pt = _point(u, v)
    for x in pt:
        bad = is_s_unit(x, S)
        if bad is not None:
            raise NotSUnitError(messages.MSG_NOT_S_UNIT.format(prime=bad), prime=bad)
    outside = PlaceFilter.complement_of(S)
    m_pq = gcd_analogue(res.P, res.Q, *pt, outside).finite_part
    ru, sv = res.r.eval(pt[0]), res.s.eval(pt[1])
    m_rs = 0 if ru == 0 and sv == 0 else logminus_sum([ru, sv], outside).finite_part
    report = ResultantChainReport(pt, m_pq, m_rs)
    if not report.holds:
        raise InvariantViolation(messages.MSG_RESULTANT_CHAIN.format(point=_fmt(pt)))
    return report


class Prop2Case(Enum):
    AXIS = "axis"
    FIRST = "pq>0, wbar^q!=1"
    SECOND = "pq>0, wbar^q=1"
    THIRD = "pq<0, wbar^q!=1"
    FOURTH = "pq<0, wbar^q=1"


@dataclass(frozen=True)
class Prop2CaseReport:
    case: Prop2Case
    phi_degree: Optional[int]


def prop2_case(rel: MultiplicativeRelation, wbar: RationalLike) -> Prop2CaseReport:
    """
    Labels a subgroup direction by the sign of pq and whether wbar^q = 1, with
    the degree of phi(t) = (u - 1)/(v - 1) along the parametrization.
    """
    p, q = rel.p, rel.q
    wbar = as_rational(wbar)
    if p * q == 0:
        return Prop2CaseReport(Prop2Case.AXIS, None)
    unit = wbar ** q == 1
    if p * q > 0:
        if unit:
            return Prop2CaseReport(Prop2Case.SECOND, abs(p) + abs(q) - 1)
        return Prop2CaseReport(Prop2Case.FIRST, abs(p) + abs(q))
    if unit:
        return Prop2CaseReport(Prop2Case.FOURTH, max(abs(p), abs(q)) - 1)
    return Prop2CaseReport(Prop2Case.THIRD, max(abs(p), abs(q)))
