"""
Instrumentation of the auxiliary-point argument behind the finiteness of
the pair-all solutions: parameter choice, the point P(u, v), its linear forms at the places
of S, the double product and the chain of upper bounds for it.

Every bound is evaluated on both sides. Bounds that need the pair-outside hypothesis
are asserted only when it holds; the rest are asserted unconditionally.
"""
from dataclasses import dataclass, field
from fractions import Fraction
from math import floor
from typing import Dict, List, Optional, Tuple

from gcdlab.core import messages
from gcdlab.core.errors import DomainError, InvariantViolation, NotSUnitError
from gcdlab.core.logger import get_logger
from gcdlab.arith.decide import LogForm, Verdict, decide
from gcdlab.arith.gcdcore import check_prop2
from gcdlab.arith.heights import height_affine_point, height_rational
from gcdlab.arith.qplaces import (
    Place,
    PlaceSet,
    RationalLike,
    abs_at,
    as_rational,
    is_s_unit,
    rational_str,
    s_free_part,
)
from gcdlab.arith.sunits import SUnit

logger = get_logger(__name__)


@dataclass(frozen=True)
class ProofParams:
    epsilon: Fraction
    k: int
    h: int

    @property
    def N(self) -> int:
        return self.h * self.k + self.h + self.k

    @property
    def epsilon0(self) -> Fraction:
        return self.epsilon * self.h * self.k / 2 - self.h - 2 * self.k ** 2

    @property
    def delta(self) -> Fraction:
        return self.epsilon0 / (self.h + self.k + 3)

    def constraints(self) -> Dict[str, bool]:
        return {
            "k > 4/eps": self.k > 4 / self.epsilon,
            "h > 2k^2+1": self.h > 2 * self.k ** 2 + 1,
            "eps0 > 0": self.epsilon0 > 0,
        }

    def to_json(self) -> dict:
        return {
            "epsilon": rational_str(self.epsilon),
            "k": self.k,
            "h": self.h,
            "N": self.N,
            "epsilon0": rational_str(self.epsilon0),
            "delta": rational_str(self.delta),
        }


def choose_params(eps: RationalLike) -> ProofParams:
    """Smallest k > 4/eps, then the smallest h > 2k^2 + 1 with eps0 > 0."""
    eps = as_rational(eps)
    if eps <= 0:
        raise DomainError(messages.MSG_EPSILON_POSITIVE)
    k = floor(4 / eps) + 1
    h = 2 * k ** 2 + 2
    while ProofParams(eps, k, h).epsilon0 <= 0:
        h += 1
    return ProofParams(eps, k, h)


@dataclass(frozen=True)
class AuxPoint:
    """(z_1..z_k, then u^j v^-i for j = 0..k outer, i = 1..h inner)."""
    u: Fraction
    v: Fraction
    k: int
    h: int
    coordinates: Tuple[Fraction, ...]

    @property
    def N(self) -> int:
        return len(self.coordinates)

    def z(self, j: int) -> Fraction:
        return self.coordinates[j - 1]

    def y(self, j: int, i: int) -> Fraction:
        return self.coordinates[self.k + j * self.h + (i - 1)]


def build_point(u: RationalLike, v: RationalLike, k: int, h: int) -> AuxPoint:
    u, v = as_rational(u), as_rational(v)
    if v == 1:
        raise DomainError(messages.MSG_Z_UNDEFINED)
    if v == 0:
        raise DomainError(messages.MSG_ZERO_ARGUMENT.format(name="v"))
    if k < 1 or h < 1:
        raise DomainError("k and h must be positive")
    z = [(u ** j - 1) / (v - 1) for j in range(1, k + 1)]
    geometric = Fraction(0)
    for j in range(1, k + 1):
        geometric += u ** (j - 1)
        if z[j - 1] != z[0] * geometric:
            raise InvariantViolation(messages.MSG_RECURRENCE.format(j=j))
    tail = [u ** j * v ** (-i) for j in range(0, k + 1) for i in range(1, h + 1)]
    return AuxPoint(u, v, k, h, tuple(z + tail))


@dataclass(frozen=True)
class SPartition:
    s_plus: Tuple[Place, ...]
    s_minus: Tuple[Place, ...]

    def __contains__(self, place: Place) -> bool:
        return place in self.s_plus or place in self.s_minus


def partition(v: RationalLike, S: PlaceSet) -> SPartition:
    """S+ holds the places of S where |v| > 1."""
    v = as_rational(v)
    plus, minus = [], []
    for place in S.places():
        (plus if abs_at(v, place) > 1 else minus).append(place)
    return SPartition(tuple(plus), tuple(minus))


def special_form_value(P: AuxPoint, j: int) -> Fraction:
    """L_j(P) = z_j + sum_i y_{0,i} - sum_i y_{j,i}; asserts the closed form."""
    value = P.z(j) + sum(P.y(0, i) for i in range(1, P.h + 1)) - sum(P.y(j, i) for i in range(1, P.h + 1))
    closed = (P.u ** j - 1) * P.v ** (-P.h) / (P.v - 1)
    if value != closed:
        raise InvariantViolation(messages.MSG_CLOSED_FORM.format(j=j))
    return value


@dataclass(frozen=True)
class LinearFormTable:
    """|L_{j,mu}(P)|_mu for j = 1..N at every place of S, and |P|_mu = max_i |x_i|_mu."""
    values: Dict[Place, Tuple[Fraction, ...]]
    point_abs: Dict[Place, Fraction]


def linear_form_values(P: AuxPoint, part: SPartition) -> LinearFormTable:
    special = [special_form_value(P, j) for j in range(1, P.k + 1)]
    values: Dict[Place, Tuple[Fraction, ...]] = {}
    point_abs: Dict[Place, Fraction] = {}
    for place in part.s_plus + part.s_minus:
        coords = [abs_at(x, place) for x in P.coordinates]
        point_abs[place] = max(coords)
        if place in part.s_plus:
            row = [abs_at(L, place) for L in special] + coords[P.k:]
        else:
            row = coords
        values[place] = tuple(row)
    return LinearFormTable(values, point_abs)


@dataclass(frozen=True)
class LocalCheck:
    place: Place
    j: int
    lhs: Fraction
    rhs: Fraction

    @property
    def holds(self) -> bool:
        return self.lhs <= self.rhs


@dataclass(frozen=True)
class DoubleProduct:
    """
    The double product prod_j prod_{mu in S} |L_{j,mu}(P)|_mu / |P|_mu split as
    identity / |P|_S^(N-k) times special / |P|_S^k, where |P|_S = prod_{mu in S} |P|_mu.
    """
    identity_abs: Fraction
    special_abs: Fraction
    point_abs_S: Fraction
    N: int
    k: int
    local_checks: Tuple[LocalCheck, ...]
    printed_majorant_checks: Tuple[LocalCheck, ...]

    @property
    def value(self) -> Fraction:
        return self.identity_abs * self.special_abs / self.point_abs_S ** self.N

    @property
    def is_zero(self) -> bool:
        return self.special_abs == 0

    def log_form(self) -> LogForm:
        if self.is_zero:
            raise DomainError("double product vanishes")
        return LogForm.build([(1, self.identity_abs * self.special_abs), (-self.N, self.point_abs_S)])

    @property
    def identity_factor_holds(self) -> bool:
        return self.identity_abs == 1


def double_product(P: AuxPoint, part: SPartition, S: PlaceSet) -> DoubleProduct:
    table = linear_form_values(P, part)
    places = S.places()
    point_abs_S = Fraction(1)
    for place in places:
        point_abs_S *= table.point_abs[place]
    # coordinate by coordinate, so each factor stays small for S-unit points
    identity_abs = Fraction(1)
    for j in range(P.k, P.N):
        coordinate = Fraction(1)
        for place in places:
            coordinate *= table.values[place][j]
        identity_abs *= coordinate

    special_abs = Fraction(1)
    checks: List[LocalCheck] = []
    printed: List[LocalCheck] = []
    v = P.v
    for place in places:
        row = table.values[place]
        p_abs = table.point_abs[place]
        two = max(Fraction(1), abs_at(2, place))
        u_plus = max(Fraction(1), abs_at(P.u, place))
        v_abs = abs_at(v, place)
        one_minus_v = abs_at(1 - v, place)
        for j in range(1, P.k + 1):
            L = row[j - 1]
            special_abs *= L
            if place in part.s_minus:
                rhs = abs_at(P.u ** j - 1, place) / abs_at(v - 1, place) / p_abs
            else:
                rhs = two * u_plus ** j * v_abs ** (-P.h) / one_minus_v / p_abs
                printed.append(LocalCheck(place, j, L,
                                          abs_at(P.u ** j - 1, place) * v_abs ** (-P.h - 1) / one_minus_v))
            checks.append(LocalCheck(place, j, L / p_abs, rhs))
    bad = [c for c in checks if not c.holds]
    if bad:
        raise InvariantViolation(f"local linear form bound failed at place {bad[0].place}, j={bad[0].j}")
    return DoubleProduct(identity_abs, special_abs, point_abs_S, P.N, P.k, tuple(checks), tuple(printed))


def direct_double_product(P: AuxPoint, S: PlaceSet) -> Fraction:
    """Naive evaluation straight from the linear forms; meant for small k and h."""
    table = linear_form_values(P, partition(P.v, S))
    out = Fraction(1)
    for place, row in table.values.items():
        for value in row:
            out *= value / table.point_abs[place]
    return out


@dataclass(frozen=True)
class ChainEntry:
    name: str
    lhs: LogForm
    rhs: LogForm
    verdict: Verdict
    asserted: bool
    note: str = ""

    @property
    def passed(self) -> bool:
        return self.verdict is Verdict.TRUE

    def to_json(self) -> dict:
        return {
            "name": self.name,
            "lhs": self.lhs.to_json(),
            "rhs": self.rhs.to_json(),
            "lhs_float": format(float(self.lhs), ".17g"),
            "rhs_float": format(float(self.rhs), ".17g"),
            "verdict": self.verdict.value,
            "asserted": self.asserted,
            "note": self.note,
        }


@dataclass
class ChainLedger:
    u: Fraction
    v: Fraction
    params: ProofParams
    swapped: bool = False
    hypotheses: Dict[str, bool] = field(default_factory=dict)
    entries: List[ChainEntry] = field(default_factory=list)
    height_point: Optional[Fraction] = None

    @property
    def hypotheses_met(self) -> bool:
        return all(self.hypotheses.values())

    @property
    def undecided(self) -> int:
        return sum(1 for e in self.entries if e.verdict is Verdict.UNDECIDED)

    def entry(self, name: str) -> Optional[ChainEntry]:
        return next((e for e in self.entries if e.name == name), None)

    def add(self, name: str, lhs: LogForm, rhs: LogForm, asserted: bool, note: str = "") -> ChainEntry:
        e = ChainEntry(name, lhs, rhs, decide(lhs, rhs, strict=False), asserted, note)
        if asserted and e.verdict is Verdict.FALSE:
            raise InvariantViolation(f"bound {name} failed at ({rational_str(self.u)}, {rational_str(self.v)})")
        self.entries.append(e)
        return e

    def to_json(self) -> dict:
        return {
            "u": rational_str(self.u),
            "v": rational_str(self.v),
            "swapped": self.swapped,
            "params": self.params.to_json(),
            "hypotheses": self.hypotheses,
            "height_P": rational_str(self.height_point) if self.height_point is not None else None,
            "entries": [e.to_json() for e in self.entries],
        }


def _as_rational_unit(x) -> Fraction:
    return x.value if isinstance(x, SUnit) else as_rational(x)


def _log(x: Fraction, coef=1) -> LogForm:
    return LogForm.log_of(x, coef)


def verify_chain(u, v, params: ProofParams, S: PlaceSet) -> ChainLedger:
    u, v = _as_rational_unit(u), _as_rational_unit(v)
    for x in (u, v):
        if x == 0:
            raise DomainError(messages.MSG_ZERO_ARGUMENT.format(name="u, v"))
        bad = is_s_unit(x, S)
        if bad is not None:
            raise NotSUnitError(messages.MSG_NOT_S_UNIT.format(prime=bad), prime=bad)
    if v == 1:
        raise DomainError(messages.MSG_Z_UNDEFINED)
    swapped = False
    if height_rational(v).multiplicative < height_rational(u).multiplicative:
        u, v, swapped = v, u, True
    ledger = ChainLedger(u, v, params, swapped)
    eps, k, h, N = params.epsilon, params.k, params.h, params.N
    Hu, Hv = height_rational(u).multiplicative, height_rational(v).multiplicative

    ledger.hypotheses["u != 1"] = u != 1
    ledger.hypotheses["H(v) >= 2"] = Hv >= 2
    ledger.hypotheses["k >= 2"] = k >= 2
    ledger.hypotheses["eps0 > 0"] = params.epsilon0 > 0
    if u == 1:
        ledger.hypotheses["pair-outside"] = False
        logger.info(messages.MSG_HYPOTHESIS_UNMET.format(name="u != 1"))
        return ledger
    ledger.hypotheses["pair-outside"] = check_prop2(u, v, eps, S).complement.satisfied
    gated = ledger.hypotheses_met
    for name, ok in ledger.hypotheses.items():
        if not ok:
            logger.info(messages.MSG_HYPOTHESIS_UNMET.format(name=name))

    P = build_point(u, v, k, h)
    part = partition(v, S)
    dp = double_product(P, part, S)
    HP = height_affine_point(P.coordinates).multiplicative
    ledger.height_point = HP
    outside = HP / dp.point_abs_S
    H1v = height_rational(1 - v).multiplicative
    Hv1 = height_rational(v - 1).multiplicative

    if not dp.identity_factor_holds:
        raise InvariantViolation(f"identity forms do not multiply to 1 over S at ({rational_str(u)}, {rational_str(v)})")
    ledger.add("identity-forms", _log(dp.identity_abs), LogForm.zero(), asserted=True,
               note="coordinates are S-units")
    z1 = (u - 1) / (v - 1)
    ledger.add("outside-z1", _log(outside), _log(Fraction(s_free_part(z1.denominator, S.primes))),
               asserted=True, note="prod_{mu not in S} |P|_mu <= prod max(1, |z_1|_mu)")
    ledger.add("outside-S", _log(outside), _log(Hv1) - _log(Hv, eps / 2), asserted=gated,
               note="prod_{mu not in S} |P|_mu <= H(v-1) H(v)^(-eps/2)")

    if dp.is_zero:
        ledger.entries.append(ChainEntry("double-product", LogForm.zero(), LogForm.zero(), Verdict.TRUE, True,
                                         "double product vanishes since u^j = 1"))
        return ledger

    lhs = dp.log_form()
    common = _log(Hv, -h * k) + _log(2 * Hu, k * k)
    rhs16 = _log(HP, -N) + _log(outside, N) + common + _log(H1v, k)
    ledger.add("double-product", lhs, rhs16, asserted=True)
    rhs17a = _log(Hv, -h * k) + _log(HP, -N) + _log(Hv, (1 - eps / 2) * N) + _log(Fraction(2), N) \
        + _log(2 * Hu, k * k) + _log(2 * Hv, k)
    ledger.add("outside-applied", lhs, rhs17a, asserted=gated)
    rhs17b = _log(Hv, -h * k) + _log(HP, -N) + _log(Hv, (1 - eps / 2) * N) + _log(Fraction(2), N) \
        + _log(2 * Hv, k * k + k)
    ledger.add("heights-merged", lhs, rhs17b, asserted=gated)
    rhs18 = _log(HP, -N) + _log(Hv, -params.epsilon0) + _log(Fraction(2), N + k + k * k)
    ledger.add("final-bound", lhs, rhs18, asserted=gated)
    ledger.add("subspace-gap", lhs, _log(HP, -N - params.delta), asserted=False,
               note="informational: holds only for large H(v)")
    return ledger


@dataclass(frozen=True)
class HpBoundReport:
    height_point: Fraction
    sharp: Fraction
    doubled: Fraction
    top: Fraction
    printed: Fraction
    preconditions_met: bool

    @property
    def holds(self) -> bool:
        return self.height_point <= self.sharp <= self.doubled and (
            not self.preconditions_met or self.doubled <= self.top
        )

    @property
    def printed_holds(self) -> bool:
        return self.height_point <= self.printed


def hp_bound_check(u: RationalLike, v: RationalLike, params: ProofParams) -> HpBoundReport:
    """
    H(P) <= 2 H(u)^k H(v)^h <= 2 H(u)^k H(v)^(h+1), and <= H(v)^(h+k+2) when
    H(v) >= 2 and H(v) >= H(u). The bound H(u)^k H(v)^h H(1-v) without the
    factor 2 is recorded but can fail.
    """
    u, v = as_rational(u), as_rational(v)
    k, h = params.k, params.h
    P = build_point(u, v, k, h)
    HP = height_affine_point(P.coordinates).multiplicative
    Hu, Hv = height_rational(u).multiplicative, height_rational(v).multiplicative
    report = HpBoundReport(
        HP,
        2 * Hu ** k * Hv ** h,
        2 * Hu ** k * Hv ** (h + 1),
        Hv ** (h + k + 2),
        Hu ** k * Hv ** h * height_rational(1 - v).multiplicative,
        Hv >= 2 and Hv >= Hu,
    )
    if not report.holds:
        raise InvariantViolation(messages.MSG_HP_BOUND.format(point=(rational_str(u), rational_str(v))))
    return report
