"""
Exact linear forms in logarithms of positive rationals and a sign decider.

A comparison is settled by exact integer power comparison when that is cheap,
otherwise by outward-rounded interval arithmetic with doubling precision, and
finally by exact comparison under a larger bit cap. Anything left is UNDECIDED.
"""
import threading
from dataclasses import dataclass
from enum import Enum
from fractions import Fraction
from math import lcm
from typing import Dict, Iterable, List, Optional, Tuple

from mpmath import iv

from gcdlab import config
from gcdlab.core.errors import DomainError, GcdLabError
from gcdlab.core.logger import get_logger
from gcdlab.arith.heights import log_exact
from gcdlab.arith.qplaces import RationalLike, as_rational, rational_str

logger = get_logger(__name__)

# iv.prec is global to the mpmath interval context
_iv_lock = threading.Lock()


@dataclass(frozen=True)
class LogForm:
    """sum of c_i * log(r_i); bases are distinct, > 0 and != 1; coefficients nonzero."""
    terms: Tuple[Tuple[Fraction, Fraction], ...] = ()

    @classmethod
    def build(cls, pairs: Iterable[Tuple[RationalLike, RationalLike]]) -> "LogForm":
        merged: Dict[Fraction, Fraction] = {}
        for c, r in pairs:
            c, r = as_rational(c), as_rational(r)
            if r <= 0:
                raise DomainError(f"logarithm base must be positive, got {r}")
            if c == 0 or r == 1:
                continue
            merged[r] = merged.get(r, Fraction(0)) + c
        return cls(tuple(sorted((c, r) for r, c in merged.items() if c != 0)))

    @classmethod
    def log_of(cls, r: RationalLike, coef: RationalLike = 1) -> "LogForm":
        return cls.build([(coef, r)])

    @classmethod
    def zero(cls) -> "LogForm":
        return cls()

    def __add__(self, other: "LogForm") -> "LogForm":
        return LogForm.build(self.terms + other.terms)

    def __neg__(self) -> "LogForm":
        return LogForm(tuple((-c, r) for c, r in self.terms))

    def __sub__(self, other: "LogForm") -> "LogForm":
        return self + (-other)

    def scale(self, k: RationalLike) -> "LogForm":
        return LogForm.build((as_rational(k) * c, r) for c, r in self.terms)

    def is_zero(self) -> bool:
        return not self.terms

    def __float__(self) -> float:
        return float(sum(float(c) * log_exact(r) for c, r in self.terms))

    def to_json(self) -> List[List[str]]:
        return [[rational_str(c), rational_str(r)] for c, r in self.terms]

    def __str__(self) -> str:
        if not self.terms:
            return "0"
        return " + ".join(f"{rational_str(c)}*log({rational_str(r)})" for c, r in self.terms)


class Verdict(Enum):
    TRUE = "true"
    FALSE = "false"
    UNDECIDED = "undecided"

    @classmethod
    def of(cls, value: Optional[bool]) -> "Verdict":
        if value is None:
            return cls.UNDECIDED
        return cls.TRUE if value else cls.FALSE


def _integer_exponents(form: LogForm) -> List[Tuple[int, Fraction]]:
    common = lcm(*(c.denominator for c, _ in form.terms))
    return [(int(c * common), r) for c, r in form.terms]


def _exact_cost(exps: List[Tuple[int, Fraction]]) -> int:
    return sum(abs(n) * (r.numerator.bit_length() + r.denominator.bit_length()) for n, r in exps)


def _exact_sign(exps: List[Tuple[int, Fraction]]) -> int:
    # sign of log(prod r^n): compare prod over n > 0 with prod over n < 0
    left, right = 1, 1
    for n, r in exps:
        a, b = r.numerator, r.denominator
        if n > 0:
            left *= a ** n
            right *= b ** n
        else:
            left *= b ** -n
            right *= a ** -n
    return (left > right) - (left < right)


def _interval_sign(form: LogForm, bits: int) -> Optional[int]:
    with _iv_lock:
        saved = iv.prec
        try:
            iv.prec = bits
            total = iv.mpf(0)
            for c, r in form.terms:
                coef = iv.mpf(c.numerator) / iv.mpf(c.denominator)
                total += coef * (iv.log(iv.mpf(r.numerator)) - iv.log(iv.mpf(r.denominator)))
            if total.a > 0:
                return 1
            if total.b < 0:
                return -1
            return None
        finally:
            iv.prec = saved


def sign(form: LogForm) -> Optional[int]:
    """-1, 0, +1, or None when the sign could not be certified."""
    if form.is_zero():
        return 0
    exps = _integer_exponents(form)
    cost = _exact_cost(exps)
    if cost <= config.EXACT_FAST_BITS:
        return _exact_sign(exps)
    bits = config.INTERVAL_START_BITS
    while bits <= config.INTERVAL_MAX_BITS:
        s = _interval_sign(form, bits)
        if s is not None:
            return s
        bits *= 2
    if cost <= config.EXACT_MAX_BITS:
        logger.debug(f"Interval arithmetic inconclusive, exact comparison at cost {cost} bits")
        return _exact_sign(exps)
    logger.warning(f"Undecided comparison: {form}")
    return None


def decide(lhs: LogForm, rhs: LogForm, strict: bool = True) -> Verdict:
    """lhs < rhs (or lhs <= rhs when strict is False)."""
    s = sign(lhs - rhs)
    if s is None:
        return Verdict.UNDECIDED
    return Verdict.of(s < 0 if strict else s <= 0)


def max_form(forms: Iterable[LogForm]) -> LogForm:
    """Exact maximum; raises when two candidates cannot be ordered."""
    best: Optional[LogForm] = None
    for form in forms:
        if best is None:
            best = form
            continue
        s = sign(form - best)
        if s is None:
            raise GcdLabError(f"cannot order {form} and {best}")
        if s > 0:
            best = form
    if best is None:
        raise DomainError("max of an empty family")
    return best
