"""
Weil heights and the log-minus (gcd-analogue) sums.

Heights are carried multiplicatively as exact rationals; logarithms are taken
only when a value is reported.
"""
import math
from dataclasses import dataclass
from enum import Enum
from fractions import Fraction
from functools import reduce
from math import gcd, lcm
from typing import Optional, Sequence, Union

from gcdlab.core import messages
from gcdlab.core.errors import DomainError
from gcdlab.arith.qplaces import PlaceSet, RationalLike, as_rational, s_free_part, s_part

Real = Union[Fraction, int, float]


def log_exact(x: Union[Fraction, int]) -> float:
    """Natural log of a positive rational without overflowing floats."""
    x = as_rational(x)
    if x <= 0:
        raise DomainError(messages.MSG_LOG_DOMAIN.format(value=x))
    return math.log(x.numerator) - math.log(x.denominator)


def _log(x: Real) -> float:
    if isinstance(x, float):
        if x <= 0:
            raise DomainError(messages.MSG_LOG_DOMAIN.format(value=x))
        return math.log(x)
    return log_exact(x)


def log_plus(x: Real) -> float:
    """max(0, log x)."""
    return max(0.0, _log(x))


def log_minus(x: Real) -> float:
    """min(0, log x)."""
    return min(0.0, _log(x))


@dataclass(frozen=True, order=True)
class HeightValue:
    multiplicative: Fraction

    @property
    def log(self) -> float:
        return log_exact(self.multiplicative)

    def __str__(self) -> str:
        m = self.multiplicative
        return str(m.numerator) if m.denominator == 1 else f"{m.numerator}/{m.denominator}"


def height_rational(x: RationalLike) -> HeightValue:
    """H(a/c) = max(|a|, c); H(0) = 1."""
    x = as_rational(x)
    return HeightValue(Fraction(max(abs(x.numerator), x.denominator)))


def primitive_integer_vector(coords: Sequence[RationalLike]) -> tuple:
    """Scales a nonzero rational vector to coprime integers."""
    values = [as_rational(c) for c in coords]
    if not values or all(c == 0 for c in values):
        raise DomainError(messages.MSG_ALL_ZERO)
    common = lcm(*(c.denominator for c in values))
    ints = [c.numerator * (common // c.denominator) for c in values]
    g = reduce(gcd, (abs(i) for i in ints))
    return tuple(i // g for i in ints)


def height_projective(coords: Sequence[RationalLike]) -> HeightValue:
    """H(x_1:...:x_n) as the max absolute value of the coprime integer form."""
    return HeightValue(Fraction(max(abs(i) for i in primitive_integer_vector(coords))))


def height_affine_point(coords: Sequence[RationalLike]) -> HeightValue:
    """
    H(P) = prod over all places of max_i |x_i|_mu for the coordinates as given.
    By the product formula this is scale invariant and equals the projective
    height of the same vector.
    """
    return height_projective(coords)


class FilterKind(Enum):
    ALL = "all"
    FINITE_ONLY = "finite"
    COMPLEMENT_OF = "complement"
    WITHIN = "within"


@dataclass(frozen=True)
class PlaceFilter:
    kind: FilterKind
    places: Optional[PlaceSet] = None

    def __post_init__(self):
        if self.kind in (FilterKind.COMPLEMENT_OF, FilterKind.WITHIN) and self.places is None:
            raise DomainError(f"filter {self.kind.value} needs a place set")

    @classmethod
    def all(cls) -> "PlaceFilter":
        return cls(FilterKind.ALL)

    @classmethod
    def finite_only(cls) -> "PlaceFilter":
        return cls(FilterKind.FINITE_ONLY)

    @classmethod
    def complement_of(cls, S: PlaceSet) -> "PlaceFilter":
        return cls(FilterKind.COMPLEMENT_OF, S)

    @classmethod
    def within(cls, S: PlaceSet) -> "PlaceFilter":
        return cls(FilterKind.WITHIN, S)

    @property
    def includes_archimedean(self) -> bool:
        # S always contains the archimedean place, so its complement never does.
        return self.kind in (FilterKind.ALL, FilterKind.WITHIN)

    def __str__(self) -> str:
        if self.places is None:
            return self.kind.value
        return f"{self.kind.value}{self.places}"


@dataclass(frozen=True)
class LogMinusSum:
    """
    Sum over the filtered places of log^- max_i |x_i|_mu.

    The finite places contribute -log(finite_part); the archimedean place
    contributes log(archimedean_factor) with archimedean_factor = min(1, max|x_i|),
    or 1 when the filter excludes it.
    """
    finite_part: int
    archimedean_factor: Fraction
    place_filter: PlaceFilter

    @property
    def archimedean_part(self) -> float:
        return log_exact(self.archimedean_factor)

    @property
    def multiplicative(self) -> Fraction:
        """exp(total), exactly."""
        return self.archimedean_factor / self.finite_part

    @property
    def total(self) -> float:
        return self.archimedean_part - math.log(self.finite_part)


def logminus_sum(values: Sequence[RationalLike], place_filter: PlaceFilter) -> LogMinusSum:
    """
    For reduced fractions, the primes with max_i |x_i|_p < 1 are exactly the
    common divisors of the numerators, so the finite part is their gcd, with
    the primes excluded by the filter divided out. Zero entries are allowed as
    long as some entry is nonzero.
    """
    xs = [as_rational(v) for v in values]
    if not xs or all(x == 0 for x in xs):
        raise DomainError(messages.MSG_ALL_ZERO)
    m = reduce(gcd, (abs(x.numerator) for x in xs))
    if place_filter.kind is FilterKind.COMPLEMENT_OF:
        m = s_free_part(m, place_filter.places.primes)
    elif place_filter.kind is FilterKind.WITHIN:
        m = s_part(m, place_filter.places.primes)
    arch = Fraction(1)
    if place_filter.includes_archimedean:
        arch = min(Fraction(1), max(abs(x) for x in xs))
    return LogMinusSum(m, arch, place_filter)


def logplus_height(values: Sequence[RationalLike]) -> HeightValue:
    """prod_mu max(1, max_i |x_i|_mu) = H(1 : x_1 : ... : x_n)."""
    return height_projective([1, *values])
