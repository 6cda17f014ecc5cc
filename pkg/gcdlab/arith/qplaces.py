"""
Places of Q, normalized absolute values, valuations and integer factorization.

Rationals are ``fractions.Fraction`` throughout: always reduced, positive
denominator, zero stored as 0/1.
"""
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from typing import Dict, Iterable, List, Optional, Tuple, Union

from sympy import isprime, multiplicity, pollard_rho, primerange

from gcdlab import config
from gcdlab.core import messages
from gcdlab.core.errors import DomainError, FactorizationBailout, InvariantViolation
from gcdlab.core.logger import get_logger

logger = get_logger(__name__)

Rational = Fraction
RationalLike = Union[Fraction, int, str]


def as_rational(x: RationalLike) -> Fraction:
    """Coerces ints, Fractions and "a/b" strings to a reduced Fraction."""
    if isinstance(x, Fraction):
        return x
    if isinstance(x, bool):
        raise TypeError("bool is not a rational")
    if isinstance(x, (int, str)):
        return Fraction(x)
    raise TypeError(f"cannot interpret {x!r} as a rational")


def rational_str(x: Fraction) -> str:
    """Exact I/O form: "a" for integers, "a/b" otherwise."""
    if x.denominator == 1:
        return str(x.numerator)
    return f"{x.numerator}/{x.denominator}"


@dataclass(frozen=True, order=True)
class Place:
    """A place of Q: ``prime=None`` is the archimedean place."""
    prime: Optional[int] = None

    def __post_init__(self):
        if self.prime is not None and not isprime(self.prime):
            raise DomainError(messages.MSG_NOT_PRIME.format(value=self.prime))

    @property
    def is_archimedean(self) -> bool:
        return self.prime is None

    def __str__(self) -> str:
        return "inf" if self.prime is None else str(self.prime)


ARCHIMEDEAN = Place()


@dataclass(frozen=True)
class PlaceSet:
    """
    A finite set S of places. The archimedean place is always a member;
    ``primes`` lists the finite ones in strictly increasing order.
    """
    primes: Tuple[int, ...] = field(default_factory=tuple)

    def __post_init__(self):
        primes = tuple(sorted(set(int(p) for p in self.primes)))
        for p in primes:
            if not isprime(p):
                raise DomainError(messages.MSG_NOT_PRIME.format(value=p))
        object.__setattr__(self, "primes", primes)

    @classmethod
    def of(cls, *primes: int) -> "PlaceSet":
        return cls(tuple(primes))

    def __contains__(self, place: Union[Place, int, None]) -> bool:
        if isinstance(place, Place):
            place = place.prime
        if place is None:
            return True
        return place in self.primes

    def places(self) -> List[Place]:
        return [ARCHIMEDEAN] + [Place(p) for p in self.primes]

    def __len__(self) -> int:
        return len(self.primes) + 1

    def __str__(self) -> str:
        return "{" + ",".join(["inf"] + [str(p) for p in self.primes]) + "}"


def valuation(x: RationalLike, p: int) -> int:
    """p-adic valuation v_p(num) - v_p(den)."""
    x = as_rational(x)
    if x == 0:
        raise DomainError(messages.MSG_VALUATION_OF_ZERO)
    if not isprime(p):
        raise DomainError(messages.MSG_NOT_PRIME.format(value=p))
    return multiplicity(p, abs(x.numerator)) - multiplicity(p, x.denominator)


def abs_at(x: RationalLike, place: Place) -> Fraction:
    """
    Normalized absolute value |x|_place.

    Finite places return p^(-v_p(x)). The archimedean value |x| of a rational
    is itself an exact rational, so it is returned exactly as well; no
    rounding happens in this module.
    """
    x = as_rational(x)
    if place.is_archimedean:
        return abs(x)
    if x == 0:
        return Fraction(0)
    v = valuation(x, place.prime)
    return Fraction(1, place.prime ** v) if v >= 0 else Fraction(place.prime ** (-v))


@lru_cache(maxsize=4)
def _small_primes(limit: int) -> Tuple[int, ...]:
    return tuple(primerange(2, limit))


def _split(n: int, out: Dict[int, int], bailout: int, seed: int) -> None:
    if n == 1:
        return
    if isprime(n):
        out[n] = out.get(n, 0) + 1
        return
    if n > bailout:
        raise FactorizationBailout(
            messages.MSG_FACTOR_BAILOUT.format(cofactor=n, limit=bailout), cofactor=n
        )
    d = pollard_rho(n, seed=seed)
    attempt = 0
    while d is None or d in (1, n):
        attempt += 1
        d = pollard_rho(n, seed=seed + attempt, retries=5)
    _split(d, out, bailout, seed)
    _split(n // d, out, bailout, seed)


def factor(n: int, bailout: Optional[int] = None) -> Dict[int, int]:
    """
    Factorization of a positive integer as an ascending {prime: multiplicity} map.

    Trial division by primes below TRIAL_DIVISION_LIMIT, then a deterministic
    primality check and seeded rho splitting of the cofactor. A composite
    cofactor above the bail-out raises FactorizationBailout.
    """
    if n < 1:
        raise DomainError(f"factor expects a positive integer, got {n}")
    bailout = config.FACTOR_BAILOUT if bailout is None else bailout
    limit = config.TRIAL_DIVISION_LIMIT
    result: Dict[int, int] = {}
    for p in _small_primes(limit):
        if p * p > n:
            break
        if n % p == 0:
            e = 0
            while n % p == 0:
                n //= p
                e += 1
            result[p] = e
    if n > 1:
        _split(n, result, bailout, config.RHO_SEED)
    return dict(sorted(result.items()))


def support(x: RationalLike) -> List[int]:
    """Primes where |x|_p differs from 1."""
    x = as_rational(x)
    if x == 0:
        raise DomainError(messages.MSG_VALUATION_OF_ZERO)
    return sorted(set(factor(abs(x.numerator))) | set(factor(x.denominator)))


@dataclass(frozen=True)
class ProductFormulaReport:
    x: Fraction
    finite_part: Fraction
    archimedean: Fraction
    total: Fraction
    local_values: Tuple[Tuple[int, Fraction], ...]

    @property
    def holds(self) -> bool:
        return self.total == 1


def product_formula_check(x: RationalLike) -> ProductFormulaReport:
    """
    Computes the product of |x|_p over the primes dividing x and checks it
    equals den/|num|, so that the product over all places is exactly 1.
    """
    x = as_rational(x)
    if x == 0:
        raise DomainError(messages.MSG_VALUATION_OF_ZERO)
    local: List[Tuple[int, Fraction]] = []
    finite = Fraction(1)
    for p in support(x):
        value = abs_at(x, Place(p))
        local.append((p, value))
        finite *= value
    archimedean = abs_at(x, ARCHIMEDEAN)
    report = ProductFormulaReport(x, finite, archimedean, finite * archimedean, tuple(local))
    if finite != Fraction(x.denominator, abs(x.numerator)) or not report.holds:
        raise InvariantViolation(messages.MSG_PRODUCT_FORMULA.format(x=x))
    return report


def is_s_unit(x: RationalLike, S: PlaceSet) -> Optional[int]:
    """Returns None when x is an S-unit, otherwise the smallest prime of x outside S."""
    x = as_rational(x)
    if x == 0:
        raise DomainError(messages.MSG_VALUATION_OF_ZERO)
    rest = abs(x.numerator) * x.denominator
    for p in S.primes:
        while rest % p == 0:
            rest //= p
    if rest == 1:
        return None
    return min(factor(rest))


def s_free_part(n: int, S: Iterable[int]) -> int:
    """Divides every prime of S out of the positive integer n."""
    for p in S:
        while n % p == 0:
            n //= p
    return n


def s_part(n: int, S: Iterable[int]) -> int:
    return n // s_free_part(n, S)
