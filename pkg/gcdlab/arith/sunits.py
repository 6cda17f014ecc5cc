"""
S-units of Q, multiplicative relations u^p v^q = w and the subtorus
parametrization u = t^q, v = wbar * t^(-p).
"""
import itertools
from dataclasses import dataclass
from fractions import Fraction
from math import gcd
from typing import Iterator, Optional, Tuple, Union

from sympy import integer_nthroot

from gcdlab.core import messages
from gcdlab.core.errors import DomainError, NotSUnitError
from gcdlab.arith.qplaces import PlaceSet, RationalLike, as_rational, rational_str, support, valuation


@dataclass(frozen=True)
class SUnit:
    """sign * prod p^e over the primes of ``places``; exponents align with places.primes."""
    sign: int
    exponents: Tuple[int, ...]
    places: PlaceSet

    def __post_init__(self):
        if self.sign not in (1, -1):
            raise DomainError(f"sign must be +1 or -1, got {self.sign}")
        if len(self.exponents) != len(self.places.primes):
            raise DomainError("exponent vector does not match the place set")

    @classmethod
    def from_rational(cls, x: RationalLike, places: Optional[PlaceSet] = None) -> "SUnit":
        x = as_rational(x)
        if x == 0:
            raise DomainError(messages.MSG_ZERO_ARGUMENT.format(name="S-unit"))
        primes = support(x)
        if places is None:
            places = PlaceSet(tuple(primes))
        for p in primes:
            if p not in places:
                raise NotSUnitError(messages.MSG_NOT_S_UNIT.format(prime=p), prime=p)
        exps = tuple(valuation(x, p) for p in places.primes)
        return cls(1 if x > 0 else -1, exps, places)

    @property
    def value(self) -> Fraction:
        out = Fraction(self.sign)
        for p, e in zip(self.places.primes, self.exponents):
            out *= Fraction(p) ** e
        return out

    @property
    def is_torsion(self) -> bool:
        return not any(self.exponents)

    def exponent_map(self) -> dict:
        return {p: e for p, e in zip(self.places.primes, self.exponents) if e}

    def __str__(self) -> str:
        return rational_str(self.value)


UnitLike = Union[SUnit, RationalLike]


def _value(x: UnitLike) -> Fraction:
    return x.value if isinstance(x, SUnit) else as_rational(x)


def enumerate_sunits(S: PlaceSet, exponent_bound: int, signs: str = "both") -> Iterator[SUnit]:
    """
    All S-units with |exponent| <= bound, lexicographic in the exponent
    vector, then sign (-1 before +1).
    """
    if exponent_bound < 0:
        raise DomainError("exponent bound must be nonnegative")
    if signs not in ("both", "positive"):
        raise DomainError(f"unknown sign mode {signs!r}")
    sign_choices = (-1, 1) if signs == "both" else (1,)
    span = range(-exponent_bound, exponent_bound + 1)
    for exps in itertools.product(span, repeat=len(S.primes)):
        for sign in sign_choices:
            yield SUnit(sign, exps, S)


@dataclass(frozen=True, order=True)
class MultiplicativeRelation:
    """u^p v^q = w with gcd(p, q) = 1 and p > 0, or p = 0 and q > 0."""
    p: int
    q: int
    w: Fraction = Fraction(1)

    def __post_init__(self):
        if (self.p, self.q) == (0, 0) or gcd(self.p, self.q) != 1:
            raise DomainError(messages.MSG_NOT_COPRIME_RELATION.format(p=self.p, q=self.q))
        if not (self.p > 0 or (self.p == 0 and self.q > 0)):
            raise DomainError(f"relation ({self.p}, {self.q}) is not in canonical sign")
        if self.w == 0:
            raise DomainError(messages.MSG_ZERO_ARGUMENT.format(name="w"))
        object.__setattr__(self, "w", as_rational(self.w))

    @classmethod
    def canonical(cls, p: int, q: int, w: RationalLike = 1) -> "MultiplicativeRelation":
        """Normalizes (p, q) to a primitive vector with canonical sign, adjusting w."""
        w = as_rational(w)
        if gcd(p, q) != 1:
            raise DomainError(messages.MSG_NOT_COPRIME_RELATION.format(p=p, q=q))
        if p < 0 or (p == 0 and q < 0):
            return cls(-p, -q, 1 / w)
        return cls(p, q, w)

    @property
    def direction(self) -> Tuple[int, int]:
        return (self.p, self.q)

    def evaluate(self, u: UnitLike, v: UnitLike) -> Fraction:
        return _value(u) ** self.p * _value(v) ** self.q

    def __str__(self) -> str:
        return f"u^{self.p} v^{self.q} = {rational_str(self.w)}"


def primitive_direction(a: int, b: int) -> Tuple[int, int]:
    """(a, b) divided by its gcd, with canonical sign."""
    g = gcd(a, b)
    if g == 0:
        raise DomainError(messages.MSG_NOT_COPRIME_RELATION.format(p=a, q=b))
    a, b = a // g, b // g
    if a < 0 or (a == 0 and b < 0):
        a, b = -a, -b
    return a, b


def _exponent_vectors(u: Fraction, v: Fraction) -> Tuple[Tuple[int, ...], Tuple[int, ...]]:
    primes = sorted(set(support(u)) | set(support(v)))
    return tuple(valuation(u, p) for p in primes), tuple(valuation(v, p) for p in primes)


def dependence(u: UnitLike, v: UnitLike) -> Optional[MultiplicativeRelation]:
    """
    Generator (p, q) of the lattice {(a, b) : u^a v^b = +-1}, with w = u^p v^q,
    or None when u and v are multiplicatively independent.
    """
    u, v = _value(u), _value(v)
    if u == 0 or v == 0:
        raise DomainError(messages.MSG_ZERO_ARGUMENT.format(name="u, v"))
    eu, ev = _exponent_vectors(u, v)
    if not any(eu):
        return MultiplicativeRelation(1, 0, u)
    if not any(ev):
        return MultiplicativeRelation(0, 1, v)
    i = next(k for k, (a, b) in enumerate(zip(eu, ev)) if a or b)
    p, q = primitive_direction(ev[i], -eu[i])
    if any(p * a + q * b for a, b in zip(eu, ev)):
        return None
    return MultiplicativeRelation(p, q, u ** p * v ** q)


def on_subtorus(u: UnitLike, v: UnitLike, rel: MultiplicativeRelation) -> bool:
    return rel.evaluate(u, v) == rel.w


@dataclass(frozen=True)
class Parametrization:
    """u = t^q, v = wbar * t^(-p)."""
    t: Fraction
    wbar: Fraction
    p: int
    q: int

    def point(self) -> Tuple[Fraction, Fraction]:
        return self.t ** self.q, self.wbar * self.t ** (-self.p)


def rational_root(x: Fraction, r: int) -> Optional[Fraction]:
    """A rational t with t^r = x (positive when r is even), or None."""
    if r <= 0:
        raise DomainError(f"root index must be positive, got {r}")
    if x == 0:
        return Fraction(0)
    if x < 0 and r % 2 == 0:
        return None
    num, num_exact = integer_nthroot(abs(x.numerator), r)
    den, den_exact = integer_nthroot(x.denominator, r)
    if not (num_exact and den_exact):
        return None
    root = Fraction(int(num), int(den))
    return -root if x < 0 else root


def parametrize(u: UnitLike, v: UnitLike, rel: MultiplicativeRelation) -> Parametrization:
    u, v = _value(u), _value(v)
    if not on_subtorus(u, v, rel):
        raise DomainError(messages.MSG_NOT_ON_SUBTORUS.format(p=rel.p, q=rel.q, w=rational_str(rel.w)))
    if rel.q == 0:
        # canonical form forces p = 1, i.e. u = w; only u = 1 fits u = t^0
        if u != 1:
            raise DomainError(messages.MSG_EXTENSION_FIELD)
        t, wbar = 1 / v, Fraction(1)
    else:
        target = u if rel.q > 0 else 1 / u
        t = rational_root(target, abs(rel.q))
        if t is None:
            raise DomainError(messages.MSG_EXTENSION_FIELD)
        wbar = v * t ** rel.p
    par = Parametrization(t, wbar, rel.p, rel.q)
    if par.point() != (u, v):
        raise DomainError(messages.MSG_EXTENSION_FIELD)
    return par
