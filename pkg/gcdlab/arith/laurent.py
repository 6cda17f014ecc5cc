"""
Bivariate Laurent polynomials and rational functions over Q.

Sympy does the heavy polynomial algebra (gcd, resultants, rational roots);
the types here keep exact Fraction coefficients on a sparse exponent map.
"""
from dataclasses import dataclass, field
from fractions import Fraction
from functools import reduce
from math import gcd, lcm
from typing import Dict, Iterable, List, Mapping, Optional, Tuple, Union

import sympy
from sympy import Poly, QQ, Rational as SymRational

from gcdlab.core import messages
from gcdlab.core.errors import CommonFactorError, DomainError, InvariantViolation
from gcdlab.arith.heights import HeightValue, height_rational
from gcdlab.arith.qplaces import RationalLike, as_rational, rational_str
from gcdlab.arith.sunits import primitive_direction

X, Y = sympy.symbols("X Y")
T_VAR = sympy.Symbol("t")

Exponent = Tuple[int, int]


def _to_sym(c: Fraction) -> SymRational:
    return SymRational(c.numerator, c.denominator)


def _from_sym(c) -> Fraction:
    c = SymRational(c)
    return Fraction(int(c.p), int(c.q))


@dataclass(frozen=True)
class LaurentPoly2:
    """Sparse map (i, j) -> nonzero coefficient of X^i Y^j, stored sorted."""
    terms: Tuple[Tuple[Exponent, Fraction], ...] = ()

    @classmethod
    def from_dict(cls, coeffs: Mapping[Exponent, RationalLike]) -> "LaurentPoly2":
        cleaned = {}
        for (i, j), c in coeffs.items():
            c = as_rational(c)
            if c != 0:
                cleaned[(int(i), int(j))] = c
        return cls(tuple(sorted(cleaned.items())))

    @classmethod
    def constant(cls, c: RationalLike) -> "LaurentPoly2":
        return cls.from_dict({(0, 0): c})

    @classmethod
    def monomial(cls, i: int, j: int, c: RationalLike = 1) -> "LaurentPoly2":
        return cls.from_dict({(i, j): c})

    @classmethod
    def from_sympy(cls, expr) -> "LaurentPoly2":
        poly = Poly(sympy.expand(expr), X, Y, domain=QQ)
        return cls.from_dict({(int(i), int(j)): _from_sym(c) for (i, j), c in poly.terms()})

    def as_dict(self) -> Dict[Exponent, Fraction]:
        return dict(self.terms)

    @property
    def support(self) -> Tuple[Exponent, ...]:
        return tuple(e for e, _ in self.terms)

    def is_zero(self) -> bool:
        return not self.terms

    def is_polynomial(self) -> bool:
        return all(i >= 0 and j >= 0 for (i, j), _ in self.terms)

    def coefficient(self, i: int, j: int) -> Fraction:
        return self.as_dict().get((i, j), Fraction(0))

    def __add__(self, other: "LaurentPoly2") -> "LaurentPoly2":
        out = self.as_dict()
        for e, c in other.terms:
            out[e] = out.get(e, Fraction(0)) + c
        return LaurentPoly2.from_dict(out)

    def __neg__(self) -> "LaurentPoly2":
        return LaurentPoly2(tuple((e, -c) for e, c in self.terms))

    def __sub__(self, other: "LaurentPoly2") -> "LaurentPoly2":
        return self + (-other)

    def __mul__(self, other: Union["LaurentPoly2", RationalLike]) -> "LaurentPoly2":
        if not isinstance(other, LaurentPoly2):
            other = LaurentPoly2.constant(other)
        out: Dict[Exponent, Fraction] = {}
        for (i1, j1), c1 in self.terms:
            for (i2, j2), c2 in other.terms:
                e = (i1 + i2, j1 + j2)
                out[e] = out.get(e, Fraction(0)) + c1 * c2
        return LaurentPoly2.from_dict(out)

    __rmul__ = __mul__

    def __pow__(self, n: int) -> "LaurentPoly2":
        if n < 0:
            if len(self.terms) != 1:
                raise DomainError("negative powers are defined only for monomials")
            (i, j), c = self.terms[0]
            return LaurentPoly2.monomial(i * n, j * n, c ** n)
        out = LaurentPoly2.constant(1)
        for _ in range(n):
            out = out * self
        return out

    def shift(self, di: int, dj: int) -> "LaurentPoly2":
        return LaurentPoly2(tuple(((i + di, j + dj), c) for (i, j), c in self.terms))

    def min_exponents(self) -> Exponent:
        if not self.terms:
            return (0, 0)
        return (min(i for (i, _), _ in self.terms), min(j for (_, j), _ in self.terms))

    def degree_x(self) -> int:
        return max((i for (i, _), _ in self.terms), default=0)

    def degree_y(self) -> int:
        return max((j for (_, j), _ in self.terms), default=0)

    def eval(self, u: RationalLike, v: RationalLike) -> Fraction:
        u, v = as_rational(u), as_rational(v)
        if (u == 0 or v == 0) and not self.is_polynomial():
            raise DomainError(messages.MSG_ZERO_ARGUMENT.format(name="u, v"))
        total = Fraction(0)
        for (i, j), c in self.terms:
            total += c * u ** i * v ** j
        return total

    def primitive_integer(self) -> "LaurentPoly2":
        """Rescaled to coprime integer coefficients, positive leading coefficient."""
        if not self.terms:
            return self
        common = lcm(*(c.denominator for _, c in self.terms))
        ints = [(e, c.numerator * (common // c.denominator)) for e, c in self.terms]
        g = reduce(gcd, (abs(c) for _, c in ints))
        sign = -1 if ints[-1][1] < 0 else 1
        return LaurentPoly2(tuple((e, Fraction(sign * c // g)) for e, c in ints))

    def to_sympy(self):
        return sum((_to_sym(c) * X ** i * Y ** j for (i, j), c in self.terms), sympy.Integer(0))

    def to_poly(self) -> Poly:
        if not self.is_polynomial():
            raise DomainError("Laurent polynomial has negative exponents")
        return Poly(self.to_sympy(), X, Y, domain=QQ)

    def __str__(self) -> str:
        return str(self.to_sympy()) if self.terms else "0"


@dataclass(frozen=True)
class UniPoly:
    """Univariate polynomial with Fraction coefficients, low degree first."""
    coeffs: Tuple[Fraction, ...] = ()

    def __post_init__(self):
        cs = [as_rational(c) for c in self.coeffs]
        while cs and cs[-1] == 0:
            cs.pop()
        object.__setattr__(self, "coeffs", tuple(cs))

    @classmethod
    def from_sympy(cls, expr, var) -> "UniPoly":
        poly = Poly(expr, var, domain=QQ)
        return cls(tuple(_from_sym(c) for c in reversed(poly.all_coeffs())))

    def is_zero(self) -> bool:
        return not self.coeffs

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    @property
    def constant_term(self) -> Fraction:
        return self.coeffs[0] if self.coeffs else Fraction(0)

    def eval(self, t: RationalLike) -> Fraction:
        t = as_rational(t)
        acc = Fraction(0)
        for c in reversed(self.coeffs):
            acc = acc * t + c
        return acc

    def to_sympy(self, var=X):
        return sum((_to_sym(c) * var ** k for k, c in enumerate(self.coeffs)), sympy.Integer(0))

    def rational_roots(self) -> List[Fraction]:
        """Distinct rational roots, ascending."""
        if self.degree < 1:
            return []
        roots = Poly(self.to_sympy(T_VAR), T_VAR, domain=QQ).ground_roots()
        return sorted(_from_sym(r) for r in roots)

    def __str__(self) -> str:
        return str(self.to_sympy()) if self.coeffs else "0"


@dataclass(frozen=True)
class RationalFunction2:
    """p(X, Y) / q(X, Y) with coprime polynomial numerator and denominator."""
    numerator: LaurentPoly2
    denominator: LaurentPoly2 = field(default_factory=lambda: LaurentPoly2.constant(1))

    def __post_init__(self):
        if self.denominator.is_zero():
            raise DomainError(messages.MSG_ZERO_DENOMINATOR)
        if not (self.numerator.is_polynomial() and self.denominator.is_polynomial()):
            raise DomainError("numerator and denominator must be polynomials")
        if self.numerator.is_zero():
            object.__setattr__(self, "denominator", LaurentPoly2.constant(1))
            return
        common = self.numerator.to_poly().gcd(self.denominator.to_poly())
        if not common.is_ground:
            raise CommonFactorError(f"{messages.MSG_SHARED_FACTOR}: {common.as_expr()}")

    @classmethod
    def from_laurent(cls, f: LaurentPoly2) -> "RationalFunction2":
        """Clears negative exponents into a monomial denominator."""
        mi, mj = f.min_exponents()
        si, sj = max(0, -mi), max(0, -mj)
        return cls(f.shift(si, sj), LaurentPoly2.monomial(si, sj))

    @classmethod
    def coerce(cls, f: Union["RationalFunction2", LaurentPoly2]) -> "RationalFunction2":
        return f if isinstance(f, RationalFunction2) else cls.from_laurent(f)

    def eval(self, u: RationalLike, v: RationalLike) -> Fraction:
        den = self.denominator.eval(u, v)
        if den == 0:
            raise DomainError(messages.MSG_POLE)
        return self.numerator.eval(u, v) / den

    def __str__(self) -> str:
        return f"({self.numerator})/({self.denominator})"


Function2 = Union[LaurentPoly2, RationalFunction2]


@dataclass(frozen=True)
class MonomialSet:
    monomials: Tuple[Exponent, ...]

    def __post_init__(self):
        mons = tuple(sorted(set(self.monomials)))
        if len(mons) != len(self.monomials):
            raise DomainError("duplicate monomials")
        object.__setattr__(self, "monomials", mons)

    @property
    def contains_one(self) -> bool:
        return (0, 0) in self.monomials

    @property
    def d1(self) -> int:
        return max((abs(i) for i, _ in self.monomials), default=0)

    @property
    def d2(self) -> int:
        return max((abs(j) for _, j in self.monomials), default=0)

    @property
    def N(self) -> int:
        return len(self.monomials)

    def nonconstant(self) -> Tuple[Exponent, ...]:
        return tuple(m for m in self.monomials if m != (0, 0))

    def values(self, u: RationalLike, v: RationalLike) -> List[Fraction]:
        u, v = as_rational(u), as_rational(v)
        return [u ** i * v ** j for i, j in self.monomials]


def monomials(f: Function2) -> MonomialSet:
    """Union of the numerator and denominator supports."""
    if isinstance(f, LaurentPoly2):
        return MonomialSet(f.support)
    return MonomialSet(tuple(set(f.numerator.support) | set(f.denominator.support)))


@dataclass(frozen=True)
class SupportLine:
    """
    All support points lie on offset + m * direction; f(u, v) equals
    u^o1 v^o2 * phi(u^d1 v^d2) with phi[m] the coefficient at step m.
    offset is (0, 0) whenever the line passes through the origin.
    """
    direction: Exponent
    offset: Exponent
    steps: Tuple[int, ...]
    phi: Optional[Tuple[Tuple[int, Fraction], ...]] = None

    def phi_eval(self, t: RationalLike) -> Fraction:
        if self.phi is None:
            raise DomainError("support line was computed without coefficients")
        t = as_rational(t)
        return sum((c * t ** m for m, c in self.phi), Fraction(0))


def support_line_test(T: Union[MonomialSet, LaurentPoly2]) -> Optional[SupportLine]:
    coeffs = T.as_dict() if isinstance(T, LaurentPoly2) else None
    points = list(T.support if isinstance(T, LaurentPoly2) else T.monomials)
    if not points:
        return None
    base = points[0]
    diffs = [(i - base[0], j - base[1]) for i, j in points]
    nonzero = [d for d in diffs if d != (0, 0)]
    if not nonzero:
        direction = primitive_direction(*base) if base != (0, 0) else (1, 0)
    else:
        direction = primitive_direction(*nonzero[0])
        for di, dj in nonzero:
            if di * direction[1] - dj * direction[0] != 0:
                return None
    through_origin = base[0] * direction[1] - base[1] * direction[0] == 0
    offset = (0, 0) if through_origin else base

    def step(pt: Exponent) -> int:
        di, dj = pt[0] - offset[0], pt[1] - offset[1]
        return di // direction[0] if direction[0] else dj // direction[1]

    steps = tuple(step(pt) for pt in points)
    phi = None
    if coeffs is not None:
        phi = tuple(sorted((step(pt), coeffs[pt]) for pt in points))
    return SupportLine(direction, offset, steps, phi)


@dataclass(frozen=True)
class CollapseMap:
    """c_l = sum over (i, j) with q*i - p*j = l of a_ij * wbar^j."""
    by_degree: Tuple[Tuple[int, Fraction], ...]
    collisions: Tuple[int, ...]
    p: int = 0
    q: int = 0
    wbar: Fraction = Fraction(1)

    @property
    def cancellation(self) -> bool:
        coeffs = dict(self.by_degree)
        return any(coeffs[l] == 0 for l in self.collisions)

    def as_dict(self) -> Dict[int, Fraction]:
        return dict(self.by_degree)


def collapse_coefficients(f: LaurentPoly2, p: int, q: int, wbar: RationalLike) -> CollapseMap:
    wbar = as_rational(wbar)
    if wbar == 0:
        raise DomainError(messages.MSG_ZERO_ARGUMENT.format(name="wbar"))
    if gcd(p, q) != 1:
        raise DomainError(messages.MSG_NOT_COPRIME_RELATION.format(p=p, q=q))
    coeffs: Dict[int, Fraction] = {}
    hits: Dict[int, int] = {}
    for (i, j), a in f.terms:
        l = q * i - p * j
        coeffs[l] = coeffs.get(l, Fraction(0)) + a * wbar ** j
        hits[l] = hits.get(l, 0) + 1
    collisions = tuple(sorted(l for l, n in hits.items() if n >= 2))
    return CollapseMap(tuple(sorted(coeffs.items())), collisions, p, q, wbar)


def univariate_eval(phi: CollapseMap, t: RationalLike) -> Fraction:
    t = as_rational(t)
    if t == 0:
        raise DomainError(messages.MSG_ZERO_ARGUMENT.format(name="t"))
    return sum((c * t ** l for l, c in phi.by_degree), Fraction(0))


def univariate_degree(phi: CollapseMap) -> int:
    """max |l| over the nonzero c_l: a lower bound for the degree of phi."""
    nonzero = [abs(l) for l, c in phi.by_degree if c != 0]
    if not nonzero:
        raise DomainError(messages.MSG_EMPTY_SUPPORT)
    return max(nonzero)


def degrees(f: Function2) -> Tuple[int, int]:
    f = RationalFunction2.coerce(f)
    return (
        max(f.numerator.degree_x(), f.denominator.degree_x()),
        max(f.numerator.degree_y(), f.denominator.degree_y()),
    )


def _resultant(a: LaurentPoly2, b: LaurentPoly2, var, keep) -> UniPoly:
    if a.is_zero() or b.is_zero():
        raise DomainError(messages.MSG_SHARED_FACTOR)
    pa, pb = a.to_sympy(), b.to_sympy()
    da = Poly(pa, var).degree()
    db = Poly(pb, var).degree()
    if da == 0 and db == 0:
        expr = sympy.Integer(1)
    elif da == 0:
        expr = pa ** db
    elif db == 0:
        expr = pb ** da
    else:
        expr = sympy.resultant(pa, pb, var)
    result = UniPoly.from_sympy(sympy.expand(expr), keep)
    if result.is_zero():
        raise DomainError(messages.MSG_SHARED_FACTOR)
    return result


def resultant_y(pnum: LaurentPoly2, qnum: LaurentPoly2) -> UniPoly:
    """Res_Y(p, q), a polynomial r(X)."""
    return _resultant(pnum, qnum, Y, X)


def resultant_x(pnum: LaurentPoly2, qnum: LaurentPoly2) -> UniPoly:
    """Res_X(p, q), a polynomial s(Y)."""
    return _resultant(pnum, qnum, X, Y)


@dataclass(frozen=True)
class Lemma2Report:
    """
    Exact bound chain for two monomials T_a, T_b with d = det(T_a, T_b) != 0:
    H(u)^|d| <= H(T_a)^|j_b| H(T_b)^|j_a| <= M^(2 d2), and the same for v with
    i in place of j and d1 in place of d2. M is the largest H(T_i(u, v)).
    """
    max_height: HeightValue
    pair: Tuple[Exponent, Exponent]
    d: int
    d1: int
    d2: int
    u_chain: Tuple[Fraction, Fraction, Fraction]
    v_chain: Tuple[Fraction, Fraction, Fraction]
    height_u: HeightValue
    height_v: HeightValue

    @property
    def holds(self) -> bool:
        ok = True
        for low, mid, top in (self.u_chain, self.v_chain):
            ok = ok and low <= mid <= top
        m = self.max_height.multiplicative
        return (
            ok
            and m ** (2 * self.d2) >= self.height_u.multiplicative
            and m ** (2 * self.d1) >= self.height_v.multiplicative
        )

    @property
    def rhs(self) -> Tuple[float, float]:
        """(h(u) / 2 d2, h(v) / 2 d1), the two terms of the lower bound."""
        return (self.height_u.log / (2 * self.d2), self.height_v.log / (2 * self.d1))


def lemma2_bound(T: MonomialSet, u: RationalLike, v: RationalLike) -> Lemma2Report:
    u, v = as_rational(u), as_rational(v)
    if u == 0 or v == 0:
        raise DomainError(messages.MSG_ZERO_ARGUMENT.format(name="u, v"))
    mons = T.nonconstant()
    pair = None
    for a_idx, ta in enumerate(mons):
        for tb in mons[a_idx + 1:]:
            if ta[0] * tb[1] - tb[0] * ta[1] != 0:
                pair = (ta, tb)
                break
        if pair:
            break
    if pair is None:
        raise DomainError(messages.MSG_DEGENERATE_SUPPORT)
    (ia, ja), (ib, jb) = pair
    d = ia * jb - ib * ja
    heights = {m: height_rational(u ** m[0] * v ** m[1]).multiplicative for m in mons}
    top = max(heights.values())
    ha, hb = heights[pair[0]], heights[pair[1]]
    hu, hv = height_rational(u), height_rational(v)
    u_chain = (hu.multiplicative ** abs(d), ha ** abs(jb) * hb ** abs(ja), top ** (2 * T.d2))
    v_chain = (hv.multiplicative ** abs(d), ha ** abs(ib) * hb ** abs(ia), top ** (2 * T.d1))
    report = Lemma2Report(HeightValue(top), pair, d, T.d1, T.d2, u_chain, v_chain, hu, hv)
    if not report.holds:
        raise InvariantViolation(messages.MSG_LEMMA2.format(point=(rational_str(u), rational_str(v))))
    return report


@dataclass(frozen=True)
class Lemma1Sample:
    t: Fraction
    ratio: Fraction
    running_min: Fraction


def lemma1_ratios(phi: CollapseMap, ts: Iterable[RationalLike]) -> List[Lemma1Sample]:
    """
    H(phi(t)) / H(t)^d over a sample ordered by H(t), with d = univariate_degree(phi).
    Points where phi(t) = 0 are skipped.
    """
    d = univariate_degree(phi)
    sample = sorted((as_rational(t) for t in ts if as_rational(t) != 0),
                    key=lambda t: (height_rational(t).multiplicative, t))
    out: List[Lemma1Sample] = []
    running: Optional[Fraction] = None
    for t in sample:
        value = univariate_eval(phi, t)
        if value == 0:
            continue
        ratio = height_rational(value).multiplicative / height_rational(t).multiplicative ** d
        running = ratio if running is None else min(running, ratio)
        out.append(Lemma1Sample(t, ratio, running))
    return out

