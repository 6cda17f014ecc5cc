"""
Candidate exceptional subtori and translates, and classification of
solution points against them.
"""
from dataclasses import dataclass
from enum import Enum
from fractions import Fraction
from itertools import combinations
from math import floor, gcd
from typing import Dict, Iterable, List, Optional, Sequence, Tuple, Union

from gcdlab.core import messages
from gcdlab.core.errors import DomainError
from gcdlab.arith.laurent import (
    Exponent,
    Function2,
    LaurentPoly2,
    MonomialSet,
    RationalFunction2,
    UniPoly,
    collapse_coefficients,
    monomials,
)
from gcdlab.arith.qplaces import RationalLike, as_rational, rational_str
from gcdlab.arith.sunits import (
    MultiplicativeRelation,
    dependence,
    on_subtorus,
    primitive_direction,
    rational_root,
)


@dataclass(frozen=True)
class Prop1Collision:
    first: Exponent
    second: Exponent

    def describe(self) -> str:
        return f"collision {self.first}~{self.second}"


@dataclass(frozen=True)
class Prop1Refined:
    """Two monomials alone at degree l whose coefficients cancel for this wbar."""
    first: Exponent
    second: Exponent
    degree: int
    wbar: Fraction

    def describe(self) -> str:
        return f"cancellation {self.first}~{self.second} at l={self.degree}, wbar={rational_str(self.wbar)}"


@dataclass(frozen=True)
class Prop2Bound:
    bound: int

    def describe(self) -> str:
        return f"max(|p|,|q|)<={self.bound}"


@dataclass(frozen=True)
class Prop3Scaled:
    theta: Fraction
    eta: Fraction

    def describe(self) -> str:
        return f"scaled by ({rational_str(self.theta)}, {rational_str(self.eta)})"


Provenance = Union[Prop1Collision, Prop1Refined, Prop2Bound, Prop3Scaled]


@dataclass(frozen=True)
class Candidate:
    relation: MultiplicativeRelation
    provenance: Provenance

    def to_json(self) -> dict:
        return {
            "p": self.relation.p,
            "q": self.relation.q,
            "w": rational_str(self.relation.w),
            "provenance": type(self.provenance).__name__,
            "detail": self.provenance.describe(),
        }


@dataclass(frozen=True)
class CandidateSet:
    """Deduplicated relations, sorted; the first provenance seen for a relation is kept."""
    candidates: Tuple[Candidate, ...] = ()

    @classmethod
    def build(cls, items: Iterable[Candidate]) -> "CandidateSet":
        seen: Dict[MultiplicativeRelation, Candidate] = {}
        for c in items:
            seen.setdefault(c.relation, c)
        return cls(tuple(seen[k] for k in sorted(seen)))

    def __or__(self, other: "CandidateSet") -> "CandidateSet":
        return CandidateSet.build(self.candidates + other.candidates)

    def __len__(self) -> int:
        return len(self.candidates)

    def __iter__(self):
        return iter(self.candidates)

    @property
    def relations(self) -> List[MultiplicativeRelation]:
        return [c.relation for c in self.candidates]

    @property
    def directions(self) -> List[Tuple[int, int]]:
        return sorted({c.relation.direction for c in self.candidates})


def prop1_candidates(T: Union[MonomialSet, Function2]) -> CandidateSet:
    """
    For each pair of support points, the primitive (p, q) with
    q(i - i') = p(j - j'), i.e. the direction of their difference.
    """
    if not isinstance(T, MonomialSet):
        T = monomials(T)
    out = []
    for a, b in combinations(T.monomials, 2):
        p, q = primitive_direction(b[0] - a[0], b[1] - a[1])
        out.append(Candidate(MultiplicativeRelation(p, q), Prop1Collision(a, b)))
    return CandidateSet.build(out)


def _refine_part(f: LaurentPoly2, p: int, q: int) -> List[Candidate]:
    out = []
    by_degree: Dict[int, List[Tuple[Exponent, Fraction]]] = {}
    for (i, j), a in f.terms:
        by_degree.setdefault(q * i - p * j, []).append(((i, j), a))
    for l, members in sorted(by_degree.items()):
        if len(members) != 2:
            continue
        (m1, a1), (m2, a2) = members
        e = m1[1] - m2[1]
        if e == 0:
            # same j: cancellation does not depend on wbar
            continue
        # a1 wbar^j1 + a2 wbar^j2 = 0  <=>  wbar^e = -a2/a1
        target = -a2 / a1
        if e < 0:
            target, e = 1 / target, -e
        root = rational_root(target, e)
        if root is None:
            continue
        roots = {root, -root} if e % 2 == 0 else {root}
        for wbar in sorted(roots):
            w = wbar ** q
            out.append(Candidate(MultiplicativeRelation(p, q, w), Prop1Refined(m1, m2, l, wbar)))
    return out


def refine_translates(f: Function2, candidates: Optional[CandidateSet] = None) -> CandidateSet:
    """
    Translate constants w = wbar^q for collision directions where exactly two
    monomials share a degree l and their collapsed coefficients cancel.
    Numerator and denominator are treated separately.
    """
    f = RationalFunction2.coerce(f)
    if candidates is None:
        candidates = prop1_candidates(f)
    out: List[Candidate] = []
    for p, q in candidates.directions:
        for part in (f.numerator, f.denominator):
            out.extend(_refine_part(part, p, q))
    return CandidateSet.build(out)


def has_collision(f: LaurentPoly2, p: int, q: int) -> bool:
    return bool(collapse_coefficients(f, p, q, 1).collisions)


def coprime_directions(bound: int) -> List[Tuple[int, int]]:
    """Canonical coprime (p, q) with max(|p|, |q|) <= bound."""
    out = []
    for p in range(0, bound + 1):
        for q in range(-bound, bound + 1):
            if (p, q) == (0, 0) or gcd(p, q) != 1:
                continue
            if p == 0 and q < 0:
                continue
            out.append((p, q))
    return sorted(out)


def _epsilon(eps: RationalLike) -> Fraction:
    eps = as_rational(eps)
    if eps <= 0:
        raise DomainError(messages.MSG_EPSILON_POSITIVE)
    return eps


def prop2_candidates(eps: RationalLike) -> CandidateSet:
    """u^p = v^q style subgroups (w = 1) with max(|p|, |q|) <= floor(1/eps)."""
    bound = floor(1 / _epsilon(eps))
    return CandidateSet.build(
        Candidate(MultiplicativeRelation(p, q), Prop2Bound(bound)) for p, q in coprime_directions(bound)
    )


def prop3_translates(theta: RationalLike, eta: RationalLike, eps: RationalLike) -> CandidateSet:
    """Each subgroup of prop2_candidates moved to u^p v^q = theta^p eta^q."""
    theta, eta = as_rational(theta), as_rational(eta)
    if theta == 0 or eta == 0:
        raise DomainError(messages.MSG_ZERO_ARGUMENT.format(name="theta, eta"))
    out = []
    for c in prop2_candidates(eps):
        p, q = c.relation.direction
        out.append(Candidate(MultiplicativeRelation(p, q, theta ** p * eta ** q), Prop3Scaled(theta, eta)))
    return CandidateSet.build(out)


def prop4_candidates(r: UniPoly, s: UniPoly, eps: RationalLike) -> CandidateSet:
    """
    prop3_translates over every pair of nonzero rational roots of r and s,
    with eps / (2 deg r deg s).
    """
    eps = _epsilon(eps)
    if r.degree < 1 or s.degree < 1:
        return CandidateSet()
    scaled = eps / (2 * r.degree * s.degree)
    out = CandidateSet()
    for theta in r.rational_roots():
        for eta in s.rational_roots():
            if theta != 0 and eta != 0:
                out = out | prop3_translates(theta, eta, scaled)
    return out


class ClassKind(Enum):
    ON_CANDIDATE = "OnCandidate"
    DEPENDENT_SPORADIC = "DependentSporadic"
    INDEPENDENT = "Independent"


@dataclass(frozen=True)
class Classified:
    point: Tuple[Fraction, Fraction]
    kind: ClassKind
    relation: Optional[MultiplicativeRelation] = None

    def to_json(self) -> dict:
        out = {"kind": self.kind.value}
        if self.relation is not None:
            out.update({"p": self.relation.p, "q": self.relation.q, "w": rational_str(self.relation.w)})
        return out


def classify_point(u: RationalLike, v: RationalLike, candidates: CandidateSet) -> Classified:
    u, v = as_rational(u), as_rational(v)
    for c in candidates:
        if on_subtorus(u, v, c.relation):
            return Classified((u, v), ClassKind.ON_CANDIDATE, c.relation)
    rel = dependence(u, v)
    if rel is not None:
        return Classified((u, v), ClassKind.DEPENDENT_SPORADIC, rel)
    return Classified((u, v), ClassKind.INDEPENDENT)


def classify(solutions: Sequence[Tuple[RationalLike, RationalLike]], candidates: CandidateSet) -> List[Classified]:
    return [classify_point(u, v, candidates) for u, v in solutions]
