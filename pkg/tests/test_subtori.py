import random
from fractions import Fraction
from math import gcd

import pytest

from gcdlab.arith.laurent import LaurentPoly2, MonomialSet, RationalFunction2, UniPoly
from gcdlab.arith.subtori import (
    CandidateSet,
    ClassKind,
    classify,
    classify_point,
    coprime_directions,
    has_collision,
    prop1_candidates,
    prop2_candidates,
    prop3_translates,
    prop4_candidates,
    refine_translates,
)
from gcdlab.arith.sunits import MultiplicativeRelation, on_subtorus
from gcdlab.core.errors import DomainError

pytestmark = pytest.mark.unit

ONE = LaurentPoly2.constant(1)
XP = LaurentPoly2.monomial(1, 0)
YP = LaurentPoly2.monomial(0, 1)


def test_prop1_candidates_example():
    T = MonomialSet(((0, 0), (1, 0), (0, 1)))
    assert prop1_candidates(T).directions == [(0, 1), (1, -1), (1, 0)]
    f = RationalFunction2(XP - ONE, YP - ONE)
    assert prop1_candidates(f).directions == [(0, 1), (1, -1), (1, 0)]
    assert all(c.relation.w == 1 for c in prop1_candidates(f))

def test_prop1_candidates_match_collision_search():
    rng = random.Random(17)
    directions = coprime_directions(50)
    for _ in range(20):
        mons = set()
        target = rng.randint(2, 6)
        while len(mons) < target:
            mons.add((rng.randint(-3, 3), rng.randint(-3, 3)))
        T = MonomialSet(tuple(mons))
        f = LaurentPoly2.from_dict({m: 1 for m in mons})
        brute = {(p, q) for p, q in directions if has_collision(f, p, q)}
        assert brute == set(prop1_candidates(T).directions)

def test_refine_translates_cancellation():
    # X + Y vanishes exactly on u = -v
    out = refine_translates(XP + YP)
    assert out.relations == [MultiplicativeRelation(1, -1, -1)]
    assert on_subtorus(3, -3, out.relations[0])

def test_refine_translates_even_power_gives_both_signs():
    # X^2 - 4Y^2 vanishes on u = 2v and u = -2v
    f = XP ** 2 - YP ** 2 * 4
    ws = {r.w for r in refine_translates(f).relations if r.direction == (1, -1)}
    assert ws == {Fraction(-2), Fraction(2)}

def test_prop2_candidates_counts():
    assert len(prop2_candidates(Fraction(1, 2))) == 8
    assert prop2_candidates(Fraction(3, 5)).directions == [(0, 1), (1, -1), (1, 0), (1, 1)]
    assert len(prop2_candidates(2)) == 0
    with pytest.raises(DomainError, match="epsilon must be positive"):
        prop2_candidates(0)

def test_prop2_candidates_cardinality_against_enumeration():
    for eps in (Fraction(1, 3), Fraction(1, 5), Fraction(2, 7)):
        bound = int(1 / eps)
        half = {(p, q) for p in range(-bound, bound + 1) for q in range(-bound, bound + 1)
                if (p, q) != (0, 0) and gcd(p, q) == 1}
        assert len(prop2_candidates(eps)) == len(half) // 2

def test_prop3_translates():
    out = prop3_translates(2, 3, 1)
    assert {(r.p, r.q, r.w) for r in out.relations} == {
        (0, 1, 3), (1, -1, Fraction(2, 3)), (1, 0, 2), (1, 1, 6),
    }
    with pytest.raises(DomainError):
        prop3_translates(0, 3, 1)

def test_prop4_candidates():
    r = UniPoly((-1, 1))
    s = UniPoly((6, -5, 1))
    out = prop4_candidates(r, s, 4)
    assert len(out) == 7
    assert prop4_candidates(UniPoly((3,)), s, 4) == CandidateSet()

def test_classify_point_kinds():
    cands = prop2_candidates(Fraction(1, 2))
    on = classify_point(2, 4, cands)
    assert on.kind is ClassKind.ON_CANDIDATE
    assert on.relation.direction == (2, -1)
    sporadic = classify_point(4, 8, cands)
    assert sporadic.kind is ClassKind.DEPENDENT_SPORADIC
    assert sporadic.relation.direction == (3, -2)
    assert classify_point(2, 3, cands).kind is ClassKind.INDEPENDENT
    assert classify_point(2, 3, cands).to_json() == {"kind": "Independent"}

def test_classify_candidates_hold_exactly():
    cands = prop2_candidates(Fraction(1, 3))
    points = [(2, 8), (Fraction(1, 3), 9), (-2, 4), (6, Fraction(1, 36))]
    for c in classify(points, cands):
        if c.kind is ClassKind.ON_CANDIDATE:
            assert on_subtorus(*c.point, c.relation)

def test_candidate_json():
    data = prop2_candidates(1).candidates[0].to_json()
    assert data == {"p": 0, "q": 1, "w": "1", "provenance": "Prop2Bound", "detail": "max(|p|,|q|)<=1"}
