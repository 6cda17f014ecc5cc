import math
import random
from fractions import Fraction

import pytest
import sympy

from gcdlab.arith.heights import (
    HeightValue,
    PlaceFilter,
    height_affine_point,
    height_projective,
    height_rational,
    log_minus,
    log_plus,
    logminus_sum,
    logplus_height,
    primitive_integer_vector,
)
from gcdlab.arith.qplaces import PlaceSet
from gcdlab.core.errors import DomainError
from scripts.brute_force_oracle import per_prime_gcd

pytestmark = pytest.mark.unit


def test_height_rational():
    assert height_rational(Fraction(-3, 7)).multiplicative == 7
    assert height_rational(Fraction(12, 5)).multiplicative == 12
    assert height_rational(0).multiplicative == 1
    assert height_rational(1).log == 0.0

def test_height_projective_examples():
    assert height_projective([3, 8, 1]).multiplicative == 8
    assert height_projective([Fraction(1, 2), Fraction(1, 3), 1]).multiplicative == 6
    assert height_projective([6, 4]) == height_projective([3, 2])

def test_primitive_vector_all_zero():
    with pytest.raises(DomainError, match="all coordinates are zero"):
        primitive_integer_vector([0, 0])

def test_affine_point_is_scale_invariant():
    coords = [Fraction(2, 3), Fraction(-5, 4), 7]
    scaled = [c * Fraction(11, 13) for c in coords]
    assert height_affine_point(coords) == height_affine_point(scaled)

def test_log_plus_minus():
    assert log_plus(Fraction(1, 2)) == 0.0
    assert log_minus(Fraction(1, 2)) == pytest.approx(-math.log(2))
    assert log_plus(4) == pytest.approx(math.log(4))
    with pytest.raises(DomainError):
        log_minus(0)

def test_logminus_finite_gcd():
    s = logminus_sum([15, 80], PlaceFilter.finite_only())
    assert s.finite_part == 5
    assert s.archimedean_factor == 1
    assert s.total == pytest.approx(-math.log(5))

def test_logminus_all_places_trivial():
    s = logminus_sum([7, 1], PlaceFilter.all())
    assert s.finite_part == 1
    assert s.multiplicative == 1
    assert s.total == 0.0

def test_logminus_complement_excludes_s():
    s = logminus_sum([15, 80], PlaceFilter.complement_of(PlaceSet.of(5)))
    assert s.finite_part == 1
    assert s.total == 0.0

def test_logminus_within_keeps_s():
    s = logminus_sum([Fraction(90, 7), Fraction(-60, 11)], PlaceFilter.within(PlaceSet.of(2, 3)))
    assert s.finite_part == 6
    # archimedean max is 90/7 > 1
    assert s.archimedean_factor == 1

def test_logminus_archimedean_small_values():
    s = logminus_sum([Fraction(1, 3), Fraction(-1, 4)], PlaceFilter.all())
    assert s.archimedean_factor == Fraction(1, 3)
    assert s.multiplicative == Fraction(1, 3)

def test_logminus_zero_entry_allowed():
    s = logminus_sum([0, 12], PlaceFilter.finite_only())
    assert s.finite_part == 12
    with pytest.raises(DomainError):
        logminus_sum([0, 0], PlaceFilter.all())

def test_filter_needs_places():
    from gcdlab.arith.heights import FilterKind
    with pytest.raises(DomainError):
        PlaceFilter(FilterKind.WITHIN)

def test_logminus_matches_per_prime_oracle():
    rng = random.Random(3)
    for _ in range(50):
        a, b = rng.randint(1, 10**9), rng.randint(1, 10**9)
        assert logminus_sum([a, b], PlaceFilter.finite_only()).finite_part == per_prime_gcd(a, b)

def test_projective_height_dominates_coordinates():
    rng = random.Random(5)
    for _ in range(100):
        x = Fraction(rng.randint(-10**6, 10**6), rng.randint(1, 10**6))
        y = Fraction(rng.randint(-10**6, 10**6), rng.randint(1, 10**6))
        h = height_projective([x, y, 1])
        assert h >= height_rational(x)
        assert h >= height_rational(y)

def test_decomposition_log_plus_and_minus():
    # log max over all places splits into log^+ and log^- parts
    rng = random.Random(9)
    for _ in range(50):
        values = [Fraction(rng.randint(1, 10**4), rng.randint(1, 10**4)) for _ in range(2)]
        full = height_projective(values).multiplicative
        plus = logplus_height(values).multiplicative
        minus = logminus_sum(values, PlaceFilter.all()).multiplicative
        assert full == plus * minus

def test_height_value_str():
    assert str(HeightValue(Fraction(5, 2))) == "5/2"
    assert str(HeightValue(Fraction(8))) == "8"
