import random
from fractions import Fraction

import pytest
import sympy

from gcdlab.arith.laurent import (
    X,
    Y,
    CollapseMap,
    LaurentPoly2,
    MonomialSet,
    RationalFunction2,
    UniPoly,
    collapse_coefficients,
    degrees,
    lemma1_ratios,
    lemma2_bound,
    monomials,
    resultant_x,
    resultant_y,
    support_line_test,
    univariate_degree,
    univariate_eval,
)
from gcdlab.core.errors import CommonFactorError, DomainError
from scripts.brute_force_oracle import sylvester_resultant

pytestmark = pytest.mark.unit

ONE = LaurentPoly2.constant(1)
XP = LaurentPoly2.monomial(1, 0)
YP = LaurentPoly2.monomial(0, 1)


def test_eval_examples():
    assert (ONE + XP + YP).eval(2, 3) == 6
    assert LaurentPoly2.monomial(1, -1).eval(2, 3) == Fraction(2, 3)
    f = RationalFunction2(XP - ONE, YP - ONE)
    assert f.eval(4, 9) == Fraction(3, 8)

def test_eval_pole():
    f = RationalFunction2(XP - ONE, YP - ONE)
    with pytest.raises(DomainError, match="pole"):
        f.eval(4, 1)

def test_arithmetic():
    f = (XP + YP) * (XP - YP)
    assert f == XP ** 2 - YP ** 2
    assert (XP * 3).coefficient(1, 0) == 3
    assert LaurentPoly2.monomial(2, -1, 2) ** -1 == LaurentPoly2.monomial(-2, 1, Fraction(1, 2))
    with pytest.raises(DomainError):
        (XP + YP) ** -1

def test_primitive_integer():
    f = LaurentPoly2.from_dict({(0, 0): Fraction(-1, 2), (1, 0): Fraction(-3, 4)})
    assert f.primitive_integer() == LaurentPoly2.from_dict({(0, 0): 2, (1, 0): 3})

def test_rational_function_common_factor():
    with pytest.raises(CommonFactorError):
        RationalFunction2(XP + YP, XP * 2 + YP * 2)

def test_from_laurent_clears_negative_exponents():
    f = RationalFunction2.from_laurent(LaurentPoly2.monomial(1, -2) + ONE)
    assert f.denominator == LaurentPoly2.monomial(0, 2)
    assert f.eval(2, 3) == Fraction(2, 9) + 1

def test_monomials():
    T = monomials(RationalFunction2(XP - ONE, YP - ONE))
    assert T.monomials == ((0, 0), (0, 1), (1, 0))
    assert T.contains_one and T.N == 3
    T = monomials(RationalFunction2(LaurentPoly2.monomial(2, 1)))
    assert T.monomials == ((0, 0), (2, 1))
    assert not monomials(RationalFunction2(XP + YP, XP - YP)).contains_one

def test_support_line():
    line = support_line_test(MonomialSet(((0, 0), (1, 1), (2, 2))))
    assert line.direction == (1, 1)
    assert line.offset == (0, 0)
    assert support_line_test(MonomialSet(((0, 0), (1, 0), (0, 1)))) is None
    assert support_line_test(MonomialSet(((1, 2),))).direction == (1, 2)

def test_support_line_phi():
    f = ONE + LaurentPoly2.monomial(1, 1, 2) + LaurentPoly2.monomial(2, 2)
    line = support_line_test(f)
    # f(u, v) = phi(u v) with phi(t) = 1 + 2t + t^2
    assert line.phi_eval(3) == 16
    assert f.eval(3, 1) == 16

def test_collapse_examples():
    phi = collapse_coefficients(ONE + XP + YP, 1, 1, 1)
    assert sorted(phi.as_dict()) == [-1, 0, 1]
    assert phi.collisions == ()

    phi = collapse_coefficients(XP + YP, 1, -1, -1)
    assert phi.collisions == (-1,)
    assert phi.as_dict()[-1] == 0
    assert phi.cancellation

    phi = collapse_coefficients(XP + YP, 1, -1, 1)
    assert phi.as_dict()[-1] == 2
    assert not phi.cancellation

def test_collapse_matches_substitution():
    # u = t^q, v = wbar t^-p turns f into sum c_l t^l
    f = XP ** 2 * YP + XP * 3 - ONE
    p, q, wbar = 1, 2, Fraction(3, 5)
    phi = collapse_coefficients(f, p, q, wbar)
    for t in (Fraction(2), Fraction(-1, 3), Fraction(7, 2)):
        assert univariate_eval(phi, t) == f.eval(t ** q, wbar * t ** (-p))

def test_univariate_helpers():
    phi = CollapseMap(((-1, Fraction(1)), (0, Fraction(1)), (1, Fraction(1))), ())
    assert univariate_eval(phi, 2) == Fraction(7, 2)
    assert univariate_degree(CollapseMap(((0, Fraction(1)), (3, Fraction(2))), ())) == 3
    assert univariate_degree(CollapseMap(((-4, Fraction(1)), (2, Fraction(1))), ())) == 4
    with pytest.raises(DomainError):
        univariate_degree(CollapseMap(((0, Fraction(0)),), (0,)))

def test_degrees():
    assert degrees(RationalFunction2(XP - ONE, YP - ONE)) == (1, 1)
    assert degrees(RationalFunction2(XP ** 2 * YP + ONE, YP ** 3)) == (2, 3)
    assert degrees(RationalFunction2(ONE * 3, ONE * 5)) == (0, 0)

def test_resultant_examples():
    assert resultant_y(XP + YP, XP - YP) == UniPoly((0, 2))
    assert resultant_y(YP - ONE * 3, YP - ONE * 5) == UniPoly((-2,))
    with pytest.raises(DomainError, match="inputs share a factor"):
        resultant_y(XP + YP, XP * 2 + YP * 2)

def _random_poly(rng, terms):
    coeffs = {(rng.randint(0, 4), rng.randint(1, 4)): rng.randint(1, 5) * rng.choice([-1, 1])}
    for _ in range(terms - 1):
        coeffs[(rng.randint(0, 4), rng.randint(0, 4))] = rng.randint(-5, 5) or 1
    return LaurentPoly2.from_dict(coeffs)

@pytest.mark.parametrize("count", [15, pytest.param(100, marks=pytest.mark.slow)])
def test_resultant_matches_sylvester(count):
    rng = random.Random(11)
    checked = 0
    for _ in range(4 * count):
        p, q = _random_poly(rng, rng.randint(2, 4)), _random_poly(rng, rng.randint(1, 4))
        try:
            r = resultant_y(p, q)
        except DomainError:
            continue
        expected = sylvester_resultant(p.to_sympy(), q.to_sympy(), Y)
        assert sympy.expand(r.to_sympy(X) - expected) == 0
        if p.degree_x() and q.degree_x():
            try:
                s = resultant_x(p, q)
            except DomainError:
                s = None
            if s is not None:
                expected = sylvester_resultant(p.to_sympy(), q.to_sympy(), X)
                assert sympy.expand(s.to_sympy(Y) - expected) == 0
        checked += 1
        if checked == count:
            break
    assert checked == count

def test_resultant_of_split_polynomials():
    # Res_Y(a prod(Y - alpha_i), b prod(Y - beta_j)) = a^m b^n prod(alpha_i - beta_j)
    rng = random.Random(5)
    checked = 0
    while checked < 25:
        a, b = rng.choice([-3, -1, 1, 2]), rng.choice([-2, 1, 3])
        alphas = [rng.randint(-2, 2) * X + rng.randint(-4, 4) for _ in range(rng.randint(1, 3))]
        betas = [rng.randint(-2, 2) * X + rng.randint(-4, 4) for _ in range(rng.randint(1, 3))]
        if any(sympy.expand(al - be) == 0 for al in alphas for be in betas):
            continue
        p = LaurentPoly2.from_sympy(sympy.expand(a * sympy.prod([Y - al for al in alphas])))
        q = LaurentPoly2.from_sympy(sympy.expand(b * sympy.prod([Y - be for be in betas])))
        expected = a ** len(betas) * b ** len(alphas) * sympy.prod([al - be for al in alphas for be in betas])
        assert sympy.expand(resultant_y(p, q).to_sympy(X) - expected) == 0
        checked += 1

def test_unipoly():
    r = UniPoly((Fraction(-6), Fraction(1), Fraction(1)))
    assert r.degree == 2
    assert r.eval(2) == 0
    assert r.rational_roots() == [-3, 2]
    assert UniPoly((0, 0)).is_zero()

def test_lemma2_examples():
    report = lemma2_bound(MonomialSet(((1, 1), (1, 2))), 2, 3)
    assert report.d == 1
    assert report.max_height.multiplicative == 18
    assert report.holds
    report = lemma2_bound(MonomialSet(((1, 0), (0, 1))), 5, 7)
    assert report.max_height.multiplicative == 7
    assert report.holds

def test_lemma2_degenerate():
    with pytest.raises(DomainError, match="degenerate support"):
        lemma2_bound(MonomialSet(((1, 1), (2, 2))), 2, 3)

def test_lemma2_random_sample():
    rng = random.Random(13)
    checked = 0
    while checked < 200:
        mons = {(0, 0)}
        while len(mons) < 4:
            mons.add((rng.randint(0, 6), rng.randint(0, 6)))
        u = Fraction(rng.choice((2, 3, 5))) ** rng.randint(-10, 10)
        v = Fraction(rng.choice((2, 3, 5, 7))) ** rng.randint(-10, 10)
        try:
            assert lemma2_bound(MonomialSet(tuple(mons)), u, v).holds
        except DomainError:
            continue
        checked += 1

def test_lemma1_ratios_running_minimum():
    phi = collapse_coefficients(XP - ONE, 0, 1, 1)
    samples = lemma1_ratios(phi, [2, Fraction(1, 3), 5, 7, Fraction(-9, 4)])
    assert [s.t for s in samples] == [2, Fraction(1, 3), 5, 7, Fraction(-9, 4)]
    assert all(s.running_min <= s.ratio for s in samples)
    assert samples[-1].running_min == min(s.ratio for s in samples)
