import math
import random
from fractions import Fraction

import pytest

from gcdlab.arith.decide import Verdict
from gcdlab.arith.gcdcore import (
    Prop2Case,
    Prop4Variant,
    check_cor1_ratio,
    check_main,
    check_prop1_s,
    check_prop2,
    check_prop3,
    check_prop4,
    check_thm1,
    check_thm1_gcd,
    decomposition_identity,
    gcd_analogue,
    integer_gcd_bridge,
    prop2_case,
    ratio_trend,
    resultant_chain,
    resultants_of,
)
from gcdlab.arith.heights import PlaceFilter
from gcdlab.arith.laurent import LaurentPoly2, RationalFunction2, UniPoly
from gcdlab.arith.qplaces import PlaceSet, rational_str
from gcdlab.arith.sunits import MultiplicativeRelation, enumerate_sunits
from gcdlab.commands.ratio_scan import collect
from gcdlab.core.errors import DomainError, NotSUnitError
from scripts.brute_force_oracle import per_prime_gcd
from scripts.brute_force_oracle import ratio_trend as oracle_ratio_trend

pytestmark = pytest.mark.unit

ONE = LaurentPoly2.constant(1)
XP = LaurentPoly2.monomial(1, 0)
YP = LaurentPoly2.monomial(0, 1)
P, Q = XP - ONE, YP - ONE
F = RationalFunction2(P, Q)
S23 = PlaceSet.of(2, 3)


def test_gcd_analogue_examples():
    assert gcd_analogue(P, Q, 16, 81, PlaceFilter.finite_only()).finite_part == 5
    assert gcd_analogue(P, Q, 2, 2, PlaceFilter.finite_only()).finite_part == 1
    s = gcd_analogue(XP, YP, Fraction(9, 4), Fraction(-1, 6), PlaceFilter.complement_of(S23))
    assert s.total == 0.0

def test_gcd_analogue_common_zero():
    with pytest.raises(DomainError, match="common zero"):
        gcd_analogue(P, Q, 1, 1, PlaceFilter.all())

def test_integer_gcd_bridge():
    assert integer_gcd_bridge(15, 80).gcd == 5
    assert integer_gcd_bridge(1, 99).gcd == 1
    assert integer_gcd_bridge(12, 18).finite_part == 6
    with pytest.raises(DomainError):
        integer_gcd_bridge(0, 5)

def test_integer_gcd_bridge_against_factorization():
    rng = random.Random(2)
    for _ in range(30):
        a, b = rng.randint(1, 10**12), rng.randint(1, 10**12)
        assert integer_gcd_bridge(a, b).finite_part == per_prime_gcd(a, b)

def test_decomposition_examples():
    rep = decomposition_identity(P, Q, 4, 9)
    assert rep.height_pair.multiplicative == 8
    assert rep.height_with_one.multiplicative == 8
    assert rep.holds

    rep = decomposition_identity(P, Q, 16, 81)
    assert rep.height_pair.multiplicative == 16
    assert rep.height_with_one.multiplicative == 80
    assert rep.logminus.finite_part == 5

def test_decomposition_on_sunits():
    S = PlaceSet.of(2, 3, 5)
    units = [x.value for x in enumerate_sunits(S, 2, "both")]
    rng = random.Random(4)
    for _ in range(100):
        u, v = rng.choice(units), rng.choice(units)
        if u == 1 and v == 1:
            continue
        assert decomposition_identity(P, Q, u, v).holds

def test_thm1_examples():
    rep = check_thm1(P, Q, 4, 9, Fraction(1, 10))
    assert rep.tag == "gcd-height"
    assert rep.verdict is Verdict.FALSE
    assert check_thm1(P, Q, 16, 81, Fraction(1, 100)).satisfied

def test_thm1_epsilon_zero_boundary():
    assert check_thm1(P, Q, 16, 81, 0).satisfied
    assert not check_thm1(P, Q, 4, 9, 0).satisfied

def test_thm1_pole():
    with pytest.raises(DomainError, match="pole"):
        check_thm1(P, Q, 4, 1, Fraction(1, 10))

def test_thm1_formulations_agree_on_sunits():
    units = [x.value for x in enumerate_sunits(S23, 3, "both")]
    for u in units[::5]:
        for v in units:
            if v == 1:
                continue
            a = check_thm1(P, Q, u, v, Fraction(1, 10))
            b = check_thm1_gcd(P, Q, u, v, Fraction(1, 10))
            assert b.tag == "gcd-logminus"
            assert a.verdict == b.verdict

def test_cor1_ratio():
    rep = check_cor1_ratio(4, 9)
    assert rep.ratio == pytest.approx(math.log(8) / math.log(9))
    assert not rep.dependent
    rep = check_cor1_ratio(2, 2)
    assert rep.ratio == 0.0
    assert rep.dependent
    with pytest.raises(DomainError):
        check_cor1_ratio(1, 5)

def test_cor1_dependent_pair_ratio_near_half():
    u = Fraction(2) ** 40
    rep = check_cor1_ratio(u, u ** 2)
    assert rep.dependent
    assert rep.ratio == pytest.approx(0.5, abs=0.01)

def test_ratio_trend():
    rows = [check_cor1_ratio(u, v) for u, v in [(4, 9), (16, 81), (2, 3), (2, 4), (Fraction(1, 2), 27)]]
    trend = ratio_trend(rows, [0.0, 3.0, 100.0])
    assert trend[0].count == 4
    assert trend[0].minimum == min(r.ratio for r in rows if not r.dependent)
    # h(1:u:v) >= 3 leaves (16, 81) and (1/2, 27)
    assert trend[1].count == 2
    assert trend[2].minimum is None and trend[2].count == 0

def test_thm1_exceptional_set_grows_as_epsilon_shrinks():
    units = [u for u in (x.value for x in enumerate_sunits(S23, 3, "both")) if u != 1]
    rng = random.Random(7)
    points = [(Fraction(3), Fraction(-1))] + [(rng.choice(units), rng.choice(units)) for _ in range(300)]
    epsilons = [Fraction(1, 2), Fraction(1, 5), Fraction(1, 10), Fraction(0)]
    hits = 0
    for u, v in points:
        verdicts = [check_thm1(P, Q, u, v, eps).satisfied for eps in epsilons]
        # satisfied at some epsilon means satisfied at every smaller one
        assert verdicts == sorted(verdicts)
        hits += verdicts[0]
    assert hits >= 1

def _assert_trend_matches_oracle(bound, thresholds):
    reports, _ = collect(S23, bound)
    trend = ratio_trend(reports, thresholds)
    expected = oracle_ratio_trend([2, 3], bound, thresholds)
    for got, want in zip(trend, expected["trend"], strict=True):
        assert got.count == want["count"]
        assert got.minimum == pytest.approx(want["minimum"], rel=1e-12)
        assert [rational_str(x) for x in got.witness] == want["witness"]
    minima = [p.minimum for p in trend]
    assert minima == sorted(minima)
    return reports, set(map(tuple, expected["sporadic"]))

@pytest.mark.integration
def test_ratio_trend_matches_oracle_small_box():
    _assert_trend_matches_oracle(4, [2.0, 4.0, 6.0])

@pytest.mark.slow
def test_ratio_trend_matches_oracle():
    reports, sporadic = _assert_trend_matches_oracle(12, [10.0, 20.0, 30.0])
    for r in reports:
        if r.ratio is not None and r.ratio < 0.5 and r.height_1uv.log >= 20:
            assert r.dependent or (rational_str(r.u), rational_str(r.v)) in sporadic

def test_main_examples():
    rep14, rep15 = check_main(F, 16, 81, Fraction(1, 10))
    assert rep14.tag == "monomial-height"
    assert rep14.satisfied
    assert rep15.tag == "degree-height"
    rep14, _ = check_main(F, 4, 9, Fraction(1, 10))
    assert not rep14.satisfied

def test_main_requires_monomial_one():
    with pytest.raises(DomainError, match="monomial 1 required"):
        check_main(RationalFunction2(XP, YP), 2, 3, Fraction(1, 10))

def test_prop2_trivial_points():
    rep = check_prop2(2, 3, Fraction(1, 2), S23)
    assert rep.full.tag == "pair-all"
    assert rep.complement.tag == "pair-outside"
    assert not rep.full.satisfied
    assert not rep.complement.satisfied
    with pytest.raises(DomainError, match="u = 1"):
        check_prop2(1, 3, Fraction(1, 2), S23)

def test_prop2_solution():
    # u - 1 = 2^12 - 1 and v - 1 = 2^24 - 1 share 4095
    rep = check_prop2(2 ** 12, 2 ** 24, Fraction(1, 10), S23)
    assert rep.full.satisfied

def test_prop3_shifted():
    rep = check_prop3(16, 81, 2, 3, Fraction(1, 10))
    assert rep.tag == "shifted-pair"
    assert rep.satisfied
    with pytest.raises(DomainError):
        check_prop3(16, 81, 0, 3, Fraction(1, 10))
    with pytest.raises(DomainError, match="common zero"):
        check_prop3(2, 3, 2, 3, Fraction(1, 10))

def test_prop1_within_s():
    rep = check_prop1_s(F, 16, 81, Fraction(1, 2), S23)
    assert rep.tag == "within-s"
    assert rep.satisfied

def test_prop4_variants():
    r = s = UniPoly((-1, 1))
    rep = check_prop4(r, s, 16, 81, Fraction(1, 10), S23)
    assert rep.tag == "resultant-outside"
    assert rep.satisfied
    x = UniPoly((0, 1))
    with pytest.raises(DomainError, match="both vanish at 0"):
        check_prop4(x, x, 2, 3, Fraction(1, 10), S23, Prop4Variant.ALL)
    rep = check_prop4(x, UniPoly((1, 1)), 2, 3, Fraction(1, 10), S23, Prop4Variant.ALL)
    assert rep.tag == "resultant-all"

def test_resultants_of_simple_function():
    res = resultants_of(F)
    assert res.r == UniPoly((-1, 1))
    assert res.s == UniPoly((-1, 1))

def test_resultant_chain():
    res = resultants_of(F)
    rep = resultant_chain(res, 16, 81, S23)
    assert rep.m_pq == 5 and rep.m_rs == 5
    assert rep.holds
    with pytest.raises(NotSUnitError):
        resultant_chain(res, 5, 81, S23)

def test_resultant_chain_on_sunits():
    res = resultants_of(RationalFunction2(XP ** 2 - YP, XP * YP + ONE))
    for u in [x.value for x in enumerate_sunits(S23, 2, "both")]:
        for v in (Fraction(1, 3), Fraction(4), Fraction(-9, 2)):
            try:
                assert resultant_chain(res, u, v, S23).holds
            except DomainError:
                continue

def test_prop2_case_labels():
    assert prop2_case(MultiplicativeRelation(1, 1, 2), 2).case is Prop2Case.FIRST
    rep = prop2_case(MultiplicativeRelation(1, -1), 1)
    assert rep.case is Prop2Case.FOURTH
    assert rep.phi_degree == 0
    assert prop2_case(MultiplicativeRelation(0, 1), 1).case is Prop2Case.AXIS

def test_report_json_shape():
    data = check_thm1(P, Q, 16, 81, Fraction(1, 100)).to_json()
    assert data["verdict"] == "true"
    assert data["epsilon"] == "1/100"
    assert data["lhs"] == [["1", "16"]]
