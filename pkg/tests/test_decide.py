from fractions import Fraction

import pytest

from gcdlab import config
from gcdlab.arith.decide import LogForm, Verdict, decide, max_form, sign
from gcdlab.core.errors import DomainError

pytestmark = pytest.mark.unit


def test_build_merges_and_drops_trivial_terms():
    form = LogForm.build([(1, 2), (Fraction(1, 2), 2), (3, 1), (0, 5)])
    assert form.terms == ((Fraction(3, 2), Fraction(2)),)
    assert LogForm.build([(1, 3), (-1, 3)]).is_zero()
    with pytest.raises(DomainError):
        LogForm.log_of(-2)

def test_arithmetic_and_json():
    form = LogForm.log_of(8) - LogForm.log_of(9).scale(Fraction(9, 10))
    assert form.to_json() == [["-9/10", "9"], ["1", "8"]]
    assert float(form) == pytest.approx(0.1019394, abs=1e-6)
    assert str(LogForm.zero()) == "0"

def test_float_of_empty_form():
    assert float(LogForm.zero()) == 0.0
    assert isinstance(float(LogForm.log_of(1)), float)
    assert format(float(LogForm.zero()), ".17g") == "0"

def test_decide_exact_path():
    # 8 > 9^0.9
    assert decide(LogForm.log_of(8), LogForm.log_of(9, Fraction(9, 10))) is Verdict.FALSE
    # 16 < 81^0.9
    assert decide(LogForm.log_of(16), LogForm.log_of(81, Fraction(9, 10))) is Verdict.TRUE

def test_decide_equality_strictness():
    lhs, rhs = LogForm.log_of(4), LogForm.log_of(2, 2)
    assert sign(lhs - rhs) == 0
    assert decide(lhs, rhs) is Verdict.FALSE
    assert decide(lhs, rhs, strict=False) is Verdict.TRUE

def test_interval_path(monkeypatch):
    monkeypatch.setattr(config, "EXACT_FAST_BITS", 0)
    monkeypatch.setattr(config, "EXACT_MAX_BITS", 0)
    assert sign(LogForm.log_of(3) - LogForm.log_of(2)) == 1
    assert decide(LogForm.log_of(8), LogForm.log_of(9, Fraction(9, 10))) is Verdict.FALSE

def test_undecided_when_every_stage_is_capped(monkeypatch):
    monkeypatch.setattr(config, "EXACT_FAST_BITS", 0)
    monkeypatch.setattr(config, "EXACT_MAX_BITS", 0)
    # log 4 - 2 log 2 is zero, which intervals can never certify
    assert sign(LogForm.log_of(4) - LogForm.log_of(2, 2)) is None
    assert decide(LogForm.log_of(4), LogForm.log_of(2, 2)) is Verdict.UNDECIDED

def test_exact_fallback_after_intervals(monkeypatch):
    monkeypatch.setattr(config, "EXACT_FAST_BITS", 0)
    assert sign(LogForm.log_of(4) - LogForm.log_of(2, 2)) == 0

def test_large_exponents_decided():
    # log2(3) = 1.5849625..., so 3^630929 < 2^(10^6)
    lhs = LogForm.log_of(3, 630929)
    rhs = LogForm.log_of(2, 10**6)
    assert decide(lhs, rhs) is Verdict.TRUE

def test_max_form():
    forms = [LogForm.log_of(5), LogForm.log_of(2, 3), LogForm.log_of(7)]
    assert max_form(forms) == LogForm.log_of(2, 3)
    with pytest.raises(DomainError):
        max_form([])

def test_verdict_of():
    assert Verdict.of(None) is Verdict.UNDECIDED
    assert Verdict.of(True) is Verdict.TRUE
