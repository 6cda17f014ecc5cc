from fractions import Fraction

import pytest

from gcdlab.core.errors import DomainError, NotSUnitError
from gcdlab.arith.qplaces import ARCHIMEDEAN, Place, PlaceSet
from gcdlab.arith.scan import Inequality, build_task, scan, solution_key
from gcdlab.arith.proofscope import (
    ProofParams,
    build_point,
    choose_params,
    direct_double_product,
    double_product,
    hp_bound_check,
    linear_form_values,
    partition,
    special_form_value,
    verify_chain,
)

pytestmark = pytest.mark.unit

S23 = PlaceSet.of(2, 3)


@pytest.mark.parametrize("eps, k, h, N", [
    (Fraction(1), 5, 52, 317),
    (Fraction(4), 2, 10, 32),
    (Fraction(3, 5), 7, 100, 807),
])
def test_choose_params(eps, k, h, N):
    params = choose_params(eps)
    assert (params.k, params.h, params.N) == (k, h, N)
    assert all(params.constraints().values())


def test_choose_params_eps_one_details():
    params = choose_params(1)
    assert params.epsilon0 == 28
    assert params.delta == Fraction(28, 60)
    assert params.to_json()["delta"] == "7/15"


def test_choose_params_rejects_nonpositive():
    with pytest.raises(DomainError, match="epsilon must be positive"):
        choose_params(0)


def test_build_point_layout():
    P = build_point(2, 3, 2, 1)
    assert P.N == ProofParams(Fraction(1), 2, 1).N == 5
    assert [P.z(1), P.z(2)] == [Fraction(1, 2), Fraction(3, 2)]
    assert [P.y(0, 1), P.y(1, 1), P.y(2, 1)] == [Fraction(1, 3), Fraction(2, 3), Fraction(4, 3)]


def test_build_point_rejects_v_one():
    with pytest.raises(DomainError, match="z undefined"):
        build_point(2, 1, 2, 2)


def test_special_form_closed_form():
    assert special_form_value(build_point(4, 9, 1, 1), 1) == Fraction(1, 24)
    P = build_point(Fraction(-1, 2), Fraction(4, 3), 3, 4)
    for j in range(1, 4):
        special_form_value(P, j)


def test_partition():
    part = partition(3, S23)
    assert part.s_plus == (ARCHIMEDEAN,)
    assert set(part.s_minus) == {Place(2), Place(3)}
    assert set(partition(Fraction(1, 6), S23).s_plus) == {Place(2), Place(3)}


def test_linear_form_values():
    P = build_point(2, 3, 2, 1)
    table = linear_form_values(P, partition(3, S23))
    # special forms replace z_j only where |v| > 1
    assert table.values[ARCHIMEDEAN] == (Fraction(1, 6), Fraction(1, 2), Fraction(1, 3), Fraction(2, 3), Fraction(4, 3))
    assert table.point_abs[ARCHIMEDEAN] == Fraction(3, 2)
    assert table.values[Place(2)] == (2, 2, 1, Fraction(1, 2), Fraction(1, 4))
    assert table.point_abs[Place(2)] == 2


@pytest.mark.parametrize("u, v, k, h", [
    (2, 3, 1, 1),
    (2, 3, 2, 3),
    (Fraction(1, 2), 9, 2, 2),
    (-3, Fraction(4, 9), 3, 2),
    (Fraction(3, 2), -2, 2, 4),
])
def test_double_product_matches_direct(u, v, k, h):
    P = build_point(u, v, k, h)
    dp = double_product(P, partition(v, S23), S23)
    assert dp.identity_factor_holds
    assert dp.value == direct_double_product(P, S23)
    assert all(c.holds for c in dp.local_checks)


def test_double_product_vanishes_on_root_of_unity():
    P = build_point(-1, 3, 2, 2)
    dp = double_product(P, partition(3, S23), S23)
    assert dp.is_zero
    with pytest.raises(DomainError):
        dp.log_form()


def test_verify_chain_requires_s_units():
    with pytest.raises(NotSUnitError, match="2 not in S") as info:
        verify_chain(Fraction(1, 2), 3, choose_params(4), PlaceSet.of(3))
    assert info.value.prime == 2


def test_verify_chain_v_one():
    with pytest.raises(DomainError, match="z undefined"):
        verify_chain(2, 1, choose_params(4), S23)


def test_verify_chain_u_one_stops_early():
    ledger = verify_chain(1, 3, choose_params(4), S23)
    assert not ledger.hypotheses_met
    assert ledger.entries == []


def test_verify_chain_swaps_to_larger_v():
    ledger = verify_chain(9, 2, choose_params(4), S23)
    assert ledger.swapped
    assert (ledger.u, ledger.v) == (2, 9)


def test_verify_chain_ledger():
    ledger = verify_chain(2, 3, choose_params(4), S23)
    assert ledger.hypotheses["pair-outside"] is False
    names = [e.name for e in ledger.entries]
    assert names[:3] == ["identity-forms", "outside-z1", "outside-S"]
    assert "double-product" in names
    for name in ("identity-forms", "outside-z1", "double-product"):
        entry = ledger.entry(name)
        assert entry.asserted and entry.passed
    assert not ledger.entry("final-bound").asserted
    payload = ledger.to_json()
    assert payload["params"]["N"] == 32
    assert payload["height_P"] is not None


def test_hp_bound_check():
    params = choose_params(4)
    report = hp_bound_check(2, 3, params)
    assert report.holds
    assert report.preconditions_met
    assert report.height_point <= report.sharp


GATED_ENTRIES = ("outside-S", "outside-applied", "heights-merged", "final-bound")


@pytest.mark.parametrize("bound", [
    pytest.param(2, marks=pytest.mark.integration),
    pytest.param(4, marks=pytest.mark.slow),
])
def test_verify_chain_on_pair_outside_solutions(bound):
    eps = Fraction(3, 5)
    result = scan(build_task(Inequality.PROP2_OUTSIDE, eps, S23), bound, workers=2)
    # (-4, 6) shares the factor 5 outside S
    assert ("-4", "6") in solution_key(result.solution_points)
    params = choose_params(eps)
    for u, v in result.solution_points:
        ledger = verify_chain(u, v, params, S23)
        assert ledger.hypotheses_met
        assert all(e.passed for e in ledger.entries if e.asserted)
        for name in GATED_ENTRIES:
            entry = ledger.entry(name)
            if entry is None:
                # u = -1 makes the double product vanish and the chain stops there
                assert ledger.u == -1
                continue
            assert entry.asserted and entry.passed
