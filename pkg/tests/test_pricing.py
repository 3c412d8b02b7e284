import random
from dataclasses import replace

import pytest

from agripellet.costs import capital_costs
from agripellet.dataio import DataError
from agripellet.pricing import (
    BreakEvenInputs,
    annual_cash_flow,
    depreciation,
    npv,
    salvage_value,
    solve_msp,
    solve_msp_bisection,
    solve_msp_closed_form,
)
from conftest import random_break_even_inputs


@pytest.fixture
def reference_inputs():
    """Unit-index plant, zero discounting and tax: the hand-solvable anchor."""
    cap = capital_costs(1.0)
    return BreakEvenInputs(
        capex=cap["capex"],
        opex=2_540_000.0,
        q=40_080.0,
        n=20,
        r=0.0,
        tr=0.0,
        salvage_rate=0.10,
        tfc=cap["capex"] / 1.2,
    )


def test_depreciation_reference(reference_inputs):
    assert salvage_value(reference_inputs) == pytest.approx(545_000.0, abs=1.0)
    assert depreciation(reference_inputs) == pytest.approx(245_250.0, abs=1.0)


def test_depreciation_full_salvage(reference_inputs):
    inputs = replace(reference_inputs, salvage_rate=1.0)
    assert depreciation(inputs) == 0.0


def test_depreciation_one_year_no_salvage(reference_inputs):
    inputs = replace(reference_inputs, n=1, salvage_rate=0.0)
    assert depreciation(inputs) == inputs.tfc


def test_npv_closed_form_at_zero_price(reference_inputs):
    expected = (-reference_inputs.n * reference_inputs.opex
                + salvage_value(reference_inputs) - reference_inputs.capex)
    assert npv(0.0, reference_inputs) == pytest.approx(expected, rel=1e-12)


def test_npv_strictly_increasing_in_price():
    rng = random.Random(17)
    for _ in range(50):
        inputs = random_break_even_inputs(rng)
        p = rng.uniform(0, 500)
        assert npv(p + 1.0, inputs) > npv(p, inputs)


def test_reference_msp_anchor(reference_inputs):
    result = solve_msp(reference_inputs)
    assert result.msp == pytest.approx(70.85, abs=0.01)
    assert abs(result.npv_at_msp) <= 0.01


def test_msp_zero_when_target_is_base_npv(reference_inputs):
    inputs = replace(reference_inputs, target_npv=npv(0.0, reference_inputs))
    assert solve_msp(inputs).msp == pytest.approx(0.0, abs=1e-9)


def test_world_average_plant_anchor():
    # world-average plant costs and representative financial rates
    inputs = BreakEvenInputs(
        capex=5_327_862.0,
        opex=3_585_823.0,
        q=40_080.0,
        n=20,
        r=0.08,
        tr=0.25,
        salvage_rate=0.10,
        tfc=5_327_862.0 / 1.2,
    )
    result = solve_msp(inputs, weighted_lhv=16.0)
    assert result.msp == pytest.approx(106.0, abs=5.0)
    assert result.msp_per_tj == pytest.approx(6_600.0, abs=350.0)


def test_annual_trace_shape_and_discounting():
    rng = random.Random(19)
    inputs = random_break_even_inputs(rng)
    result = solve_msp(inputs)
    assert len(result.annual_trace) == inputs.n
    for t in result.annual_trace:
        assert t.discounted_cash_flow == pytest.approx(
            t.cash_flow / (1.0 + inputs.r) ** t.year, rel=1e-12
        )
    total = sum(t.discounted_cash_flow for t in result.annual_trace)
    terminal = salvage_value(inputs) / (1.0 + inputs.r) ** inputs.n
    assert total + terminal - inputs.capex == pytest.approx(result.npv_at_msp, abs=1e-6)


def test_negative_tax_in_loss_years():
    inputs = BreakEvenInputs(capex=6e6, opex=2e6, q=40_080.0, n=20, r=0.05, tr=0.3,
                         salvage_rate=0.1, tfc=5e6)
    _, tax, _ = annual_cash_flow(0.0, inputs)
    assert tax < 0.0  # symmetric tax shield, no clamping


def test_closed_form_and_bisection_agree_sample():
    rng = random.Random(101)
    for _ in range(100):
        inputs = random_break_even_inputs(rng)
        closed = solve_msp_closed_form(inputs)
        iterative = solve_msp_bisection(inputs)
        assert abs(closed - iterative) <= 0.01
        assert abs(npv(closed, inputs)) <= 0.01
        assert abs(npv(iterative, inputs)) <= 0.01


def test_msp_monotone_responses():
    rng = random.Random(29)
    for _ in range(100):
        inputs = random_break_even_inputs(rng)
        base = solve_msp_closed_form(inputs)
        assert solve_msp_closed_form(replace(inputs, opex=inputs.opex * 1.2)) >= base
        assert solve_msp_closed_form(replace(inputs, capex=inputs.capex * 1.2)) >= base
        assert solve_msp_closed_form(replace(inputs, r=inputs.r + 0.05)) >= base
        assert solve_msp_closed_form(replace(inputs, q=inputs.q * 1.5)) <= base


def test_msp_scales_with_costs():
    rng = random.Random(31)
    for _ in range(50):
        inputs = random_break_even_inputs(rng)
        k = rng.uniform(0.1, 8.0)
        scaled = replace(inputs, capex=k * inputs.capex, opex=k * inputs.opex,
                         tfc=k * inputs.tfc)
        assert solve_msp_closed_form(scaled) == pytest.approx(
            k * solve_msp_closed_form(inputs), rel=1e-9
        )


def test_tax_neutral_at_zero_discount_when_fully_depreciated():
    """With r = 0 and the whole capital outlay depreciable (tfc = capex), the
    break-even price makes total taxable income zero, so it cannot depend on
    the tax rate."""
    base = BreakEvenInputs(capex=6_540_000.0, opex=2_540_000.0, q=40_080.0, n=20,
                       r=0.0, tr=0.0, salvage_rate=0.10, tfc=6_540_000.0)
    msp0 = solve_msp(base).msp
    for tr in (0.1, 0.25, 0.4, 0.6, 0.9):
        msp_tr = solve_msp(replace(base, tr=tr)).msp
        assert msp_tr == pytest.approx(msp0, rel=1e-6)
        # and total taxable income over the horizon really is zero
        revenue, _, _ = annual_cash_flow(msp_tr, base)
        taxable = base.n * (revenue - base.opex - depreciation(base))
        assert taxable == pytest.approx(0.0, abs=1.0)


def test_tax_raises_msp_when_capital_exceeds_depreciable_base(reference_inputs):
    """The working-capital and start-up slice of CAPEX (capex - tfc) is never
    depreciated, so taxable income at break-even stays positive and a higher
    tax rate pushes the break-even price up, even at r = 0."""
    msp0 = solve_msp(reference_inputs).msp
    msp_taxed = solve_msp(replace(reference_inputs, tr=0.3)).msp
    assert msp_taxed > msp0 * (1.0 + 1e-4)


def test_tax_rate_one_rejected():
    with pytest.raises(DataError):
        BreakEvenInputs(capex=1e6, opex=1e5, q=1e4, n=10, r=0.05, tr=1.0,
                    salvage_rate=0.1, tfc=8e5)


def test_bisection_bracket_guard(reference_inputs):
    # a target above NPV at the top of the bracket leaves no root inside it
    unreachable = npv(2e6, reference_inputs)
    inputs = replace(reference_inputs, target_npv=unreachable)
    with pytest.raises(DataError, match="bracket"):
        solve_msp_bisection(inputs)
