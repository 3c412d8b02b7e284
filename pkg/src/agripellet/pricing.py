"""Break-even pellet price: the selling price at which plant NPV hits a target.

Cash flows are constant across the horizon (no ramp-up): revenue minus OPEX
minus tax, with straight-line depreciation of the fixed capital less salvage.
Tax on loss years goes negative (a symmetric tax shield), which keeps NPV
affine in price and the closed-form inversion exact; a bisection fallback on
the same NPV function provides an independent route to the root.
"""

from __future__ import annotations

from dataclasses import dataclass

from .dataio import DataError


@dataclass(frozen=True)
class BreakEvenInputs:
    capex: float          # $
    opex: float           # $/y
    q: float              # pellet output, t/y
    n: int                # horizon, years
    r: float              # discount rate, fraction/y
    tr: float             # tax rate, fraction
    salvage_rate: float   # fraction of tfc recovered at end of horizon
    tfc: float            # depreciable fixed capital, $
    target_npv: float = 0.0

    def __post_init__(self):
        problems = []
        if not self.q > 0:
            problems.append("q must be > 0")
        if self.n < 1:
            problems.append("n must be >= 1")
        if self.r < 0:
            problems.append("r must be >= 0")
        if not 0 <= self.tr < 1:
            problems.append("tr must be in [0, 1)")
        if not 0 <= self.salvage_rate <= 1:
            problems.append("salvage_rate must be in [0, 1]")
        if self.capex < 0 or self.opex < 0 or self.tfc < 0:
            problems.append("capex, opex, and tfc must be >= 0")
        if problems:
            raise DataError(problems)


@dataclass(frozen=True)
class YearCashFlow:
    year: int
    revenue: float
    tax: float
    cash_flow: float
    discounted_cash_flow: float


@dataclass(frozen=True)
class MspResult:
    msp: float                 # $/t
    npv_at_msp: float          # $
    annual_trace: tuple        # YearCashFlow per year
    msp_per_tj: float | None   # $/TJ when a heating-value context is attached


def salvage_value(inputs: BreakEvenInputs) -> float:
    return inputs.salvage_rate * inputs.tfc


def depreciation(inputs: BreakEvenInputs) -> float:
    """Straight-line annual depreciation of fixed capital less salvage, $/y."""
    return (inputs.tfc - salvage_value(inputs)) / inputs.n


def annual_cash_flow(price: float, inputs: BreakEvenInputs) -> tuple:
    """(revenue, tax, cash flow) of one plant year at the given pellet price."""
    revenue = price * inputs.q
    tax = inputs.tr * (revenue - inputs.opex - depreciation(inputs))
    return revenue, tax, revenue - inputs.opex - tax


def npv(price: float, inputs: BreakEvenInputs) -> float:
    """Net present value over the horizon, summed year by year."""
    _, _, cf = annual_cash_flow(price, inputs)
    total = 0.0
    factor = 1.0
    for _ in range(inputs.n):
        factor /= 1.0 + inputs.r
        total += cf * factor
    return total + salvage_value(inputs) * factor - inputs.capex


def _annuity(r: float, n: int) -> float:
    if r == 0:
        return float(n)
    return (1.0 - (1.0 + r) ** -n) / r


def solve_msp_closed_form(inputs: BreakEvenInputs) -> float:
    """Invert the affine NPV(price) relation directly."""
    a = _annuity(inputs.r, inputs.n)
    terminal = salvage_value(inputs) * (1.0 + inputs.r) ** -inputs.n
    # NPV(p) = a*[(1-tr)*(p*q - opex) + tr*D] + terminal - capex
    slope = a * (1.0 - inputs.tr) * inputs.q
    intercept = a * (-(1.0 - inputs.tr) * inputs.opex + inputs.tr * depreciation(inputs)) \
        + terminal - inputs.capex
    return (inputs.target_npv - intercept) / slope


BISECTION_BRACKET = (0.0, 1e6)  # $/t


def solve_msp_bisection(inputs: BreakEvenInputs, npv_tol: float = 1e-5, max_iter: int = 200) -> float:
    """Root of NPV(price) = target by bisection on the fixed price bracket.

    Iterates until the residual NPV at the midpoint is within ``npv_tol``
    dollars, so the returned price satisfies the break-even condition to the
    same tolerance as the closed form.
    """
    lo, hi = BISECTION_BRACKET
    f_lo = npv(lo, inputs) - inputs.target_npv
    f_hi = npv(hi, inputs) - inputs.target_npv
    if f_lo == 0.0:
        return lo
    if f_hi == 0.0:
        return hi
    if f_lo * f_hi > 0:
        # cannot occur for valid inputs (NPV is strictly increasing in price
        # with slope annuity*(1-tr)*q > 0), but guard the bracket anyway
        raise DataError(
            f"no sign change on price bracket [{lo}, {hi}]: f({lo})={f_lo}, f({hi})={f_hi}"
        )
    mid = 0.5 * (lo + hi)
    for _ in range(max_iter):
        mid = 0.5 * (lo + hi)
        f_mid = npv(mid, inputs) - inputs.target_npv
        if abs(f_mid) <= npv_tol:
            return mid
        if (f_mid > 0) == (f_hi > 0):
            hi, f_hi = mid, f_mid
        else:
            lo, f_lo = mid, f_mid
    return mid


def solve_msp(inputs: BreakEvenInputs, weighted_lhv: float | None = None) -> MspResult:
    """Solve the break-even price and assemble the annual cash-flow trace.

    The closed form is the primary route; if its residual NPV strays beyond a
    cent (it should never), the bisection fallback takes over.
    """
    price = solve_msp_closed_form(inputs)
    if abs(npv(price, inputs) - inputs.target_npv) > 0.01:
        price = solve_msp_bisection(inputs)
    revenue, tax, cf = annual_cash_flow(price, inputs)
    trace = []
    factor = 1.0
    for year in range(1, inputs.n + 1):
        factor /= 1.0 + inputs.r
        trace.append(YearCashFlow(year, revenue, tax, cf, cf * factor))
    per_tj = price / (weighted_lhv * 1e-3) if weighted_lhv else None
    return MspResult(
        msp=price,
        npv_at_msp=npv(price, inputs),
        annual_trace=tuple(trace),
        msp_per_tj=per_tj,
    )
