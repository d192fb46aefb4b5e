"""Legislative stage: expected utilities and the optimal status quo and discretion.

With the band read as binding the final policy, the outcome map is piecewise
linear in the shock, so both expected utilities are integrals of piecewise
quadratics and close in elementary antiderivatives. Integration limits are
clamped to the shock support, which extends the expressions continuously to
any (status quo, discretion) pair, including choices where one or both outer
regimes are empty.

The jointly efficient legislation maximizes ``lambda * EU_C + (1 - lambda) *
EU_I``; contributions cancel out of that objective and are reported
separately through a participation-constraint construction.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, replace
from enum import Enum

from .model import (
    LegislativeChoice,
    ModelParams,
    RegimeInterpretation,
    outcome_tilde,
)


class SolutionBranch(Enum):
    """How the reported discretion level was produced."""

    CLOSED_FORM_FOC = "closed-form-foc"
    EXTREME_FORMULA = "extreme-case-formula"
    NUMERIC_FALLBACK = "numeric-fallback"


@dataclass(frozen=True)
class ExpectedWelfare:
    """Expected-utility bundle at a legislative choice.

    ``eu_congress_policy`` is the policy component of Congress's utility only;
    the transfer enters Congress's payoff with weight ``1 - lambda`` and
    cancels out of the joint objective, so it is carried separately in
    ``contribution``. ``contribution_defined`` is False when the weight is
    degenerate (lambda = 1) and no finite transfer is pinned down.
    """

    eu_congress_policy: float
    eu_group: float
    joint_value: float
    contribution: float = 0.0
    contribution_defined: bool = True


@dataclass(frozen=True)
class OptimalLegislation:
    choice: LegislativeChoice
    welfare: ExpectedWelfare
    interior: bool
    branch_label: SolutionBranch


def _shifted_square_integral(shift: float, lo: float, hi: float) -> float:
    """Integral of (shift + w)**2 dw from lo to hi via the antiderivative."""
    a = shift + lo
    b = shift + hi
    return (b * b * b - a * a * a) / 3.0


def _clamped_limits(choice: LegislativeChoice, params: ModelParams):
    xt = outcome_tilde(params)
    R = params.shock_bound
    base = xt - choice.status_quo
    a = min(max(base - choice.discretion, -R), R)
    b = min(max(base + choice.discretion, -R), R)
    return xt, a, b


def expected_utility_congress(choice: LegislativeChoice, params: ModelParams) -> float:
    """Expected policy utility of Congress at a legislative choice."""
    xt, a, b = _clamped_limits(choice, params)
    R = params.shock_bound
    xc = params.congress_ideal
    p0 = choice.status_quo
    d = choice.discretion
    total = (
        _shifted_square_integral(p0 + d - xc, -R, a)
        + (b - a) * (xt - xc) ** 2
        + _shifted_square_integral(p0 - d - xc, b, R)
    )
    return -total / (2.0 * R)


def expected_utility_group(choice: LegislativeChoice, params: ModelParams) -> float:
    """Expected utility of the group, gross of contributions.

    The interior-regime term carries the factor ``(1 + alpha) / alpha``,
    which folds the equilibrium lobbying cost into the quadratic outcome
    loss.
    """
    xt, a, b = _clamped_limits(choice, params)
    R = params.shock_bound
    p0 = choice.status_quo
    d = choice.discretion
    total = (
        _shifted_square_integral(p0 + d, -R, a)
        + (b - a) * (1.0 + params.alpha) / params.alpha * xt * xt
        + _shifted_square_integral(p0 - d, b, R)
    )
    return -total / (2.0 * R)


def joint_objective(choice: LegislativeChoice, params: ModelParams) -> float:
    """Weighted joint surplus ``lambda * EU_C + (1 - lambda) * EU_I``."""
    lam = params.lambda_weight
    return lam * expected_utility_congress(choice, params) + (
        1.0 - lam
    ) * expected_utility_group(choice, params)


def optimal_status_quo(params: ModelParams) -> float:
    """Jointly optimal status quo: Congress's ideal scaled by its policy weight."""
    return params.lambda_weight * params.congress_ideal


def discretion_gap_square(params: ModelParams) -> float:
    """Optimal value of ``(d - R)**2`` from the first-order condition.

    Obtained by substituting the optimal status quo into the discretion
    first-order condition. Always nonnegative: it decomposes as
    ``(xt - lambda*x_C)**2 + (1 - lambda)/alpha * xt**2``.
    """
    xt = outcome_tilde(params)
    lam = params.lambda_weight
    xc = params.congress_ideal
    al = params.alpha
    return ((1.0 + al - lam) / al) * xt * xt - 2.0 * lam * xc * xt + (lam * xc) ** 2


def optimal_discretion_foc(params: ModelParams) -> float:
    """Discretion solving the first-order condition, clamped to [0, R].

    The root below R is the relevant one (the objective's slope in d is
    proportional to ``(R - d)**2 - S``); when S exceeds R**2 the slope is
    negative everywhere and zero discretion is optimal.
    """
    R = params.shock_bound
    s = max(0.0, discretion_gap_square(params))
    return min(R, max(0.0, R - math.sqrt(s)))


def optimal_discretion_extremes(params: ModelParams) -> float:
    """Shortcut discretion formulas for the degenerate weights.

    At ``lambda = 0`` this is ``R - ((1+alpha)/alpha) * |x_A - pressure|``;
    at ``lambda = 1`` it is ``R - |x_A - x_C - pressure|``. The lambda = 1
    branch coincides with the first-order condition; the lambda = 0 branch
    does not (it scales the gap linearly where the optimality condition
    scales its square) and the verify report surfaces the disagreement.
    """
    lam = params.lambda_weight
    R = params.shock_bound
    if lam == 0.0:
        gap = abs(params.agency_ideal - params.pressure)
        d = R - (1.0 + params.alpha) / params.alpha * gap
    elif lam == 1.0:
        d = R - abs(params.agency_ideal - params.congress_ideal - params.pressure)
    else:
        raise ValueError(f"extreme-case formula requires lambda in {{0, 1}}, got {lam}")
    return min(R, max(0.0, d))


def _thresholds_interior(choice: LegislativeChoice, params: ModelParams) -> bool:
    xt = outcome_tilde(params)
    R = params.shock_bound
    lo = xt - choice.status_quo - choice.discretion
    hi = xt - choice.status_quo + choice.discretion
    return -R < lo and hi < R


def _solve_choice(params: ModelParams, mode: RegimeInterpretation, box):
    """Closed form when applicable, otherwise the grid-search oracle.

    Under the final-policy band the first-order-condition point always keeps
    both regime thresholds inside the shock support (weakly; the bound is
    tight only at lambda = 1 or under capture), so the closed form is valid
    whenever no custom search box is imposed. The proposal-band reading has
    no closed form and always goes numeric.
    """
    if mode is RegimeInterpretation.FINAL_POLICY_BAND and box is None:
        choice = LegislativeChoice(optimal_status_quo(params), optimal_discretion_foc(params))
        return choice, SolutionBranch.CLOSED_FORM_FOC
    from .oracle import numeric_optimal_legislation

    result = numeric_optimal_legislation(params, box=box, mode=mode)
    return result.choice, SolutionBranch.NUMERIC_FALLBACK


def _expected_pair(choice: LegislativeChoice, params: ModelParams, mode: RegimeInterpretation):
    if mode is RegimeInterpretation.FINAL_POLICY_BAND:
        return expected_utility_congress(choice, params), expected_utility_group(choice, params)
    from .oracle import numeric_expected_utilities

    welfare = numeric_expected_utilities(choice, params, mode=mode)
    return welfare.eu_congress_policy, welfare.eu_group


def truthful_contribution(
    params: ModelParams,
    legislated: OptimalLegislation,
    mode: RegimeInterpretation = RegimeInterpretation.FINAL_POLICY_BAND,
) -> float:
    """Transfer that leaves Congress indifferent to legislating alone.

    Congress's outside option is its unilateral optimum (the lambda = 1
    solution) with no contributions; accepting the jointly efficient
    legislation requires ``lambda * EU_C(L) + (1 - lambda) * M`` to match
    ``lambda * EU_C(C)``. Undefined at lambda = 1, where zero is returned by
    convention.
    """
    lam = params.lambda_weight
    if lam >= 1.0:
        return 0.0
    congress_led = replace(params, lambda_weight=1.0)
    ref_choice, _ = _solve_choice(congress_led, mode, None)
    # EU_C does not depend on lambda, so evaluate both at the original params
    euc_ref, _ = _expected_pair(ref_choice, params, mode)
    euc_leg, _ = _expected_pair(legislated.choice, params, mode)
    return max(0.0, lam / (1.0 - lam) * (euc_ref - euc_leg))


def optimal_legislation(
    params: ModelParams,
    mode: RegimeInterpretation = RegimeInterpretation.FINAL_POLICY_BAND,
    box=None,
) -> OptimalLegislation:
    """Jointly optimal legislation with its welfare bundle.

    Uses the closed forms (status quo ``lambda * x_C``, discretion from the
    first-order condition) under the default reading; falls back to the
    numeric oracle for the proposal-band reading or a custom search box.
    ``interior`` records whether both regime thresholds are strictly inside
    the shock support at the optimum.
    """
    choice, branch = _solve_choice(params, mode, box)
    euc, eui = _expected_pair(choice, params, mode)
    lam = params.lambda_weight
    shell = OptimalLegislation(
        choice=choice,
        welfare=ExpectedWelfare(euc, eui, lam * euc + (1.0 - lam) * eui),
        interior=_thresholds_interior(choice, params),
        branch_label=branch,
    )
    contribution = truthful_contribution(params, shell, mode)
    welfare = ExpectedWelfare(
        eu_congress_policy=euc,
        eu_group=eui,
        joint_value=lam * euc + (1.0 - lam) * eui,
        contribution=contribution,
        contribution_defined=lam < 1.0,
    )
    return replace(shell, welfare=welfare)
