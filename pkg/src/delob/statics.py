"""Comparative statics: the model's testable sign structure, plus the
discretion surface over the two ideal points.

Each hypothesis clause is a predicate over a parameter grid. Derivative
clauses are measured by central finite differences with a relative step and a
dead band that classifies near-zero slopes as zero; clauses about the chosen
discretion level go through the grid-search oracle rather than the closed
form, so the sign verdicts do not assume the formula they are meant to test.
Conditions carry margins that keep the finite-difference stencil away from
regime kinks (capture clamp, band edges, the ally crossing).
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field, replace
from typing import Callable

import numpy as np

from . import rng
from .legislative import optimal_status_quo
from .model import (
    LegislativeChoice,
    ModelParams,
    RegimeInterpretation,
    ally_ideal,
    best_response_effort,
    conflict_gap,
    enacted_outcome,
    equilibrium_effort,
    outcome_tilde,
    unconstrained_proposal,
)
from .oracle import SearchBox, numeric_optimal_legislation

#: Sampling ranges for randomized parameter grids.
SAMPLE_RANGES = {
    "alpha": (0.1, 10.0),
    "beta": (0.0, 5.0),
    "lambda_weight": (0.0, 1.0),
    "shock_bound": (0.5, 4.0),
    "congress_ideal": (0.0, 2.0),  # lower end open: draws land in (0, 2]
    "agency_ideal": (0.0, 2.0),
}

_MARGIN = 0.05
_ORACLE_MARGIN = 0.1
_DEAD_BAND = 1e-8
_STEP_FLOOR = 1e-6
_MONOTONE_SLACK = 1e-6
_R_SCALES = (1.0, 1.5, 2.0)


@dataclass(frozen=True)
class StageContext:
    """Stage-level inputs that are not model primitives."""

    proposal: float
    shock: float
    choice: LegislativeChoice


@dataclass(frozen=True)
class HypothesisSpec:
    """One testable clause.

    ``kind`` selects the check: ``derivative`` (finite-difference sign),
    ``value`` (named exact predicate), ``iff`` (effort positivity), or
    ``monotone`` (nondecreasing in the shock bound). ``fixed`` pins primitives
    before evaluation (degenerate weights). ``numeric`` marks clauses whose
    quantity runs through the grid-search oracle; those tolerate a small
    violation share attributable to refinement granularity.
    """

    id: str
    clause: str
    quantity: str
    parameter: str | None
    expected_sign: str
    kind: str = "derivative"
    condition: Callable[[ModelParams, StageContext], bool] = field(default=lambda p, c: True)
    condition_desc: str = "always"
    fixed: tuple[tuple[str, float], ...] = ()
    numeric: bool = False
    allowed_violation_share: float = 0.0


@dataclass(frozen=True)
class SignReport:
    hypothesis: HypothesisSpec
    grid_points: int
    eligible: int
    satisfied: int
    violations: tuple
    verdict: str  # pass | fail | vacuous


_PARAM_FIELDS = (
    "alpha",
    "beta",
    "lambda_weight",
    "shock_bound",
    "congress_ideal",
    "agency_ideal",
)


def sample_parameter_grid(seed: int, n: int, ranges=None) -> list[ModelParams]:
    """Randomized parameter grid over the given (or default) ranges.

    Ideal points are drawn from the half-open upper side of their range so
    they stay strictly positive.
    """
    ranges = dict(SAMPLE_RANGES if ranges is None else ranges)
    draws = {}
    for name in _PARAM_FIELDS:
        lo, hi = ranges[name]
        u = rng.random_unit(rng.derive_seed(seed, f"grid:{name}"), n)
        if name in ("congress_ideal", "agency_ideal"):
            draws[name] = hi - (hi - lo) * u
        else:
            draws[name] = lo + (hi - lo) * u
    return [
        ModelParams(**{name: float(draws[name][i]) for name in _PARAM_FIELDS})
        for i in range(n)
    ]


def _stage_contexts(grid: list[ModelParams], ctx_seed: int) -> list[StageContext]:
    n = len(grid)
    proposals = rng.uniform(rng.derive_seed(ctx_seed, "ctx:proposal"), n, -2.0, 4.0)
    shock_units = rng.random_unit(rng.derive_seed(ctx_seed, "ctx:shock"), n)
    out = []
    for i, params in enumerate(grid):
        R = params.shock_bound
        out.append(
            StageContext(
                proposal=float(proposals[i]),
                shock=float(-R + 2.0 * R * shock_units[i]),
                choice=LegislativeChoice(optimal_status_quo(params), 0.4 * R),
            )
        )
    return out


def _raw_tilde(params: ModelParams) -> float:
    """Outcome target before the capture clamp; may be negative."""
    return params.agency_ideal - params.pressure


def _default_box(params: ModelParams) -> SearchBox:
    # lighter than the standalone oracle default; plenty for sign work since
    # the final grid spacing is orders below the finite-difference step
    return SearchBox.for_params(params, coarse_points=61, refine_rounds=4)


def _quantity(
    name: str,
    params: ModelParams,
    ctx: StageContext,
    mode: RegimeInterpretation,
    box_factory,
) -> float:
    if name == "effort":
        return best_response_effort(ctx.proposal, ctx.shock, params)
    if name == "equilibrium_effort":
        return equilibrium_effort(params)
    if name == "proposal":
        return unconstrained_proposal(ctx.shock, params)
    if name == "outcome_tilde":
        return outcome_tilde(params)
    if name == "outcome_conflict":
        return abs(outcome_tilde(params) - params.congress_ideal)
    if name == "ally_ideal":
        return ally_ideal(params)
    if name == "status_quo":
        return optimal_status_quo(params)
    if name == "discretion":
        return numeric_optimal_legislation(
            params, box=box_factory(params), mode=mode
        ).choice.discretion
    if name == "enacted_outcome":
        return enacted_outcome(ctx.shock, ctx.choice, params, mode).outcome
    raise KeyError(f"unknown quantity {name!r}")


def _get_parameter(params: ModelParams, ctx: StageContext, name: str) -> float:
    if name in _PARAM_FIELDS:
        return getattr(params, name)
    if name == "proposal":
        return ctx.proposal
    if name == "shock":
        return ctx.shock
    if name == "status_quo":
        return ctx.choice.status_quo
    if name == "discretion":
        return ctx.choice.discretion
    raise KeyError(f"unknown parameter {name!r}")


def _set_parameter(params: ModelParams, ctx: StageContext, name: str, value: float):
    if name in _PARAM_FIELDS:
        return replace(params, **{name: value}), ctx
    if name == "proposal":
        return params, replace(ctx, proposal=value)
    if name == "shock":
        return params, replace(ctx, shock=value)
    if name == "status_quo":
        return params, replace(
            ctx, choice=LegislativeChoice(value, ctx.choice.discretion)
        )
    if name == "discretion":
        return params, replace(
            ctx, choice=LegislativeChoice(ctx.choice.status_quo, value)
        )
    raise KeyError(f"unknown parameter {name!r}")


def _check_value_clause(spec: HypothesisSpec, params: ModelParams) -> tuple[bool, float]:
    if spec.quantity == "capture":
        eff = equilibrium_effort(params)
        tilde = outcome_tilde(params)
        return (eff == 0.0 and tilde == 0.0), max(abs(eff), abs(tilde))
    if spec.quantity == "ally_gap":
        gap = conflict_gap(replace(params, agency_ideal=ally_ideal(params)))
        return abs(gap) <= 1e-12, gap
    raise KeyError(f"unknown value clause {spec.quantity!r}")


def evaluate_hypothesis(
    spec: HypothesisSpec,
    grid: list[ModelParams],
    step: float = 1e-4,
    *,
    ctx_seed: int = 0,
    mode: RegimeInterpretation = RegimeInterpretation.FINAL_POLICY_BAND,
    box_factory=None,
    dead_band: float = _DEAD_BAND,
) -> SignReport:
    """Evaluate one clause over a parameter grid.

    At each eligible point, derivative clauses use a central difference with
    step ``max(1e-6, step * max(1, |value|))`` and classify the sign with the
    dead band. Points where a perturbed primitive leaves its domain are
    skipped as ineligible rather than counted against the clause.
    """
    if step <= 0.0:
        raise ValueError("step must be positive")
    if not grid:
        raise ValueError("grid must be nonempty")
    box_factory = box_factory or _default_box
    contexts = _stage_contexts(grid, ctx_seed)
    eligible = 0
    satisfied = 0
    violations = []
    for i, raw in enumerate(grid):
        params = replace(raw, **dict(spec.fixed)) if spec.fixed else raw
        ctx = contexts[i]
        if not spec.condition(params, ctx):
            continue
        if spec.kind == "value":
            ok, measured = _check_value_clause(spec, params)
        elif spec.kind == "iff":
            z = ctx.proposal + ctx.shock
            eff = best_response_effort(ctx.proposal, ctx.shock, params)
            ok, measured = (eff > 0.0) == (z > 0.0), eff
        elif spec.kind == "monotone":
            base_r = params.shock_bound
            levels = []
            try:
                for scale in _R_SCALES:
                    scaled = replace(params, shock_bound=base_r * scale)
                    levels.append(
                        _quantity(spec.quantity, scaled, ctx, mode, box_factory)
                    )
            except ValueError:
                continue
            increments = [b - a for a, b in zip(levels, levels[1:])]
            ok, measured = min(increments) >= -_MONOTONE_SLACK, min(increments)
        elif spec.kind == "derivative":
            t0 = _get_parameter(params, ctx, spec.parameter)
            h = max(_STEP_FLOOR, step * max(1.0, abs(t0)))
            try:
                p_hi, c_hi = _set_parameter(params, ctx, spec.parameter, t0 + h)
                p_lo, c_lo = _set_parameter(params, ctx, spec.parameter, t0 - h)
                q_hi = _quantity(spec.quantity, p_hi, c_hi, mode, box_factory)
                q_lo = _quantity(spec.quantity, p_lo, c_lo, mode, box_factory)
            except ValueError:
                continue
            measured = (q_hi - q_lo) / (2.0 * h)
            if abs(measured) <= dead_band:
                sign = "zero"
            elif measured > 0.0:
                sign = "positive"
            else:
                sign = "negative"
            ok = sign == spec.expected_sign
        else:
            raise ValueError(f"unknown clause kind {spec.kind!r}")
        eligible += 1
        if ok:
            satisfied += 1
        else:
            violations.append((i, params, float(measured)))
    if eligible == 0:
        verdict = "vacuous"
    elif len(violations) <= spec.allowed_violation_share * eligible:
        verdict = "pass"
    else:
        verdict = "fail"
    return SignReport(
        hypothesis=spec,
        grid_points=len(grid),
        eligible=eligible,
        satisfied=satisfied,
        violations=tuple(violations),
        verdict=verdict,
    )


def builtin_hypotheses() -> list[HypothesisSpec]:
    """The full clause encoding of the model's nine hypotheses."""
    m = _MARGIN
    om = _ORACLE_MARGIN

    def lobbying_on(p, c):
        return c.proposal + c.shock > m

    def active_tilde(p, c):
        return _raw_tilde(p) > m

    def active_tilde_beta(p, c):
        return _raw_tilde(p) > m and p.beta >= 1e-3

    def tougher_agency(p, c):
        return outcome_tilde(p) - p.congress_ideal > m

    def tougher_agency_beta(p, c):
        return outcome_tilde(p) - p.congress_ideal > m and p.beta >= m

    def tougher_congress(p, c):
        return p.congress_ideal - p.agency_ideal > m and _raw_tilde(p) > m

    def tougher_congress_beta(p, c):
        return tougher_congress(p, c) and p.beta >= m

    def discretion_interior_lam0(p, c):
        spread = math.sqrt((1.0 + p.alpha) / p.alpha) * outcome_tilde(p)
        return _raw_tilde(p) > m and om < spread < p.shock_bound - om

    def conflict_above_lam1(p, c):
        gap = outcome_tilde(p) - p.congress_ideal
        return gap > om and abs(gap) < p.shock_bound - om

    def conflict_below_lam1(p, c):
        gap = p.congress_ideal - outcome_tilde(p)
        return gap > om and _raw_tilde(p) > om and gap < p.shock_bound - om

    def outer_regime(p, c):
        # outside the interior band under either band reading (their regime
        # boundaries differ: the proposal-band middle is centered higher)
        for center in (outcome_tilde(p), (1.0 + p.alpha) / p.alpha * outcome_tilde(p)):
            lo = center - c.choice.status_quo - c.choice.discretion
            hi = center - c.choice.status_quo + c.choice.discretion
            if lo - m <= c.shock <= hi + m:
                return False
        return True

    return [
        HypothesisSpec(
            "H1", "effort rises with the proposed rule", "effort", "proposal",
            "positive", condition=lobbying_on, condition_desc="proposal+shock > margin",
        ),
        HypothesisSpec(
            "H1", "effort rises with the shock", "effort", "shock",
            "positive", condition=lobbying_on, condition_desc="proposal+shock > margin",
        ),
        HypothesisSpec(
            "H1", "effort falls with the lobbying cost", "effort", "alpha",
            "negative", condition=lobbying_on, condition_desc="proposal+shock > margin",
        ),
        HypothesisSpec(
            "H1", "effort is positive exactly when proposal+shock is", "effort", None,
            "positive", kind="iff",
        ),
        HypothesisSpec(
            "H2", "proposal falls with the shock", "proposal", "shock", "negative",
        ),
        HypothesisSpec(
            "H2", "proposal falls with the agency burden", "proposal", "beta",
            "negative", condition=active_tilde_beta, condition_desc="uncaptured, beta off zero",
        ),
        HypothesisSpec(
            "H2", "proposal rises with the agency ideal", "proposal", "agency_ideal",
            "positive", condition=active_tilde, condition_desc="uncaptured",
        ),
        HypothesisSpec(
            "H3", "equilibrium effort falls with the agency burden",
            "equilibrium_effort", "beta", "negative",
            condition=active_tilde_beta, condition_desc="uncaptured, beta off zero",
        ),
        HypothesisSpec(
            "H3", "equilibrium effort rises with the agency ideal",
            "equilibrium_effort", "agency_ideal", "positive",
            condition=active_tilde, condition_desc="uncaptured",
        ),
        HypothesisSpec(
            "H3", "equilibrium effort falls with the lobbying cost when the agency ideal tops beta/alpha",
            "equilibrium_effort", "alpha", "negative",
            condition=lambda p, c: _raw_tilde(p) > m and p.agency_ideal - p.beta / p.alpha > m,
            condition_desc="uncaptured and x_A > beta/alpha",
        ),
        HypothesisSpec(
            "H3", "equilibrium effort rises with the lobbying cost when beta/alpha tops the agency ideal",
            "equilibrium_effort", "alpha", "positive",
            condition=lambda p, c: _raw_tilde(p) > m and p.beta / p.alpha - p.agency_ideal > m,
            condition_desc="uncaptured and x_A < beta/alpha",
        ),
        HypothesisSpec(
            "H4", "capture: the threat alone delivers the industry outcome",
            "capture", None, "zero", kind="value",
            condition=lambda p, c: p.captured, condition_desc="beta >= 2*alpha*x_A",
        ),
        HypothesisSpec(
            "H5", "conflict falls with the burden when the pressured agency is tougher",
            "outcome_conflict", "beta", "negative",
            condition=tougher_agency, condition_desc="x_tilde > x_C + margin",
        ),
        HypothesisSpec(
            "H5", "conflict rises with the lobbying cost when the pressured agency is tougher",
            "outcome_conflict", "alpha", "positive",
            condition=tougher_agency_beta, condition_desc="x_tilde > x_C + margin, beta off zero",
        ),
        HypothesisSpec(
            "H5", "conflict rises with the burden when Congress is tougher",
            "outcome_conflict", "beta", "positive",
            condition=tougher_congress, condition_desc="x_C > x_A + margin, uncaptured",
        ),
        HypothesisSpec(
            "H5", "conflict falls with the lobbying cost when Congress is tougher",
            "outcome_conflict", "alpha", "negative",
            condition=tougher_congress_beta,
            condition_desc="x_C > x_A + margin, uncaptured, beta off zero",
        ),
        HypothesisSpec(
            "H6", "zero conflict at the preferred agency ideal", "ally_gap", None,
            "zero", kind="value",
        ),
        HypothesisSpec(
            "H6", "preferred agency bias rises with the burden", "ally_ideal", "beta",
            "positive", condition=lambda p, c: p.beta >= 1e-3,
            condition_desc="beta off zero",
        ),
        HypothesisSpec(
            "H6", "preferred agency bias falls with the lobbying cost", "ally_ideal",
            "alpha", "negative", condition=lambda p, c: p.beta >= m,
            condition_desc="beta > margin",
        ),
        HypothesisSpec(
            "H7", "status quo rises with Congress's ideal", "status_quo",
            "congress_ideal", "positive",
            condition=lambda p, c: p.lambda_weight >= m,
            condition_desc="lambda > margin",
        ),
        HypothesisSpec(
            "H7", "status quo rises with the policy weight", "status_quo",
            "lambda_weight", "positive",
            condition=lambda p, c: m <= p.lambda_weight <= 1.0 - m,
            condition_desc="lambda interior",
        ),
        HypothesisSpec(
            "H8", "discretion grows with shock uncertainty", "discretion",
            "shock_bound", "positive", kind="monotone",
            numeric=True, allowed_violation_share=0.01,
        ),
        HypothesisSpec(
            "H8", "contribution-driven Congress trims discretion as the outcome drifts from the industry ideal",
            "discretion", "agency_ideal", "negative",
            fixed=(("lambda_weight", 0.0),),
            condition=discretion_interior_lam0,
            condition_desc="lambda=0, uncaptured, interior optimum",
            numeric=True, allowed_violation_share=0.01,
        ),
        HypothesisSpec(
            "H8", "policy-driven Congress trims discretion as the agency pulls further above it",
            "discretion", "agency_ideal", "negative",
            fixed=(("lambda_weight", 1.0),),
            condition=conflict_above_lam1,
            condition_desc="lambda=1, x_tilde above x_C, interior optimum",
            numeric=True, allowed_violation_share=0.01,
        ),
        HypothesisSpec(
            "H8", "policy-driven Congress widens discretion as the agency closes the gap from below",
            "discretion", "agency_ideal", "positive",
            fixed=(("lambda_weight", 1.0),),
            condition=conflict_below_lam1,
            condition_desc="lambda=1, x_tilde below x_C, uncaptured, interior optimum",
            numeric=True, allowed_violation_share=0.01,
        ),
        HypothesisSpec(
            "H9", "outcome rises with the agency ideal", "outcome_tilde",
            "agency_ideal", "positive", condition=active_tilde,
            condition_desc="uncaptured",
        ),
        HypothesisSpec(
            "H9", "outcome falls with the agency burden", "outcome_tilde", "beta",
            "negative", condition=active_tilde_beta,
            condition_desc="uncaptured, beta off zero",
        ),
        HypothesisSpec(
            "H9", "outcome rises with the lobbying cost", "outcome_tilde", "alpha",
            "positive", condition=lambda p, c: _raw_tilde(p) > m and p.beta >= m,
            condition_desc="uncaptured, beta > margin",
        ),
        HypothesisSpec(
            "H9", "a higher status quo raises outcomes when the band binds",
            "enacted_outcome", "status_quo", "positive",
            condition=outer_regime, condition_desc="shock outside the band regime",
        ),
    ]


def evaluate_all(
    grid: list[ModelParams],
    step: float = 1e-4,
    *,
    ctx_seed: int = 0,
    mode: RegimeInterpretation = RegimeInterpretation.FINAL_POLICY_BAND,
    box_factory=None,
) -> list[SignReport]:
    return [
        evaluate_hypothesis(
            spec, grid, step, ctx_seed=ctx_seed, mode=mode, box_factory=box_factory
        )
        for spec in builtin_hypotheses()
    ]


def discretion_surface(
    params_base: ModelParams,
    xa_range: tuple[float, float, int],
    xc_range: tuple[float, float, int],
):
    """Surface of ``(d - R)**2`` over an (agency ideal, Congress ideal) grid.

    Returns ``(xa_values, xc_values, surface)`` with the surface row-major in
    the agency-ideal axis. Large values mean little delegated discretion.
    """
    from .legislative import optimal_legislation

    for lo, hi, steps in (xa_range, xc_range):
        if steps < 2:
            raise ValueError("ranges need at least 2 steps")
        if not lo < hi:
            raise ValueError("range lower bound must be below upper bound")
    xa_vals = np.linspace(xa_range[0], xa_range[1], xa_range[2])
    xc_vals = np.linspace(xc_range[0], xc_range[1], xc_range[2])
    R = params_base.shock_bound
    surface = np.empty((xa_vals.size, xc_vals.size))
    for i, xa in enumerate(xa_vals):
        for j, xc in enumerate(xc_vals):
            point = replace(params_base, agency_ideal=float(xa), congress_ideal=float(xc))
            d = optimal_legislation(point).choice.discretion
            surface[i, j] = (d - R) ** 2
    return xa_vals, xc_vals, surface
