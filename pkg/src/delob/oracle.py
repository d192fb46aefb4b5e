"""Brute-force ground truth: quadrature, grid-and-refine argmaxes, simulation.

Nothing in this module trusts the closed forms it is used to check. Expected
utilities come from composite Simpson quadrature of realized stage payoffs
(nodes split at the regime thresholds, which makes the rule exact for the
piecewise-quadratic integrands); every optimum comes from derivative-free
grid search with geometric refinement, robust to the kinks the outcome map
puts into the objectives. Ties break toward smaller discretion, then smaller
absolute status quo, so results are independent of evaluation order.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Sequence

import numpy as np

from . import _backend, rng
from .legislative import ExpectedWelfare, OptimalLegislation, SolutionBranch
from .model import (
    LegislativeChoice,
    ModelParams,
    RegimeInterpretation,
    StageOutcome,
    outcome_tilde,
)

#: Node count for standalone expected-utility cross-checks.
DEFAULT_QUAD_NODES = 4097

#: Node count used inside the legislative grid search. Threshold-aligned
#: Simpson is exact on the piecewise-quadratic integrands at any count, so
#: this trades nothing but constant factors.
ARGMAX_QUAD_NODES = 129


@dataclass(frozen=True)
class SearchBox:
    """Search region and refinement schedule for the legislative argmax."""

    p0_min: float
    p0_max: float
    d_min: float = 0.0
    d_max: float = 2.0
    coarse_points: int = 201
    refine_rounds: int = 3

    def __post_init__(self):
        if not self.p0_min < self.p0_max:
            raise ValueError("p0_min must be below p0_max")
        if not self.d_max > 0.0:
            raise ValueError("d_max must be positive")
        if self.d_min < 0.0:
            raise ValueError("d_min must be nonnegative")
        if self.coarse_points < 3:
            raise ValueError("coarse_points must be at least 3")
        if self.refine_rounds < 0:
            raise ValueError("refine_rounds must be nonnegative")

    @classmethod
    def for_params(
        cls, params: ModelParams, coarse_points: int = 201, refine_rounds: int = 3
    ) -> "SearchBox":
        span = 2.0 * max(params.congress_ideal, params.agency_ideal, 1.0)
        return cls(
            p0_min=-span,
            p0_max=span,
            d_min=0.0,
            d_max=2.0 * params.shock_bound,
            coarse_points=coarse_points,
            refine_rounds=refine_rounds,
        )


def numeric_expected_utilities(
    choice: LegislativeChoice,
    params: ModelParams,
    mode: RegimeInterpretation = RegimeInterpretation.FINAL_POLICY_BAND,
    nodes: int = DEFAULT_QUAD_NODES,
) -> ExpectedWelfare:
    """Quadrature counterpart of the closed-form expected utilities."""
    euc, eui = _backend.eu_numeric_grid(
        np.array([choice.status_quo]),
        np.array([choice.discretion]),
        outcome_tilde(params),
        params.congress_ideal,
        params.shock_bound,
        params.alpha,
        nodes,
        mode is RegimeInterpretation.FINAL_POLICY_BAND,
    )
    lam = params.lambda_weight
    return ExpectedWelfare(
        eu_congress_policy=float(euc[0]),
        eu_group=float(eui[0]),
        joint_value=lam * float(euc[0]) + (1.0 - lam) * float(eui[0]),
    )


def _grid_refine_1d(f, lo: float, hi: float, points: int = 201, rounds: int = 6) -> float:
    """Argmax of a vectorized scalar function by grid search with refinement.

    Ties go to the smaller argument (first grid hit). The incumbent is kept
    across rounds, so the reported value never regresses.
    """
    best_x = lo
    best_v = -math.inf
    cur_lo, cur_hi = lo, hi
    for _ in range(rounds + 1):
        xs = np.linspace(cur_lo, cur_hi, points)
        vs = f(xs)
        i = int(np.argmax(vs))
        if vs[i] > best_v:
            best_v = float(vs[i])
            best_x = float(xs[i])
        hw = (cur_hi - cur_lo) / 20.0
        cur_lo = max(lo, best_x - hw)
        cur_hi = min(hi, best_x + hw)
    return best_x


def numeric_best_effort(proposal: float, shock: float, params: ModelParams) -> float:
    """Grid-search argmax of the group's effort problem."""
    top = max(0.0, proposal + shock)
    if top == 0.0:
        return 0.0
    alpha = params.alpha

    def value(e):
        gap = proposal - e + shock
        return -(gap * gap) - alpha * e * e

    return _grid_refine_1d(value, 0.0, top)


def numeric_best_proposal(
    shock: float,
    params: ModelParams,
    band: LegislativeChoice | None = None,
    mode: RegimeInterpretation = RegimeInterpretation.FINAL_POLICY_BAND,
) -> float:
    """Grid-search argmax of the agency's proposal problem.

    The unconstrained box is centered where lobbying switches on and is wide
    enough to contain the interior optimum for any admissible parameters;
    under the proposal-band reading a band restricts the search instead.
    """
    alpha = params.alpha
    beta = params.beta
    xa = params.agency_ideal

    def value(pa):
        e = np.maximum(0.0, (pa + shock) / (1.0 + alpha))
        x = pa - e + shock
        return -((x - xa) ** 2) - beta * e

    if band is not None and mode is RegimeInterpretation.PROPOSAL_BAND:
        lo = band.status_quo - band.discretion
        hi = band.status_quo + band.discretion
        if lo == hi:
            return lo
    else:
        reach = (1.0 + alpha) / alpha * xa
        lo = -shock - 1.0
        hi = -shock + reach + 1.0
    return _grid_refine_1d(value, lo, hi)


def _joint_on_grid(p0_flat, d_flat, params: ModelParams, mode, nodes):
    euc, eui = _backend.eu_numeric_grid(
        p0_flat,
        d_flat,
        outcome_tilde(params),
        params.congress_ideal,
        params.shock_bound,
        params.alpha,
        nodes,
        mode is RegimeInterpretation.FINAL_POLICY_BAND,
    )
    lam = params.lambda_weight
    return lam * euc + (1.0 - lam) * eui


#: Relative slack below the best objective value within which points count as
#: tied. The joint objective is exactly flat along one band edge whenever a
#: shock regime is empty; those flats run diagonally in (p0, d) and rarely
#: intersect the grid, so exact-equality ties would miss them.
_TIE_SLACK = 1e-12

#: Reduction moves shorter than this are treated as staying put.
_MIN_REDUCTION = 1e-4

#: Flat directions in (p0, d): pure discretion cut, and the two diagonal
#: rays that keep one band edge (p0 + d or p0 - d) constant.
_FLAT_DIRECTIONS = ((0.0, -1.0), (1.0, -1.0), (-1.0, -1.0))


def _pick_tied_minimum_d(p_flat, d_flat, joint):
    """Smallest-discretion point among numerically tied objective values,
    breaking remaining ties toward smaller |p0|, then smaller p0."""
    top = joint.max()
    slack = _TIE_SLACK * max(1.0, abs(top))
    cand_idx = np.flatnonzero(joint >= top - slack)
    order = np.lexsort((p_flat[cand_idx], np.abs(p_flat[cand_idx]), d_flat[cand_idx]))
    pick = cand_idx[order[0]]
    return float(joint[pick]), float(p_flat[pick]), float(d_flat[pick])


def _mesh_rounds(params, box, mode, nodes, p_lo, p_hi, d_lo, d_hi, rounds):
    incumbent = None
    for _ in range(rounds):
        p_grid = np.linspace(p_lo, p_hi, box.coarse_points)
        d_grid = np.linspace(d_lo, d_hi, box.coarse_points)
        pp, dd = np.meshgrid(p_grid, d_grid, indexing="ij")
        joint = _joint_on_grid(pp.ravel(), dd.ravel(), params, mode, nodes)
        incumbent = _pick_tied_minimum_d(pp.ravel(), dd.ravel(), joint)
        p_hw = (p_hi - p_lo) / 20.0
        d_hw = (d_hi - d_lo) / 20.0
        p_lo = max(box.p0_min, incumbent[1] - p_hw)
        p_hi = min(box.p0_max, incumbent[1] + p_hw)
        d_lo = max(box.d_min, incumbent[2] - d_hw)
        d_hi = min(box.d_max, incumbent[2] + d_hw)
    return incumbent


def _reduce_along_flats(incumbent, params, box, mode, nodes):
    """Slide the incumbent toward smaller discretion along any flat direction.

    Bisects for the farthest point on each candidate ray whose objective
    stays within the tie slack of the incumbent's value; this finds the
    attachment point where an empty shock regime re-opens, even though such
    rays are diagonal and almost never intersect the search grid.
    """
    j_ref, p0, d = incumbent

    def joint_at(p, dv):
        return float(
            _joint_on_grid(np.array([p]), np.array([dv]), params, mode, nodes)[0]
        )

    slack = _TIE_SLACK * max(1.0, abs(j_ref))
    best_t = 0.0
    best_point = incumbent
    for dp, dd in _FLAT_DIRECTIONS:
        t_hi = d - box.d_min
        if dp > 0.0:
            t_hi = min(t_hi, box.p0_max - p0)
        elif dp < 0.0:
            t_hi = min(t_hi, p0 - box.p0_min)
        if t_hi <= 0.0:
            continue

        def acceptable(t):
            return joint_at(p0 + dp * t, d - t) >= j_ref - slack

        if acceptable(t_hi):
            t_star = t_hi
        else:
            lo, hi = 0.0, t_hi
            for _ in range(60):
                mid = 0.5 * (lo + hi)
                if acceptable(mid):
                    lo = mid
                else:
                    hi = mid
            t_star = lo
        if t_star > best_t:
            best_t = t_star
            new_p, new_d = p0 + dp * t_star, d - t_star
            best_point = (joint_at(new_p, new_d), new_p, new_d)
    return best_point, best_t


def numeric_optimal_legislation(
    params: ModelParams,
    box: SearchBox | None = None,
    mode: RegimeInterpretation = RegimeInterpretation.FINAL_POLICY_BAND,
    nodes: int = ARGMAX_QUAD_NODES,
) -> OptimalLegislation:
    """Grid-and-refine argmax of the joint objective over the search box.

    The selection rule is deterministic and evaluation-order independent:
    among all points whose objective is within a rounding-scale slack of the
    best value found, report the one with the smallest discretion, then the
    smallest absolute status quo. Mesh refinement alternates with a flat-
    direction reduction pass so the rule holds on the objective's exactly
    flat rays and across basins separated by them.
    """
    if box is None:
        box = SearchBox.for_params(params)
    rounds = box.refine_rounds + 1
    incumbent = _mesh_rounds(
        params, box, mode, nodes,
        box.p0_min, box.p0_max, box.d_min, box.d_max, rounds,
    )
    for _ in range(4):
        incumbent, moved = _reduce_along_flats(incumbent, params, box, mode, nodes)
        if moved < _MIN_REDUCTION:
            break
        # a reduction that moved may have landed at the attachment point of a
        # flat ray; search the neighborhood for a strictly better basin, but
        # never let tied flat points drag the incumbent back to larger d
        p_hw = (box.p0_max - box.p0_min) / 50.0
        d_hw = (box.d_max - box.d_min) / 50.0
        remeshed = _mesh_rounds(
            params, box, mode, nodes,
            max(box.p0_min, incumbent[1] - p_hw),
            min(box.p0_max, incumbent[1] + p_hw),
            max(box.d_min, incumbent[2] - d_hw),
            min(box.d_max, incumbent[2] + d_hw),
            rounds,
        )
        if remeshed[0] > incumbent[0] + _TIE_SLACK * max(1.0, abs(incumbent[0])):
            incumbent = remeshed
        else:
            break
    # the loop may exit on a re-mesh step, which on an exactly flat ray sits
    # at an arbitrary point of the tie set; end on a reduction so the
    # smallest-discretion selection always applies
    incumbent, _ = _reduce_along_flats(incumbent, params, box, mode, nodes)
    choice = LegislativeChoice(incumbent[1], incumbent[2])
    welfare = numeric_expected_utilities(choice, params, mode=mode)
    xt = outcome_tilde(params)
    R = params.shock_bound
    lo_th = xt - choice.status_quo - choice.discretion
    hi_th = xt - choice.status_quo + choice.discretion
    return OptimalLegislation(
        choice=choice,
        welfare=welfare,
        interior=(-R < lo_th and hi_th < R),
        branch_label=SolutionBranch.NUMERIC_FALLBACK,
    )


def numeric_argmax_eu_congress(params: ModelParams, box: SearchBox | None = None):
    """Argmax of Congress's expected utility alone (degenerate weight 1)."""
    from dataclasses import replace

    return numeric_optimal_legislation(replace(params, lambda_weight=1.0), box=box)


def numeric_argmax_eu_group(params: ModelParams, box: SearchBox | None = None):
    """Argmax of the group's expected utility alone (degenerate weight 0)."""
    from dataclasses import replace

    return numeric_optimal_legislation(replace(params, lambda_weight=0.0), box=box)


class _OutcomeSequence(Sequence):
    """Cheap sequence view turning simulation columns into StageOutcome rows."""

    def __init__(self, sample: "PathSample"):
        self._s = sample

    def __len__(self) -> int:
        return self._s.draws

    def __getitem__(self, i):
        if isinstance(i, slice):
            return [self[j] for j in range(*i.indices(len(self)))]
        s = self._s
        return StageOutcome(
            shock=float(s.shocks[i]),
            proposal=float(s.proposals[i]),
            effort=float(s.efforts[i]),
            enacted_policy=float(s.policies[i]),
            outcome=float(s.outcome_values[i]),
            lobby_cost=float(s.lobby_costs[i]),
            payoff_congress_policy=float(s.congress_payoffs[i]),
            payoff_group=float(s.group_payoffs[i]),
            payoff_agency=float(s.agency_payoffs[i]),
        )


@dataclass(frozen=True)
class PathSample:
    """Simulated stage plays for a block of shock draws, stored columnwise."""

    seed: int
    draws: int
    shocks: np.ndarray
    proposals: np.ndarray
    efforts: np.ndarray
    policies: np.ndarray
    outcome_values: np.ndarray
    lobby_costs: np.ndarray
    congress_payoffs: np.ndarray
    group_payoffs: np.ndarray
    agency_payoffs: np.ndarray

    @property
    def outcomes(self) -> Sequence[StageOutcome]:
        return _OutcomeSequence(self)


def simulate_paths(
    params: ModelParams,
    legislated: LegislativeChoice,
    seed: int,
    draws: int,
    mode: RegimeInterpretation = RegimeInterpretation.FINAL_POLICY_BAND,
) -> PathSample:
    """Play the continuation game for seeded uniform shock draws.

    Identical seed, draws, parameters and mode reproduce the sample bit for
    bit within one build of the package.
    """
    if draws < 1:
        raise ValueError(f"draws must be at least 1, got {draws}")
    R = params.shock_bound
    shocks = -R + 2.0 * R * rng.random_unit(seed, draws)
    p0 = legislated.status_quo
    d = legislated.discretion
    alpha = params.alpha
    xt = outcome_tilde(params)
    if mode is RegimeInterpretation.FINAL_POLICY_BAND:
        lo = xt - p0 - d
        hi = xt - p0 + d
        upper = shocks < lo
        lower = shocks > hi
        mid = ~(upper | lower)
        policies = np.where(upper, p0 + d, np.where(lower, p0 - d, xt - shocks))
        efforts = np.where(mid, xt / alpha, 0.0)
        proposals = np.where(mid, policies + efforts, policies)
    else:
        level = (1.0 + alpha) / alpha * xt
        proposals = np.clip(level - shocks, p0 - d, p0 + d)
        efforts = np.maximum(0.0, (proposals + shocks) / (1.0 + alpha))
        policies = proposals - efforts
    outcomes = policies + shocks
    costs = alpha * efforts * efforts
    return PathSample(
        seed=seed,
        draws=draws,
        shocks=shocks,
        proposals=proposals,
        efforts=efforts,
        policies=policies,
        outcome_values=outcomes,
        lobby_costs=costs,
        congress_payoffs=-((outcomes - params.congress_ideal) ** 2),
        group_payoffs=-(outcomes**2) - costs,
        agency_payoffs=-((outcomes - params.agency_ideal) ** 2) - params.beta * efforts,
    )
