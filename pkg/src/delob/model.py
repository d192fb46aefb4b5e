"""Stage-game closed forms for the delegation-with-lobbying rule-making game.

Three players move in sequence. Congress legislates a status quo ``p0`` and a
discretion band of half-width ``d``. Nature draws a shock ``w`` uniform on
``[-R, R]``, observed by the agency and the industry's interest group but not
by Congress. The agency proposes a rule ``p_A``, the group (ideal outcome
normalized to 0) exerts costly effort ``e`` that drags the enacted policy to
``p = p_A - e``, and the realized outcome is ``x = p + w``. All preferences
are quadratic losses around the ideal outcome; the group additionally pays
``alpha * e**2`` and the agency bears a burden ``beta * e`` from being
lobbied.

Everything in this module is a pure function of its arguments; there is no
shared mutable state, so concurrent calls are safe.
"""

from __future__ import annotations

import warnings
from dataclasses import dataclass
from enum import Enum

#: The interest group's ideal outcome. Normalized away and kept only so the
#: payoff expressions read like the model.
GROUP_IDEAL = 0.0


class RegimeInterpretation(Enum):
    """Which object the discretion band constrains.

    ``FINAL_POLICY_BAND`` (default): the enacted policy ``p`` must stay inside
    the band. In the outer shock regimes the band edge binds and no lobbying
    takes place; in the interior regime the unconstrained equilibrium is
    feasible and plays out unchanged.

    ``PROPOSAL_BAND``: the *proposal* is clamped to the band and the group
    still best-responds to the clamped proposal. Provided for oracle
    exploration of the alternative reading of the constraint.
    """

    FINAL_POLICY_BAND = "final-policy-band"
    PROPOSAL_BAND = "proposal-band"


@dataclass(frozen=True)
class ModelParams:
    """Primitives of the game.

    ``alpha`` weights the group's quadratic lobbying cost, ``beta`` is the
    agency's per-unit burden from being lobbied, ``lambda_weight`` is the
    weight Congress places on policy (versus contributions), ``shock_bound``
    is the half-width R of the uniform shock support, and the two ideal
    points are positive by maintained assumption. Set ``permissive=True`` to
    downgrade nonpositive ideal points from an error to a warning.
    """

    alpha: float = 1.0
    beta: float = 1.0
    lambda_weight: float = 0.5
    shock_bound: float = 1.0
    congress_ideal: float = 0.5
    agency_ideal: float = 1.0
    permissive: bool = False

    def __post_init__(self):
        if not self.alpha > 0.0:
            raise ValueError(f"alpha must be positive, got {self.alpha}")
        if not self.beta >= 0.0:
            raise ValueError(f"beta must be nonnegative, got {self.beta}")
        if not 0.0 <= self.lambda_weight <= 1.0:
            raise ValueError(
                f"lambda_weight must lie in [0, 1], got {self.lambda_weight}"
            )
        if not self.shock_bound > 0.0:
            raise ValueError(f"shock_bound must be positive, got {self.shock_bound}")
        if not (self.congress_ideal > 0.0 and self.agency_ideal > 0.0):
            msg = (
                "congress_ideal and agency_ideal are assumed positive "
                f"(got x_C={self.congress_ideal}, x_A={self.agency_ideal})"
            )
            if self.permissive:
                warnings.warn(msg, stacklevel=2)
            else:
                raise ValueError(msg)

    @property
    def pressure(self) -> float:
        """Effective administrative lobbying pressure, ``beta / (2 * alpha)``."""
        return self.beta / (2.0 * self.alpha)

    @property
    def captured(self) -> bool:
        """True when the mere threat of lobbying forces the outcome to 0.

        The canonical predicate is ``beta >= 2 * alpha * agency_ideal``; the
        clamps below key off this exact comparison so the captured regime
        yields outcome and effort that are exactly zero.
        """
        return self.beta >= 2.0 * self.alpha * self.agency_ideal


@dataclass(frozen=True)
class LegislativeChoice:
    """Status quo and discretion half-width chosen by Congress."""

    status_quo: float
    discretion: float

    def __post_init__(self):
        if not self.discretion >= 0.0:
            raise ValueError(f"discretion must be nonnegative, got {self.discretion}")


@dataclass(frozen=True)
class RegimeThresholds:
    """Shock levels where the outcome map switches regimes.

    Below ``omega_low`` the upper band edge binds, above ``omega_high`` the
    lower edge binds, and in between the interior equilibrium outcome is
    attainable. Values are reported unclamped; they may fall outside the
    shock support, in which case the corresponding regime is empty.
    """

    omega_low: float
    omega_high: float


@dataclass(frozen=True)
class StageOutcome:
    """One realized play of the rule-making stage."""

    shock: float
    proposal: float
    effort: float
    enacted_policy: float
    outcome: float
    lobby_cost: float
    payoff_congress_policy: float
    payoff_group: float
    payoff_agency: float


def best_response_effort(proposal: float, shock: float, params: ModelParams) -> float:
    """Group's optimal lobbying effort against a given proposal and shock.

    Maximizes ``-(proposal - e + shock)**2 - alpha*e**2`` over ``e >= 0``,
    giving ``(proposal + shock) / (1 + alpha)`` clamped at zero. Effort is
    positive exactly when ``proposal + shock > 0``: the group only ever
    lobbies to weaken rules, never to strengthen them.
    """
    return max(0.0, (proposal + shock) / (1.0 + params.alpha))


def outcome_tilde(params: ModelParams) -> float:
    """Equilibrium outcome when the discretion band does not bind.

    Equals ``agency_ideal - pressure``; the lobbying wedge pulls the outcome
    below the agency's ideal. In the captured regime the agency preempts
    lobbying entirely and the outcome is exactly the group's ideal, 0.
    """
    if params.captured:
        return 0.0
    return max(0.0, params.agency_ideal - params.pressure)


def unconstrained_proposal(shock: float, params: ModelParams) -> float:
    """Agency's optimal proposal absent any band constraint.

    Anticipating the group's best response, the agency targets the outcome
    ``outcome_tilde`` and offsets the shock one for one. In the captured
    regime this reduces to ``-shock``, the proposal that keeps the group
    exactly indifferent to lobbying.
    """
    k = (1.0 + params.alpha) / params.alpha * outcome_tilde(params)
    return k - shock


def equilibrium_effort(params: ModelParams) -> float:
    """Lobbying effort along the unconstrained equilibrium path.

    Shock-invariant: the agency's proposal absorbs the shock, so the group
    always faces the same gap. Zero in the captured regime.
    """
    return outcome_tilde(params) / params.alpha


def congress_preferred_rule(shock: float, params: ModelParams) -> float:
    """Proposal Congress would want the agency to make, given the shock.

    Solves ``p_A - e*(p_A) + shock = congress_ideal`` on the lobbying branch.
    """
    return params.congress_ideal * (1.0 + params.alpha) / params.alpha - shock


def conflict_gap(params: ModelParams) -> float:
    """Shock-invariant disagreement between the preferred rules.

    Computed on the unclamped branch as ``((1+alpha)/alpha) * (agency_ideal -
    congress_ideal - pressure)``: positive when the lobbying-adjusted outcome
    target of the agency exceeds Congress's ideal, zero exactly at the ally
    point, negative when lobbying pressure has pushed the agency's target
    below what Congress wants.
    """
    scale = (1.0 + params.alpha) / params.alpha
    return scale * (params.agency_ideal - params.congress_ideal - params.pressure)


def ally_ideal(params: ModelParams) -> float:
    """Agency ideal point Congress most prefers: ``congress_ideal + pressure``.

    Strictly above Congress's own ideal whenever beta > 0, which is why the
    ally principle fails here: Congress wants an agency biased against the
    industry by exactly the lobbying wedge.
    """
    return params.congress_ideal + params.pressure


def regime_thresholds(choice: LegislativeChoice, params: ModelParams) -> RegimeThresholds:
    """Regime boundaries of the piecewise outcome map for a given choice."""
    base = outcome_tilde(params) - choice.status_quo
    return RegimeThresholds(base - choice.discretion, base + choice.discretion)


def enacted_outcome(
    shock: float,
    choice: LegislativeChoice,
    params: ModelParams,
    mode: RegimeInterpretation = RegimeInterpretation.FINAL_POLICY_BAND,
) -> StageOutcome:
    """Full stage play for one shock draw under a legislative choice.

    Under ``FINAL_POLICY_BAND`` the outcome is ``p0 + d + shock`` below the
    band, the interior equilibrium outcome inside it, and ``p0 - d + shock``
    above it, with zero effort at the band edges. Under ``PROPOSAL_BAND`` the
    unconstrained proposal is clamped to the band and the group still best
    responds, so effort persists at the edges.
    """
    R = params.shock_bound
    if abs(shock) > R:
        raise ValueError(f"shock {shock} outside the support [-{R}, {R}]")
    p0 = choice.status_quo
    d = choice.discretion
    if mode is RegimeInterpretation.FINAL_POLICY_BAND:
        xt = outcome_tilde(params)
        lo = xt - p0 - d
        hi = xt - p0 + d
        if shock < lo:
            policy = p0 + d
            effort = 0.0
            proposal = policy
        elif shock <= hi:
            effort = equilibrium_effort(params)
            policy = xt - shock
            proposal = policy + effort
        else:
            policy = p0 - d
            effort = 0.0
            proposal = policy
    else:
        proposal = min(max(unconstrained_proposal(shock, params), p0 - d), p0 + d)
        effort = best_response_effort(proposal, shock, params)
        policy = proposal - effort
    return _finish_stage(shock, proposal, effort, policy, params)


def _finish_stage(
    shock: float, proposal: float, effort: float, policy: float, params: ModelParams
) -> StageOutcome:
    # outcome is always constructed as policy + shock so the accounting
    # identity holds exactly in floating point
    outcome = policy + shock
    cost = params.alpha * effort * effort
    return StageOutcome(
        shock=shock,
        proposal=proposal,
        effort=effort,
        enacted_policy=policy,
        outcome=outcome,
        lobby_cost=cost,
        payoff_congress_policy=-((outcome - params.congress_ideal) ** 2),
        payoff_group=-((outcome - GROUP_IDEAL) ** 2) - cost,
        payoff_agency=-((outcome - params.agency_ideal) ** 2) - params.beta * effort,
    )


def agency_value_of_proposal(proposal: float, shock: float, params: ModelParams) -> float:
    """Agency payoff from a proposal, accounting for the group's response.

    Used by the brute-force proposal oracle and the optimality property
    tests; not part of the equilibrium path itself.
    """
    effort = best_response_effort(proposal, shock, params)
    outcome = proposal - effort + shock
    return -((outcome - params.agency_ideal) ** 2) - params.beta * effort


def group_value_of_effort(
    effort: float, proposal: float, shock: float, params: ModelParams
) -> float:
    """Group payoff from an effort level against a fixed proposal and shock."""
    outcome = proposal - effort + shock
    return -((outcome - GROUP_IDEAL) ** 2) - params.alpha * effort * effort
