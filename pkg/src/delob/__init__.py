"""Delegation-with-lobbying rule-making game.

Closed-form equilibrium solver for the three-player sequential game among a
legislature, an agency and a regulated industry's interest group, with
brute-force numeric oracles cross-checking every formula, a comparative-
statics engine for the model's nine hypotheses, and a deterministic CLI.
"""

from ._backend import HAS_COMPILED, backend_name
from .legislative import (
    ExpectedWelfare,
    OptimalLegislation,
    SolutionBranch,
    discretion_gap_square,
    expected_utility_congress,
    expected_utility_group,
    joint_objective,
    optimal_discretion_extremes,
    optimal_discretion_foc,
    optimal_legislation,
    optimal_status_quo,
    truthful_contribution,
)
from .model import (
    GROUP_IDEAL,
    LegislativeChoice,
    ModelParams,
    RegimeInterpretation,
    RegimeThresholds,
    StageOutcome,
    ally_ideal,
    best_response_effort,
    conflict_gap,
    congress_preferred_rule,
    enacted_outcome,
    equilibrium_effort,
    outcome_tilde,
    regime_thresholds,
    unconstrained_proposal,
)
from .oracle import (
    PathSample,
    SearchBox,
    numeric_best_effort,
    numeric_best_proposal,
    numeric_expected_utilities,
    numeric_optimal_legislation,
    simulate_paths,
)
from .statics import (
    HypothesisSpec,
    SignReport,
    builtin_hypotheses,
    discretion_surface,
    evaluate_hypothesis,
    sample_parameter_grid,
)

__version__ = "0.1.0"

__all__ = [
    "GROUP_IDEAL",
    "HAS_COMPILED",
    "ExpectedWelfare",
    "HypothesisSpec",
    "LegislativeChoice",
    "ModelParams",
    "OptimalLegislation",
    "PathSample",
    "RegimeInterpretation",
    "RegimeThresholds",
    "SearchBox",
    "SignReport",
    "SolutionBranch",
    "StageOutcome",
    "ally_ideal",
    "backend_name",
    "best_response_effort",
    "builtin_hypotheses",
    "conflict_gap",
    "congress_preferred_rule",
    "discretion_gap_square",
    "discretion_surface",
    "enacted_outcome",
    "equilibrium_effort",
    "evaluate_hypothesis",
    "expected_utility_congress",
    "expected_utility_group",
    "joint_objective",
    "numeric_best_effort",
    "numeric_best_proposal",
    "numeric_expected_utilities",
    "numeric_optimal_legislation",
    "optimal_discretion_extremes",
    "optimal_discretion_foc",
    "optimal_legislation",
    "optimal_status_quo",
    "outcome_tilde",
    "regime_thresholds",
    "sample_parameter_grid",
    "simulate_paths",
    "truthful_contribution",
    "unconstrained_proposal",
]
