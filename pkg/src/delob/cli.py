"""Command-line front end: solve, simulate, sweep, verify, hypotheses.

Exit status 0 on success, 1 when verification fails, 2 for configuration or
usage errors. All randomness derives from the configured seed via purpose
tags, so identical invocations produce byte-identical output.
"""

from __future__ import annotations

import argparse
import sys
from dataclasses import replace

from . import rng
from .config import ConfigError, RunConfig, SweepSpec, build_config
from .legislative import optimal_legislation
from .model import (
    RegimeInterpretation,
    ally_ideal,
    conflict_gap,
    enacted_outcome,
    equilibrium_effort,
    outcome_tilde,
    regime_thresholds,
)
from .oracle import simulate_paths
from .report import emit
from .statics import (
    builtin_hypotheses,
    discretion_surface,
    evaluate_hypothesis,
    sample_parameter_grid,
)
from .verify import run_verification

_EXIT_OK = 0
_EXIT_VERIFY_FAILED = 1
_EXIT_CONFIG = 2

_PARAM_FIELD = {
    "alpha": "alpha",
    "beta": "beta",
    "lambda": "lambda_weight",
    "R": "shock_bound",
    "x_C": "congress_ideal",
    "x_A": "agency_ideal",
}


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--config", metavar="PATH", help="flat key=value config file")
    common.add_argument("--format", choices=("csv", "json"), help="output format")
    common.add_argument("--out", metavar="PATH", help="output file (default stdout)")
    common.add_argument("--seed", type=int, help="master seed")
    common.add_argument(
        "--mode",
        choices=("final-policy-band", "proposal-band"),
        help="discretion-band reading",
    )
    common.add_argument(
        "--set",
        action="append",
        default=[],
        metavar="KEY=VALUE",
        help="override any config key (repeatable)",
    )

    parser = argparse.ArgumentParser(
        prog="delob",
        description="Delegation-with-lobbying rule-making game solver and checker.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    sub.add_parser("solve", parents=[common], help="equilibrium record at the configured point")

    p_sim = sub.add_parser("simulate", parents=[common], help="simulate stage plays")
    p_sim.add_argument("--omega", type=float, help="single shock instead of seeded draws")

    p_sweep = sub.add_parser("sweep", parents=[common], help="solve along a parameter grid")
    p_sweep.add_argument("--param", required=True, help="parameter to sweep")
    p_sweep.add_argument("--from", dest="from_", type=float, required=True)
    p_sweep.add_argument("--to", dest="to", type=float, required=True)
    p_sweep.add_argument("--steps", type=int, required=True)
    p_sweep.add_argument("--param2", help="second parameter for a 2-d sweep")
    p_sweep.add_argument("--from2", type=float)
    p_sweep.add_argument("--to2", type=float)
    p_sweep.add_argument("--steps2", type=int)
    p_sweep.add_argument(
        "--surface",
        action="store_true",
        help="matrix output of (d-R)^2 for an x_A by x_C sweep",
    )

    p_verify = sub.add_parser("verify", parents=[common], help="oracle cross-checks")
    p_verify.add_argument("--sample", type=int, default=500)
    p_verify.add_argument(
        "--strict", action="store_true", help="fail on the flagged discrepancy panels too"
    )

    p_hyp = sub.add_parser("hypotheses", parents=[common], help="comparative-statics sign suite")
    p_hyp.add_argument("--grid", type=int, default=200)
    return parser


def _config_from_args(args) -> RunConfig:
    return build_config(
        config_path=args.config,
        set_overrides=args.set,
        format=args.format,
        out=args.out,
        seed=args.seed,
        mode=args.mode,
    )


def _best_for(cfg: RunConfig, params):
    # a configured search box only steers the numeric path; the final-policy
    # reading solves in closed form regardless
    box = None if cfg.mode is RegimeInterpretation.FINAL_POLICY_BAND else cfg.search
    return optimal_legislation(params, mode=cfg.mode, box=box)


def _solve_record(cfg: RunConfig, params=None) -> dict:
    params = params or cfg.params
    best = _best_for(cfg, params)
    thresholds = regime_thresholds(best.choice, params)
    record = dict(cfg.params_record() if params is cfg.params else _record_params(params))
    record.update(
        {
            "mode": cfg.mode.value,
            "x_tilde": outcome_tilde(params),
            "equilibrium_effort": equilibrium_effort(params),
            "ally_ideal": ally_ideal(params),
            "conflict_gap": conflict_gap(params),
            "p0_opt": best.choice.status_quo,
            "d_opt": best.choice.discretion,
            "branch": best.branch_label.value,
            "interior": best.interior,
            "threshold_low": thresholds.omega_low,
            "threshold_high": thresholds.omega_high,
            "discretion_gap_sq": (best.choice.discretion - params.shock_bound) ** 2,
            "eu_congress": best.welfare.eu_congress_policy,
            "eu_group": best.welfare.eu_group,
            "joint_value": best.welfare.joint_value,
            "contribution": best.welfare.contribution,
            "contribution_defined": best.welfare.contribution_defined,
        }
    )
    return record


def _record_params(params) -> dict:
    return {
        "alpha": params.alpha,
        "beta": params.beta,
        "lambda": params.lambda_weight,
        "R": params.shock_bound,
        "x_C": params.congress_ideal,
        "x_A": params.agency_ideal,
    }


def cmd_solve(cfg: RunConfig, args) -> int:
    record = _solve_record(cfg)
    payload = {"command": "solve", "record": record}
    emit(payload, list(record), [list(record.values())], cfg.output_format, cfg.output_path)
    return _EXIT_OK


_SIM_COLUMNS = [
    "row",
    "shock",
    "proposal",
    "effort",
    "policy",
    "outcome",
    "lobby_cost",
    "u_congress_policy",
    "u_group",
    "u_agency",
]


def cmd_simulate(cfg: RunConfig, args) -> int:
    params = cfg.params
    choice = _best_for(cfg, params).choice
    if args.omega is not None:
        if abs(args.omega) > params.shock_bound:
            raise ConfigError(
                f"omega {args.omega} outside the shock support "
                f"[-{params.shock_bound}, {params.shock_bound}]"
            )
        stage = enacted_outcome(args.omega, choice, params, cfg.mode)
        rows = [
            [
                0,
                stage.shock,
                stage.proposal,
                stage.effort,
                stage.enacted_policy,
                stage.outcome,
                stage.lobby_cost,
                stage.payoff_congress_policy,
                stage.payoff_group,
                stage.payoff_agency,
            ]
        ]
    else:
        sample = simulate_paths(
            params, choice, rng.derive_seed(cfg.seed, "simulate"), cfg.draws, cfg.mode
        )
        rows = [
            [
                i,
                float(sample.shocks[i]),
                float(sample.proposals[i]),
                float(sample.efforts[i]),
                float(sample.policies[i]),
                float(sample.outcome_values[i]),
                float(sample.lobby_costs[i]),
                float(sample.congress_payoffs[i]),
                float(sample.group_payoffs[i]),
                float(sample.agency_payoffs[i]),
            ]
            for i in range(sample.draws)
        ]
        rows.append(
            [
                "mean",
                float(sample.shocks.mean()),
                float(sample.proposals.mean()),
                float(sample.efforts.mean()),
                float(sample.policies.mean()),
                float(sample.outcome_values.mean()),
                float(sample.lobby_costs.mean()),
                float(sample.congress_payoffs.mean()),
                float(sample.group_payoffs.mean()),
                float(sample.agency_payoffs.mean()),
            ]
        )
    payload = {
        "command": "simulate",
        "params": cfg.params_record(),
        "mode": cfg.mode.value,
        "choice": {"p0": choice.status_quo, "d": choice.discretion},
        "columns": _SIM_COLUMNS,
        "rows": rows,
    }
    emit(payload, _SIM_COLUMNS, rows, cfg.output_format, cfg.output_path)
    return _EXIT_OK


def cmd_sweep(cfg: RunConfig, args) -> int:
    spec1 = SweepSpec(args.param, args.from_, args.to, args.steps)
    axis1 = spec1.values()
    two_dim = args.param2 is not None
    if two_dim:
        if args.from2 is None or args.to2 is None or args.steps2 is None:
            raise ConfigError("--param2 requires --from2, --to2 and --steps2")
        spec2 = SweepSpec(args.param2, args.from2, args.to2, args.steps2)
        if spec2.parameter == spec1.parameter:
            raise ConfigError("the two sweep parameters must differ")
        axis2 = spec2.values()
    if args.surface:
        if not two_dim or {args.param, args.param2} != {"x_A", "x_C"}:
            raise ConfigError("--surface requires a 2-d sweep over x_A and x_C")
        if args.param == "x_A":
            xa_axis, xc_axis = (args.from_, args.to, args.steps), (args.from2, args.to2, args.steps2)
        else:
            xa_axis, xc_axis = (args.from2, args.to2, args.steps2), (args.from_, args.to, args.steps)
        xa_vals, xc_vals, surface = discretion_surface(cfg.params, xa_axis, xc_axis)
        columns = ["x_A\\x_C"] + [f"{float(v):.9g}" for v in xc_vals]
        rows = [
            [float(xa_vals[i])] + [float(surface[i, j]) for j in range(len(xc_vals))]
            for i in range(len(xa_vals))
        ]
        payload = {
            "command": "sweep",
            "surface": True,
            "params": cfg.params_record(),
            "x_A": [float(v) for v in xa_vals],
            "x_C": [float(v) for v in xc_vals],
            "discretion_gap_sq": [[float(v) for v in row] for row in surface],
        }
        emit(payload, columns, rows, cfg.output_format, cfg.output_path)
        return _EXIT_OK

    grid = [(v1, v2) for v1 in axis1 for v2 in axis2] if two_dim else [(v1, None) for v1 in axis1]
    rows = []
    records = []
    for v1, v2 in grid:
        point = replace(cfg.params, **{_PARAM_FIELD[args.param]: v1})
        if two_dim:
            point = replace(point, **{_PARAM_FIELD[args.param2]: v2})
        try:
            record = _solve_record(cfg, point)
        except ValueError as exc:
            raise ConfigError(f"sweep point {args.param}={v1}: {exc}") from exc
        records.append(record)
        rows.append(list(record.values()))
    columns = list(records[0])
    payload = {"command": "sweep", "columns": columns, "rows": rows}
    emit(payload, columns, rows, cfg.output_format, cfg.output_path)
    return _EXIT_OK


_VERIFY_COLUMNS = ["check", "samples", "failures", "worst_abs_dev", "tolerance", "flagged"]


def cmd_verify(cfg: RunConfig, args) -> int:
    if args.sample < 1:
        raise ConfigError("--sample must be at least 1")
    checks, discrepancies, ok = run_verification(
        rng.derive_seed(cfg.seed, "verify"), sample=args.sample, strict=args.strict
    )
    rows = [
        [c.name, c.samples, c.failures, c.worst, c.tolerance, c.flagged] for c in checks
    ]
    for panel in discrepancies:
        candidates = [k for k in panel if k.endswith("_value")]
        for key in candidates:
            rows.append([f"{panel['check']}:{key}", 1, 0, panel[key], "", True])
    payload = {
        "command": "verify",
        "sample": args.sample,
        "strict": args.strict,
        "checks": [
            {
                "name": c.name,
                "samples": c.samples,
                "failures": c.failures,
                "worst_abs_dev": c.worst,
                "tolerance": c.tolerance,
                "flagged": c.flagged,
            }
            for c in checks
        ],
        "discrepancies": discrepancies,
        "status": "ok" if ok else "fail",
    }
    emit(payload, _VERIFY_COLUMNS, rows, cfg.output_format, cfg.output_path)
    return _EXIT_OK if ok else _EXIT_VERIFY_FAILED


_HYP_COLUMNS = [
    "hypothesis",
    "clause",
    "quantity",
    "parameter",
    "expected",
    "kind",
    "grid_points",
    "eligible",
    "satisfied",
    "violations",
    "verdict",
]


def cmd_hypotheses(cfg: RunConfig, args) -> int:
    if args.grid < 1:
        raise ConfigError("--grid must be at least 1")
    grid = sample_parameter_grid(rng.derive_seed(cfg.seed, "hypotheses"), args.grid)
    ctx_seed = rng.derive_seed(cfg.seed, "hypotheses:ctx")
    rows = []
    clauses = []
    for spec in builtin_hypotheses():
        report = evaluate_hypothesis(spec, grid, ctx_seed=ctx_seed, mode=cfg.mode)
        rows.append(
            [
                spec.id,
                spec.clause,
                spec.quantity,
                spec.parameter or "",
                spec.expected_sign if spec.kind == "derivative" else spec.kind,
                spec.kind,
                report.grid_points,
                report.eligible,
                report.satisfied,
                len(report.violations),
                report.verdict,
            ]
        )
        clauses.append(
            {
                "hypothesis": spec.id,
                "clause": spec.clause,
                "quantity": spec.quantity,
                "parameter": spec.parameter,
                "expected": spec.expected_sign if spec.kind == "derivative" else spec.kind,
                "kind": spec.kind,
                "condition": spec.condition_desc,
                "grid_points": report.grid_points,
                "eligible": report.eligible,
                "satisfied": report.satisfied,
                "verdict": report.verdict,
                "violations": [
                    {"grid_index": idx, "params": _record_params(p), "measured": measured}
                    for idx, p, measured in report.violations
                ],
            }
        )
    payload = {"command": "hypotheses", "grid": args.grid, "clauses": clauses}
    emit(payload, _HYP_COLUMNS, rows, cfg.output_format, cfg.output_path)
    return _EXIT_OK


_DISPATCH = {
    "solve": cmd_solve,
    "simulate": cmd_simulate,
    "sweep": cmd_sweep,
    "verify": cmd_verify,
    "hypotheses": cmd_hypotheses,
}


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        cfg = _config_from_args(args)
        return _DISPATCH[args.command](cfg, args)
    except ConfigError as exc:
        print(f"delob: error: {exc}", file=sys.stderr)
        return _EXIT_CONFIG


if __name__ == "__main__":
    sys.exit(main())
