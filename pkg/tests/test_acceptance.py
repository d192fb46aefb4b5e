"""Acceptance suite: every exit criterion at its stated tolerance.

Each test prints one PASS line when its criterion holds; run with ``-s`` (or
read the pytest report) to see them. Tolerances are fixed here, not
calibrated at runtime.
"""

import json
import subprocess
import sys
import time
from dataclasses import replace

import numpy as np
import pytest

from delob import (
    LegislativeChoice,
    ModelParams,
    best_response_effort,
    discretion_surface,
    equilibrium_effort,
    numeric_best_effort,
    numeric_best_proposal,
    numeric_expected_utilities,
    numeric_optimal_legislation,
    optimal_discretion_extremes,
    optimal_discretion_foc,
    optimal_status_quo,
    outcome_tilde,
    sample_parameter_grid,
    simulate_paths,
    unconstrained_proposal,
)
from delob import rng
from delob.legislative import expected_utility_congress, expected_utility_group
from delob.statics import builtin_hypotheses
from delob.verify import BENCHMARK_POINT, _interior_sample

SEED = 20_240_722


def _report(n, text):
    print(f"criterion {n}: PASS: {text}")


@pytest.fixture(scope="module")
def interior_argmax_results():
    """200 interior parameter points with their numeric joint argmaxes."""
    sample = _interior_sample(rng.derive_seed(SEED, "acceptance:interior"), 200)
    assert len(sample) == 200
    return [(params, numeric_optimal_legislation(params)) for params in sample]


def test_criterion_1_stage_closed_forms_match_oracles():
    start = time.perf_counter()
    grid = sample_parameter_grid(rng.derive_seed(SEED, "acceptance:stage"), 500)
    proposals = rng.uniform(rng.derive_seed(SEED, "acceptance:pa"), 500, -2.0, 4.0)
    shock_units = rng.random_unit(rng.derive_seed(SEED, "acceptance:w"), 500)
    worst_e = worst_p = 0.0
    for params, pa, u in zip(grid, proposals, shock_units):
        shock = -params.shock_bound + 2.0 * params.shock_bound * float(u)
        worst_e = max(
            worst_e,
            abs(
                best_response_effort(float(pa), shock, params)
                - numeric_best_effort(float(pa), shock, params)
            ),
        )
        worst_p = max(
            worst_p,
            abs(
                unconstrained_proposal(shock, params)
                - numeric_best_proposal(shock, params)
            ),
        )
    elapsed = time.perf_counter() - start
    assert worst_e <= 1e-6
    assert worst_p <= 1e-6
    assert elapsed < 10.0
    _report(1, f"500 points, worst effort dev {worst_e:.2e}, "
               f"worst proposal dev {worst_p:.2e}, {elapsed:.2f}s")


def test_criterion_2_outcome_invariance_over_draws():
    grid = [
        p for p in sample_parameter_grid(rng.derive_seed(SEED, "acceptance:inv"), 80)
        if not p.captured
    ][:25]
    assert len(grid) == 25
    worst = 0.0
    for i, params in enumerate(grid):
        target = params.agency_ideal - params.beta / (2.0 * params.alpha)
        choice = LegislativeChoice(outcome_tilde(params), 1.25 * params.shock_bound)
        sample = simulate_paths(params, choice, rng.derive_seed(SEED, f"inv:{i}"), 10_000)
        worst = max(worst, float(np.max(np.abs(sample.outcome_values - target))))
    assert worst <= 1e-12
    _report(2, f"25 parameter points x 10^4 draws, worst |x - x_tilde| = {worst:.2e}")


def test_criterion_3_capture_threshold_exact():
    grid = sample_parameter_grid(rng.derive_seed(SEED, "acceptance:capture"), 500)
    scales = rng.uniform(rng.derive_seed(SEED, "acceptance:capscale"), 500, 1.0, 2.5)
    checked = 0
    for i, base in enumerate(grid):
        scale = 1.0 if i % 5 == 0 else float(scales[i])
        params = replace(base, beta=2.0 * base.alpha * base.agency_ideal * scale)
        assert params.captured
        assert equilibrium_effort(params) == 0.0
        assert outcome_tilde(params) == 0.0
        checked += 1
    _report(3, f"{checked} captured points, effort and outcome exactly zero")


def test_criterion_4_expected_utility_identity():
    grid = sample_parameter_grid(rng.derive_seed(SEED, "acceptance:quad"), 1000)
    u1 = rng.random_unit(rng.derive_seed(SEED, "acceptance:quad-p"), 1000)
    u2 = rng.random_unit(rng.derive_seed(SEED, "acceptance:quad-d"), 1000)
    worst = 0.0
    for params, a, b in zip(grid, u1, u2):
        span = 2.0 * max(params.congress_ideal, params.agency_ideal, 1.0)
        choice = LegislativeChoice(
            -span + 2.0 * span * float(a), 2.0 * params.shock_bound * float(b)
        )
        numeric = numeric_expected_utilities(choice, params)
        worst = max(
            worst,
            abs(numeric.eu_congress_policy - expected_utility_congress(choice, params)),
            abs(numeric.eu_group - expected_utility_group(choice, params)),
        )
    assert worst <= 1e-9
    _report(4, f"1000 draws, worst |closed - quadrature| = {worst:.2e}")


def test_criterion_5_optimal_status_quo(interior_argmax_results):
    worst = max(
        abs(result.choice.status_quo - optimal_status_quo(params))
        for params, result in interior_argmax_results
    )
    assert worst <= 1e-4
    _report(5, f"200 interior samples, worst |p0 - lambda*x_C| = {worst:.2e}")


def test_criterion_6_optimal_discretion(interior_argmax_results):
    worst = max(
        abs(result.choice.discretion - optimal_discretion_foc(params))
        for params, result in interior_argmax_results
    )
    assert worst <= 1e-3

    lam1_sample = [
        replace(p, lambda_weight=1.0)
        for p in sample_parameter_grid(rng.derive_seed(SEED, "acceptance:lam1"), 120)
    ]
    lam1_checked = 0
    worst_lam1 = 0.0
    for params in lam1_sample:
        gap = abs(params.agency_ideal - params.congress_ideal - params.pressure)
        if not 0.05 < gap < params.shock_bound - 0.05:
            continue
        if params.agency_ideal - params.pressure <= 0.05:
            continue
        numeric = numeric_optimal_legislation(params)
        printed = optimal_discretion_extremes(params)
        worst_lam1 = max(worst_lam1, abs(numeric.choice.discretion - printed))
        lam1_checked += 1
    assert lam1_checked >= 20
    assert worst_lam1 <= 1e-3

    benchmark = numeric_optimal_legislation(BENCHMARK_POINT)
    assert benchmark.choice.discretion == pytest.approx(0.64645, abs=1e-3)
    _report(
        6,
        f"interior worst |d - (R - sqrt(S))| = {worst:.2e}; "
        f"{lam1_checked} degenerate-weight points worst {worst_lam1:.2e}; "
        f"benchmark d* = {benchmark.choice.discretion:.5f}",
    )


def test_criterion_7_sign_suite_grid_500(tmp_path, capsys):
    from delob.cli import main as cli_main

    out = tmp_path / "hypotheses.json"
    code = cli_main(["hypotheses", "--grid", "500", "--out", str(out)])
    capsys.readouterr()
    assert code == 0
    payload = json.loads(out.read_text())
    numeric_clauses = {s.clause for s in builtin_hypotheses() if s.numeric}
    failures = []
    for clause in payload["clauses"]:
        if clause["eligible"] == 0:
            failures.append((clause["hypothesis"], clause["clause"], "vacuous"))
            continue
        n_violations = len(clause["violations"])
        allowed = 0.01 * clause["eligible"] if clause["clause"] in numeric_clauses else 0
        if n_violations > allowed:
            failures.append((clause["hypothesis"], clause["clause"], f"{n_violations} violations"))
        for violation in clause["violations"]:
            print(f"  logged violation {clause['hypothesis']} [{clause['clause']}] "
                  f"grid={violation['grid_index']} measured={violation['measured']:.3e}")
    assert not failures, failures
    _report(7, "cmd_hypotheses at grid 500: all clauses of H1-H9 pass "
               "(zero analytic violations, <=1% on oracle-backed clauses)")


def test_criterion_8_discretion_surfaces(tmp_path, capsys):
    from delob.cli import main as cli_main

    start = time.perf_counter()
    panels = {
        "equal-weights": ModelParams(alpha=1.0, beta=1.0, lambda_weight=0.5),
        "heavy-burden": ModelParams(alpha=1.0, beta=5.0, lambda_weight=0.5),
        "costly-lobbying": ModelParams(alpha=5.0, beta=1.0, lambda_weight=0.5),
    }
    surfaces = {}
    for name, base in panels.items():
        out = tmp_path / f"{name}.json"
        code = cli_main([
            "sweep",
            "--param", "x_A", "--from", "0.02", "--to", "1.0", "--steps", "50",
            "--param2", "x_C", "--from2", "0.02", "--to2", "1.0", "--steps2", "50",
            "--surface", "--out", str(out),
            "--set", f"alpha={base.alpha}", "--set", f"beta={base.beta}",
            "--set", f"lambda={base.lambda_weight}",
        ])
        capsys.readouterr()
        assert code == 0
        payload = json.loads(out.read_text())
        surface = np.array(payload["discretion_gap_sq"])
        assert surface.shape == (50, 50)
        surfaces[name] = (np.array(payload["x_A"]), np.array(payload["x_C"]), surface)
    elapsed = time.perf_counter() - start
    assert elapsed < 300.0

    # emission path and the statics operation must agree
    xa_op, xc_op, surface_op = discretion_surface(
        panels["equal-weights"], (0.02, 1.0, 50), (0.02, 1.0, 50)
    )
    np.testing.assert_array_equal(surfaces["equal-weights"][2], surface_op)

    xa, xc, surface = surfaces["equal-weights"]
    i, j = np.unravel_index(np.argmin(surface), surface.shape)
    half_a = 0.5 * (xa[0] + xa[-1])
    half_c = 0.5 * (xc[0] + xc[-1])
    assert xa[i] <= half_a and xc[j] <= half_c
    _report(8, f"three 50x50 panels emitted in {elapsed:.1f}s; "
               f"largest discretion at (x_A, x_C) = ({xa[i]:.2f}, {xc[j]:.2f})")


def test_criterion_9_discrepancy_reporting(tmp_path, capsys):
    from delob.cli import main as cli_main

    out = tmp_path / "verify.json"
    code = cli_main(["verify", "--sample", "60", "--out", str(out)])
    capsys.readouterr()
    assert code == 0
    payload = json.loads(out.read_text())
    assert payload["status"] == "ok"
    shortcut = next(
        d for d in payload["discrepancies"]
        if d["check"] == "discretion-zero-weight-shortcut"
    )
    assert shortcut["shortcut_value"] == pytest.approx(0.5, abs=1e-12)
    assert shortcut["oracle_value"] == pytest.approx(0.6464, abs=1e-3)
    assert shortcut["foc_agrees"] and not shortcut["shortcut_agrees"]

    strict_code = cli_main(
        ["verify", "--sample", "60", "--strict", "--out", str(tmp_path / "strict.json")]
    )
    capsys.readouterr()
    assert strict_code != 0
    _report(9, f"cmd_verify shows shortcut 0.5 vs oracle {shortcut['oracle_value']:.4f}; "
               "exit 0 default, nonzero under --strict")


def test_criterion_10_byte_identical_reruns(tmp_path):
    invocations = [
        ["solve"],
        ["simulate", "--set", "draws=100"],
        ["sweep", "--param", "beta", "--from", "0", "--to", "2", "--steps", "5"],
        ["verify", "--sample", "12"],
        ["hypotheses", "--grid", "8"],
    ]
    for argv in invocations:
        outputs = []
        for _ in range(2):
            proc = subprocess.run(
                [sys.executable, "-m", "delob.cli", *argv],
                capture_output=True,
                check=False,
            )
            assert proc.returncode == 0, proc.stderr.decode()
            outputs.append(proc.stdout)
        assert outputs[0] == outputs[1], f"nondeterministic output for {argv}"
        json.loads(outputs[0].decode())
    _report(10, "all five subcommands byte-identical across reruns")
