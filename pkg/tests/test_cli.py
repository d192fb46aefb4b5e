"""Command-line interface: parsing, emission formats, exit codes, determinism."""

import json

import pytest

from delob.cli import main


def run_cli(capsys, *argv):
    code = main(list(argv))
    captured = capsys.readouterr()
    return code, captured.out, captured.err


class TestConfig:
    def test_unknown_config_key_is_named(self, capsys, tmp_path):
        cfg = tmp_path / "run.cfg"
        cfg.write_text("alpha = 1.0\nbogus_key = 3\n")
        code, _, err = run_cli(capsys, "solve", "--config", str(cfg))
        assert code == 2
        assert "bogus_key" in err

    def test_unknown_set_key_is_named(self, capsys):
        code, _, err = run_cli(capsys, "solve", "--set", "nope=1")
        assert code == 2
        assert "nope" in err

    def test_invalid_param_value_names_field(self, capsys):
        code, _, err = run_cli(capsys, "solve", "--set", "alpha=-2")
        assert code == 2
        assert "alpha" in err

    def test_config_file_with_comments_and_overrides(self, capsys, tmp_path):
        cfg = tmp_path / "run.cfg"
        cfg.write_text("# model point\nalpha = 1.0\nbeta = 1.0\nx_A = 1.0\nx_C = 0.5\nlambda = 1.0\nR = 1.0\n")
        code, out, _ = run_cli(capsys, "solve", "--config", str(cfg), "--set", "lambda=0.5")
        assert code == 0
        record = json.loads(out)["record"]
        assert record["lambda"] == 0.5
        assert record["p0_opt"] == 0.25

    def test_malformed_config_line(self, capsys, tmp_path):
        cfg = tmp_path / "run.cfg"
        cfg.write_text("alpha 1.0\n")
        code, _, err = run_cli(capsys, "solve", "--config", str(cfg))
        assert code == 2
        assert "key = value" in err


class TestSolve:
    def test_worked_record(self, capsys):
        code, out, _ = run_cli(
            capsys, "solve",
            "--set", "lambda=1.0", "--set", "alpha=1", "--set", "beta=1",
            "--set", "x_A=1", "--set", "x_C=0.5", "--set", "R=1",
        )
        assert code == 0
        record = json.loads(out)["record"]
        assert record["p0_opt"] == 0.5
        assert record["d_opt"] == 1.0
        assert record["x_tilde"] == 0.5
        assert record["branch"] == "closed-form-foc"

    def test_capture_record(self, capsys):
        code, out, _ = run_cli(capsys, "solve", "--set", "beta=2.0")
        assert code == 0
        record = json.loads(out)["record"]
        assert record["x_tilde"] == 0.0
        assert record["equilibrium_effort"] == 0.0

    def test_json_round_trip_is_bit_identical(self, capsys):
        from delob import ModelParams, optimal_legislation

        code, out, _ = run_cli(capsys, "solve")
        record = json.loads(out)["record"]
        best = optimal_legislation(ModelParams())
        assert record["d_opt"] == best.choice.discretion
        assert record["eu_group"] == best.welfare.eu_group
        assert record["joint_value"] == best.welfare.joint_value

    def test_csv_output_format(self, capsys):
        code, out, _ = run_cli(capsys, "solve", "--format", "csv")
        assert code == 0
        lines = out.split("\n")
        header = lines[0].split(",")
        row = lines[1].split(",")
        assert "d_opt" in header
        value = row[header.index("threshold_low")]
        mantissa = value.lstrip("-").replace(".", "").replace("e", "").lstrip("0")
        assert len(mantissa) <= 10  # 9 significant digits plus exponent sign digits

    def test_out_file_uses_lf_endings(self, capsys, tmp_path):
        target = tmp_path / "solve.csv"
        code, out, _ = run_cli(capsys, "solve", "--format", "csv", "--out", str(target))
        assert code == 0
        assert out == ""
        data = target.read_bytes()
        assert b"\r" not in data
        assert data.endswith(b"\n")

    @pytest.mark.parametrize(
        "argv",
        [
            ("solve",),
            ("sweep", "--param", "beta", "--from", "0", "--to", "1", "--steps", "3"),
            ("verify", "--sample", "6"),
        ],
    )
    def test_json_reserialization_is_byte_identical(self, capsys, argv):
        """Parsing the emitted JSON and re-dumping it reproduces the bytes,
        so consumers see exactly the in-memory floats."""
        code, out, _ = run_cli(capsys, *argv)
        assert code == 0
        assert json.dumps(json.loads(out), indent=2) + "\n" == out


class TestSimulate:
    def test_single_omega_row(self, capsys):
        code, out, _ = run_cli(
            capsys, "simulate", "--omega", "0.0",
            "--set", "lambda=1.0", "--set", "x_C=0.5",
        )
        assert code == 0
        payload = json.loads(out)
        assert len(payload["rows"]) == 1
        row = dict(zip(payload["columns"], payload["rows"][0]))
        assert row["outcome"] == pytest.approx(0.5, abs=1e-12)

    def test_omega_outside_support_rejected(self, capsys):
        code, _, err = run_cli(capsys, "simulate", "--omega", "1.5")
        assert code == 2
        assert "omega" in err

    def test_omega_at_threshold_is_continuous(self, capsys):
        from delob import ModelParams, optimal_legislation, regime_thresholds

        params = ModelParams()
        best = optimal_legislation(params)
        th = regime_thresholds(best.choice, params)
        eps = 1e-9
        outs = []
        for omega in (th.omega_low - eps, th.omega_low + eps):
            code, out, _ = run_cli(capsys, "simulate", "--omega", repr(omega))
            assert code == 0
            payload = json.loads(out)
            row = dict(zip(payload["columns"], payload["rows"][0]))
            outs.append(row["outcome"])
        assert abs(outs[0] - outs[1]) < 1e-7

    def test_draw_block_with_summary_mean(self, capsys):
        code, out, _ = run_cli(capsys, "simulate", "--set", "draws=50")
        assert code == 0
        payload = json.loads(out)
        assert len(payload["rows"]) == 51
        assert payload["rows"][-1][0] == "mean"
        shocks = [row[1] for row in payload["rows"][:-1]]
        assert payload["rows"][-1][1] == pytest.approx(sum(shocks) / 50, abs=1e-12)


class TestSweep:
    def test_unknown_parameter_rejected(self, capsys):
        code, _, err = run_cli(
            capsys, "sweep", "--param", "gamma", "--from", "0", "--to", "1", "--steps", "3"
        )
        assert code == 2
        assert "gamma" in err

    def test_degenerate_endpoints_rejected(self, capsys):
        code, _, err = run_cli(
            capsys, "sweep", "--param", "beta", "--from", "1", "--to", "1", "--steps", "3"
        )
        assert code == 2

    def test_beta_sweep_outcome_decreases_then_clamps(self, capsys):
        code, out, _ = run_cli(
            capsys, "sweep", "--param", "beta", "--from", "0", "--to", "2", "--steps", "9",
            "--set", "alpha=1", "--set", "x_A=1",
        )
        assert code == 0
        payload = json.loads(out)
        cols = payload["columns"]
        tilde = [row[cols.index("x_tilde")] for row in payload["rows"]]
        betas = [row[cols.index("beta")] for row in payload["rows"]]
        assert betas == pytest.approx([0.25 * i for i in range(9)])
        assert tilde == pytest.approx([max(0.0, 1 - b / 2) for b in betas], abs=1e-12)

    def test_shock_bound_sweep_discretion_nondecreasing(self, capsys):
        code, out, _ = run_cli(
            capsys, "sweep", "--param", "R", "--from", "0.5", "--to", "2.0", "--steps", "4",
        )
        assert code == 0
        payload = json.loads(out)
        cols = payload["columns"]
        d_vals = [row[cols.index("d_opt")] for row in payload["rows"]]
        assert all(b >= a - 1e-9 for a, b in zip(d_vals, d_vals[1:]))

    def test_two_dimensional_sweep_row_major(self, capsys):
        code, out, _ = run_cli(
            capsys, "sweep", "--param", "x_A", "--from", "0.5", "--to", "1.0", "--steps", "2",
            "--param2", "x_C", "--from2", "0.2", "--to2", "0.4", "--steps2", "3",
        )
        assert code == 0
        payload = json.loads(out)
        cols = payload["columns"]
        pairs = [(row[cols.index("x_A")], row[cols.index("x_C")]) for row in payload["rows"]]
        expected = [(0.5, 0.2), (0.5, 0.3), (0.5, 0.4)]
        for got, want in zip(pairs[:3], expected):
            assert got == pytest.approx(want, abs=1e-12)
        assert len(pairs) == 6

    def test_surface_mode_matrix_output(self, capsys):
        code, out, _ = run_cli(
            capsys, "sweep", "--param", "x_A", "--from", "0.1", "--to", "1.0", "--steps", "4",
            "--param2", "x_C", "--from2", "0.1", "--to2", "1.0", "--steps2", "5",
            "--surface",
        )
        assert code == 0
        payload = json.loads(out)
        assert payload["surface"] is True
        assert len(payload["discretion_gap_sq"]) == 4
        assert len(payload["discretion_gap_sq"][0]) == 5

    def test_surface_requires_ideal_axes(self, capsys):
        code, _, err = run_cli(
            capsys, "sweep", "--param", "alpha", "--from", "0.5", "--to", "1.0",
            "--steps", "3", "--surface",
        )
        assert code == 2


class TestVerify:
    def test_default_mode_reports_and_passes(self, capsys):
        code, out, _ = run_cli(capsys, "verify", "--sample", "40")
        assert code == 0
        payload = json.loads(out)
        assert payload["status"] == "ok"
        names = {c["name"] for c in payload["checks"]}
        assert "effort-vs-oracle" in names
        assert all(c["failures"] == 0 for c in payload["checks"])

    def test_discrepancy_section_contents(self, capsys):
        code, out, _ = run_cli(capsys, "verify", "--sample", "10")
        payload = json.loads(out)
        shortcut = next(
            d for d in payload["discrepancies"]
            if d["check"] == "discretion-zero-weight-shortcut"
        )
        assert shortcut["shortcut_value"] == 0.5
        assert shortcut["oracle_value"] == pytest.approx(0.64645, abs=1e-3)
        assert shortcut["foc_agrees"] and not shortcut["shortcut_agrees"]
        cross = next(
            d for d in payload["discrepancies"]
            if d["check"] == "discretion-cross-term-sign"
        )
        assert cross["minus_agrees"] and not cross["plus_agrees"]

    def test_strict_mode_promotes_flagged_discrepancies(self, capsys):
        code, out, _ = run_cli(capsys, "verify", "--sample", "10", "--strict")
        assert code == 1
        assert json.loads(out)["status"] == "fail"


class TestHypotheses:
    def test_clause_rows_and_verdicts(self, capsys):
        code, out, _ = run_cli(capsys, "hypotheses", "--grid", "25")
        assert code == 0
        payload = json.loads(out)
        assert {c["hypothesis"] for c in payload["clauses"]} == {
            f"H{i}" for i in range(1, 10)
        }
        for clause in payload["clauses"]:
            assert clause["verdict"] in ("pass", "vacuous")

    def test_csv_emission(self, capsys):
        code, out, _ = run_cli(capsys, "hypotheses", "--grid", "10", "--format", "csv")
        assert code == 0
        lines = [line for line in out.split("\n") if line]
        assert lines[0].startswith("hypothesis,clause,")
        assert len(lines) > 20


class TestDeterminism:
    @pytest.mark.parametrize(
        "argv",
        [
            ("solve",),
            ("simulate", "--set", "draws=25"),
            ("sweep", "--param", "beta", "--from", "0", "--to", "1", "--steps", "4"),
            ("verify", "--sample", "8"),
            ("hypotheses", "--grid", "6"),
        ],
    )
    def test_repeat_runs_are_identical(self, capsys, argv):
        code_a, out_a, _ = run_cli(capsys, *argv)
        code_b, out_b, _ = run_cli(capsys, *argv)
        assert code_a == code_b == 0
        assert out_a == out_b

    def test_seed_changes_simulation(self, capsys):
        _, out_a, _ = run_cli(capsys, "simulate", "--set", "draws=10", "--seed", "1")
        _, out_b, _ = run_cli(capsys, "simulate", "--set", "draws=10", "--seed", "2")
        assert out_a != out_b
