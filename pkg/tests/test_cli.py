"""Command-line surface: flags, exit codes, JSON output, file artifacts."""

import json

import pytest

from perc_lab.cli import main


def _run(capsys, *argv):
    code = main(list(argv))
    captured = capsys.readouterr()
    return code, captured.out, captured.err


class TestAnalytic:
    def test_figure_value_in_json(self, capsys):
        code, out, _ = _run(capsys, "analytic", "--m", "2", "--pi", "0.08")
        assert code == 0
        payload = json.loads(out)
        assert round(payload["alpha"], 4) == 0.1794
        assert payload["pi_c"] == pytest.approx(0.1464466094)
        assert payload["s2_inf"] == payload["x_old"]

    def test_supercritical_pi_rejected(self, capsys):
        code, _, err = _run(capsys, "analytic", "--m", "2", "--pi", "0.2")
        assert code == 1
        assert "0.1464" in err and "--pi" in err

    def test_invalid_pi_rejected(self, capsys):
        code, _, err = _run(capsys, "analytic", "--m", "2", "--pi", "1.5")
        assert code == 1
        assert "--m/--pi" in err


class TestOracle:
    def test_expected_susceptibility(self, capsys):
        code, out, _ = _run(capsys, "oracle", "--pi", "0.1", "--n", "2")
        assert code == 0
        payload = json.loads(out)
        assert payload["E_S2"] == pytest.approx(1.19)

    def test_pmf_option(self, capsys):
        code, out, _ = _run(capsys, "oracle", "--pi", "0.1", "--n", "2", "--v", "1")
        payload = json.loads(out)
        assert code == 0
        assert payload["component_size_pmf"]["1"] == pytest.approx(0.81)

    def test_oversized_n_rejected(self, capsys):
        code, _, err = _run(capsys, "oracle", "--pi", "0.1", "--n", "9")
        assert code == 1
        assert "--n" in err


class TestGrow:
    def test_snapshot_json(self, capsys):
        code, out, _ = _run(
            capsys, "grow", "--m", "2", "--pi", "0", "--n", "500", "--seed", "4",
            "--L", "2",
        )
        assert code == 0
        payload = json.loads(out)
        assert payload["n"] == 500
        assert payload["s2"] == 1.0
        assert payload["s2_trunc"]["2"] == 1.0

    def test_bad_n(self, capsys):
        code, _, err = _run(capsys, "grow", "--pi", "0.1", "--n", "0")
        assert code == 1
        assert "--n" in err


class TestEnsemble:
    def test_stdout_json(self, capsys):
        code, out, _ = _run(
            capsys, "ensemble", "--pi", "0", "--n", "300", "--trials", "2",
            "--seed", "1", "--threads", "1",
        )
        assert code == 0
        payload = json.loads(out)
        assert payload["checkpoints"] == [100, 178, 300]
        assert payload["s2_mean"] == [1.0, 1.0, 1.0]

    def test_writes_artifacts_and_is_reproducible(self, tmp_path, capsys):
        argv = [
            "ensemble", "--pi", "0.1", "--n", "400", "--trials", "3",
            "--seed", "7", "--L", "2", "--L", "8",
        ]
        code, _, _ = _run(capsys, *argv, "--out", str(tmp_path / "a"), "--threads", "1")
        assert code == 0
        code, _, _ = _run(capsys, *argv, "--out", str(tmp_path / "b"), "--threads", "2")
        assert code == 0
        for name in ("trajectory.csv", "rescaled_max.csv", "summary.csv"):
            assert (tmp_path / "a" / name).read_bytes() == (
                tmp_path / "b" / name
            ).read_bytes()
        manifest = json.loads((tmp_path / "a" / "manifest.json").read_text())
        assert manifest["L_list"] == [2, 8]

    def test_invalid_trials(self, capsys):
        code, _, err = _run(
            capsys, "ensemble", "--pi", "0.1", "--n", "100", "--trials", "0"
        )
        assert code == 1
        assert "trials" in err


class TestMbrw:
    def test_stdout_estimate(self, capsys):
        code, out, _ = _run(
            capsys, "mbrw", "--pi", "0", "--trials", "50", "--seed", "3"
        )
        assert code == 0
        payload = json.loads(out)
        assert payload["mean"] == 1.0 and payload["truncation_rate"] == 0.0

    def test_csv_output(self, tmp_path, capsys):
        code, _, _ = _run(
            capsys, "mbrw", "--pi", "0.1", "--trials", "20", "--seed", "3",
            "--root-label", "Y", "--out", str(tmp_path),
        )
        assert code == 0
        body = (tmp_path / "mbrw.csv").read_text().splitlines()
        assert body[0] == "trial,root_label,size,truncated"
        assert len(body) == 21
        manifest = json.loads((tmp_path / "manifest.json").read_text())
        assert manifest["root_label"] == "Y"


class TestPersistenceResidualsTail:
    def test_persistence_stdout(self, capsys):
        code, out, _ = _run(
            capsys, "persistence", "--pi", "1", "--n", "200", "--trials", "3",
            "--seed", "2", "--K", "1", "--threads", "1",
        )
        assert code == 0
        rows = json.loads(out)
        assert all(r["fraction"] == 1.0 for r in rows)

    def test_residuals_stdout(self, capsys):
        code, out, _ = _run(
            capsys, "residuals", "--pi", "0", "--n", "300", "--trials", "2",
            "--seed", "2", "--threads", "1",
        )
        assert code == 0
        payload = json.loads(out)
        assert all(r == 0.0 for r in payload["mean_abs_residual"])

    def test_tail_stdout(self, capsys):
        code, out, _ = _run(
            capsys, "tail", "--pi", "0", "--n", "200", "--trials", "2",
            "--seed", "2", "--threads", "1",
        )
        assert code == 0
        payload = json.loads(out)
        assert payload["ccdf"] == [{"k": 1, "ccdf": 1.0}]
        assert payload["reference_slope"] is None


class TestValidateAndParsing:
    def test_validate_passes(self, capsys):
        code, out, _ = _run(capsys, "validate")
        assert code == 0
        assert "ok" in out and "FAIL" not in out

    def test_unknown_subcommand_exits_one(self, capsys):
        with pytest.raises(SystemExit) as exc:
            main(["frobnicate"])
        assert exc.value.code == 1
        assert "usage" in capsys.readouterr().err

    def test_unknown_flag_exits_one(self, capsys):
        with pytest.raises(SystemExit) as exc:
            main(["analytic", "--pi", "0.1", "--bogus"])
        assert exc.value.code == 1
        assert "usage" in capsys.readouterr().err

    def test_missing_required_flag(self, capsys):
        with pytest.raises(SystemExit) as exc:
            main(["analytic"])
        assert exc.value.code == 1
