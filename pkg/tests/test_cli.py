"""Subcommand surface: flags, exit codes, file outputs."""

import csv
import json

import pytest

from dirichlet_resonance.cli import main


def run_cli(argv, capsys):
    code = main(argv)
    captured = capsys.readouterr()
    return code, captured.out, captured.err


class TestConstantsCommand:
    def test_c1_printed(self, capsys):
        code, out, _ = run_cli(["constants", "--ell", "1"], capsys)
        assert code == 0
        assert "1.326634" in out

    def test_sigma_row_shows_s_equals_h_equals_3(self, capsys):
        code, out, _ = run_cli(["constants", "--ell", "1", "--sigma", "0.75"], capsys)
        assert code == 0
        row = [line for line in out.splitlines() if line.strip().startswith("1")][0]
        assert row.count("3") >= 2  # S and H columns both show 3

    def test_sigma_out_of_range_is_usage_error(self, capsys):
        with pytest.raises(SystemExit) as exc:
            main(["constants", "--ell", "1", "--sigma", "1.5"])
        assert exc.value.code == 2

    def test_sigma_columns_without_sigma_rejected(self, capsys):
        with pytest.raises(SystemExit) as exc:
            main(["constants", "--ell", "1", "--columns", "S,H"])
        assert exc.value.code == 2

    def test_csv_output(self, tmp_path, capsys):
        out_file = tmp_path / "constants.csv"
        code, _, _ = run_cli(
            ["constants", "--ell", "1", "2", "--sigma", "0.75", "--output", str(out_file)],
            capsys,
        )
        assert code == 0
        rows = list(csv.DictReader(out_file.open()))
        assert len(rows) == 2
        assert float(rows[0]["C"]) == pytest.approx(1.3266, abs=1e-3)


class TestRunCommand:
    def _write_config(self, tmp_path, payload):
        path = tmp_path / "config.json"
        path.write_text(json.dumps(payload))
        return str(path)

    def test_minimal_run_exits_zero(self, tmp_path, capsys):
        cfg = self._write_config(
            tmp_path, {"theorem": 1, "q": 101, "ell": 1, "x": 20.0, "y": 1000}
        )
        code, out, _ = run_cli(["run", cfg, "--output", str(tmp_path)], capsys)
        assert code == 0
        assert "PASS" in out
        with open(tmp_path / "report.csv", newline="") as fh:
            row = list(csv.DictReader(fh))[0]
        assert float(row["margin"]) >= 0.0
        report = json.loads((tmp_path / "report.json").read_text())
        assert report["passed"] is True

    def test_y_below_x_is_validation_error(self, tmp_path, capsys):
        cfg = self._write_config(
            tmp_path, {"theorem": 1, "q": 101, "ell": 1, "x": 20.0, "y": 5}
        )
        code, _, err = run_cli(["run", cfg], capsys)
        assert code == 2
        assert "X <= Y" in err

    def test_strip_logderiv_ell_validation(self, tmp_path, capsys):
        cfg = self._write_config(
            tmp_path,
            {"theorem": 4, "q": 101, "ell": 2, "x": 20.0, "y": 1000, "sigma": 0.75},
        )
        code, _, err = run_cli(["run", cfg], capsys)
        assert code == 2
        assert "1 <= ell < 1/(2 - 2 sigma)" in err


class TestSweepCommand:
    def test_row_count(self, tmp_path, capsys):
        code, out, _ = run_cli(
            ["sweep", "--theorem", "1", "--primes", "100..200", "--output", str(tmp_path)],
            capsys,
        )
        assert code == 0
        with open(tmp_path / "sweep.csv", newline="") as fh:
            rows = list(csv.DictReader(fh))
        assert len(rows) == 21  # pi(200) - pi(100)

    def test_strip_target_needs_sigma(self, capsys):
        with pytest.raises(SystemExit) as exc:
            main(["sweep", "--theorem", "2", "--primes", "100..120"])
        assert exc.value.code == 2

    def test_bad_range_syntax(self, capsys):
        with pytest.raises(SystemExit) as exc:
            main(["sweep", "--theorem", "1", "--primes", "100-200"])
        assert exc.value.code == 2


class TestOracleCommand:
    def test_q5_has_three_character_rows(self, capsys):
        code, out, _ = run_cli(
            ["oracle", "--q", "5", "--sigma", "1.0", "--Y", "100", "1000"], capsys
        )
        assert code == 0
        data_lines = [
            line for line in out.splitlines() if line.strip() and line.split()[0].isdigit()
        ]
        assert len(data_lines) == 3

    def test_writes_csv(self, tmp_path, capsys):
        code, _, _ = run_cli(
            ["oracle", "--q", "7", "--Y", "100", "1000", "--output", str(tmp_path)],
            capsys,
        )
        assert code == 0
        with open(tmp_path / "oracle.csv", newline="") as fh:
            rows = list(csv.reader(fh))
        assert rows[0] == ["index", "rel_err_Y100", "rel_err_Y1000"]
        assert len(rows) == 6  # header + phi(7) - 1 characters


class TestVerifyCommand:
    def test_quick_battery(self, capsys):
        code, out, _ = run_cli(["verify", "--quick"], capsys)
        assert code == 0
        assert "FAIL" not in out
        assert "verify:" in out


class TestParserContract:
    def test_unknown_flag_rejected(self):
        with pytest.raises(SystemExit) as exc:
            main(["constants", "--ell", "1", "--bogus"])
        assert exc.value.code == 2

    def test_subcommand_required(self):
        with pytest.raises(SystemExit) as exc:
            main([])
        assert exc.value.code == 2
