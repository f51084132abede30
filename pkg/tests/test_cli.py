import csv
import io
import logging
import math
import subprocess
import sys

import pytest

from xxzswap import cli


def run_cli(capsys, *argv):
    status = cli.main(list(argv))
    out, err = capsys.readouterr()
    return status, out, err


def rows(text):
    return list(csv.DictReader(io.StringIO(text)))


class TestUsage:
    def test_no_args_lists_commands(self, capsys):
        status, _, err = run_cli(capsys)
        assert status == 2
        for command in cli.COMMANDS:
            assert command in err

    def test_unknown_command(self, capsys):
        status, _, err = run_cli(capsys, "frobnicate")
        assert status == 2 and "frobnicate" in err

    def test_bad_value_names_flag(self, capsys):
        status, _, err = run_cli(capsys, "evolve", "--steps", "zero")
        assert status == 2 and "--steps" in err

    def test_flag_not_valid_for_command(self, capsys):
        status, _, err = run_cli(capsys, "eigensystem", "--grid", "5")
        assert status == 2 and "--grid" in err

    def test_unnormalized_amplitudes(self, capsys):
        status, _, err = run_cli(capsys, "evolve", "--alpha1", "1:0", "--alpha2", "1:0")
        assert status == 2 and "--alpha1/--alpha2" in err

    def test_bad_model_params(self, capsys):
        status, _, err = run_cli(capsys, "eigensystem", "--J", "0")
        assert status == 2 and "model parameters" in err

    def test_complex_syntax(self):
        assert cli.parse_complex("0.6:-0.8") == complex(0.6, -0.8)
        with pytest.raises(ValueError):
            cli.parse_complex("0.6+0.8j")


class TestCommands:
    def test_swap_times_one_third(self, capsys):
        status, out, _ = run_cli(capsys, "swap-times", "--J", "1", "--lambda", "0.333333333", "--max-den", "99")
        assert status == 0
        first = rows(out)[0]
        assert (first["m"], first["n"], first["class"]) == ("1", "3", "ExactSwap")
        assert float(first["swap_time"]) == pytest.approx(3 * math.pi / 2, abs=1e-11)

    def test_swap_times_even_parity(self, capsys):
        status, out, _ = run_cli(capsys, "swap-times", "--lambda", "0.5")
        assert status == 0
        assert all(r["class"] == "ReturnOnly" and r["swap_time"] == "" for r in rows(out))

    def test_swap_times_rejects_field_gradient(self, capsys):
        status, _, err = run_cli(capsys, "swap-times", "--b", "0.1")
        assert status == 1 and "--b 0" in err

    def test_eigensystem(self, capsys):
        status, out, _ = run_cli(capsys, "eigensystem", "--J", "1", "--lambda", "0.5", "--B", "1")
        table = rows(out)
        assert status == 0 and len(table) == 4
        # |11> and |00> energies: lambda J / 2 +- B
        energies = sorted(float(r["energy"]) for r in table)
        assert energies == pytest.approx(sorted([1.25, -0.75, -0.25 + 1, -0.25 - 1]), abs=1e-12)

    def test_fig1(self, capsys):
        status, out, _ = run_cli(capsys, "fig1", "--delta", "0.1", "--grid", "41")
        lines = out.splitlines()
        assert status == 0
        assert lines[0] == "alpha1_sq,beta1_sq,delta_ratio"
        assert len(lines) == 1 + 1681
        assert max(float(r["delta_ratio"]) for r in rows(out)) <= 1

    def test_purity_scan_zeros(self, capsys):
        status, out, _ = run_cli(capsys, "purity-scan", "--t-end", "6.283185", "--steps", "1000")
        assert status == 0
        table = rows(out)
        assert len(table) == 1001
        zeros = [float(r["t"]) for r in table if r["is_pure"] == "1"]
        for target in (math.pi / 2, math.pi):
            assert min(abs(t - target) for t in zeros) < 0.01

    def test_evolve_columns(self, capsys):
        status, out, _ = run_cli(capsys, "evolve", "--steps", "4")
        assert status == 0
        assert out.splitlines()[0] == "t,rho_uu,rho_dd,rho_ud_re,rho_ud_im,purity"
        assert float(rows(out)[0]["rho_uu"]) == 1

    def test_tau(self, capsys):
        status, out, _ = run_cli(capsys, "tau", "--lambdas", "0.5,1", "--t-max", "12.566370614359172")
        table = rows(out)
        assert status == 0
        assert float(table[0]["tau"]) == pytest.approx(0.875, abs=1e-9)
        assert float(table[1]["tau"]) == pytest.approx(0, abs=1e-9)

    def test_error(self, capsys):
        status, out, _ = run_cli(
            capsys, "error", "--alpha1", "0:0", "--alpha2", "1:0", "--beta1", "1:0", "--beta2", "0:0", "--deltas", "0.1"
        )
        row = rows(out)[0]
        assert status == 0 and row["branch"] == "simple"
        assert float(row["delta_exact"]) == pytest.approx(0.01 / 1.01, abs=1e-12)
        assert row["bound_ok"] == "1"

    def test_sweep(self, capsys):
        status, out, _ = run_cli(capsys, "sweep", "--lambdas", "1,0.5", "--deltas", "0.1", "--trials", "20")
        table = rows(out)
        assert status == 0 and len(table) == 2
        assert table[0]["bound_ok"] == "1" and table[1]["bound_ok"] == ""


class TestConfig:
    def test_flags_override_file(self, tmp_path, capsys):
        cfg = tmp_path / "run.cfg"
        cfg.write_text("# homogeneous run\nlambda = 0.6\nk-max=1\nJ=2\n")
        cfg_obj = cli.parse_config(["swap-times", "--config", str(cfg), "--J", "1"])
        assert cfg_obj.params.lam == 0.6 and cfg_obj.params.J == 1
        assert cfg_obj.opt("k-max") == 1

    def test_defaults(self):
        cfg = cli.parse_config(["evolve"])
        assert (cfg.params.J, cfg.params.lam, cfg.params.B, cfg.params.b, cfg.seed) == (1, 1, 0, 0, 42)
        assert cfg.alpha.p_up == 1 and cfg.beta.p_down == 1

    def test_unknown_key(self, tmp_path, capsys):
        cfg = tmp_path / "run.cfg"
        cfg.write_text("grid=3\n")
        status, _, err = run_cli(capsys, "evolve", "--config", str(cfg))
        assert status == 2 and "grid" in err

    def test_missing_file(self, tmp_path, capsys):
        status, _, err = run_cli(capsys, "evolve", "--config", str(tmp_path / "nope"))
        assert status == 2 and "--config" in err

    def test_renormalization_warning(self, caplog):
        with caplog.at_level(logging.WARNING, logger="xxzswap"):
            cfg = cli.parse_config(["evolve", "--alpha1", "1.0000000005:0"])
        assert "renormalizing" in caplog.text
        assert cfg.alpha.p_up == pytest.approx(1, abs=1e-15)

    def test_env_max_den(self, monkeypatch):
        monkeypatch.setenv("XXZSWAP_MAX_DEN", "7")
        assert cli.parse_config(["swap-times"]).opt("max-den") == 7
        assert cli.parse_config(["swap-times", "--max-den", "3"]).opt("max-den") == 3


def test_out_file(tmp_path, capsys):
    path = tmp_path / "fig.csv"
    status, out, _ = run_cli(capsys, "fig1", "--grid", "3", "--out", str(path))
    assert status == 0 and out == ""
    data = path.read_bytes()
    assert data.startswith(b"alpha1_sq,beta1_sq,delta_ratio\n") and b"\r" not in data


def test_validate_and_determinism(capsys):
    first = run_cli(capsys, "validate", "--trials", "50", "--seed", "7", "--grid-points", "20000")
    second = run_cli(capsys, "validate", "--trials", "50", "--seed", "7", "--grid-points", "20000")
    assert first[0] == 0
    assert first[1] == second[1]
    assert all(r["passed"] == "1" for r in rows(first[1]))


def test_module_entry_point():
    proc = subprocess.run(
        [sys.executable, "-m", "xxzswap", "swap-times", "--k-max", "1"], capture_output=True, text=True, check=False
    )
    assert proc.returncode == 0
    assert proc.stdout.splitlines()[1].startswith("1,1,1,1,0,ExactSwap,1,")
