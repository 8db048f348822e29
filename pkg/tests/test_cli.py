import math

import pytest

from dtpcap.cli import main


def run_cli(capsys, *argv):
    code = main(list(argv))
    captured = capsys.readouterr()
    return code, captured.out, captured.err


def parse_value(stdout):
    for token in stdout.split():
        if token.startswith("value="):
            return float(token[len("value=") :])
    raise AssertionError(f"no value= field in {stdout!r}")


class TestBoundCommand:
    def test_main_equals_cr19a_at_zero_dark_current(self, capsys):
        code_a, out_a, _ = run_cli(capsys, "bound", "--lambda", "0", "--mu", "1", "--which", "main")
        code_b, out_b, _ = run_cli(capsys, "bound", "--lambda", "0", "--mu", "1", "--which", "cr19a")
        assert code_a == 0 and code_b == 0
        assert parse_value(out_a) == pytest.approx(parse_value(out_b), rel=1e-10)

    def test_best_names_winner(self, capsys):
        code, out, _ = run_cli(capsys, "bound", "--lambda", "0.1", "--mu", "1", "--which", "best")
        assert code == 0
        assert "winner=main" in out

    def test_bits_flag_rescales(self, capsys):
        _, nats, _ = run_cli(capsys, "bound", "--lambda", "0.1", "--mu", "1")
        _, bits, _ = run_cli(capsys, "bound", "--lambda", "0.1", "--mu", "1", "--bits")
        assert parse_value(bits) == pytest.approx(parse_value(nats) / math.log(2.0), rel=1e-12)
        assert "bits" in bits

    def test_aminian_requires_peak(self, capsys):
        with pytest.raises(SystemExit) as exc:
            main(["bound", "--lambda", "0.1", "--mu", "1", "--which", "aminian"])
        assert exc.value.code == 2

    def test_lapidoth_requires_free_parameters(self, capsys):
        with pytest.raises(SystemExit) as exc:
            main(["bound", "--lambda", "0.1", "--mu", "1", "--which", "lapidoth"])
        assert exc.value.code == 2

    def test_lapidoth_with_parameters(self, capsys):
        code, out, _ = run_cli(
            capsys, "bound", "--lambda", "0.1", "--mu", "1", "--which", "lapidoth", "--eta", "4", "--p", "0.5"
        )
        assert code == 0
        assert parse_value(out) == pytest.approx(6.145712108088439, rel=1e-12)


class TestSweepCommand:
    def test_linear_sweep_line_count(self, tmp_path, capsys):
        out_path = tmp_path / "lin.csv"
        code, _, _ = run_cli(
            capsys,
            "sweep", "--lambda", "0.1", "--mu-min", "1", "--mu-max", "2",
            "--points", "5", "--bounds", "main,cr19a", "--out", str(out_path),
        )
        assert code == 0
        lines = out_path.read_text(encoding="utf-8").split("\n")
        assert lines[-1] == ""
        assert len(lines) == 7  # header + 5 points + trailing newline split
        assert lines[0] == "mu,main,cr19a"
        assert lines[1].startswith("1.0,")

    def test_fig2_preset(self, tmp_path, capsys):
        out_path = tmp_path / "fig2.csv"
        code, _, _ = run_cli(capsys, "sweep", "--preset", "fig2", "--out", str(out_path))
        assert code == 0
        lines = out_path.read_text(encoding="utf-8").strip().split("\n")
        assert lines[0] == "mu,main,elementary,cr19a"
        assert len(lines) == 201
        # every cell defined for these three bounds
        assert all("" not in line.split(",") for line in lines[1:])

    def test_fig1_preset_curves_and_gaps(self, tmp_path, capsys):
        out_path = tmp_path / "fig1.csv"
        code, _, _ = run_cli(capsys, "sweep", "--preset", "fig1", "--out", str(out_path))
        assert code == 0
        lines = out_path.read_text(encoding="utf-8").strip().split("\n")
        assert lines[0] == "mu,main,elementary,cr19a,lapidoth-under,aminian,ww-nosup,bv"
        header = lines[0].split(",")
        ww_col = header.index("ww-nosup")
        bv_col = header.index("bv")
        cells = [line.split(",") for line in lines[1:]]
        # the small-power bound loses validity once mu leaves its domain
        assert any(row[ww_col] == "" for row in cells)
        assert any(row[ww_col] != "" for row in cells)
        # the asymptotic curve stays plottable everywhere
        assert all(row[bv_col] != "" for row in cells)

    def test_byte_deterministic(self, tmp_path, capsys):
        a = tmp_path / "a.csv"
        b = tmp_path / "b.csv"
        for path in (a, b):
            code, _, _ = run_cli(capsys, "sweep", "--preset", "fig1", "--out", str(path))
            assert code == 0
        assert a.read_bytes() == b.read_bytes()

    def test_unwritable_path(self, capsys):
        code = main(["sweep", "--preset", "fig2", "--out", "/nonexistent-dir/x.csv"])
        captured = capsys.readouterr()
        assert code == 3
        assert "cannot write" in captured.err

    def test_aminian_needs_peak(self, capsys):
        with pytest.raises(SystemExit) as exc:
            main(["sweep", "--lambda", "0.1", "--bounds", "aminian", "--out", "/tmp/x.csv"])
        assert exc.value.code == 2

    def test_unknown_bound_rejected(self, capsys):
        with pytest.raises(SystemExit) as exc:
            main(["sweep", "--lambda", "0.1", "--bounds", "nope", "--out", "/tmp/x.csv"])
        assert exc.value.code == 2


class TestVerifyCommand:
    def test_identity_suite(self, capsys):
        code, out, _ = run_cli(capsys, "verify", "--suite", "identity")
        assert code == 0
        assert "identity: pass checks_run=50" in out

    def test_unknown_suite(self, capsys):
        with pytest.raises(SystemExit) as exc:
            main(["verify", "--suite", "bogus"])
        assert exc.value.code == 2

    def test_tol_scale_flag(self, capsys):
        code, out, _ = run_cli(capsys, "verify", "--suite", "y0", "--tol-scale", "10")
        assert code == 0


class TestCapacityCommand:
    def test_zero_power(self, capsys):
        code, out, _ = run_cli(
            capsys, "capacity", "--lambda", "0.1", "--mu", "0", "--peak", "2"
        )
        assert code == 0
        assert parse_value(out) == 0.0

    def test_inactive_constraint_prints_zero_multiplier(self, capsys):
        code, out, _ = run_cli(
            capsys, "capacity", "--lambda", "0", "--mu", "0.9", "--peak", "1", "--grid", "16"
        )
        assert code == 0
        assert "multiplier=0" in out

    def test_mu_above_peak_rejected(self, capsys):
        with pytest.raises(SystemExit) as exc:
            main(["capacity", "--lambda", "0.1", "--mu", "3", "--peak", "2"])
        assert exc.value.code == 2

    def test_sandwich_against_best_bound(self, capsys):
        code, cap_out, _ = run_cli(
            capsys,
            "capacity", "--lambda", "0.1", "--mu", "1", "--peak", "10",
            "--grid", "48", "--max-iter", "30000",
        )
        assert code == 0
        code, bound_out, _ = run_cli(capsys, "bound", "--lambda", "0.1", "--mu", "1", "--which", "best")
        assert code == 0
        assert parse_value(cap_out) <= parse_value(bound_out) + 1e-6
