from gjohnson.cli import main
from gjohnson.experiments import CSV_HEADER


def run_cli(capsys, *argv):
    code = main(list(argv))
    captured = capsys.readouterr()
    return code, captured.out, captured.err


class TestInfo:
    def test_petersen(self, capsys):
        code, out, _ = run_cli(capsys, "info", "--n", "5", "--r", "2", "--s", "0")
        assert code == 0
        assert "N      = 10" in out
        assert "N1       = 3" in out
        assert "N*N1/2    = 15" in out

    def test_threshold_with_hypothesis_warning(self, capsys):
        code, out, _ = run_cli(capsys, "info", "--n", "20", "--r", "2", "--s", "1", "--t", "10")
        assert code == 0
        assert "0.020587068" in out
        assert "0.0370567225" in out
        assert "t^2 = 100 >= N1 = 36" in out

    def test_kneser_threshold_no_warning(self, capsys):
        code, out, _ = run_cli(capsys, "info", "--n", "30", "--r", "2", "--s", "0", "--t", "8")
        assert code == 0
        assert "warning" not in out
        assert "0.00264" in out  # 1/378

    def test_petersen_t4_threshold_is_one_third(self, capsys):
        code, out, _ = run_cli(capsys, "info", "--n", "5", "--r", "2", "--s", "0", "--t", "4")
        assert code == 0
        assert "0.333333333" in out

    def test_sharpness_warning_regime(self, capsys):
        # s > 0 and t <= ln n
        code, out, _ = run_cli(capsys, "info", "--n", "100", "--r", "2", "--s", "1", "--t", "4")
        assert code == 0
        assert "sharpness" in out

    def test_invalid_params_exit_one(self, capsys):
        code, _, err = run_cli(capsys, "info", "--n", "5", "--r", "2", "--s", "2")
        assert code == 1
        assert "error" in err


class TestExactCommands:
    def test_aij_with_verification(self, capsys):
        code, out, _ = run_cli(
            capsys, "aij", "--n", "7", "--r", "3", "--s", "1", "--i", "1", "--j", "1", "--verify"
        )
        assert code == 0
        assert out.startswith("9 (brute force agrees)")

    def test_aij_plain(self, capsys):
        code, out, _ = run_cli(capsys, "aij", "--n", "7", "--r", "3", "--s", "1", "--i", "3", "--j", "1")
        assert code == 0
        assert out.splitlines()[0] == "18"  # A(r, s) = N1

    def test_count_both_methods(self, capsys):
        code, out, _ = run_cli(
            capsys, "count", "--n", "5", "--r", "2", "--s", "0", "--t", "5", "--method", "both"
        )
        assert code == 0
        assert out.strip() == "12 (methods agree)"

    def test_count_single_method(self, capsys):
        code, out, _ = run_cli(
            capsys, "count", "--n", "5", "--r", "1", "--s", "0", "--t", "3", "--method", "lemma"
        )
        assert code == 0
        assert out.strip() == "10"

    def test_paths_all_edges(self, capsys):
        code, out, _ = run_cli(
            capsys, "paths", "--n", "5", "--r", "2", "--s", "0", "--t", "5", "--all-edges"
        )
        assert code == 0
        assert out.strip() == "4 (uniform over 15 edges)"

    def test_budget_exit_two(self, capsys):
        code, _, err = run_cli(
            capsys, "paths", "--n", "9", "--r", "3", "--s", "1", "--t", "8", "--budget", "1000"
        )
        assert code == 2
        assert "budget" in err

    def test_t_too_small_exit_one(self, capsys):
        code, _, err = run_cli(capsys, "count", "--n", "5", "--r", "2", "--s", "0", "--t", "2")
        assert code == 1
        assert "error" in err


class TestVerifyCommand:
    def test_small_grid_passes(self, capsys):
        code, out, _ = run_cli(
            capsys, "verify", "--max-n", "6", "--max-r", "2", "--t-max", "6"
        )
        assert code == 0
        assert "VERIFICATION PASSED" in out
        assert "[FAIL]" not in out


class TestSampleCommand:
    def test_log_output(self, capsys, tmp_path):
        out_path = tmp_path / "sample.log"
        code, out, _ = run_cli(
            capsys,
            "sample", "--n", "5", "--r", "2", "--s", "0", "--p", "0.5",
            "--seed", "7", "--trial-index", "2", "--t", "5", "--out", str(out_path),
        )
        assert code == 0
        assert "retained edges:" in out
        assert "contains a 5-cycle:" in out
        lines = out_path.read_text().splitlines()
        assert lines[0] == "5 2 0 0.5 7 2"
        assert all(len(line.split()) == 2 for line in lines[1:])

    def test_deterministic_log(self, capsys, tmp_path):
        paths = [tmp_path / "a.log", tmp_path / "b.log"]
        for path in paths:
            run_cli(
                capsys,
                "sample", "--n", "5", "--r", "2", "--s", "0", "--p", "0.4",
                "--seed", "3", "--out", str(path),
            )
        assert paths[0].read_bytes() == paths[1].read_bytes()


class TestSweepCommand:
    def test_csv_deterministic(self, capsys, tmp_path):
        out_a, out_b = tmp_path / "a.csv", tmp_path / "b.csv"
        argv = [
            "sweep", "--n", "10", "--r", "1", "--s", "0", "--t", "3",
            "--c-values", "0.5,1,2", "--trials", "80", "--seed", "13", "--mode", "count",
        ]
        code, out, _ = run_cli(capsys, *argv, "--out", str(out_a))
        assert code == 0
        assert "p_hat=" in out
        run_cli(capsys, *argv, "--out", str(out_b))
        assert out_a.read_bytes() == out_b.read_bytes()
        lines = out_a.read_text().splitlines()
        assert lines[0] == CSV_HEADER
        assert len(lines) == 4

    def test_bad_c_values_exit_one(self, capsys):
        code, _, err = run_cli(
            capsys,
            "sweep", "--n", "10", "--r", "1", "--s", "0", "--t", "3",
            "--c-values", "0.5,zebra", "--trials", "10",
        )
        assert code == 1
        assert "error" in err


class TestDistributionCommand:
    def test_runs_and_reports(self, capsys):
        code, out, _ = run_cli(
            capsys,
            "distribution", "--n", "5", "--r", "1", "--s", "0", "--t", "3",
            "--p", "0.3", "--trials", "400", "--seed", "1",
        )
        assert code == 0
        assert "total-variation distance:" in out
        assert "Poisson" in out


class TestUsageErrors:
    def test_missing_required_flag(self, capsys):
        code = main(["info", "--n", "5", "--r", "2"])
        capsys.readouterr()
        assert code == 1

    def test_unknown_command(self, capsys):
        code = main(["frobnicate"])
        capsys.readouterr()
        assert code == 1
