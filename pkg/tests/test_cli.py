import json
import pathlib

import pytest

from stepfactor.cli import format_trace, main, parse_trace_json
from stepfactor.steppers import run_param

FIXTURES = pathlib.Path(__file__).parent / "fixtures"


def run_cli(capsys, *argv):
    rc = main(list(argv))
    captured = capsys.readouterr()
    return rc, captured.out, captured.err


class TestFactor:
    def test_worked_example(self, capsys):
        rc, out, _ = run_cli(capsys, "factor", "4061")
        assert rc == 0 and out == "4061 = 31 * 131\n"

    def test_even(self, capsys):
        rc, out, _ = run_cli(capsys, "factor", "8")
        assert rc == 0 and out == "8 = 2 * 4\n"

    def test_prime(self, capsys):
        rc, out, _ = run_cli(capsys, "factor", "97")
        assert rc == 0 and out == "97 is prime\n"

    def test_all_algorithms_agree(self, capsys):
        for algorithm in ("param", "unit", "accel", "rho", "trial"):
            rc, out, _ = run_cli(capsys, "factor", "4061", "--algorithm", algorithm)
            assert rc == 0 and out == "4061 = 31 * 131\n"

    def test_invalid(self, capsys):
        assert run_cli(capsys, "factor", "1")[0] == 2
        assert run_cli(capsys, "factor", "bogus")[0] == 2
        assert run_cli(capsys, "factor", "-7")[0] == 2

    def test_step_limit_exit(self, capsys):
        rc, _, err = run_cli(capsys, "factor", "4061", "--max-steps", "2")
        assert rc == 3 and "step limit" in err

    def test_env_step_budget(self, capsys, monkeypatch):
        monkeypatch.setenv("STEPFACTOR_MAX_STEPS", "2")
        assert run_cli(capsys, "factor", "4061")[0] == 3
        # explicit flag wins over the environment
        assert run_cli(capsys, "factor", "4061", "--max-steps", "100")[0] == 0


class TestTrace:
    def test_param_golden(self, capsys):
        rc, out, _ = run_cli(capsys, "trace", "4061", "--algorithm", "param")
        assert rc == 0
        assert out == (FIXTURES / "trace_4061_param.tsv").read_text()

    def test_accel_golden(self, capsys):
        rc, out, _ = run_cli(capsys, "trace", "4061", "--algorithm", "accel")
        assert rc == 0
        assert out == (FIXTURES / "trace_4061_accel.tsv").read_text()

    def test_short_circuit_verdict(self, capsys):
        rc, out, _ = run_cli(capsys, "trace", "8")
        assert rc == 0 and out == "8 = 2 * 4\n"
        rc, out, _ = run_cli(capsys, "trace", "121")
        assert rc == 0 and out == "121 = 11 * 11\n"

    def test_csv_format(self, capsys):
        rc, out, _ = run_cli(capsys, "trace", "35", "--format", "csv")
        assert rc == 0
        assert out.splitlines()[0] == "k,x,y,delta_x,eps,delta_y"
        assert out.splitlines()[1] == "0,5,5,-10,2,0"

    def test_json_round_trip(self, capsys):
        rc, out, _ = run_cli(capsys, "trace", "35", "--algorithm", "param",
                             "--format", "json")
        assert rc == 0
        parsed = parse_trace_json(out)
        _, rows = run_param(35)
        assert parsed == [
            {"k": r.k, "x": r.x, "y": r.y, "delta_x": r.delta_x,
             "eps": r.eps, "delta_y": r.delta_y}
            for r in rows
        ]
        assert parse_trace_json(format_trace(rows, "json")) == parsed


class TestIsPrime:
    def test_exit_codes(self, capsys):
        rc, out, _ = run_cli(capsys, "isprime", "131")
        assert (rc, out) == (0, "prime\n")
        rc, out, _ = run_cli(capsys, "isprime", "4061")
        assert (rc, out) == (1, "composite\n")
        assert run_cli(capsys, "isprime", "1")[0] == 2

    def test_verify_mode(self, capsys):
        assert run_cli(capsys, "isprime", "9973", "--verify")[0] == 0
        assert run_cli(capsys, "isprime", "9991", "--verify")[0] == 1


class TestAVector:
    def test_worked_example(self, capsys):
        rc, out, _ = run_cli(capsys, "avector", "4061")
        assert rc == 0 and out == "A = 6,6,4,1 (k=17)\n"

    def test_min_support(self, capsys):
        rc, out, _ = run_cli(capsys, "avector", "4061", "--min-support")
        assert rc == 0
        assert out.splitlines() == [
            "A = 6,6,4,1 (k=17)",
            "min A = 0,17 (support 1, trace support 4)",
        ]

    def test_small(self, capsys):
        rc, out, _ = run_cli(capsys, "avector", "35")
        assert rc == 0 and out == "A = 1 (k=1)\n"


class TestScan:
    def test_csv_output(self, capsys, tmp_path):
        out_file = tmp_path / "report.csv"
        rc, out, _ = run_cli(capsys, "scan", "--lo", "9", "--hi", "1000",
                             "--out", str(out_file))
        assert rc == 0 and "complete" in out
        lines = out_file.read_text().splitlines()
        assert lines[0] == "n,p,q,k_steps,target_sum,trace_support,min_support,witness"
        from conftest import is_odd_nonsquare_composite
        expected = sum(1 for n in range(9, 1001, 2) if is_odd_nonsquare_composite(n))
        assert len(lines) - 1 == expected

    def test_single_row(self, capsys, tmp_path):
        out_file = tmp_path / "one.csv"
        rc, _, _ = run_cli(capsys, "scan", "--lo", "4061", "--hi", "4062",
                           "--out", str(out_file))
        assert rc == 0
        row = out_file.read_text().splitlines()[1]
        assert row.startswith("4061,31,131,17,68,4,1,")

    def test_json_output(self, capsys, tmp_path):
        out_file = tmp_path / "report.json"
        rc, _, _ = run_cli(capsys, "scan", "--lo", "9", "--hi", "100",
                           "--out", str(out_file))
        assert rc == 0
        payload = json.loads(out_file.read_text())
        assert payload["records"][0]["n"] == 15

    def test_bad_range(self, capsys, tmp_path):
        rc, _, _ = run_cli(capsys, "scan", "--lo", "50", "--hi", "10",
                           "--out", str(tmp_path / "x.csv"))
        assert rc == 2


class TestBench:
    def test_semiprimes(self, capsys):
        rc, out, _ = run_cli(capsys, "bench", "--set", "semiprimes",
                             "--bits", "16", "--count", "5", "--seed", "7")
        assert rc == 0
        assert "param" in out and "trial" in out and "rho" in out

    def test_range(self, capsys):
        rc, out, _ = run_cli(capsys, "bench", "--set", "range",
                             "--lo", "9", "--hi", "500")
        assert rc == 0 and "inputs:" in out

    def test_unsatisfiable(self, capsys):
        rc, _, _ = run_cli(capsys, "bench", "--set", "range", "--lo", "9")
        assert rc == 2
        rc, _, _ = run_cli(capsys, "bench", "--set", "semiprimes", "--bits", "2")
        assert rc == 2
