import csv
import io
import json
import math
import pathlib
import subprocess
import sys

import pytest

from korenblum import schema
from korenblum.cli import main, parse_complex

PAIRS = pathlib.Path(__file__).resolve().parent.parent / "pairs"


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


class TestComplexParser:
    @pytest.mark.parametrize("text,value", [
        ("0.5", 0.5), ("-0.4+0.2i", -0.4 + 0.2j), ("-0.4-0.2i", -0.4 - 0.2j), ("2i", 2j),
        ("-i", -1j), ("i", 1j), ("1e-3-2.5e-1i", 0.001 - 0.25j), (".5", 0.5), ("+3", 3),
    ])
    def test_valid(self, text, value):
        assert parse_complex(text) == value

    @pytest.mark.parametrize("text", ["", "j", "1+2j", "1 2i", "0.5i+1", "i2", "abc", "1+", "--1"])
    def test_invalid(self, text):
        with pytest.raises(Exception):
            parse_complex(text)


class TestCertify:
    def test_bergman_pass(self, capsys):
        code, out, _ = run(capsys, "certify", "bergman", "--c", "0.21")
        assert code == 0
        assert "PASS" in out

    def test_fock_pass(self, capsys):
        assert run(capsys, "certify", "fock", "--c", "0.54")[0] == 0

    def test_fock_fail(self, capsys):
        code, out, _ = run(capsys, "certify", "fock", "--c", "0.60")
        assert code == 1 and "FAIL" in out

    def test_degenerate(self, capsys):
        code, out, err = run(capsys, "certify", "bergman", "--c", "0.71")
        assert code == 2 and "error" in err and out == ""

    def test_invalid_input(self, capsys):
        assert run(capsys, "certify", "bergman", "--c", "1.5")[0] == 2
        assert run(capsys, "certify", "hardy", "--c", "0.2")[0] == 2
        assert run(capsys, "certify", "bergman")[0] == 2
        assert run(capsys, "certify", "bergman", "--c", "0.2", "--tol", "0")[0] == 2

    def test_json_round_trip(self, capsys):
        code, out, _ = run(capsys, "certify", "bergman", "--c", "0.21", "--format", "json")
        cert = schema.loads(out)
        assert code == 0 and cert.passed and cert.c == 0.21

    def test_csv(self, capsys):
        _, out, _ = run(capsys, "certify", "fock", "--c", "0.54", "--format", "csv")
        rows = list(csv.DictReader(io.StringIO(out)))
        assert len(rows) == 1 and rows[0]["pass"] == "True"
        assert float(rows[0]["criterion"]) == pytest.approx(0.962, abs=0.005)

    def test_out_file(self, capsys, tmp_path):
        dest = tmp_path / "cert.json"
        code, out, _ = run(capsys, "certify", "fock", "--c", "0.6", "--format", "json", "--out", str(dest))
        assert code == 1 and out == ""
        assert not schema.loads(dest.read_text()).passed

    def test_byte_identical(self, capsys):
        argv = ("certify", "bergman", "--c", "0.21", "--format", "json", "--seed", "3")
        assert run(capsys, *argv)[1] == run(capsys, *argv)[1]


class TestSearch:
    def test_bergman(self, capsys):
        code, out, _ = run(capsys, "search", "bergman", "--lo", "0.05", "--hi", "0.70", "--format", "json")
        res = schema.loads(out)
        assert code == 0 and res.c_max >= 0.21

    def test_fock(self, capsys):
        code, out, _ = run(capsys, "search", "fock", "--lo", "0.1", "--hi", "0.9", "--threads", "4",
                           "--format", "json")
        assert code == 0 and 0.54 <= schema.loads(out).c_max <= 0.60

    def test_invalid_bracket(self, capsys):
        assert run(capsys, "search", "bergman", "--lo", "0.6", "--hi", "0.7")[0] == 2
        assert run(capsys, "search", "fock", "--lo", "0.9", "--hi", "0.1")[0] == 2


class TestEval:
    def test_cstar(self, capsys):
        code, out, _ = run(capsys, "eval", "cstar", "--c", "0.21", "--a", "0.5", "--z", "-0.5", "--format", "json")
        d = json.loads(out)
        assert code == 0 and 0 < d["value"] < 1 and d["truncation_bound"] >= 0

    def test_cstar_zero(self, capsys):
        code, out, _ = run(capsys, "eval", "cstar", "--a", "0.5", "--z", "0.5", "--format", "json")
        assert code == 0 and json.loads(out)["value"] == 0

    def test_complex_negative_value(self, capsys):
        code, out, _ = run(capsys, "eval", "cstar", "--a", "0.5", "--z", "-0.4+0.2i", "--format", "json")
        assert code == 0 and json.loads(out)["z"] == [-0.4, 0.2]

    def test_f_bound_boundary_note(self, capsys):
        code, out, _ = run(capsys, "eval", "f-bound", "--c", "0.21", "--rho", "0.999")
        assert code == 0
        assert float(out.split("=")[1].split()[0]) >= 1
        assert "boundary layer" in out

    def test_gamma_unbounded(self, capsys):
        code, out, _ = run(capsys, "eval", "gamma", "--rho", "0.999", "--format", "json")
        d = json.loads(out)
        assert code == 0 and d["unbounded"] and d["value"] is None

    def test_gamma_fock(self, capsys):
        code, out, _ = run(capsys, "eval", "gamma", "--space", "fock", "--c", "0.5", "--rho", "2", "--format", "json")
        assert json.loads(out)["value"] == pytest.approx(2 * 0.5 * 2 / (4 - 0.25))

    def test_integrand(self, capsys):
        code, out, _ = run(capsys, "eval", "integrand", "--rho", "0.999", "--format", "json")
        assert code == 0 and json.loads(out)["value"] == 0

    def test_cstar_lower(self, capsys):
        code, out, _ = run(capsys, "eval", "cstar-lower", "--a", "0.5", "--z", "-0.5", "--degree", "2",
                           "--restarts", "2", "--format", "json")
        assert code == 0 and 0 < json.loads(out)["value"] < 1

    @pytest.mark.parametrize("argv", [
        ("eval", "cstar", "--a", "0.5", "--z", "2"),
        ("eval", "cstar", "--z", "0.5"),
        ("eval", "f-bound", "--rho", "0.1"),
        ("eval", "f-bound"),
        ("eval", "cstar", "--a", "0.5", "--z", "1+2j"),
    ])
    def test_domain_errors(self, capsys, argv):
        assert run(capsys, *argv)[0] == 2


class TestScan:
    def test_criterion_rows(self, capsys):
        code, out, _ = run(capsys, "scan", "criterion", "--space", "bergman", "--start", "0.05", "--stop", "0.30",
                           "--step", "0.01", "--format", "csv", "--threads", "4")
        rows = list(csv.DictReader(io.StringIO(out)))
        assert code == 0 and len(rows) == 26
        cs = [float(r["c"]) for r in rows]
        assert cs == sorted(cs) and cs[0] == 0.05 and cs[-1] == 0.3

    def test_f_bound_rows(self, capsys):
        code, out, _ = run(capsys, "scan", "f-bound", "--c", "0.21", "--steps", "200", "--format", "json")
        d = json.loads(out)
        assert code == 0 and len(d["rows"]) == 200
        assert all(0.21 < r[0] < 1 for r in d["rows"])

    def test_gamma_scan_unbounded_as_null(self, capsys):
        _, out, _ = run(capsys, "scan", "gamma", "--c", "0.21", "--steps", "500", "--format", "json")
        values = [r[1] for r in json.loads(out)["rows"]]
        assert values[-1] is None and values[0] is not None

    def test_cstar_circle(self, capsys):
        _, out, _ = run(capsys, "scan", "cstar-circle", "--rho", "0.5", "--steps", "5", "--format", "json")
        rows = json.loads(out)["rows"]
        assert rows[0] == [0.0, 0.0] and rows[-1][0] == pytest.approx(math.pi)

    @pytest.mark.parametrize("argv", [
        ("--start", "0.3", "--stop", "0.1", "--step", "0.01"),
        ("--start", "0.1", "--stop", "0.3", "--step", "0"),
        ("--start", "0.1", "--stop", "0.3"),
    ])
    def test_malformed_ranges(self, capsys, argv):
        assert run(capsys, "scan", "criterion", *argv)[0] == 2

    def test_bad_steps(self, capsys):
        assert run(capsys, "scan", "f-bound", "--steps", "0")[0] == 2

    def test_deterministic(self, capsys):
        argv = ("scan", "criterion", "--space", "fock", "--start", "0.1", "--stop", "0.9", "--step", "0.1",
                "--format", "json", "--threads", "3")
        assert run(capsys, *argv)[1] == run(capsys, *argv)[1]


class TestVerify:
    def test_all(self, capsys):
        code, out, _ = run(capsys, "verify", "--all", "--format", "json")
        d = json.loads(out)
        assert code == 0 and d["pass"] and len(d["claims"]) == 11

    def test_fg_product_at_03(self, capsys):
        # stated expectation: a violation is reported at c = 0.3
        code, _, _ = run(capsys, "verify", "fg-product", "--c", "0.3")
        assert code == 1

    def test_fg_product_beyond_threshold(self, capsys):
        code, out, _ = run(capsys, "verify", "fg-product", "--c", "0.6")
        assert code == 1 and "FAIL" in out

    def test_low_density_flag(self, capsys):
        code, out, _ = run(capsys, "verify", "tedious", "--theta-steps", "4", "--format", "json")
        rep = json.loads(out)["claims"][0]
        assert code == 0 and rep["pass"] and rep["low_density"]

    def test_config_errors(self, capsys):
        assert run(capsys, "verify")[0] == 2
        assert run(capsys, "verify", "bogus")[0] == 2
        assert run(capsys, "verify", "fn-bound", "--c", "1.5")[0] == 2
        assert run(capsys, "verify", "fn-bound", "--rho-steps", "0")[0] == 2

    def test_csv_rows(self, capsys):
        _, out, _ = run(capsys, "verify", "fn-bound", "gn-theta", "--format", "csv")
        rows = list(csv.DictReader(io.StringIO(out)))
        assert [r["claim_id"] for r in rows] == ["fn-bound", "gn-theta"]

    def test_repeatable_c(self, capsys):
        _, out, _ = run(capsys, "verify", "fn-bound", "--c", "0.1,0.2", "--c", "0.22", "--format", "json")
        assert json.loads(out)["claims"][0]["grid"]["c_values"] == [0.1, 0.2, 0.22]


class TestCheckPair:
    def test_counterexample(self, capsys):
        code, out, _ = run(capsys, "check-pair", str(PAIRS / "bergman_counterexample_071.json"),
                           "--space", "bergman", "--c", "0.71", "--format", "json")
        rep = schema.loads(out)
        assert code == 1
        assert rep.hypothesis_margin >= 0 and rep.norm_f_sq == 0.5041 and rep.norm_g_sq == 0.5

    def test_certified_constant_pair(self, capsys):
        assert run(capsys, "check-pair", str(PAIRS / "bergman_constant_021.json"), "--c", "0.21")[0] == 0

    def test_hypothesis_fails(self, capsys):
        assert run(capsys, "check-pair", str(PAIRS / "bergman_hypothesis_fails.json"))[0] == 3

    @pytest.mark.parametrize("path", sorted(PAIRS.glob("*.json")), ids=lambda p: p.stem)
    def test_corpus_labels(self, capsys, path):
        data = json.loads(path.read_text())
        assert data["description"].startswith("Constructed example.")
        code = run(capsys, "check-pair", str(path))[0]
        expected = 3 if "fails" in path.stem else 1 if "counterexample" in path.stem else 0
        assert code == expected

    def test_bad_files(self, capsys, tmp_path):
        assert run(capsys, "check-pair", str(tmp_path / "missing.json"), "--c", "0.2")[0] == 2
        bad = tmp_path / "bad.json"
        bad.write_text("{not json")
        assert run(capsys, "check-pair", str(bad), "--c", "0.2")[0] == 2
        bad.write_text(json.dumps({"f": {"min_degree": 0, "coeffs": [[1, 0]]}}))
        assert run(capsys, "check-pair", str(bad), "--c", "0.2")[0] == 2
        bad.write_text(json.dumps({"f": {"min_degree": 0, "coeffs": [[1, 0]]},
                                   "g": {"min_degree": 0, "coeffs": [[0, 0], [1, 0]]}}))
        assert run(capsys, "check-pair", str(bad))[0] == 2


def test_module_entry_point():
    out = subprocess.run([sys.executable, "-m", "korenblum", "certify", "fock", "--c", "0.6"],
                         capture_output=True, text=True)
    assert out.returncode == 1 and "FAIL" in out.stdout


def test_help(capsys):
    assert run(capsys, "--help")[0] == 0
    assert run(capsys)[0] == 2
