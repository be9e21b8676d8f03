import json
from pathlib import Path

import jsonschema
import pytest

from kmodal import Family, predicted_size
from kmodal.cli import main

SCHEMA = json.loads((Path(__file__).resolve().parents[1] / "docs" / "schema.json").read_text())


def validate(payload: dict, definition: str) -> None:
    schema = dict(SCHEMA["$defs"][definition])
    schema["$defs"] = SCHEMA["$defs"]
    jsonschema.validate(payload, schema)


@pytest.fixture
def perm_file(tmp_path):
    path = tmp_path / "perm.txt"
    path.write_text("1 5 3 2 4\n")
    return str(path)


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr().out
    return code, out


class TestSolve:
    def test_plain(self, capsys, perm_file):
        code, out = run(capsys, "solve", "--k", "1", "--mode", "inc", "--input", perm_file)
        assert code == 0
        assert out.strip() == "length 4"

    def test_witness(self, capsys, perm_file):
        code, out = run(
            capsys, "solve", "--k", "1", "--mode", "inc", "--input", perm_file, "--witness"
        )
        assert code == 0
        assert out.splitlines()[1].startswith("indices ")

    def test_json_schema(self, capsys, perm_file):
        code, out = run(capsys, "solve", "--k", "1", "--mode", "inc", "--input", perm_file, "--json")
        assert code == 0
        payload = json.loads(out)
        validate(payload, "solve_report")
        assert payload["length"] == 4


class TestLabels:
    def test_csv(self, capsys, perm_file):
        code, out = run(capsys, "labels", "--input", perm_file, "--scheme", "t2", "--k", "0")
        assert code == 0
        lines = out.strip().splitlines()
        assert lines[0] == "pos,value,x,y"
        assert lines[1] == "1,1,1,1"
        assert lines[5] == "5,4,3,2"


class TestGenerate:
    def test_strong_2_5(self, capsys):
        code, out = run(capsys, "generate", "--family", "strong", "--k", "2", "--t", "5")
        assert code == 0
        values = [int(v) for v in out.split()]
        assert len(values) == 25
        assert values[:6] == [5, 4, 3, 2, 1, 10]

    def test_out_file(self, capsys, tmp_path):
        target = tmp_path / "p.txt"
        code, _ = run(capsys, "generate", "--family", "perm", "--k", "1", "--t", "2", "--out", str(target))
        assert code == 0
        assert target.read_text().split() == "2 1 5 4 3 8 7 6 10 9".split()


class TestCheck:
    def test_json(self, capsys, perm_file):
        code, out = run(
            capsys, "check", "--input", perm_file, "--k", "1", "--theorem", "t3", "--json"
        )
        assert code == 0
        validate(json.loads(out), "check_report")

    def test_strict_failure_exit_code(self, capsys, tmp_path):
        # strong_make(2,5) misses the k=2 T1 target at slack 0
        path = tmp_path / "strong.txt"
        run(capsys, "generate", "--family", "strong", "--k", "2", "--t", "5", "--out", str(path))
        code, _ = run(
            capsys, "check", "--input", str(path), "--k", "2", "--theorem", "t1",
            "--slack", "0", "--strict",
        )
        assert code == 1
        code, _ = run(
            capsys, "check", "--input", str(path), "--k", "2", "--theorem", "t1", "--slack", "1"
        )
        assert code == 0


class TestRoundTrip:
    def test_generate_solve_check(self, capsys, tmp_path):
        path = tmp_path / "perm.txt"
        for family, k, t in [(Family.STRONG, 2, 4), (Family.PERM, 2, 3)]:
            run(capsys, "generate", "--family", family.value, "--k", str(k), "--t", str(t),
                "--out", str(path))
            code, out = run(capsys, "solve", "--k", str(k), "--input", str(path), "--json")
            assert code == 0
            assert json.loads(out)["n"] == predicted_size(family, k, t)
            code, out = run(capsys, "check", "--input", str(path), "--k", str(k),
                            "--theorem", "t3", "--json")
            assert code == 0
            assert json.loads(out)["n"] == predicted_size(family, k, t)


class TestMinimizeTightnessLattice:
    def test_minimize_json(self, capsys):
        code, out = run(capsys, "minimize", "--n", "4", "--k", "1", "--theorem", "t1", "--json")
        assert code == 0
        payload = json.loads(out)
        validate(payload, "minimize_report")
        assert payload["minimum"] == 3

    def test_tightness_json(self, capsys):
        code, out = run(capsys, "tightness", "--family", "strong", "--k", "2", "--t", "5", "--json")
        assert code == 0
        payload = json.loads(out)
        validate(payload, "tightness_report")
        assert payload["achieved_N"] == 9

    def test_lattice_maxfree(self, capsys):
        code, out = run(capsys, "lattice", "--N", "3", "--mode", "maxfree", "--json")
        assert code == 0
        payload = json.loads(out)
        validate(payload, "lattice_maxfree_report")
        assert payload["max_size"] == 6

    def test_lattice_scan_and_shift(self, capsys, tmp_path):
        pts = tmp_path / "points.txt"
        pts.write_text("2 1\n2 2\n")
        code, out = run(capsys, "lattice", "--N", "2", "--mode", "scan",
                        "--points", str(pts), "--json")
        assert code == 0
        payload = json.loads(out)
        validate(payload, "lattice_scan_report")
        assert payload["triggered"] is False
        code, out = run(capsys, "lattice", "--N", "2", "--mode", "shift",
                        "--points", str(pts), "--json")
        assert code == 0
        payload = json.loads(out)
        validate(payload, "lattice_shift_report")
        assert payload["success"] is True


class TestSweepCommand:
    def test_csv_and_determinism(self, capsys):
        argv = ["sweep", "--theorems", "t1,t3", "--k", "1,2", "--n", "20",
                "--samples", "2", "--seed", "9"]
        code, out1 = run(capsys, *argv)
        assert code == 0
        code, out2 = run(capsys, *argv)
        assert out1 == out2
        lines = out1.strip().splitlines()
        assert lines[0] == "theorem,family,seed,n,k,t,mode,achieved_N,target,slack,pass"
        assert len(lines) == 1 + 2 * 2 * 2


class TestErrors:
    def test_no_subcommand_usage_error(self, capsys):
        assert main([]) == 2

    def test_unknown_flag(self, capsys):
        assert main(["solve", "--k", "1", "--input", "x", "--bogus"]) == 2

    def test_missing_file(self, capsys):
        assert main(["solve", "--k", "1", "--input", "/nonexistent/perm.txt"]) == 2

    def test_bad_permutation_text(self, capsys, tmp_path):
        path = tmp_path / "bad.txt"
        path.write_text("1 1 2\n")
        assert main(["solve", "--k", "1", "--input", str(path)]) == 2
