import json
from fractions import Fraction

import pytest

from sumsetlab.bodies import LatticeSet, body_to_json_dict, make_simplex
from sumsetlab.bundles import unit_cube
from sumsetlab.cli import (
    EXIT_BAD_INPUT,
    EXIT_CHECK_FAILED,
    EXIT_DIMENSION_CAP,
    EXIT_OK,
    main,
)


@pytest.fixture
def workdir(tmp_path):
    def write(name, body):
        path = tmp_path / name
        path.write_text(json.dumps(body_to_json_dict(body)))
        return str(path)

    return tmp_path, write


class TestExitCodes:
    def test_pass_is_zero(self, workdir):
        tmp, write = workdir
        a = write("a.json", LatticeSet.from_points([(0,), (1,)]))
        c = write("c.json", LatticeSet.from_points([(0,), (2,)]))
        assert main(["ruzsa", a, a, c, "--output", str(tmp / "r.json")]) == EXIT_OK

    def test_check_failure_is_one(self, workdir):
        tmp, write = workdir
        s = write("s.json", make_simplex(2, 1))
        code = main(["theorem", s, s, "--form", "a_ge_b", "--c-budget", "0.001",
                     "--output", str(tmp / "r.json")])
        assert code == EXIT_CHECK_FAILED

    def test_malformed_json_is_two(self, workdir):
        tmp, write = workdir
        bad = tmp / "bad.json"
        bad.write_text("{not json")
        a = write("a.json", LatticeSet.from_points([(0,)]))
        assert main(["ruzsa", str(bad), a, a]) == EXIT_BAD_INPUT

    def test_bad_parameter_is_two(self, workdir):
        tmp, write = workdir
        s = write("s.json", make_simplex(2, 1))
        assert main(["lemma2", s, "--r", "7/2"]) == EXIT_BAD_INPUT

    def test_dimension_cap_is_three(self, workdir):
        tmp, write = workdir
        c = write("c.json", unit_cube(4))
        assert main(["lemma1", c, c, "--grid-step", "1/4"]) == EXIT_DIMENSION_CAP


class TestSigmaCommand:
    def test_csv_row_for_n1(self, tmp_path, capsys):
        out = tmp_path / "sigma.csv"
        assert main(["sigma", "--n", "1", "--alpha", "1", "--format", "csv",
                     "--output", str(out)]) == EXIT_OK
        lines = out.read_text().strip().splitlines()
        assert lines[0] == "n,alpha,sigma,lowerbound,ratio"
        fields = lines[1].split(",")
        assert fields[0] == "1" and fields[1] == "1"
        assert float(fields[2]) == 0.5

    def test_range_sweep(self, tmp_path):
        out = tmp_path / "sigma.csv"
        assert main(["sigma", "--n-range", "1:6", "--alpha", "1/2",
                     "--format", "csv", "--output", str(out)]) == EXIT_OK
        assert len(out.read_text().strip().splitlines()) == 7


class TestSimplexCommand:
    def test_json_diff_ratio_string(self, tmp_path):
        out = tmp_path / "simplex.json"
        assert main(["simplex", "--n", "2", "--L", "1",
                     "--output", str(out)]) == EXIT_OK
        doc = json.loads(out.read_text())
        assert doc["simplexReport"]["diffRatio"] == "6"
        assert doc["simplexReport"]["sumRatio"] == "4"

    def test_sweep_output(self, tmp_path):
        out = tmp_path / "sweep.json"
        assert main(["simplex", "--sweep", "12", "--output", str(out)]) == EXIT_OK
        doc = json.loads(out.read_text())
        assert len(doc["tightnessSweep"]["rows"]) == 12


class TestKoesterKatzCommand:
    def test_exhaustive_over_difference_set(self, workdir):
        tmp, write = workdir
        a = write("a.json", LatticeSet.from_points([(0,), (1,), (3,)]))
        b = write("b.json", LatticeSet.from_points([(0,), (1,)]))
        out = tmp / "kk.json"
        assert main(["kk", a, b, "--output", str(out)]) == EXIT_OK
        doc = json.loads(out.read_text())
        # |A - A| = 7 shift vectors for {0, 1, 3}
        assert doc["summary"]["total"] == 7

    def test_single_x(self, workdir):
        tmp, write = workdir
        a = write("a.json", LatticeSet.from_points([(0,), (1,), (3,)]))
        b = write("b.json", LatticeSet.from_points([(0,), (1,)]))
        out = tmp / "kk.json"
        assert main(["kk", a, b, "--x", "1", "--output", str(out)]) == EXIT_OK
        doc = json.loads(out.read_text())
        assert doc["summary"]["total"] == 1


class TestReportDocument:
    def test_embeds_config_and_hashes(self, workdir):
        tmp, write = workdir
        a = write("a.json", LatticeSet.from_points([(0,), (1,)]))
        out = tmp / "r.json"
        assert main(["ruzsa", a, a, a, "--seed", "7", "--output", str(out)]) == EXIT_OK
        doc = json.loads(out.read_text())
        assert doc["config"]["seed"] == 7
        assert doc["config"]["command"] == "ruzsa"
        assert set(doc["inputs"]) == {a}
        assert len(doc["inputs"][a]) == 64  # sha256 hex

    def test_stdout_when_no_output_path(self, workdir, capsys):
        tmp, write = workdir
        a = write("a.json", LatticeSet.from_points([(0,), (1,)]))
        assert main(["ruzsa", a, a, a]) == EXIT_OK
        doc = json.loads(capsys.readouterr().out)
        assert doc["summary"]["passed"] == 1

    def test_repeat_runs_byte_identical(self, tmp_path):
        out1 = tmp_path / "r.json"
        args = ["sigma", "--n-range", "1:4", "--alpha", "2"]
        assert main(args + ["--output", str(out1)]) == EXIT_OK
        first = out1.read_bytes()
        assert main(args + ["--output", str(out1)]) == EXIT_OK
        assert out1.read_bytes() == first
