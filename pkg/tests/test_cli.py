"""Command-line behavior: exit codes, file round trips, provenance."""

import json

import numpy as np
import pytest

import framelab.cli as cli
from framelab.cli import dispatch
from framelab.frames import frame_from_json
from framelab.numeric import matrix_from_json
from framelab.theorems import VerificationReport


def write_json(path, obj):
    path.write_text(json.dumps(obj))


def read_json(path):
    return json.loads(path.read_text())


@pytest.fixture
def onb4(tmp_path):
    path = tmp_path / "f.json"
    assert dispatch(["gen", "onb", "--dim", "4", "-o", str(path)]) == 0
    return path


@pytest.fixture
def op44(tmp_path):
    path = tmp_path / "O.json"
    assert (
        dispatch(
            ["gen", "operator", "--rows", "4", "--cols", "4", "--seed", "3", "-o", str(path)]
        )
        == 0
    )
    return path


class TestGen:
    def test_onb_file(self, onb4):
        frame = frame_from_json(read_json(onb4))
        assert frame.cardinality == 4
        np.testing.assert_array_equal(frame.vectors, np.eye(4))

    def test_spec_file_input(self, tmp_path):
        spec = tmp_path / "spec.json"
        out = tmp_path / "g.json"
        write_json(
            spec,
            {
                "kind": "gabor",
                "parameters": {"length": 8, "time_step": 2, "freq_step": 2},
                "seed": 0,
            },
        )
        assert dispatch(["gen", str(spec), "-o", str(out)]) == 0
        assert frame_from_json(read_json(out)).cardinality == 16

    def test_missing_parameters(self, tmp_path):
        assert dispatch(["gen", "onb", "-o", str(tmp_path / "x.json")]) == 3

    def test_unknown_kind(self, tmp_path):
        assert dispatch(["gen", "wavelet", "-o", str(tmp_path / "x.json")]) == 3


class TestSimpleVerbs:
    def test_bounds(self, onb4, capsys):
        assert dispatch(["bounds", str(onb4)]) == 0
        data = json.loads(capsys.readouterr().out)
        assert data["A"] == data["B"] == 1.0
        assert data["cardinality"] == 4

    def test_dual(self, onb4, tmp_path):
        out = tmp_path / "dual.json"
        assert dispatch(["dual", str(onb4), "-o", str(out)]) == 0
        np.testing.assert_array_equal(
            frame_from_json(read_json(out)).vectors, np.eye(4)
        )

    def test_localize(self, onb4, capsys):
        assert dispatch(["localize", str(onb4), "--s", "2"]) == 0
        data = json.loads(capsys.readouterr().out)
        assert data["verdict"] is True
        assert data["jaffard_gram"] == 1.0
        assert data["version"]

    def test_coorbit_norm(self, onb4, tmp_path, capsys):
        vec = tmp_path / "v.json"
        write_json(vec, [[1.0, 0.0], [1.0, 0.0], [0.0, 0.0], [0.0, 0.0]])
        weight = tmp_path / "w.json"
        write_json(weight, [1.0, 2.0, 1.0, 1.0])
        assert (
            dispatch(
                ["coorbit-norm", str(onb4), str(vec), "--p", "1", "--weight", str(weight)]
            )
            == 0
        )
        assert json.loads(capsys.readouterr().out)["norm"] == pytest.approx(3.0)

    def test_missing_file(self, tmp_path):
        assert dispatch(["bounds", str(tmp_path / "nope.json")]) == 3

    def test_invalid_frame(self, tmp_path):
        bad = tmp_path / "bad.json"
        write_json(
            bad,
            {
                "space_dim": 2,
                "index_set": {"kind": "linear", "size": 2},
                "vectors": [[[1.0, 0.0], [0.0, 0.0]], [[1.0, 0.0], [0.0, 0.0]]],
            },
        )
        assert dispatch(["bounds", str(bad)]) == 3


class TestKernelVerbs:
    def test_galerkin_synth_round_trip(self, onb4, op44, tmp_path):
        k = tmp_path / "k.json"
        back = tmp_path / "back.json"
        assert dispatch(["galerkin", str(op44), str(onb4), str(onb4), "-o", str(k)]) == 0
        assert (
            dispatch(["kernel-synth", str(k), str(onb4), str(onb4), "-o", str(back)])
            == 0
        )
        O = matrix_from_json(read_json(op44))
        O2 = matrix_from_json(read_json(back))
        assert np.linalg.norm(O - O2) <= 1e-9 * np.linalg.norm(O)

    def test_kernel_synth_validates_shape(self, onb4, tmp_path):
        k = tmp_path / "k.json"
        write_json(
            k,
            {
                "I": {"kind": "linear", "size": 2},
                "J": {"kind": "linear", "size": 2},
                "entries": [[1.0, 0.0]] * 4,
            },
        )
        assert dispatch(["kernel-synth", str(k), str(onb4), str(onb4)]) == 3


class TestVerify:
    def test_outer_report(self, onb4, op44, capsys):
        code = dispatch(
            [
                "verify", "outer",
                "--frame1", str(onb4),
                "--frame2", str(onb4),
                "--op", str(op44),
                "--seed", "1",
            ]
        )
        assert code == 0
        report = json.loads(capsys.readouterr().out)
        assert "ratio" in report and report["pass"] is True
        assert report["config"]["seed"] == 1
        assert report["version"]

    def test_all_verbs_run(self, onb4, op44, tmp_path, capsys):
        base = [
            "--frame1", str(onb4),
            "--frame2", str(onb4),
            "--op", str(op44),
        ]
        assert dispatch(["verify", "inner"] + base) == 0
        assert dispatch(["verify", "projective"] + base) == 0
        assert dispatch(["verify", "schur", "--p", "2", "--variant", "ii"] + base) == 0
        assert dispatch(["verify", "schatten", "--p", "1.5"] + base) == 0
        assert (
            dispatch(
                ["verify", "independence", "--frame1b", str(onb4), "--frame2b", str(onb4)]
                + base
            )
            == 0
        )
        capsys.readouterr()

    def test_csv_format(self, onb4, op44, capsys):
        code = dispatch(
            [
                "verify", "outer",
                "--frame1", str(onb4),
                "--frame2", str(onb4),
                "--op", str(op44),
                "--format", "csv",
            ]
        )
        assert code == 0
        out = capsys.readouterr().out
        assert out.startswith("name,lhs,rhs,ratio,budget,pass,seed")

    def test_failed_verification_exits_one(self, onb4, op44, monkeypatch):
        failing = VerificationReport(
            name="outer", lhs=1.0, rhs=2.0, ratio=0.5,
            constant_budget=1.0, passed=False,
        )
        monkeypatch.setattr(cli, "verify_outer", lambda *a, **kw: failing)
        code = dispatch(
            [
                "verify", "outer",
                "--frame1", str(onb4),
                "--frame2", str(onb4),
                "--op", str(op44),
                "-o", "/dev/null",
            ]
        )
        assert code == 1

    def test_independence_needs_second_family(self, onb4, op44):
        assert (
            dispatch(
                [
                    "verify", "independence",
                    "--frame1", str(onb4),
                    "--frame2", str(onb4),
                    "--op", str(op44),
                ]
            )
            == 3
        )


class TestCompress:
    def test_single_tau(self, onb4, op44, capsys):
        assert (
            dispatch(
                ["compress", str(op44), str(onb4), str(onb4), "--tau", "0.5"]
            )
            == 0
        )
        data = json.loads(capsys.readouterr().out)
        assert data["total"] == 16
        assert "coefficients" in data

    def test_sweep_csv(self, onb4, op44, capsys):
        assert (
            dispatch(
                [
                    "compress", str(op44), str(onb4), str(onb4),
                    "--tau", "0.0,0.5,1.0", "--format", "csv",
                ]
            )
            == 0
        )
        lines = capsys.readouterr().out.strip().splitlines()
        assert lines[0] == "threshold,kept,total,sparsity,error_surrogate"
        assert len(lines) == 4
        kept = [int(line.split(",")[1]) for line in lines[1:]]
        assert kept[0] >= kept[1] >= kept[2]


class TestUsageErrors:
    def test_unknown_verb(self, capsys):
        assert dispatch(["frobnicate"]) == 2
        assert "usage" in capsys.readouterr().err

    def test_no_args(self, capsys):
        assert dispatch([]) == 2
        capsys.readouterr()

    def test_unknown_suite_name(self, capsys):
        assert dispatch(["suite", "medium"]) == 2
        capsys.readouterr()


class TestSuiteVerb:
    def test_fast_suite(self, tmp_path):
        out = tmp_path / "suite.json"
        assert dispatch(["suite", "fast", "--seed", "0", "-o", str(out)]) == 0
        data = read_json(out)
        assert data["pass"] is True
        assert len(data["checks"]) >= 12

    def test_seed_env_override(self, tmp_path, monkeypatch, capsys):
        monkeypatch.setenv("FRAMELAB_SEED", "7")
        assert dispatch(["suite", "fast"]) == 0
        data = json.loads(capsys.readouterr().out)
        assert data["seed"] == 7
