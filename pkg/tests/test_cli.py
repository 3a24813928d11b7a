"""Command-line interface: verdicts, determinism, exit codes."""
import json

import numpy as np
import pytest

from freespec import cli, gallery, linalg, pencil
from freespec.errors import NumericalError
from conftest import wild_corank1_pair


def run(capsys, *argv):
    code = cli.main(list(argv))
    out = capsys.readouterr().out
    return code, out


def run_json(capsys, *argv):
    code, out = run(capsys, *argv)
    assert code == 0, out
    return json.loads(out)


@pytest.fixture()
def files(tmp_path):
    """Write the tuple/point JSON files the commands read."""
    def write(name, arr_or_entry):
        path = tmp_path / f"{name}.json"
        if isinstance(arr_or_entry, gallery.GalleryEntry):
            path.write_text(json.dumps(arr_or_entry.to_json()))
        else:
            pencil.write_tuple(path, np.asarray(arr_or_entry, dtype=complex))
        return str(path)
    return write


SZ = np.diag([1.0, -1.0]).astype(complex)
SX = np.array([[0.0, 1.0], [1.0, 0.0]], dtype=complex)


# ---------------------------------------------------------------------------
# verdicts
# ---------------------------------------------------------------------------

def test_member_interval(files, capsys):
    out = run_json(capsys, "member",
                   "--pencil", files("a", gallery.interval().pencil),
                   "--point", files("x", np.array([[[0.5]]])))
    assert out["status"] == "interior"
    assert abs(out["min_eig"] - 0.5) < 1e-12
    assert out["kernel_dim"] == 0


def test_classify_pauli_pair_on_cube(files, capsys):
    out = run_json(capsys, "classify",
                   "--pencil", files("a", gallery.cube(2).pencil),
                   "--point", files("x", np.stack([SZ, SX])))
    assert out["membership"]["status"] == "boundary"
    assert out["euclidean"]["extreme"] is True
    assert out["arveson"]["boundary"] is True
    assert out["irreducible"]["irreducible"] is True
    assert out["absolute"]["absolute"] is True
    assert out["matrix_extreme"]["status"] == "yes"


def test_classify_interval_midpoint(files, capsys):
    out = run_json(capsys, "classify",
                   "--pencil", files("a", gallery.interval().pencil),
                   "--point", files("x", np.array([[[0.0]]])))
    assert out["membership"]["status"] == "interior"
    assert out["euclidean"]["extreme"] is False
    assert "witness" in out["euclidean"]
    assert out["arveson"]["boundary"] is False
    assert out["absolute"]["absolute"] is False
    assert out["matrix_extreme"]["status"] == "no"


def test_classify_commuting_spin_pair(files, capsys):
    out = run_json(capsys, "classify",
                   "--pencil", files("a", gallery.spin_disk().pencil),
                   "--point", files("x", gallery.spin_boundary_point([0.0, np.pi / 2])))
    assert out["arveson"]["boundary"] is True
    assert out["irreducible"]["irreducible"] is False
    assert out["absolute"]["absolute"] is False


def test_classify_outside_point_skips_extremes(files, capsys):
    out = run_json(capsys, "classify",
                   "--pencil", files("a", gallery.interval().pencil),
                   "--point", files("x", np.array([[[3.0]]])))
    assert out["membership"]["status"] == "outside"
    assert out["euclidean"] is None and out["arveson"] is None


def test_hull_member_vertex_row(files, capsys):
    naimark = gallery.build("naimark").pencil
    out = run_json(capsys, "hull-member",
                   "--generator", files("om", naimark),
                   "--point", files("x", np.array([[[-1.0]], [[0.0]]])))
    assert out["status"] == "member"
    assert out["certificate"]["kraus_rank"] >= 1
    assert out["residual"] <= 1e-6


def test_include_witness(files, capsys):
    out = run_json(capsys, "include",
                   "--inner", files("c", gallery.cube(2).pencil),
                   "--outer", files("s", gallery.spin_disk().pencil),
                   "--samples", "20")
    assert out["status"] == "not_included"
    w = pencil.tuple_from_json(out["witness"])
    assert pencil.membership(gallery.cube(2).pencil, w).is_member


def test_drop_member_tv_exceptional(files, capsys):
    entry = gallery.tv_lift(1.0)
    ex = gallery.tv_exceptional_point()
    out = run_json(capsys, "drop-member",
                   "--pencil", files("tv", entry),
                   "--point", files("x", np.stack([ex["x"], ex["y"]])))
    assert out["status"] == "member"
    assert out["residual"] <= 1e-6
    hidden = pencil.tuple_from_json(out["hidden"])
    w_hat = (hidden[0] + entry.aux["hidden_shift"] * np.eye(2)) / entry.aux["hidden_scale"]
    assert np.abs(w_hat - ex["w"]).max() < 1e-6


def test_drop_member_requires_visible(files, capsys):
    entry = gallery.tv_lift(1.0)
    code, _ = run(capsys, "drop-member",
                  "--pencil", files("bare", entry.pencil),
                  "--point", files("x", np.zeros((2, 1, 1))))
    assert code == 2  # bare tuple file carries no visible_vars


def test_decompose_doubled_pauli(files, capsys):
    doubled = pencil.direct_sum([np.stack([SZ, SX])] * 2)
    out = run_json(capsys, "decompose", "--point", files("x", doubled))
    assert len(out["classes"]) == 1
    assert out["classes"][0]["size"] == 2
    assert out["classes"][0]["multiplicity"] == 2


def test_dual_check_naimark(files, capsys):
    out = run_json(capsys, "dual-check",
                   "--generator", files("om", gallery.build("naimark").pencil),
                   "--level", "1", "--samples", "20")
    assert out["counterexamples"] == 0
    assert out["samples"] == 20


def test_simplex_check_verdicts(files, capsys):
    yes = run_json(capsys, "simplex-check",
                   "--pencil", files("n", gallery.build("naimark").pencil))
    assert yes["simplex"]["is_simplex"] is True
    assert yes["normal_form"]["mismatches"] == 0
    no = run_json(capsys, "simplex-check",
                  "--pencil", files("c", gallery.cube(2).pencil))
    assert no["simplex"]["is_simplex"] is False
    assert no["normal_form"] is None


def test_gallery_naimark(capsys):
    out = run_json(capsys, "gallery", "naimark")
    a = pencil.tuple_from_json(out)
    assert a.shape == (2, 3, 3)
    assert np.abs(a - gallery.build("naimark").pencil).max() < 1e-15


def test_gallery_writes_file(tmp_path, capsys):
    path = tmp_path / "spin.json"
    code, out = run(capsys, "gallery", "spin-disk", "--out", str(path))
    assert code == 0 and out == ""
    a = pencil.tuple_from_json(json.loads(path.read_text()))
    assert np.abs(a - gallery.spin_disk().pencil).max() < 1e-15


def test_lift_one_command(files, capsys):
    x, y = wild_corank1_pair(linalg.default_rng(13), n=2)
    out = run_json(capsys, "lift-one", "--point", files("p", np.stack([x, y])))
    assert out["residual"] <= 1e-8
    lifted = pencil.tuple_from_json(out["pair"])
    assert lifted.shape == (2, 3, 3)
    assert np.abs(lifted[0][:2, :2] - x).max() < 1e-12


# ---------------------------------------------------------------------------
# determinism and round trips
# ---------------------------------------------------------------------------

def test_output_is_deterministic(files, capsys):
    argv = ["classify",
            "--pencil", files("a", gallery.spin_disk().pencil),
            "--point", files("x", gallery.spin_boundary_point([0.7, 2.1]))]
    _, first = run(capsys, *argv)
    _, second = run(capsys, *argv)
    assert first == second


def test_gallery_roundtrip_is_lossless(tmp_path, capsys):
    # full-precision floats survive stdout -> file -> parse
    out = run_json(capsys, "gallery", "tv-screen", "--a", "0.7")
    a = pencil.tuple_from_json(out)
    assert np.abs(a - gallery.tv_lift(0.7).pencil).max() < 1e-15


# ---------------------------------------------------------------------------
# exit codes
# ---------------------------------------------------------------------------

def test_missing_file_exits_2(capsys):
    code = cli.main(["member", "--pencil", "/no/such/file.json",
                     "--point", "/also/missing.json"])
    assert code == 2
    assert "error" in capsys.readouterr().err


def test_malformed_json_exits_2(tmp_path, capsys):
    bad = tmp_path / "bad.json"
    bad.write_text('{"g": 1, "n": 1}')
    good = tmp_path / "x.json"
    pencil.write_tuple(good, np.array([[[0.0]]]))
    code = cli.main(["member", "--pencil", str(bad), "--point", str(good)])
    assert code == 2


def test_numerical_failure_exits_3(monkeypatch, capsys):
    def boom(args):
        raise NumericalError("forced failure")
    monkeypatch.setitem(cli._COMMANDS, "member", boom)
    code = cli.main(["member", "--pencil", "x", "--point", "y"])
    assert code == 3
    assert "numerical failure" in capsys.readouterr().err
