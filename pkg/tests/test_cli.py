import json
import subprocess
import sys

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st
from hypothesis.extra.numpy import arrays

from reachkit.cli import InputError, format_cloud, main, parse_cloud
from reachkit.manifolds import Circle, Torus

CIRCLE = '{"variant": "circle", "R": 1.0}'


def run(argv, capsys):
    code = main(argv)
    out, err = capsys.readouterr()
    return code, out, err


@settings(max_examples=60, deadline=None)
@given(arrays(float, st.tuples(st.integers(1, 20), st.integers(1, 4)),
              elements=st.floats(allow_nan=False, allow_infinity=False)))
def test_cloud_text_round_trip_is_exact(P):
    points, frames, _, spec = parse_cloud(format_cloud(P))
    assert frames is None and spec is None
    assert np.array_equal(points, P)
    assert np.array_equal(np.signbit(points), np.signbit(P))


def test_cloud_round_trip_with_frames_and_spec():
    spec = Torus(2.0, 0.5)
    c = spec.sample(50, 1)
    points, frames, d, back = parse_cloud(format_cloud(c.points, c.frames, spec))
    assert np.array_equal(points, c.points) and np.array_equal(frames, c.frames)
    assert d == 2 and back == spec


@pytest.mark.parametrize(
    "text",
    ["", "1,2\n", "# format: reachkit-cloud/1\n# D: 2\n# d: 0\n# frames: 0\n1,2,3\n",
     "# format: reachkit-cloud/1\n# D: 2\n# d: 0\n# frames: 0\n1,x\n",
     "# format: reachkit-cloud/1\n# D: 2\n# d: 0\n# frames: 0\n1,nan\n"],
)
def test_malformed_cloud_text(text):
    with pytest.raises(InputError):
        parse_cloud(text)


def test_generate_is_byte_identical_for_a_seed(tmp_path, capsys):
    a, b = tmp_path / "a.csv", tmp_path / "b.csv"
    for path in (a, b):
        code, _, err = run(["generate", "--spec", CIRCLE, "--n", "50", "--seed", "4", "--frames", "--out", str(path)], capsys)
        assert code == 0
    assert a.read_bytes() == b.read_bytes()
    assert json.loads(err)["true_reach"] == 1.0


def test_generate_then_estimate_sphere(tmp_path, capsys):
    path = tmp_path / "s.csv"
    spec = '{"variant": "sphere", "d": 2, "D": 3, "R": 2.0}'
    run(["generate", "--spec", spec, "--n", "100", "--seed", "0", "--frames", "--out", str(path)], capsys)
    code, out, _ = run(["estimate", "--in", str(path), "--json"], capsys)
    report = json.loads(out)
    assert code == 0
    assert report["tau_hat"] == pytest.approx(2.0, rel=1e-9)
    assert report["n_after_sparsify"] == 100
    assert set(report) >= {"tau_hat", "argmin_pair", "pairs_evaluated", "pairs_pruned", "skipped_degenerate"}


def test_estimate_unit_circle_from_handwritten_file(tmp_path, capsys):
    t = np.linspace(0, 2 * np.pi, 12, endpoint=False)
    P = np.c_[np.cos(t), np.sin(t)]
    F = np.c_[-np.sin(t), np.cos(t)][:, None, :]
    path = tmp_path / "c.csv"
    path.write_text(format_cloud(P, F))
    code, out, _ = run(["estimate", "--in", str(path), "--json"], capsys)
    assert code == 0 and json.loads(out)["tau_hat"] == pytest.approx(1.0, rel=1e-14)


def test_estimate_exit_codes(tmp_path, capsys):
    bare = tmp_path / "bare.csv"
    bare.write_text(format_cloud(Circle().sample(30, 0).points))
    assert run(["estimate", "--in", str(bare), "--tangents", "exact"], capsys)[0] == 2
    framed = tmp_path / "framed.csv"
    c = Circle().sample(30, 0)
    framed.write_text(format_cloud(c.points, c.frames))
    assert run(["estimate", "--in", str(framed), "--sparsify", "10"], capsys)[0] == 3
    assert run(["estimate", "--in", str(tmp_path / "missing.csv")], capsys)[0] == 2
    assert run(["generate", "--spec", "{bad", "--n", "3"], capsys)[0] == 2
    assert run(["generate", "--spec", '{"variant": "torus", "R": 1, "r": 2}', "--n", "3"], capsys)[0] == 2


def test_estimate_with_pca_and_frames_file(tmp_path, capsys):
    c = Torus(2.0, 0.5).sample(800, 2)
    cloud = tmp_path / "t.csv"
    cloud.write_text(format_cloud(c.points, spec=Torus(2.0, 0.5)))
    code, out, _ = run(["estimate", "--in", str(cloud), "--tangents", "pca", "--sparsify", "0.4", "--json"], capsys)
    report = json.loads(out)
    assert code == 0 and report["n_after_sparsify"] < 800 and "loss" in report

    frames = tmp_path / "f.csv"
    frames.write_text("\n".join(",".join(f"{v:.17g}" for v in row) for row in c.frames.reshape(800, -1)))
    code, out, _ = run(["estimate", "--in", str(cloud), "--tangents", "file", "--frames-file", str(frames), "--json"], capsys)
    assert code == 0 and json.loads(out)["tau_hat"] >= 0.5 * (1 - 1e-9)
    assert run(["estimate", "--in", str(cloud), "--tangents", "file"], capsys)[0] == 2


def test_experiment_command(tmp_path, capsys):
    cfg = {
        "format": "reachkit/1",
        "spec": {"variant": "ellipse", "a": 2.0, "b": 1.0},
        "n_grid": [64, 128, 256],
        "trials": 2,
        "seed": 3,
        "tangent_mode": {"kind": "exact"},
        "p": 1.0,
    }
    path = tmp_path / "cfg.json"
    path.write_text(json.dumps(cfg))
    code, out, _ = run(["experiment", "--config", str(path), "--out", str(tmp_path / "res"), "--json"], capsys)
    assert code == 0
    assert json.loads(out)["rate_fit"]["slope"] < 0
    assert (tmp_path / "res" / "result.csv").read_text().startswith("n,trial,tau_hat,loss\n")
    assert json.loads((tmp_path / "res" / "result.json").read_text())["format"] == "reachkit/1"
    path.write_text("{")
    assert run(["experiment", "--config", str(path), "--out", str(tmp_path / "res")], capsys)[0] == 2


def test_verify_command(capsys):
    code, out, err = run(["verify", "--suite", "bounds"], capsys)
    report = json.loads(out)
    assert code == 0 and report["passed"] and report["suite"] == "bounds"
    with pytest.raises(SystemExit) as exc:
        main(["verify", "--suite", "nope"])
    assert exc.value.code == 2


def test_module_entry_point():
    proc = subprocess.run([sys.executable, "-m", "reachkit", "verify", "--suite", "geometry"],
                          capture_output=True, text=True, timeout=300)
    assert proc.returncode == 0
    assert json.loads(proc.stdout)["passed"]
