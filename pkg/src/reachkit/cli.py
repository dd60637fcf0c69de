"""``reachkit`` command line: generate clouds, estimate reach, run experiments and checks.

Exit codes: 0 success, 1 verification failures, 2 bad usage or input,
3 estimation impossible (no finite pair ratio).
"""

import argparse
import io
import json
import math
import sys
from pathlib import Path

import numpy as np

from reachkit import experiments
from reachkit.errors import AllPairsDegenerate, ReachkitError
from reachkit.manifolds import ReachBounds, reach_description, spec_from_dict, spec_from_json
from reachkit.reach import TangentCloud, estimate_reach, farthest_point_sampling, loss
from reachkit.tangents import PcaConfig, estimate_all_tangents

CLOUD_FORMAT = "reachkit-cloud/1"
EXIT_OK, EXIT_FAILED, EXIT_INPUT, EXIT_DEGENERATE = 0, 1, 2, 3


class InputError(ReachkitError):
    pass


# --- cloud files -------------------------------------------------------------


def format_cloud(points, frames=None, spec=None):
    """CSV text with ``# key: value`` header lines and 17-significant-digit values."""
    P = np.asarray(points, dtype=float)
    n, D = P.shape
    d = 0 if frames is None else frames.shape[1]
    out = io.StringIO()
    out.write(f"# format: {CLOUD_FORMAT}\n# D: {D}\n# d: {d}\n# frames: {int(frames is not None)}\n")
    if spec is not None:
        out.write(f"# spec: {json.dumps(spec.to_dict(), sort_keys=True)}\n")
    rows = P if frames is None else np.hstack([P, np.asarray(frames).reshape(n, -1)])
    for row in rows:
        out.write(",".join(f"{v:.17g}" for v in row))
        out.write("\n")
    return out.getvalue()


def parse_cloud(text):
    """Inverse of :func:`format_cloud`; returns ``(points, frames or None, d, spec or None)``."""
    header, rows = {}, []
    for lineno, line in enumerate(text.splitlines(), 1):
        line = line.strip()
        if not line:
            continue
        if line.startswith("#"):
            key, sep, value = line[1:].partition(":")
            if sep:
                header[key.strip()] = value.strip()
            continue
        try:
            rows.append([float(v) for v in line.split(",")])
        except ValueError:
            raise InputError(f"line {lineno}: not a comma-separated list of numbers") from None
    if header.get("format") != CLOUD_FORMAT:
        raise InputError(f"expected '# format: {CLOUD_FORMAT}' header")
    try:
        D, d, has_frames = int(header["D"]), int(header["d"]), header["frames"] == "1"
    except (KeyError, ValueError):
        raise InputError("header needs integer D, d and a frames flag") from None
    width = D * (1 + d * has_frames)
    if not rows:
        raise InputError("cloud file has no points")
    if any(len(r) != width for r in rows):
        raise InputError(f"every row must have {width} values")
    data = np.array(rows)
    if not np.all(np.isfinite(data)):
        raise InputError("cloud file has non-finite values")
    frames = data[:, D:].reshape(-1, d, D) if has_frames else None
    spec = spec_from_json(header["spec"]) if "spec" in header else None
    return data[:, :D], frames, (d or None), spec


def _read_text(path):
    try:
        return Path(path).read_text()
    except OSError as exc:
        raise InputError(f"cannot read {path}: {exc.strerror}") from None


def _emit(obj, as_json, stream=None):
    stream = stream or sys.stdout
    if as_json:
        stream.write(json.dumps(obj, sort_keys=True) + "\n")
    else:
        for key, value in obj.items():
            stream.write(f"{key}: {value}\n")


# --- commands ------------------------------------------------------------------


def cmd_generate(args):
    try:
        spec = spec_from_dict(json.loads(args.spec))
    except json.JSONDecodeError as exc:
        raise InputError(f"spec is not valid JSON: {exc}") from None
    cloud = spec.sample(args.n, args.seed, with_frames=args.frames)
    text = format_cloud(cloud.points, cloud.frames, spec)
    if args.out:
        Path(args.out).write_text(text)
    else:
        sys.stdout.write(text)
    sys.stderr.write(json.dumps(reach_description(spec), sort_keys=True) + "\n")
    return EXIT_OK


def _load_frames_file(path, n, D):
    rows = [line for line in _read_text(path).splitlines() if line.strip() and not line.startswith("#")]
    try:
        data = np.array([[float(v) for v in line.split(",")] for line in rows])
    except ValueError:
        raise InputError(f"{path}: frames must be comma-separated numbers") from None
    if data.ndim != 2 or data.shape[0] != n or data.shape[1] % D:
        raise InputError(f"{path}: expected {n} rows of d*{D} values")
    return data.reshape(n, -1, D)


def cmd_estimate(args):
    points, frames, d, spec = parse_cloud(_read_text(args.input))
    if args.tangents == "exact":
        if frames is None:
            raise InputError("--tangents exact needs frames in the cloud file")
    elif args.tangents == "file":
        if not args.frames_file:
            raise InputError("--tangents file needs --frames-file")
        frames = _load_frames_file(args.frames_file, points.shape[0], points.shape[1])
    else:
        dim = args.dim or d or (spec.d if spec is not None else None)
        if dim is None:
            raise InputError("--tangents pca needs the intrinsic dimension (--dim)")
        frames = estimate_all_tangents(points, PcaConfig(dim, args.pca_k))
    cloud = TangentCloud(points, frames)
    if args.sparsify is not None:
        cloud = cloud.subset(farthest_point_sampling(cloud.points, args.sparsify))
    report = estimate_reach(cloud).to_dict()
    report["n_after_sparsify"] = cloud.n
    if spec is not None:
        tau = spec.true_reach()
        ref = tau.upper if isinstance(tau, ReachBounds) else tau
        report["loss"] = loss(ref, report["tau_hat"], args.p)
        report["loss_reference"] = "upper_bound" if isinstance(tau, ReachBounds) else "true_reach"
    _emit(report, args.json)
    return EXIT_OK


def cmd_experiment(args):
    try:
        config = experiments.ExperimentConfig.from_dict(json.loads(_read_text(args.config)))
    except json.JSONDecodeError as exc:
        raise InputError(f"config is not valid JSON: {exc}") from None
    result = experiments.run_experiment(config)
    out = Path(args.out)
    out.mkdir(parents=True, exist_ok=True)
    (out / "result.json").write_text(result.to_json() + "\n")
    (out / "result.csv").write_text(result.to_csv())
    fit = result.rate_fit
    summary = {
        "rate_fit": None if fit is None else fit.to_dict(),
        "exact_model": result.exact_model,
        "mean_loss": {str(s["n"]): s["mean"] for s in result.summary()},
    }
    _emit(summary, args.json)
    return EXIT_OK


def cmd_verify(args):
    report = experiments.run_suite(args.suite, args.seed)
    text = json.dumps(report, sort_keys=True, indent=None if args.out else 2)
    if args.out:
        Path(args.out).write_text(text + "\n")
    else:
        sys.stdout.write(text + "\n")
    sys.stderr.write(
        f"{args.suite}: {report['n_checks'] - report['n_failed']}/{report['n_checks']} checks passed\n"
    )
    return EXIT_OK if report["passed"] else EXIT_FAILED


# --- parser --------------------------------------------------------------------


def _positive_float(text):
    value = float(text)
    if not (value > 0 and math.isfinite(value)):
        raise argparse.ArgumentTypeError(f"expected a positive number, got {text}")
    return value


def _seed(text):
    value = int(text)
    if not 0 <= value < 2**64:
        raise argparse.ArgumentTypeError("seed must be a 64-bit unsigned integer")
    return value


def build_parser():
    parser = argparse.ArgumentParser(prog="reachkit", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    gen = sub.add_parser("generate", help="sample a cloud from a model")
    gen.add_argument("--spec", required=True, help='model JSON, e.g. \'{"variant": "circle", "R": 1}\'')
    gen.add_argument("--n", type=int, required=True)
    gen.add_argument("--seed", type=_seed, default=0)
    gen.add_argument("--frames", action="store_true", help="store exact tangent frames")
    gen.add_argument("--out", help="output path (default: stdout)")
    gen.set_defaults(func=cmd_generate)

    est = sub.add_parser("estimate", help="estimate the reach of a cloud file")
    est.add_argument("--in", dest="input", required=True)
    est.add_argument("--tangents", choices=("exact", "file", "pca"), default="exact")
    est.add_argument("--frames-file", help="frames for --tangents file: n rows of d*D values")
    est.add_argument("--dim", type=int, help="intrinsic dimension for --tangents pca")
    est.add_argument("--pca-k", type=int, help="neighbourhood size for --tangents pca")
    est.add_argument("--sparsify", type=_positive_float, help="farthest-point radius")
    est.add_argument("--p", type=float, default=1.0, help="loss exponent")
    est.add_argument("--json", action="store_true")
    est.set_defaults(func=cmd_estimate)

    exp = sub.add_parser("experiment", help="run a Monte-Carlo convergence experiment")
    exp.add_argument("--config", required=True)
    exp.add_argument("--out", required=True, help="directory for result.json and result.csv")
    exp.add_argument("--json", action="store_true")
    exp.set_defaults(func=cmd_experiment)

    ver = sub.add_parser("verify", help="run inequality and geometry checks")
    ver.add_argument("--suite", choices=experiments.SUITES, default="all")
    ver.add_argument("--seed", type=_seed, default=0)
    ver.add_argument("--out", help="write the JSON report here instead of stdout")
    ver.set_defaults(func=cmd_verify)
    return parser


def main(argv=None):
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except AllPairsDegenerate as exc:
        sys.stderr.write(f"reachkit: {exc}\n")
        return EXIT_DEGENERATE
    except (ReachkitError, ValueError, OSError) as exc:
        sys.stderr.write(f"reachkit: {exc}\n")
        return EXIT_INPUT


if __name__ == "__main__":
    sys.exit(main())
