"""Command-line front end: compress, decompress, eval, synth, gradcheck.

Exit codes: 0 success, 1 usage error, 2 format or data error, 3 numerical
failure. ``--report kv`` prints one ``key=value`` pair per line.
"""
import argparse
import logging
import math
import os
import sys
import tempfile
import time
from pathlib import Path

import numpy as np

from .codec import (compression_ratio, decode, encode, read_volume,
                    reconstruct, write_volume)
from .errors import EmgCodecError
from .fit import FitConfig, fit_image, init_params, window_objective, with_overrides
from .losses import pixel_loss_and_grad
from .synth import SceneSpec, add_exposure_noise, generate_scene

log = logging.getLogger("emgcodec")

EXIT_OK = 0
EXIT_USAGE = 1
EXIT_DATA = 2
EXIT_NUMERICAL = 3

GRADCHECK_TOL = 1e-4


class UsageError(Exception):
    pass


class NumericalError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


def _emit(report, fmt, out=None):
    out = out or sys.stdout
    for key, value in report.items():
        if isinstance(value, float):
            value = repr(value)
        sep = "=" if fmt == "kv" else ": "
        print(f"{key}{sep}{value}", file=out)


def _atomic_write(path, data):
    """Write ``data`` to ``path`` via a temporary file in the same directory."""
    path = Path(path)
    fd, tmp = tempfile.mkstemp(dir=path.parent or ".", prefix=f".{path.name}.")
    try:
        with os.fdopen(fd, "wb") as fh:
            fh.write(data)
        os.replace(tmp, path)
    except BaseException:
        os.unlink(tmp)
        raise


def _read(path):
    try:
        return Path(path).read_bytes()
    except OSError as exc:
        raise EmgCodecError(f"cannot read {path}: {exc.strerror or exc}") from exc


def _workers(args):
    env = os.environ.get("EMGC_THREADS")
    if env:
        try:
            n = int(env)
        except ValueError:
            raise UsageError(f"EMGC_THREADS must be an integer, got {env!r}") from None
    else:
        n = args.workers
    if n < 1:
        raise UsageError("worker count must be >= 1")
    return n


def _config(args):
    try:
        return with_overrides(FitConfig(), K=args.k, N=args.window, scheduler=args.scheduler,
                              loss_kind=args.loss, learning_rate=args.lr,
                              max_epochs=args.epochs, seed=args.seed,
                              convergence_rel_tol=args.tol, patience=args.patience,
                              restarts=args.restarts)
    except ValueError as exc:
        raise UsageError(str(exc)) from exc


def cmd_compress(args):
    cfg = _config(args)
    workers = _workers(args)
    volume = read_volume(_read(args.input))
    start = time.perf_counter()
    image = fit_image(volume.data, cfg, workers=workers)
    blob = encode(image)
    recon = reconstruct(decode(blob))
    l_i = float(pixel_loss_and_grad(volume.data, recon.data)[0].sum())
    wall_ms = (time.perf_counter() - start) * 1e3
    if not math.isfinite(l_i):
        raise NumericalError("non-finite reconstruction loss")
    _atomic_write(args.output, blob)
    unconverged = int((~image.converged & ~image.degenerate).sum())
    if unconverged:
        log.warning("%d pixels did not converge", unconverged)
    converged = 100.0 * float(np.mean(image.converged))
    _emit({"l_i": l_i, "ratio": compression_ratio(volume.shape[2], cfg.K),
           "converged_pct": converged, "wall_ms": wall_ms}, args.report)
    return EXIT_OK


def cmd_decompress(args):
    image = decode(_read(args.input))
    _atomic_write(args.output, write_volume(reconstruct(image)))
    return EXIT_OK


def cmd_eval(args):
    a = read_volume(_read(args.a))
    b = read_volume(_read(args.b))
    if a.shape != b.shape:
        raise EmgCodecError(f"shape mismatch {a.shape} vs {b.shape}")
    per_pixel = pixel_loss_and_grad(a.data, b.data)[0]
    diff = a.data.astype(np.float64) - b.data.astype(np.float64)
    _emit({"l_i": float(per_pixel.sum()),
           "pixel_min": float(per_pixel.min()),
           "pixel_median": float(np.median(per_pixel)),
           "pixel_max": float(per_pixel.max()),
           "mse": float(np.mean(diff * diff))}, args.report)
    return EXIT_OK


def cmd_synth(args):
    try:
        spec = SceneSpec(W=args.width, H=args.height, T=args.frames, K_true=args.k_true,
                         spatial_smoothness=args.smoothness, seed=args.seed)
    except ValueError as exc:
        raise UsageError(str(exc)) from exc
    if args.noise_divisor is not None and not args.noise_divisor >= 1:
        raise UsageError("--noise-divisor must be >= 1")
    scene = generate_scene(spec)
    volume = scene.volume
    if args.noise_divisor is not None:
        rng = np.random.default_rng([args.seed, 11])
        volume = add_exposure_noise(volume, args.noise_divisor, rng, spec.intensity_scale)
    truth_path = args.truth or str(Path(args.output).with_suffix(".truth.emgc"))
    _atomic_write(args.output, write_volume(volume))
    _atomic_write(truth_path, encode(scene.truth))
    _emit({"volume": args.output, "truth": truth_path}, args.report)
    return EXIT_OK


def gradcheck(seed, count, step=1e-6):
    """Max relative error of the window objective gradient over random instances.

    Each instance is a 3x3x16 window with ``K=2`` mixtures per pixel, a
    random reference and random raw parameters; the analytic gradient is
    compared with central differences in every raw coordinate. The error
    of an instance is ``max|analytic - numeric| / max|numeric|``.
    """
    rng = np.random.default_rng([seed, 5])
    K, n, B = 2, 3, 16
    worst = 0.0
    for _ in range(count):
        cfg = FitConfig(K=K, N=n, loss_kind=str(rng.choice(["kld", "mse"])),
                        normalize_pmf=bool(rng.integers(2)))
        ref = rng.uniform(0.01, 1.0, (n, n, B))
        active = np.ones((n, n), dtype=bool)
        x = np.stack([init_params(cfg, rng) for _ in range(n * n)]).reshape(1, -1)
        x[0, 0::4] += rng.normal(0.0, 0.5, n * n * K)
        objective = window_objective(ref, active, K, cfg)
        _, grad = objective(x)
        numeric = np.empty(x.shape[1])
        for c in range(x.shape[1]):
            xp = x.copy()
            xm = x.copy()
            xp[0, c] += step
            xm[0, c] -= step
            numeric[c] = (objective(xp)[0][0] - objective(xm)[0][0]) / (2 * step)
        scale = np.max(np.abs(numeric))
        err = np.max(np.abs(grad[0] - numeric)) / scale if scale > 0 else 0.0
        worst = max(worst, float(err))
    return worst


def cmd_gradcheck(args):
    if args.count < 0:
        raise UsageError("--count must be >= 0")
    if args.count == 0:
        log.warning("gradcheck with count=0 checks nothing")
    start = time.perf_counter()
    worst = gradcheck(args.seed, args.count)
    _emit({"max_rel_err": worst, "count": args.count,
           "wall_ms": (time.perf_counter() - start) * 1e3}, args.report)
    if not worst <= GRADCHECK_TOL:
        raise NumericalError(f"max relative error {worst:.3e} exceeds {GRADCHECK_TOL:g}")
    return EXIT_OK


def build_parser():
    parser = _Parser(prog="emgcodec", description="EMG-mixture transient image codec.")
    parser.add_argument("-v", "--verbose", action="store_true")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    def report_flag(p):
        p.add_argument("--report", choices=("text", "kv"), default="text")

    p = sub.add_parser("compress", help="fit a TRIV volume and write EMGC")
    p.add_argument("input")
    p.add_argument("output")
    p.add_argument("--k", type=int)
    p.add_argument("--window", type=int)
    p.add_argument("--scheduler", choices=("independent", "sliding", "random"))
    p.add_argument("--loss", choices=("kld", "mse"))
    p.add_argument("--lr", type=float)
    p.add_argument("--epochs", type=int)
    p.add_argument("--seed", type=int)
    p.add_argument("--tol", type=float)
    p.add_argument("--patience", type=int)
    p.add_argument("--restarts", type=int)
    p.add_argument("--workers", type=int, default=1)
    report_flag(p)
    p.set_defaults(func=cmd_compress)

    p = sub.add_parser("decompress", help="reconstruct an EMGC file into TRIV")
    p.add_argument("input")
    p.add_argument("output")
    p.set_defaults(func=cmd_decompress)

    p = sub.add_parser("eval", help="compare two TRIV volumes")
    p.add_argument("a")
    p.add_argument("b")
    report_flag(p)
    p.set_defaults(func=cmd_eval)

    p = sub.add_parser("synth", help="write a synthetic TRIV scene and its ground truth")
    p.add_argument("output")
    p.add_argument("--truth", help="ground-truth EMGC path (default: <output>.truth.emgc)")
    p.add_argument("--width", type=int, default=16)
    p.add_argument("--height", type=int, default=16)
    p.add_argument("--frames", type=int, default=128)
    p.add_argument("--k-true", type=int, default=4)
    p.add_argument("--smoothness", type=float, default=8.0)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--noise-divisor", type=float)
    report_flag(p)
    p.set_defaults(func=cmd_synth)

    p = sub.add_parser("gradcheck", help="check analytic gradients against finite differences")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--count", type=int, default=500)
    report_flag(p)
    p.set_defaults(func=cmd_gradcheck)
    return parser


def main(argv=None):
    parser = build_parser()
    args = parser.parse_args(argv)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING,
                        format="%(levelname)s: %(message)s")
    try:
        return args.func(args)
    except UsageError as exc:
        print(f"emgcodec: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except NumericalError as exc:
        print(f"emgcodec: numerical failure: {exc}", file=sys.stderr)
        return EXIT_NUMERICAL
    except (EmgCodecError, ValueError) as exc:
        print(f"emgcodec: error: {exc}", file=sys.stderr)
        return EXIT_DATA
    except OSError as exc:
        print(f"emgcodec: error: {exc}", file=sys.stderr)
        return EXIT_DATA


if __name__ == "__main__":
    sys.exit(main())
