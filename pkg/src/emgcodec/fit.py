"""Gradient-descent fitting of EMG mixtures to pixels, windows and images.

All optimisation runs through :func:`_adam`, which advances ``G``
independent problems in lock step (a batch of single pixels, or one
joint window). Every problem keeps its own best-so-far state, step
size and plateau detector, so batching never couples results.
"""
import logging
import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field, replace

import numpy as np

from .codec import FLAG_NORMALIZED, CompressedImage
from .emg import constrain, mixture_jacobian, mixture_values, retime, unconstrain
from .errors import DomainError
from .losses import gradient_loss_and_grad, mse_loss_and_grad, pixel_loss_and_grad
from .preprocess import TimeRemap, bin_centers, clip_normalize, degenerate_remap

__all__ = [
    "FitConfig",
    "PixelModel",
    "FitResult",
    "init_params",
    "pixel_rng",
    "fit_pixel",
    "fit_window",
    "fit_image",
    "window_objective",
    "DEGENERATE_H_RAW",
]

log = logging.getLogger(__name__)

SCHEDULERS = ("independent", "sliding", "random")
LOSS_KINDS = ("kld", "mse")

# Box on raw parameters: keeps h, sigma, tau and mu representable (and
# strictly inside their domains) as float32.
RAW_BOUNDS = np.array([[-80.0, 80.0], [-16.0, 16.0], [-80.0, 80.0], [-80.0, 80.0]])
DEGENERATE_H_RAW = RAW_BOUNDS[0, 0]
MAX_NONFINITE_EVENTS = 5

_BETA1 = 0.9
_BETA2 = 0.999
_ADAM_EPS = 1e-8

# RNG stream ids mixed into the seed
_STREAM_INIT = 0
_STREAM_VISITS = 1


@dataclass(frozen=True)
class FitConfig:
    """Hyperparameters of the fitter.

    ``max_visits`` bounds the random scheduler (defaults to
    ``8 * W * H``); ``plateau_epochs`` is the span over which a fit must
    improve its best loss by ``convergence_rel_tol`` to keep running.
    ``window_epochs`` caps each window visit (``None`` means ``max_epochs``);
    windows are revisited many times, so they get a shorter default.
    ``restarts`` independent initialisations are run for every single-pixel
    fit and the lowest final loss is kept; window refits start from the
    stored state and are not restarted. With ``neighbour_init`` every
    window visit first lets each pixel adopt a rescaled neighbour's
    parameters when they fit its signal better than its own.
    """

    K: int = 4
    N: int = 5
    loss_kind: str = "kld"
    scheduler: str = "random"
    learning_rate: float = 1e-2
    max_epochs: int = 2000
    convergence_rel_tol: float = 1e-4
    patience: int = 3
    mu_range: tuple = (0.01, 0.99)
    sigma_range: tuple = (0.005, 0.2)
    tau_range: tuple = (0.01, 0.5)
    seed: int = 0
    normalize_pmf: bool = False
    plateau_epochs: int = 100
    window_epochs: int = 100
    max_visits: int = None
    interior_gradients: bool = True
    restarts: int = 1
    neighbour_init: bool = True

    def __post_init__(self):
        if self.K < 1:
            raise DomainError("K must be >= 1")
        if self.N < 1 or self.N % 2 == 0:
            raise DomainError("N must be odd and >= 1")
        if self.loss_kind not in LOSS_KINDS:
            raise DomainError(f"loss_kind must be one of {LOSS_KINDS}")
        if self.scheduler not in SCHEDULERS:
            raise DomainError(f"scheduler must be one of {SCHEDULERS}")
        if not self.learning_rate > 0 or self.max_epochs < 1 or self.patience < 1:
            raise DomainError("learning_rate, max_epochs and patience must be positive")
        if not self.convergence_rel_tol > 0 or self.plateau_epochs < 1:
            raise DomainError("convergence_rel_tol and plateau_epochs must be positive")
        for name in ("mu_range", "sigma_range", "tau_range"):
            lo, hi = getattr(self, name)
            if not 0 < lo < hi:
                raise DomainError(f"{name} must satisfy 0 < min < max")
        if self.mu_range[1] > 1:
            raise DomainError("mu_range must lie inside (0, 1]")
        if self.seed < 0:
            raise DomainError("seed must be non-negative")
        for name in ("window_epochs", "max_visits"):
            value = getattr(self, name)
            if value is not None and value < 1:
                raise DomainError(f"{name} must be positive when set")
        if self.restarts < 1:
            raise DomainError("restarts must be >= 1")


@dataclass
class PixelModel:
    remap: TimeRemap
    raw: np.ndarray  # (K, 4)
    converged: bool = False
    loss: float = math.nan
    degenerate: bool = False
    warning: bool = False

    @property
    def params(self):
        return constrain(self.raw)

    def values(self):
        """Model evaluated on the bin centres of its clipped grid."""
        return mixture_values(bin_centers(self.remap.t_len), self.params[None])[0]


@dataclass
class FitResult:
    """Per-problem outcome of :func:`_adam`."""

    x: np.ndarray
    loss: np.ndarray
    initial_loss: np.ndarray
    converged: np.ndarray
    warning: np.ndarray
    epochs: np.ndarray
    history: list = field(default_factory=list)


def pixel_rng(seed, index, stream=_STREAM_INIT):
    return np.random.default_rng([seed, stream, index])


def _log_uniform(rng, lo, hi, n):
    return np.exp(rng.uniform(math.log(lo), math.log(hi), n))


def init_params(cfg, rng):
    """Log-space initial parameters, returned as a raw ``(K, 4)`` array.

    ``mu`` gets ``K`` sorted samples. ``sigma`` and ``tau`` get
    ``ceil(sqrt(K))`` sorted samples each; all their pairs are ordered by
    combined rank and the first ``K`` are assigned to increasing ``mu``,
    so later pulses are wider and decay more slowly.
    """
    K = cfg.K
    mu = np.sort(_log_uniform(rng, *cfg.mu_range, K))
    m = math.isqrt(K - 1) + 1 if K > 1 else 1
    sigma = np.sort(_log_uniform(rng, *cfg.sigma_range, m))
    tau = np.sort(_log_uniform(rng, *cfg.tau_range, m))
    pairs = sorted(((i, j) for i in range(m) for j in range(m)),
                   key=lambda ij: (ij[0] + ij[1], sigma[ij[0]] * tau[ij[1]], ij[0]))[:K]
    params = np.empty((K, 4))
    params[:, 0] = 1.0
    params[:, 1] = mu
    params[:, 2] = [sigma[i] for i, _ in pairs]
    params[:, 3] = [tau[j] for _, j in pairs]
    # keep mu strictly inside (0, 1) when mu_range reaches 1
    params[:, 1] = np.clip(params[:, 1], 1e-6, 1 - 1e-6)
    return unconstrain(params)


def _clip_raw(x, K):
    shaped = x.reshape(x.shape[0], -1, K, 4)
    np.clip(shaped, RAW_BOUNDS[:, 0], RAW_BOUNDS[:, 1], out=shaped)
    return x


def _adam(objective, x0, K, lr, max_epochs, rel_tol, plateau, record_history=False):
    """Minimise ``G`` independent problems.

    ``objective(x)`` maps ``(G, n)`` to ``(loss (G,), grad (G, n))``.
    Problems stop individually once their best loss improves by less than
    ``rel_tol`` (relative) over ``plateau`` epochs. Non-finite losses or
    gradients restore the last finite state and halve that problem's
    step size; after ``MAX_NONFINITE_EVENTS`` such events it stops with a
    warning.
    """
    x = _clip_raw(np.array(x0, dtype=np.float64, copy=True), K)
    G = x.shape[0]
    m = np.zeros_like(x)
    v = np.zeros_like(x)
    step = np.zeros(G)
    lrs = np.full(G, float(lr))
    best_x = x.copy()
    best = np.full(G, np.inf)
    last_good = x.copy()
    checkpoint = np.full(G, np.inf)
    active = np.ones(G, dtype=bool)
    converged = np.zeros(G, dtype=bool)
    warning = np.zeros(G, dtype=bool)
    bad_events = np.zeros(G, dtype=int)
    epochs = np.zeros(G, dtype=int)
    initial = None
    history = []

    for epoch in range(max_epochs + 1):
        loss, grad = objective(x)
        if initial is None:
            initial = loss.copy()
        finite = np.isfinite(loss) & np.all(np.isfinite(grad), axis=1)
        improved = active & finite & (loss < best)
        best = np.where(improved, loss, best)
        best_x[improved] = x[improved]
        last_good[active & finite] = x[active & finite]
        if record_history:
            history.append(best.copy())

        bad = active & ~finite
        if bad.any():
            bad_events[bad] += 1
            lrs[bad] *= 0.5
            x[bad] = last_good[bad]
            m[bad] = 0.0
            v[bad] = 0.0
            step[bad] = 0.0
            exhausted = bad & (bad_events >= MAX_NONFINITE_EVENTS)
            warning[exhausted] = True
            active &= ~exhausted

        if epoch == max_epochs:
            break
        if (epoch + 1) % plateau == 0:
            with np.errstate(invalid="ignore"):  # inf checkpoint before the first span
                stalled = active & (best > checkpoint - rel_tol * np.abs(checkpoint))
            converged |= stalled
            active &= ~stalled
            checkpoint = np.where(active, best, checkpoint)
        if not active.any():
            break

        upd = active & finite
        g = np.where(upd[:, None], grad, 0.0)
        step[upd] += 1
        m[upd] = _BETA1 * m[upd] + (1 - _BETA1) * g[upd]
        v[upd] = _BETA2 * v[upd] + (1 - _BETA2) * g[upd] * g[upd]
        t = step[upd][:, None]
        mhat = m[upd] / (1 - _BETA1 ** t)
        vhat = v[upd] / (1 - _BETA2 ** t)
        x[upd] -= lrs[upd][:, None] * mhat / (np.sqrt(vhat) + _ADAM_EPS)
        _clip_raw(x, K)
        epochs[upd] += 1

    return FitResult(best_x, best, initial, converged, warning, epochs, history)


def _batch_objective(refs, t, mask, n_valid, K, cfg):
    """Independent per-pixel objectives for padded ``(P, B)`` references."""

    def objective(x):
        P = x.shape[0]
        values, jac = mixture_jacobian(t, x.reshape(P, K, 4))
        values *= mask
        if cfg.loss_kind == "kld":
            loss, w = pixel_loss_and_grad(refs, values, normalize=cfg.normalize_pmf)
        else:
            loss, w = mse_loss_and_grad(refs, values, normalize=cfg.normalize_pmf,
                                        n_valid=n_valid)
        w = w * mask
        grad = np.einsum("pkjb,pb->pkj", jac, w)
        return loss, grad.reshape(P, -1)

    return objective


def window_objective(ref, active, K, cfg):
    """Joint objective over a ``(n, m, B)`` window.

    Returns a function of the flattened raw parameters of the active
    pixels (``(1, A*K*4)``) giving ``(loss, grad)``: the sum of per-pixel
    losses over active pixels plus the spatial gradient loss.
    """
    n, m, B = ref.shape
    t = bin_centers(B)
    idx = np.flatnonzero(active.reshape(-1))
    ref_active = ref.reshape(n * m, B)[idx]

    def objective(x):
        A = idx.size
        values, jac = mixture_jacobian(t, x.reshape(A, K, 4))
        if cfg.loss_kind == "kld":
            lp, w = pixel_loss_and_grad(ref_active, values, normalize=cfg.normalize_pmf)
        else:
            lp, w = mse_loss_and_grad(ref_active, values, normalize=cfg.normalize_pmf)
        full = np.zeros((n * m, B))
        full[idx] = values
        lg, wg = gradient_loss_and_grad(ref, full.reshape(n, m, B),
                                        interior=cfg.interior_gradients)
        w = w + wg.reshape(n * m, B)[idx]
        grad = np.einsum("pkjb,pb->pkj", jac, w)
        return np.array([lp.sum() + lg]), grad.reshape(1, -1)

    return objective


def _pixel_losses(refs, values, cfg, n_valid=None):
    if cfg.loss_kind == "kld":
        return pixel_loss_and_grad(refs, values, normalize=cfg.normalize_pmf)[0]
    return mse_loss_and_grad(refs, values, normalize=cfg.normalize_pmf, n_valid=n_valid)[0]


def _degenerate_model(K, T):
    params = np.tile(np.array([1.0, 0.5, 0.1, 0.1]), (K, 1))
    raw = unconstrain(params)
    raw[:, 0] = DEGENERATE_H_RAW
    return PixelModel(degenerate_remap(T), raw, converged=True, loss=0.0, degenerate=True)


def _fit_batch(signals, remaps, raw0, cfg, record_history=False):
    """Fit independent clipped signals of possibly different lengths together."""
    P = len(signals)
    K = cfg.K
    lens = np.array([s.size for s in signals])
    B = int(lens.max())
    refs = np.zeros((P, B))
    t = np.zeros((P, B))
    mask = np.zeros((P, B))
    for p, s in enumerate(signals):
        refs[p, :s.size] = s
        t[p, :s.size] = bin_centers(s.size)
        t[p, s.size:] = 1.0
        mask[p, :s.size] = 1.0
    objective = _batch_objective(refs, t, mask, lens, K, cfg)
    res = _adam(objective, raw0.reshape(P, -1), K, cfg.learning_rate, cfg.max_epochs,
                cfg.convergence_rel_tol, cfg.plateau_epochs, record_history)
    models = []
    for p in range(P):
        models.append(PixelModel(remaps[p], res.x[p].reshape(K, 4), bool(res.converged[p]),
                                 float(res.loss[p]), warning=bool(res.warning[p])))
    return models, res


def fit_pixel(signal, cfg, rng=None, remap=None, return_trace=False):
    """Fit one clipped pixel signal with the single-pixel objective.

    ``rng`` defaults to the pixel-0 stream of ``cfg.seed``. With
    ``return_trace`` the best-so-far loss per epoch is returned as well.
    """
    signal = np.asarray(signal, dtype=np.float64)
    if remap is None:
        remap = TimeRemap(0, signal.size)
    if signal.size != remap.t_len:
        raise DomainError("signal length does not match remap")
    if not np.any(signal > 0):
        model = _degenerate_model(cfg.K, remap.T)
        return (model, np.zeros(1)) if return_trace else model
    rng = pixel_rng(cfg.seed, 0) if rng is None else rng
    models, history = _fit_restarted([signal], [remap], [rng], cfg, return_trace)
    if models[0].warning:
        log.warning("fit_pixel stopped after repeated non-finite losses")
    if return_trace:
        return models[0], history[:, 0]
    return models[0]


def _fit_restarted(signals, remaps, rngs, cfg, record_history=False):
    """Fit each signal from ``cfg.restarts`` initialisations and keep the best.

    Restart ``r`` of a signal uses the ``r``-th draw from its generator, so
    a single restart reproduces the plain fit. Ties keep the earliest
    restart. The optional history is the best loss over restarts per epoch.
    """
    R = cfg.restarts
    P = len(signals)
    raw0 = np.stack([init_params(cfg, rng) for rng in rngs for _ in range(R)])
    models, res = _fit_batch([s for s in signals for _ in range(R)],
                             [rm for rm in remaps for _ in range(R)], raw0, cfg, record_history)
    losses = res.loss.reshape(P, R)
    pick = np.argmin(losses, axis=1)
    best = [models[p * R + int(pick[p])] for p in range(P)]
    history = None
    if record_history:
        history = np.array(res.history).reshape(-1, P, R).min(axis=2)
    return best, history


def _window_raw(models, remap_w, active):
    raws = []
    for model, on in zip(models, active):
        if on:
            params = retime(constrain(model.raw), model.remap, remap_w)
            raws.append(_clip_raw(unconstrain(params)[None], params.shape[0])[0])
    return np.stack(raws)


def fit_window(window, remap, models, cfg):
    """Jointly refit the pixels of an ``(n, m, t_len)`` window.

    ``window`` holds the references clipped at the shared ``remap``;
    ``models`` is an ``n*m`` sequence (row-major) of :class:`PixelModel`
    whose ``t_start`` is not earlier than ``remap.t_start``. Degenerate
    models are held fixed at zero. Returns ``(new_models, objective)``
    where the new models are expressed in ``remap``.
    """
    window = np.asarray(window, dtype=np.float64)
    n, m, B = window.shape
    if B != remap.t_len or len(models) != n * m:
        raise DomainError("window, remap and models are not aligned")
    K = cfg.K
    active = np.array([not md.degenerate for md in models])
    if not active.any():
        return list(models), 0.0
    x0 = _window_raw(models, remap, active).reshape(1, -1)
    objective = window_objective(window, active.reshape(n, m), K, cfg)
    epochs = min(cfg.window_epochs or cfg.max_epochs, cfg.max_epochs)
    res = _adam(objective, x0, K, cfg.learning_rate, epochs, cfg.convergence_rel_tol,
                cfg.plateau_epochs)
    raw = res.x[0].reshape(-1, K, 4)
    values = mixture_values(bin_centers(B), constrain(raw))
    refs = window.reshape(n * m, B)[active]
    losses = _pixel_losses(refs, values, cfg)
    out = []
    k = 0
    for md, on in zip(models, active):
        if not on:
            out.append(md)
            continue
        out.append(PixelModel(remap, raw[k].copy(), bool(res.converged[0]), float(losses[k]),
                              warning=bool(res.warning[0])))
        k += 1
    return out, float(res.loss[0])


def _neighbour_proposals(window, remap, models, cfg):
    """Start each window member from the best-fitting member's parameters.

    Every active member's mixture, rescaled to the mass of a pixel's
    reference, is scored against that pixel; a pixel takes a neighbour's
    shape only when it beats its own. Models come back in ``remap``.
    """
    B = remap.t_len
    active = np.array([not md.degenerate for md in models])
    raws = _window_raw(models, remap, active)
    A = raws.shape[0]
    refs = window.reshape(-1, B)[active]
    values = mixture_values(bin_centers(B), constrain(raws))
    mass = values.sum(axis=1)
    with np.errstate(divide="ignore", invalid="ignore"):
        scale = refs.sum(axis=1)[:, None] / mass[None, :]
    usable = np.isfinite(scale) & (scale > 0)
    scale = np.where(usable, scale, 1.0)
    cand = scale[:, :, None] * values[None, :, :]
    losses = _pixel_losses(np.repeat(refs, A, axis=0), cand.reshape(A * A, B), cfg)
    losses = np.where(usable, losses.reshape(A, A), np.inf)
    own = _pixel_losses(refs, values, cfg)
    out = []
    k = 0
    for md, on in zip(models, active):
        if not on:
            out.append(md)
            continue
        q = int(np.argmin(losses[k]))
        raw = raws[k].copy()
        if losses[k, q] < own[k]:
            raw = raws[q].copy()
            raw[:, 0] += math.log(scale[k, q])
        out.append(PixelModel(remap, _clip_raw(raw[None], raw.shape[0])[0], md.converged,
                              md.loss, warning=md.warning))
        k += 1
    return out


class _ImageState:
    """Per-pixel parameter store shared by overlapping window fits."""

    def __init__(self, volume, cfg):
        self.volume = volume
        self.cfg = cfg
        W, H, T = volume.shape
        self.models = np.empty((W, H), dtype=object)
        self.streak = np.zeros((W, H), dtype=int)
        self.visits = np.zeros((W, H), dtype=int)
        self.pixel_converged = np.zeros((W, H), dtype=bool)
        for i in range(W):
            for j in range(H):
                remap, sig = clip_normalize(volume[i, j])
                if not np.any(sig > 0):
                    self.models[i, j] = _degenerate_model(cfg.K, T)
                    self.pixel_converged[i, j] = True
                else:
                    raw = init_params(cfg, pixel_rng(cfg.seed, i * H + j))
                    self.models[i, j] = PixelModel(remap, raw, loss=math.inf)

    def box(self, ci, cj):
        W, H, _ = self.volume.shape
        r = self.cfg.N // 2
        return slice(max(ci - r, 0), min(ci + r + 1, W)), slice(max(cj - r, 0), min(cj + r + 1, H))

    def visit(self, ci, cj):
        si, sj = self.box(ci, cj)
        block = self.models[si, sj]
        flat = list(block.reshape(-1))
        starts = [md.remap.t_start for md in flat if not md.degenerate]
        if not starts:
            return
        T = self.volume.shape[2]
        s_w = min(starts)
        remap = TimeRemap(s_w, T - s_w)
        ref = self.volume[si, sj, s_w:].astype(np.float64)
        old = np.array([md.loss for md in flat])
        if self.cfg.neighbour_init:
            flat = _neighbour_proposals(ref, remap, flat, self.cfg)
        new_models, _ = fit_window(ref, remap, flat, self.cfg)
        tol = self.cfg.convergence_rel_tol
        for k, md in enumerate(new_models):
            i = si.start + k // block.shape[1]
            j = sj.start + k % block.shape[1]
            self.models[i, j] = md
            if md.degenerate:
                continue
            self.visits[i, j] += 1
            prev = old[k]
            rel = (prev - md.loss) / abs(prev) if np.isfinite(prev) and prev != 0 else math.inf
            self.streak[i, j] = self.streak[i, j] + 1 if rel < tol else 0
            if self.streak[i, j] >= self.cfg.patience:
                self.pixel_converged[i, j] = True


def _models_to_image(models, volume_shape, cfg, converged=None):
    W, H, T = volume_shape
    K = cfg.K
    t_start = np.zeros((W, H), dtype=np.uint32)
    t_len = np.zeros((W, H), dtype=np.uint32)
    params = np.zeros((W, H, 4, K))
    flags = np.zeros((W, H), dtype=np.uint8)
    losses = np.zeros((W, H))
    for i in range(W):
        for j in range(H):
            md = models[i][j]
            t_start[i, j] = md.remap.t_start
            t_len[i, j] = md.remap.t_len
            params[i, j] = md.params.T
            done = md.converged if converged is None else converged[i, j]
            flags[i, j] = (1 if done else 0) | (2 if md.degenerate else 0)
            losses[i, j] = md.loss
    header_flags = FLAG_NORMALIZED if cfg.normalize_pmf else 0
    return CompressedImage(W=W, H=H, T=T, K=K, N=cfg.N, loss_kind=cfg.loss_kind,
                           flags=header_flags, t_start=t_start, t_len=t_len, params=params,
                           pixel_flags=flags, pixel_loss=losses)


def _fit_independent(volume, cfg, chunk=256, workers=1):
    W, H, T = volume.shape
    models = [[None] * H for _ in range(W)]
    pending = []
    for i in range(W):
        for j in range(H):
            remap, sig = clip_normalize(volume[i, j])
            if not np.any(sig > 0):
                models[i][j] = _degenerate_model(cfg.K, T)
            else:
                pending.append((i, j, remap, sig))
    chunk = max(1, chunk // cfg.restarts)
    parts = [pending[s:s + chunk] for s in range(0, len(pending), chunk)]

    def run(part):
        rngs = [pixel_rng(cfg.seed, i * H + j) for i, j, _, _ in part]
        return _fit_restarted([p[3] for p in part], [p[2] for p in part], rngs, cfg)[0]

    # Chunks do not depend on the worker count, so results are identical.
    if workers > 1 and len(parts) > 1:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            fitted_parts = list(pool.map(run, parts))
    else:
        fitted_parts = [run(part) for part in parts]
    for part, fitted in zip(parts, fitted_parts):
        for (i, j, _, _), md in zip(part, fitted):
            models[i][j] = md
    return models


def fit_image(volume, cfg, workers=1):
    """Compress a ``(W, H, T)`` volume into a :class:`~emgcodec.codec.CompressedImage`.

    ``independent`` fits every pixel on its own; ``sliding`` refits the
    window around every pixel once in raster order; ``random`` draws
    window centres uniformly until each pixel's loss has stopped improving
    for ``patience`` consecutive visits or ``max_visits`` is spent. A 1x1
    image is always fitted with :func:`fit_pixel`.

    ``workers`` threads share the independent scheduler's pixel batches.
    Window schedulers run their visits serially: every visit reads the
    state written by the previous one.
    """
    volume = np.asarray(volume, dtype=np.float64)
    if volume.ndim != 3 or min(volume.shape) < 1:
        raise DomainError("expected a non-empty (W, H, T) volume")
    W, H, T = volume.shape
    if W * H == 1:
        remap, sig = clip_normalize(volume[0, 0])
        model = fit_pixel(sig, cfg, pixel_rng(cfg.seed, 0), remap)
        return _models_to_image([[model]], volume.shape, cfg)
    if cfg.scheduler == "independent":
        return _models_to_image(_fit_independent(volume, cfg, workers=workers), volume.shape, cfg)

    state = _ImageState(volume, cfg)
    if cfg.scheduler == "sliding":
        for j in range(H):
            for i in range(W):
                state.visit(i, j)
        done = np.array([[md.converged for md in row] for row in state.models])
        return _models_to_image(state.models.tolist(), volume.shape, cfg, done)

    rng = np.random.default_rng([cfg.seed, _STREAM_VISITS])
    budget = cfg.max_visits if cfg.max_visits is not None else 8 * W * H
    for _ in range(budget):
        if state.pixel_converged.all():
            break
        c = int(rng.integers(W * H))
        state.visit(c // H, c % H)
    unconverged = int((~state.pixel_converged).sum())
    if unconverged:
        log.warning("random scheduler budget exhausted with %d unconverged pixels", unconverged)
    return _models_to_image(state.models.tolist(), volume.shape, cfg, state.pixel_converged)


def with_overrides(cfg, **kwargs):
    """``dataclasses.replace`` that ignores ``None`` values."""
    return replace(cfg, **{k: v for k, v in kwargs.items() if v is not None})
