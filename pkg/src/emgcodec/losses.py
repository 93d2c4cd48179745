"""Pixel, image and spatial-gradient losses.

Logs use a relative floor: any value below ``1e-10 * max`` (the maximum
taken over both operands' bins) is replaced by that floor before the
logarithm, in both operands. The same floored values enter the
difference factor of the symmetric divergence.

The ``*_and_grad`` helpers work on batches (leading axes) and return the
derivative with respect to the second (model) operand; the fitter uses
them directly.
"""
import numpy as np

from .errors import ShapeError

__all__ = [
    "FLOOR_REL",
    "kld_directed",
    "pixel_loss",
    "mse_loss",
    "spatial_gradients",
    "gradient_loss",
    "image_loss",
    "pixel_loss_and_grad",
    "mse_loss_and_grad",
    "gradient_loss_and_grad",
]

FLOOR_REL = 1e-10

DIRECTIONS = ("up", "down", "left", "right")


def _pair(p, q):
    p = np.asarray(p, dtype=np.float64)
    q = np.asarray(q, dtype=np.float64)
    if p.shape != q.shape:
        raise ShapeError(f"shape mismatch {p.shape} vs {q.shape}")
    return p, q


def _normalize(x):
    s = x.sum(axis=-1, keepdims=True)
    return np.divide(x, s, out=np.zeros_like(x), where=s > 0), s


def _floored(p, q):
    m = np.maximum(p.max(axis=-1, keepdims=True), q.max(axis=-1, keepdims=True))
    eps = FLOOR_REL * m
    return np.maximum(p, eps), np.maximum(q, eps), eps


def kld_directed(p, q, normalize=False):
    """``sum_t p[t] * ln(p[t] / q[t])`` with floored operands."""
    p, q = _pair(p, q)
    if normalize:
        p, _ = _normalize(p)
        q, _ = _normalize(q)
    if not (p.max() > 0 or q.max() > 0):
        return 0.0
    pf, qf, _ = _floored(p, q)
    return float(np.sum(pf * (np.log(pf) - np.log(qf))))


def pixel_loss(p, q, normalize=False):
    """Symmetric divergence ``sum_t (p - q) * (ln p - ln q)``."""
    p, q = _pair(p, q)
    return float(pixel_loss_and_grad(p, q, normalize=normalize)[0])


def mse_loss(p, q, normalize=False):
    """Mean over bins of ``(p - q)**2``."""
    p, q = _pair(p, q)
    return float(mse_loss_and_grad(p, q, normalize=normalize)[0])


def image_loss(volume, recon, normalize=False):
    """Sum of :func:`pixel_loss` over every pixel of two ``(W, H, T)`` volumes."""
    volume, recon = _pair(volume, recon)
    if volume.ndim != 3:
        raise ShapeError("image_loss expects (W, H, T) volumes")
    return float(pixel_loss_and_grad(volume, recon, normalize=normalize)[0].sum())


def pixel_loss_and_grad(p, q, normalize=False):
    """Batched symmetric divergence over the last axis.

    Returns ``(loss, dloss/dq)`` with ``loss`` of shape ``p.shape[:-1]``.
    The floor depends on ``max(q)`` when ``q`` dominates, and that
    dependence is included in the derivative.
    """
    p = np.asarray(p, dtype=np.float64)
    q = np.asarray(q, dtype=np.float64)
    if normalize:
        pn, _ = _normalize(p)
        qn, sq = _normalize(q)
    else:
        pn, qn = p, q
    pf, qf, eps = _floored(pn, qn)
    # all-zero pairs give 0/0 here; they are overwritten below
    with np.errstate(divide="ignore", invalid="ignore"):
        lp = np.log(pf)
        lq = np.log(qf)
        loss = np.sum((pf - qf) * (lp - lq), axis=-1)
        dq = lq - lp + 1.0 - pf / qf
        dp = lp - lq + 1.0 - qf / pf
    q_floored = qn < eps
    p_floored = pn < eps
    d_eps = (np.where(q_floored, dq, 0.0).sum(axis=-1)
             + np.where(p_floored, dp, 0.0).sum(axis=-1))
    grad = np.where(q_floored, 0.0, dq)
    # eps = FLOOR_REL * max(q) where q holds the joint maximum
    qmax_idx = np.argmax(qn, axis=-1)
    q_leads = qn.max(axis=-1) > pn.max(axis=-1)
    flat = grad.reshape(-1, grad.shape[-1])
    rows = np.arange(flat.shape[0])
    flat[rows, qmax_idx.reshape(-1)] += np.where(q_leads, FLOOR_REL * d_eps, 0.0).reshape(-1)
    grad = flat.reshape(grad.shape)

    if normalize:
        inner = np.sum(grad * qn, axis=-1, keepdims=True)
        grad = np.divide(grad - inner, sq, out=np.zeros_like(grad), where=sq > 0)
    both_zero = (pn.max(axis=-1) <= 0) & (qn.max(axis=-1) <= 0)
    if np.any(both_zero):
        loss = np.where(both_zero, 0.0, loss)
        grad = np.where(both_zero[..., None], 0.0, grad)
    return loss, grad


def mse_loss_and_grad(p, q, normalize=False, n_valid=None):
    """Batched mean squared error; ``n_valid`` overrides the bin count."""
    p = np.asarray(p, dtype=np.float64)
    q = np.asarray(q, dtype=np.float64)
    if normalize:
        p, _ = _normalize(p)
        qn, sq = _normalize(q)
    else:
        qn = q
    n = p.shape[-1] if n_valid is None else n_valid
    diff = qn - p
    loss = np.sum(diff * diff, axis=-1) / n
    grad = 2.0 * diff / (n if np.ndim(n) == 0 else np.asarray(n)[..., None])
    if normalize:
        inner = np.sum(grad * qn, axis=-1, keepdims=True)
        grad = np.divide(grad - inner, sq, out=np.zeros_like(grad), where=sq > 0)
    return loss, grad


def _directional(x, interior):
    # x: (n, m, ...). Neighbours outside the block read as zero.
    pad = [(1, 1), (1, 1)] + [(0, 0)] * (x.ndim - 2)
    xp = np.pad(x, pad)
    grads = {
        "up": xp[1:-1, :-2] - x,
        "down": xp[1:-1, 2:] - x,
        "left": xp[:-2, 1:-1] - x,
        "right": xp[2:, 1:-1] - x,
    }
    if interior:
        grads["up"][:, 0] = 0.0
        grads["down"][:, -1] = 0.0
        grads["left"][0] = 0.0
        grads["right"][-1] = 0.0
    return grads


def spatial_gradients(window, t, interior=False):
    """The four directional difference grids of an ``(n, m, T)`` window at bin ``t``.

    ``up[i, j] = I[i, j-1, t] - I[i, j, t]``, ``down`` uses ``j+1``,
    ``left`` ``i-1`` and ``right`` ``i+1``. Out-of-window neighbours are
    zero, or, with ``interior=True``, the entry is dropped (set to 0).
    """
    window = np.asarray(window, dtype=np.float64)
    if window.ndim != 3:
        raise ShapeError("expected an (n, m, T) window")
    if not 0 <= t < window.shape[2]:
        raise IndexError(f"bin {t} outside [0, {window.shape[2]})")
    return _directional(window[:, :, t], interior)


def gradient_loss(window, recon, interior=False):
    """Sum over bins of the Frobenius norms of the directional-gradient differences."""
    window, recon = _pair(window, recon)
    if window.ndim != 3:
        raise ShapeError("expected (n, m, T) windows")
    return float(gradient_loss_and_grad(window, recon, interior=interior)[0])


def gradient_loss_and_grad(window, recon, interior=False):
    """Gradient loss and its derivative with respect to ``recon``.

    Where a norm is exactly zero its (sub)gradient is taken as zero.
    """
    resid = np.asarray(window, dtype=np.float64) - np.asarray(recon, dtype=np.float64)
    grads = _directional(resid, interior)
    d_resid = np.zeros_like(resid)
    d_pad = np.zeros((resid.shape[0] + 2, resid.shape[1] + 2) + resid.shape[2:])
    total = 0.0
    for name in DIRECTIONS:
        g = grads[name]
        norm = np.sqrt(np.sum(g * g, axis=(0, 1)))
        total += norm.sum()
        unit = np.divide(g, norm, out=np.zeros_like(g), where=norm > 0)
        # g = neighbour - centre
        d_resid -= unit
        if name == "up":
            d_pad[1:-1, :-2] += unit
        elif name == "down":
            d_pad[1:-1, 2:] += unit
        elif name == "left":
            d_pad[:-2, 1:-1] += unit
        else:
            d_pad[2:, 1:-1] += unit
    d_resid += d_pad[1:-1, 1:-1]
    return total, -d_resid
