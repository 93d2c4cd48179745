"""Exponentially-modified Gaussian components and mixtures.

A component is parameterised by amplitude ``h``, peak position ``mu``,
Gaussian width ``sigma`` and exponential decay ``tau``::

    EMG(t) = h*sigma/tau * sqrt(pi/2) * exp(sigma**2/(2*tau**2) - (t-mu)/tau)
             * erfc((sigma/tau - (t-mu)/sigma) / sqrt(2))

The optimizer works in an unconstrained "raw" space where
``h, sigma, tau = exp(raw)`` and ``mu = sigmoid(raw)``. Arrays of raw
parameters have shape ``(..., K, 4)`` with columns
``(h_raw, mu_raw, sigma_raw, tau_raw)``.
"""
import math
from dataclasses import dataclass

import numba as nb
import numpy as np

from .errors import DomainError
from .special import erfc_scalar, erfcx_scalar

__all__ = [
    "EmgParams",
    "RawEmgParams",
    "Mixture",
    "constrain",
    "unconstrain",
    "emg_eval",
    "emg_eval_naive",
    "mixture_eval",
    "emg_grad",
    "mixture_values",
    "mixture_jacobian",
    "retime",
]

_SQRT_HALF_PI = math.sqrt(math.pi / 2.0)
_INV_SQRT2 = 1.0 / math.sqrt(2.0)


@dataclass(frozen=True)
class EmgParams:
    """One component in constrained space."""

    h: float
    mu: float
    sigma: float
    tau: float

    def __post_init__(self):
        vals = (self.h, self.mu, self.sigma, self.tau)
        if not all(math.isfinite(v) for v in vals):
            raise DomainError(f"non-finite EMG parameters {vals}")
        if self.h <= 0 or self.sigma <= 0 or self.tau <= 0:
            raise DomainError(f"h, sigma and tau must be positive, got {vals}")
        if not 0.0 < self.mu < 1.0:
            raise DomainError(f"mu must lie in (0, 1), got {self.mu}")

    def as_array(self):
        return np.array([self.h, self.mu, self.sigma, self.tau])

    def to_raw(self):
        return RawEmgParams(*unconstrain(self.as_array()))


@dataclass(frozen=True)
class RawEmgParams:
    """One component in the unconstrained optimizer space."""

    h_raw: float
    mu_raw: float
    sigma_raw: float
    tau_raw: float

    def as_array(self):
        return np.array([self.h_raw, self.mu_raw, self.sigma_raw, self.tau_raw])

    def constrain(self):
        return EmgParams(*(float(v) for v in constrain(self.as_array())))


@dataclass(frozen=True)
class Mixture:
    """An ordered sum of ``K >= 1`` components."""

    components: tuple

    def __post_init__(self):
        object.__setattr__(self, "components", tuple(self.components))
        if not self.components:
            raise DomainError("a mixture needs at least one component")

    @property
    def K(self):
        return len(self.components)

    @classmethod
    def from_array(cls, params):
        """Build from a ``(K, 4)`` array of constrained parameters."""
        return cls(tuple(EmgParams(*(float(v) for v in row)) for row in np.asarray(params)))

    def as_array(self):
        return np.array([c.as_array() for c in self.components])


def constrain(raw):
    """Map raw parameters (last axis of length 4) to ``(h, mu, sigma, tau)``."""
    raw = np.asarray(raw, dtype=np.float64)
    out = np.empty_like(raw)
    out[..., 0] = np.exp(raw[..., 0])
    out[..., 1] = 0.5 * (1.0 + np.tanh(0.5 * raw[..., 1]))
    out[..., 2] = np.exp(raw[..., 2])
    out[..., 3] = np.exp(raw[..., 3])
    return out


def unconstrain(params):
    """Inverse of :func:`constrain`."""
    params = np.asarray(params, dtype=np.float64)
    out = np.empty_like(params)
    out[..., 0] = np.log(params[..., 0])
    mu = params[..., 1]
    out[..., 1] = np.log(mu) - np.log1p(-mu)
    out[..., 2] = np.log(params[..., 2])
    out[..., 3] = np.log(params[..., 3])
    return out


@nb.njit(cache=True)
def _emg_value(t, h, mu, sigma, tau):
    # Returns (EMG value, h * Gaussian factor).
    d = t - mu
    r = sigma / tau
    z = r - d / sigma
    hg = h * math.exp(-0.5 * (d / sigma) ** 2)
    if z >= 0.0:
        e = _SQRT_HALF_PI * r * hg * erfcx_scalar(z * _INV_SQRT2)
    else:
        e = h * _SQRT_HALF_PI * r * math.exp(0.5 * r * r - d / tau) * erfc_scalar(z * _INV_SQRT2)
    return e, hg


@nb.njit(cache=True, nogil=True)
def _mixture_values_kernel(t, params, out):
    # t: (P, B); params: (P, K, 4) constrained; out: (P, B)
    P, B = t.shape
    K = params.shape[1]
    for p in range(P):
        for b in range(B):
            acc = 0.0
            for k in range(K):
                e, _ = _emg_value(t[p, b], params[p, k, 0], params[p, k, 1],
                                  params[p, k, 2], params[p, k, 3])
                acc += e
            out[p, b] = acc


@nb.njit(cache=True, nogil=True)
def _mixture_jac_kernel(t, params, out, jac):
    # jac: (P, K, 4, B), partials with respect to the raw parameters
    P, B = t.shape
    K = params.shape[1]
    for p in range(P):
        for b in range(B):
            out[p, b] = 0.0
        for k in range(K):
            h = params[p, k, 0]
            mu = params[p, k, 1]
            sigma = params[p, k, 2]
            tau = params[p, k, 3]
            r2 = (sigma / tau) ** 2
            dmu_draw = mu * (1.0 - mu)
            for b in range(B):
                e, hg = _emg_value(t[p, b], h, mu, sigma, tau)
                dt = (t[p, b] - mu) / tau
                out[p, b] += e
                jac[p, k, 0, b] = e
                jac[p, k, 1, b] = dmu_draw * (e - hg) / tau
                jac[p, k, 2, b] = e * (1.0 + r2) - hg * (r2 + dt)
                jac[p, k, 3, b] = e * (dt - r2 - 1.0) + hg * r2


def _as_time_grid(t, n_pixels):
    t = np.asarray(t, dtype=np.float64)
    if t.ndim == 1:
        t = np.broadcast_to(t, (n_pixels, t.shape[0]))
    return np.ascontiguousarray(t)


def mixture_values(t, params):
    """Evaluate mixtures for a batch of pixels.

    ``params`` is a ``(P, K, 4)`` array of constrained parameters and ``t``
    either a shared ``(B,)`` grid or a ``(P, B)`` array. Returns ``(P, B)``.
    """
    params = np.ascontiguousarray(params, dtype=np.float64)
    t = _as_time_grid(t, params.shape[0])
    out = np.empty(t.shape)
    _mixture_values_kernel(t, params, out)
    return out


def mixture_jacobian(t, raw):
    """Values ``(P, B)`` and raw-space Jacobian ``(P, K, 4, B)`` of a batch."""
    params = np.ascontiguousarray(constrain(raw))
    t = _as_time_grid(t, params.shape[0])
    out = np.empty(t.shape)
    jac = np.empty((params.shape[0], params.shape[1], 4, t.shape[1]))
    _mixture_jac_kernel(t, params, out, jac)
    return out, jac


def _check_t(t):
    if not math.isfinite(t):
        raise DomainError(f"non-finite time {t}")


def emg_eval(t, p):
    """EMG value at normalized time ``t`` for an :class:`EmgParams`."""
    _check_t(t)
    return _emg_value(float(t), p.h, p.mu, p.sigma, p.tau)[0]


def emg_eval_naive(t, p):
    """Direct transcription of the closed form (overflows for large sigma/tau)."""
    r = p.sigma / p.tau
    arg = 0.5 * r * r - (t - p.mu) / p.tau
    return (p.h * r * _SQRT_HALF_PI * math.exp(arg)
            * erfc_scalar((r - (t - p.mu) / p.sigma) * _INV_SQRT2))


def mixture_eval(t, m):
    """Sum of component values, accumulated left to right in stored order."""
    _check_t(t)
    acc = 0.0
    for c in m.components:
        acc += _emg_value(float(t), c.h, c.mu, c.sigma, c.tau)[0]
    return acc


def emg_grad(t, p_raw):
    """Analytic partials of the EMG value with respect to the raw parameters.

    Returns ``[d/dh_raw, d/dmu_raw, d/dsigma_raw, d/dtau_raw]``.
    """
    _check_t(t)
    raw = p_raw.as_array() if isinstance(p_raw, RawEmgParams) else np.asarray(p_raw, float)
    if not np.all(np.isfinite(raw)):
        raise DomainError("non-finite raw parameters")
    _, jac = mixture_jacobian(np.array([float(t)]), raw.reshape(1, 1, 4))
    return jac[0, 0, :, 0].copy()


def retime(params, src, dst):
    """Re-express constrained parameters from one time remap in another.

    With normalized time ``t = (bin - t_start + 0.5) / t_len``, an EMG is
    invariant under a common affine change of ``t``, ``mu``, ``sigma`` and
    ``tau``, so the mapping is exact. ``dst.t_start <= src.t_start`` keeps
    ``mu`` inside (0, 1).
    """
    params = np.array(params, dtype=np.float64, copy=True)
    scale = src.t_len / dst.t_len
    shift = (src.t_start - dst.t_start) / dst.t_len
    params[..., 1] = params[..., 1] * scale + shift
    params[..., 2] *= scale
    params[..., 3] *= scale
    return params
