"""Synthetic transient scenes with known EMG-mixture ground truth.

Each per-pixel parameter is an affine image of a smooth random field in
[0, 1]. The fields are sums of a few cosines whose spatial frequencies
are at most ``2*pi / spatial_smoothness``, so a parameter mapped onto an
interval of width ``w`` changes by at most ``w * pi / spatial_smoothness``
between 4-neighbours.

Component 0 is an early, narrow pulse right after the onset bin (the
direct return); later components are progressively later, wider and
slower, with decreasing amplitude.
"""
import math
from dataclasses import dataclass

import numpy as np

from .codec import CompressedImage, FLAG_GROUND_TRUTH, PIXEL_CONVERGED, TransientVolume
from .emg import mixture_values
from .errors import DomainError
from .preprocess import bin_centers

__all__ = ["SceneSpec", "Scene", "generate_scene", "add_exposure_noise", "parameter_ranges"]

_N_WAVES = 6


@dataclass(frozen=True)
class SceneSpec:
    W: int = 16
    H: int = 16
    T: int = 128
    K_true: int = 4
    spatial_smoothness: float = 8.0
    intensity_scale: float = 1e4
    seed: int = 0
    max_onset_frac: float = 0.125

    def __post_init__(self):
        if min(self.W, self.H, self.T, self.K_true) < 1:
            raise DomainError("W, H, T and K_true must be positive")
        if not (self.spatial_smoothness > 0 and self.intensity_scale > 0):
            raise DomainError("spatial_smoothness and intensity_scale must be positive")
        if not 0 <= self.max_onset_frac < 1 or self.T < 2:
            raise DomainError("max_onset_frac must be in [0, 1) and T >= 2")
        if self.seed < 0:
            raise DomainError("seed must be non-negative")


@dataclass
class Scene:
    volume: TransientVolume
    truth: CompressedImage
    onset: np.ndarray
    mu_bound: float  # declared max |delta mu| between 4-neighbours


def parameter_ranges(k, K):
    """``(h, mu, sigma, tau)`` intervals for component ``k`` of ``K``."""
    if k == 0:
        return (0.6, 1.0), (0.01, 0.04), (0.008, 0.02), (0.01, 0.04)
    frac = k / K
    step = 0.6 / K
    mu_lo = 0.05 + step * (k - 1) + 0.1 * frac
    return ((0.15, 0.5),
            (mu_lo, mu_lo + step),
            (0.01 + 0.03 * frac, 0.03 + 0.05 * frac),
            (0.03 + 0.15 * frac, 0.08 + 0.3 * frac))


def _smooth_field(rng, W, H, length):
    kmax = 2.0 * math.pi / length
    amps = rng.uniform(0.2, 1.0, _N_WAVES)
    amps /= amps.sum()
    radius = kmax * np.sqrt(rng.uniform(0.0, 1.0, _N_WAVES))
    angle = rng.uniform(0.0, 2.0 * math.pi, _N_WAVES)
    phase = rng.uniform(0.0, 2.0 * math.pi, _N_WAVES)
    ii, jj = np.meshgrid(np.arange(W), np.arange(H), indexing="ij")
    acc = np.zeros((W, H))
    for a, r, th, ph in zip(amps, radius, angle, phase):
        acc += a * np.cos(r * (math.cos(th) * ii + math.sin(th) * jj) + ph)
    return 0.5 + 0.5 * acc


def generate_scene(spec):
    """Build a clean volume and its float32 ground-truth mixtures."""
    rng = np.random.default_rng([spec.seed, 7])
    W, H, T, K = spec.W, spec.H, spec.T, spec.K_true
    params = np.empty((W, H, 4, K))
    mu_bound = 0.0
    for k in range(K):
        for row, (lo, hi) in enumerate(parameter_ranges(k, K)):
            params[:, :, row, k] = lo + (hi - lo) * _smooth_field(rng, W, H,
                                                                  spec.spatial_smoothness)
            if row == 1:
                mu_bound = max(mu_bound, (hi - lo) * math.pi / spec.spatial_smoothness)
    params = params.astype(np.float32).astype(np.float64)
    max_onset = int(spec.max_onset_frac * T)
    onset = np.rint(max_onset * _smooth_field(rng, W, H, spec.spatial_smoothness)).astype(np.uint32)

    data = np.zeros((W, H, T), dtype=np.float32)
    for i in range(W):
        for j in range(H):
            s = int(onset[i, j])
            vals = mixture_values(bin_centers(T - s), params[i, j].T[None])[0]
            data[i, j, s:] = vals
    truth = CompressedImage(W=W, H=H, T=T, K=K, N=1, loss_kind="kld", flags=FLAG_GROUND_TRUTH,
                            t_start=onset.copy(), t_len=(T - onset).astype(np.uint32),
                            params=params, pixel_flags=np.full((W, H), PIXEL_CONVERGED, np.uint8))
    return Scene(TransientVolume(data), truth, onset, mu_bound)


def add_exposure_noise(volume, exposure_divisor, rng, intensity_scale=1e4):
    """Photon shot noise for an exposure ``exposure_divisor`` times shorter.

    Each bin becomes ``Poisson(value * scale / divisor) * divisor / scale``,
    which has the clean value as its mean and variance
    ``value * divisor / scale``.
    """
    if not exposure_divisor >= 1:
        raise DomainError("exposure_divisor must be >= 1")
    data = volume.data if isinstance(volume, TransientVolume) else np.asarray(volume)
    rate = intensity_scale / exposure_divisor
    counts = rng.poisson(data.astype(np.float64) * rate)
    return TransientVolume((counts / rate).astype(np.float32))
