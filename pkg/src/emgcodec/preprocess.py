"""Leading-zero clipping and the normalized time axis.

A pixel's histogram is clipped at its first strictly positive bin
``t_start`` and the remaining ``t_len = T - t_start`` bins are mapped to
bin centres ``(b + 0.5) / t_len`` in (0, 1).
"""
from dataclasses import dataclass

import numpy as np

from .errors import DegenerateWindowError, DomainError

__all__ = [
    "TimeRemap",
    "bin_centers",
    "first_nonzero",
    "clip_normalize",
    "window_remap",
    "denormalize",
    "degenerate_remap",
]


@dataclass(frozen=True)
class TimeRemap:
    t_start: int
    t_len: int

    def __post_init__(self):
        if self.t_start < 0 or self.t_len < 1:
            raise DomainError(f"invalid remap t_start={self.t_start} t_len={self.t_len}")

    @property
    def T(self):
        return self.t_start + self.t_len


def bin_centers(t_len):
    return (np.arange(t_len, dtype=np.float64) + 0.5) / t_len


def first_nonzero(raw):
    """Index of the first bin ``> 0``, or ``None`` for an all-zero vector."""
    idx = np.flatnonzero(np.asarray(raw) > 0)
    return int(idx[0]) if idx.size else None


def degenerate_remap(T):
    return TimeRemap(T - 1, 1)


def clip_normalize(raw):
    """Clip leading zeros.

    Returns ``(remap, signal)``. An all-zero vector yields the degenerate
    remap ``(T - 1, 1)`` and the one-bin signal ``[0.0]``.
    """
    raw = np.asarray(raw, dtype=np.float64)
    if raw.ndim != 1 or raw.size == 0:
        raise DomainError("expected a non-empty 1-D histogram")
    start = first_nonzero(raw)
    if start is None:
        return degenerate_remap(raw.size), np.zeros(1)
    return TimeRemap(start, raw.size - start), raw[start:].copy()


def window_remap(raws):
    """Clip an ``(n, m, T)`` block of histograms at their shared onset.

    The shared ``t_start`` is the minimum first-nonzero index over the
    block. Raises :class:`DegenerateWindowError` if the block is all zero.
    """
    raws = np.asarray(raws, dtype=np.float64)
    if raws.ndim != 3:
        raise DomainError("expected an (n, m, T) block")
    any_pos = np.any(raws > 0, axis=(0, 1))
    if not any_pos.any():
        raise DegenerateWindowError("window contains no nonzero sample")
    start = int(np.argmax(any_pos))
    T = raws.shape[2]
    return TimeRemap(start, T - start), raws[:, :, start:].copy()


def denormalize(remap, values):
    """Place ``t_len`` model values back on the full length-``T`` axis."""
    values = np.asarray(values, dtype=np.float64)
    if values.shape[-1] != remap.t_len:
        raise DomainError(f"expected {remap.t_len} values, got {values.shape[-1]}")
    out = np.zeros(values.shape[:-1] + (remap.T,))
    out[..., remap.t_start:] = values
    return out
