"""Complementary error function and its scaled form.

``erfcx(x) = exp(x**2) * erfc(x)`` is evaluated on ``[0, 12)`` from a
table of piecewise Chebyshev interpolants (see ``tools/gen_erfcx_table.py``)
and from a backward-evaluated Laplace continued fraction beyond that.
Negative arguments use the reflection ``erfc(-x) = 2 - erfc(x)``.

The scalar kernels are numba-compiled so the EMG kernel can inline them.
"""
import math

import numba as nb
import numpy as np

from ._erfcx_table import COEFFS, WIDTH, XMAX
from .errors import DomainError

__all__ = ["erfc", "erfcx"]

_TABLE = np.array(COEFFS, dtype=np.float64)
_INV_WIDTH = 1.0 / WIDTH
_INV_SQRT_PI = 1.0 / math.sqrt(math.pi)
# Fraction depth giving full double precision for x >= XMAX.
_CF_TERMS = 14
# Below this, 2*exp(x**2) overflows.
_NEG_OVERFLOW = -26.6


@nb.njit(cache=True, inline="always")
def _erfcx_nonneg(x):
    if x < XMAX:
        i = int(x * _INV_WIDTH)
        s = 2.0 * (x * _INV_WIDTH - i) - 1.0
        b1 = 0.0
        b2 = 0.0
        for j in range(_TABLE.shape[1] - 1, 0, -1):
            tmp = 2.0 * s * b1 - b2 + _TABLE[i, j]
            b2 = b1
            b1 = tmp
        return s * b1 - b2 + _TABLE[i, 0]
    f = x
    for k in range(_CF_TERMS, 0, -1):
        f = x + 0.5 * k / f
    return _INV_SQRT_PI / f


@nb.njit(cache=True)
def erfcx_scalar(x):
    if x >= 0.0:
        return _erfcx_nonneg(x)
    if x < _NEG_OVERFLOW:
        return math.inf
    return 2.0 * math.exp(x * x) - _erfcx_nonneg(-x)


@nb.njit(cache=True)
def erfc_scalar(x):
    if x >= 0.0:
        if x > 27.3:
            return 0.0
        return _erfcx_nonneg(x) * math.exp(-x * x)
    if x < -6.0:
        return 2.0
    return 2.0 - _erfcx_nonneg(-x) * math.exp(-x * x)


@nb.vectorize(["float64(float64)"], cache=True)
def _erfc_ufunc(x):
    return erfc_scalar(x)


@nb.vectorize(["float64(float64)"], cache=True)
def _erfcx_ufunc(x):
    return erfcx_scalar(x)


def _checked(x, name):
    arr = np.asarray(x, dtype=np.float64)
    if not np.all(np.isfinite(arr)):
        raise DomainError(f"{name} requires finite input")
    return arr


def erfc(x):
    """Complementary error function, ``2/sqrt(pi) * int_x^inf exp(-t**2) dt``.

    Accepts a scalar or array; returns the same shape (a Python float for
    scalar input). Absolute error is below 1e-15 on ``[-6, 27]``.

    Raises
    ------
    DomainError
        If any element is NaN or infinite.
    """
    arr = _checked(x, "erfc")
    out = _erfc_ufunc(arr)
    return float(out) if arr.ndim == 0 else out


def erfcx(x):
    """Scaled complementary error function ``exp(x**2) * erfc(x)``.

    Does not overflow for any finite ``x >= 0`` (``erfcx(1e8)`` is about
    ``5.6e-9``); returns ``inf`` where the true value exceeds the double
    range (``x < -26.6``).
    """
    arr = _checked(x, "erfcx")
    out = _erfcx_ufunc(arr)
    return float(out) if arr.ndim == 0 else out
