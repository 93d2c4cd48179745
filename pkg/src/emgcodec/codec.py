"""On-disk formats and reconstruction.

TRIV (raw volume), little-endian::

    b"TRIV" | u32 version=1 | u32 W | u32 H | u32 T | f32[W*H*T]

EMGC (compressed image), little-endian::

    b"EMGC" | u32 version=1 | u32 W | u32 H | u32 T | u32 K | u32 N
    | u8 loss_kind | u8 flags | u16 reserved=0
    | W*H records, row-major (i outer, j inner):
        u32 t_start | u32 t_len | f32 h[K] | f32 mu[K] | f32 sigma[K] | f32 tau[K]
        | u8 pixel_flags

Volume samples are ordered ``(i, j, t)`` with ``t`` fastest.
``pixel_flags`` bit 0 marks convergence, bit 1 a degenerate (all-zero)
pixel. Header ``flags`` bit 0 marks a ground-truth sidecar and bit 1
PMF-normalized losses.
"""
import struct
from dataclasses import dataclass, field

import numpy as np

from .emg import mixture_values
from .errors import DataError, FormatError, LengthError, ShapeError
from .preprocess import bin_centers

__all__ = [
    "TransientVolume",
    "CompressedImage",
    "read_volume",
    "write_volume",
    "encode",
    "decode",
    "reconstruct",
    "compression_ratio",
    "volume_nbytes",
    "compressed_nbytes",
    "FLAG_GROUND_TRUTH",
    "FLAG_NORMALIZED",
    "PIXEL_CONVERGED",
    "PIXEL_DEGENERATE",
]

VOLUME_MAGIC = b"TRIV"
IMAGE_MAGIC = b"EMGC"
VERSION = 1
_VOLUME_HEADER = struct.Struct("<4sIIII")
_IMAGE_HEADER = struct.Struct("<4sIIIIIIBBH")
LOSS_CODES = {"kld": 0, "mse": 1}

FLAG_GROUND_TRUTH = 1
FLAG_NORMALIZED = 2
PIXEL_CONVERGED = 1
PIXEL_DEGENERATE = 2

_F32_MU_MIN = float(np.nextafter(np.float32(0), np.float32(1)))
_F32_MU_MAX = float(np.nextafter(np.float32(1), np.float32(0)))
_F32_TINY = float(np.finfo(np.float32).tiny)


@dataclass
class TransientVolume:
    """A ``(W, H, T)`` float32 histogram volume."""

    data: np.ndarray

    def __post_init__(self):
        self.data = np.ascontiguousarray(self.data, dtype="<f4")
        if self.data.ndim != 3:
            raise ShapeError("volume data must be (W, H, T)")
        if self.data.size == 0:
            raise LengthError("empty volume")
        bad = ~np.isfinite(self.data) | (self.data < 0)
        if bad.any():
            idx = int(np.flatnonzero(bad.reshape(-1))[0])
            raise DataError(f"invalid sample at flat index {idx}", index=idx)

    @property
    def shape(self):
        return self.data.shape

    def __eq__(self, other):
        return (isinstance(other, TransientVolume) and self.shape == other.shape
                and self.data.tobytes() == other.data.tobytes())


@dataclass
class CompressedImage:
    """Per-pixel EMG mixtures plus the global header.

    ``params`` has shape ``(W, H, 4, K)`` in constrained space, rows
    ``h, mu, sigma, tau``. ``pixel_loss`` is diagnostic and is not
    serialized.
    """

    W: int
    H: int
    T: int
    K: int
    N: int
    loss_kind: str
    flags: int
    t_start: np.ndarray
    t_len: np.ndarray
    params: np.ndarray
    pixel_flags: np.ndarray
    pixel_loss: np.ndarray = field(default=None, compare=False)

    @property
    def converged(self):
        return (self.pixel_flags & PIXEL_CONVERGED).astype(bool)

    @property
    def degenerate(self):
        return (self.pixel_flags & PIXEL_DEGENERATE).astype(bool)

    def __eq__(self, other):
        if not isinstance(other, CompressedImage):
            return NotImplemented
        return encode(self) == encode(other)


def volume_nbytes(W, H, T):
    return _VOLUME_HEADER.size + 4 * W * H * T


def record_nbytes(K):
    return 4 * 4 * K + 8 + 1


def compressed_nbytes(W, H, K):
    return _IMAGE_HEADER.size + W * H * record_nbytes(K)


def write_volume(volume):
    data = volume.data if isinstance(volume, TransientVolume) else TransientVolume(volume).data
    W, H, T = data.shape
    return _VOLUME_HEADER.pack(VOLUME_MAGIC, VERSION, W, H, T) + data.tobytes()


def read_volume(buf):
    buf = bytes(buf)
    if len(buf) < _VOLUME_HEADER.size:
        raise LengthError("truncated TRIV header")
    magic, version, W, H, T = _VOLUME_HEADER.unpack_from(buf)
    if magic != VOLUME_MAGIC:
        raise FormatError(f"bad magic {magic!r}")
    if version != VERSION:
        raise FormatError(f"unsupported TRIV version {version}")
    if W * H * T == 0:
        raise LengthError("TRIV volume has a zero dimension")
    expected = volume_nbytes(W, H, T)
    if len(buf) != expected:
        raise LengthError(f"TRIV stream has {len(buf)} bytes, expected {expected}")
    data = np.frombuffer(buf, dtype="<f4", offset=_VOLUME_HEADER.size).reshape(W, H, T)
    return TransientVolume(data.copy())


def _storable(params):
    """Clamp constrained parameters so they stay valid after float32 rounding."""
    p = np.asarray(params, dtype=np.float64).copy()
    p[:, :, 1] = np.clip(p[:, :, 1], _F32_MU_MIN, _F32_MU_MAX)
    for row in (0, 2, 3):
        p[:, :, row] = np.maximum(p[:, :, row], _F32_TINY)
    return p.astype("<f4")


def encode(image):
    c = image
    if c.t_start.shape != (c.W, c.H) or c.params.shape != (c.W, c.H, 4, c.K):
        raise ShapeError("model arrays do not match the header")
    if c.loss_kind not in LOSS_CODES:
        raise ShapeError(f"unknown loss kind {c.loss_kind!r}")
    header = _IMAGE_HEADER.pack(IMAGE_MAGIC, VERSION, c.W, c.H, c.T, c.K, c.N,
                                LOSS_CODES[c.loss_kind], c.flags, 0)
    rec = np.dtype([("t_start", "<u4"), ("t_len", "<u4"), ("params", "<f4", (4 * c.K,)),
                    ("flags", "u1")])
    records = np.zeros(c.W * c.H, dtype=rec)
    records["t_start"] = np.asarray(c.t_start).reshape(-1)
    records["t_len"] = np.asarray(c.t_len).reshape(-1)
    records["params"] = _storable(c.params).reshape(c.W * c.H, 4 * c.K)
    records["flags"] = np.asarray(c.pixel_flags).reshape(-1)
    return header + records.tobytes()


def decode(buf):
    buf = bytes(buf)
    if len(buf) < _IMAGE_HEADER.size:
        raise LengthError("truncated EMGC header")
    magic, version, W, H, T, K, N, loss_code, flags, _ = _IMAGE_HEADER.unpack_from(buf)
    if magic != IMAGE_MAGIC:
        raise FormatError(f"bad magic {magic!r}")
    if version != VERSION:
        raise FormatError(f"unsupported EMGC version {version}")
    codes = {v: k for k, v in LOSS_CODES.items()}
    if loss_code not in codes:
        raise FormatError(f"unknown loss code {loss_code}")
    if W * H * T * K == 0:
        raise LengthError("EMGC header has a zero dimension")
    expected = compressed_nbytes(W, H, K)
    if len(buf) != expected:
        raise LengthError(f"EMGC stream has {len(buf)} bytes, expected {expected}")
    rec = np.dtype([("t_start", "<u4"), ("t_len", "<u4"), ("params", "<f4", (4 * K,)),
                    ("flags", "u1")])
    records = np.frombuffer(buf, dtype=rec, offset=_IMAGE_HEADER.size)
    t_start = records["t_start"].reshape(W, H).copy()
    t_len = records["t_len"].reshape(W, H).copy()
    params = records["params"].reshape(W, H, 4, K).astype(np.float64)
    pixel_flags = records["flags"].reshape(W, H).copy()

    bad_remap = (t_len < 1) | (t_start.astype(np.int64) + t_len != T)
    if bad_remap.any():
        idx = int(np.flatnonzero(bad_remap.reshape(-1))[0])
        raise DataError(f"pixel {idx} has an inconsistent (t_start, t_len)", index=idx)
    h, mu, sigma, tau = (params[:, :, r, :] for r in range(4))
    bad = (~np.isfinite(params).all(axis=2) | (h <= 0) | (sigma <= 0) | (tau <= 0)
           | (mu <= 0) | (mu >= 1))
    if bad.any():
        idx = int(np.flatnonzero(bad.any(axis=-1).reshape(-1))[0])
        raise DataError(f"pixel {idx} has invalid EMG parameters", index=idx)
    return CompressedImage(W, H, T, K, N, codes[loss_code], flags, t_start, t_len, params,
                           pixel_flags)


def reconstruct(image):
    """Evaluate every pixel mixture at its bin centres and undo the clipping."""
    c = image
    out = np.zeros((c.W, c.H, c.T))
    for i in range(c.W):
        for j in range(c.H):
            s = int(c.t_start[i, j])
            n = int(c.t_len[i, j])
            params = np.asarray(c.params[i, j], dtype=np.float64).T[None]
            out[i, j, s:] = mixture_values(bin_centers(n), params)[0]
    return TransientVolume(out.astype(np.float32))


def compression_ratio(T, K, N=None):
    """``T / (4K + 2)`` per pixel, or ``N^2 T / (N^2 4K + 2)`` for a shared window remap."""
    if N is None:
        return T / (4 * K + 2)
    return (N * N * T) / (N * N * 4 * K + 2)
