"""Hand-assemble the golden codec fixtures in tests/fixtures.

Byte layouts are written field by field with ``struct`` so the fixtures
do not depend on the package's own encoder. The reconstructed volume of
the EMGC fixture is evaluated with mpmath at 40 digits.
"""
import struct
from pathlib import Path

import mpmath as mp

OUT = Path(__file__).resolve().parents[1] / "tests" / "fixtures"

# 2x2x4 volume, value at (i, j, t) = i + 10 j + 0.25 t (t fastest)
W, H, T = 2, 2, 4
vol = struct.pack("<4sIIII", b"TRIV", 1, W, H, T)
for i in range(W):
    for j in range(H):
        for t in range(T):
            vol += struct.pack("<f", i + 10 * j + 0.25 * t)
(OUT / "volume_2x2x4.triv").write_bytes(vol)

# one pixel, K=2, T=6, clipped at t_start=2
K, N, T = 2, 1, 6
t_start, t_len = 2, 4
h = (1.0, 0.5)
mu = (0.25, 0.625)
sigma = (0.0625, 0.125)
tau = (0.125, 0.25)
emgc = struct.pack("<4sIIIIIIBBH", b"EMGC", 1, 1, 1, T, K, N, 0, 0, 0)
emgc += struct.pack("<II", t_start, t_len)
emgc += struct.pack("<8f", *h, *mu, *sigma, *tau)
emgc += struct.pack("<B", 1)
(OUT / "pixel_k2.emgc").write_bytes(emgc)


def emg(t, h, mu, s, tau):
    r = s / tau
    return (h * r * mp.sqrt(mp.pi / 2) * mp.exp(r * r / 2 - (t - mu) / tau)
            * mp.erfc((r - (t - mu) / s) / mp.sqrt(2)))


mp.mp.dps = 40
values = [0.0] * t_start
for b in range(t_len):
    t = (mp.mpf(b) + mp.mpf("0.5")) / t_len
    values.append(float(sum(emg(t, *c) for c in zip(h, mu, sigma, tau))))
recon = struct.pack("<4sIIII", b"TRIV", 1, 1, 1, T) + struct.pack(f"<{T}f", *values)
(OUT / "pixel_k2.triv").write_bytes(recon)
