"""Regenerate ``src/emgcodec/_erfcx_table.py``.

Chebyshev interpolants of erfcx on [0, 12) in half-unit pieces, computed
with mpmath at 40 digits. Run from the repository root::

    python tools/gen_erfcx_table.py
"""
from pathlib import Path

import mpmath as mp

WIDTH = 0.5
XMAX = 12.0
DEGREE = 15

mp.mp.dps = 40


def erfcx_mp(x):
    x = mp.mpf(x)
    return mp.exp(x * x) * mp.erfc(x)


def cheb_coeffs(a, b, deg):
    n = deg + 1
    nodes = [mp.cos(mp.pi * (k + mp.mpf(1) / 2) / n) for k in range(n)]
    vals = [erfcx_mp((b - a) / 2 * s + (a + b) / 2) for s in nodes]
    coeffs = []
    for j in range(n):
        acc = sum(vals[k] * mp.cos(mp.pi * j * (k + mp.mpf(1) / 2) / n) for k in range(n))
        coeffs.append(acc * 2 / n)
    coeffs[0] /= 2
    return [float(c) for c in coeffs]


def main():
    pieces = int(round(XMAX / WIDTH))
    rows = [cheb_coeffs(i * WIDTH, (i + 1) * WIDTH, DEGREE) for i in range(pieces)]
    out = Path(__file__).resolve().parents[1] / "src" / "emgcodec" / "_erfcx_table.py"
    lines = [
        "# Generated by tools/gen_erfcx_table.py; do not edit.",
        f"# Chebyshev coefficients of erfcx on [{WIDTH}*i, {WIDTH}*(i+1)), degree {DEGREE}.",
        f"WIDTH = {WIDTH!r}",
        f"XMAX = {XMAX!r}",
        "COEFFS = (",
    ]
    for row in rows:
        lines.append("    (" + ", ".join(repr(c) for c in row) + "),")
    lines.append(")")
    out.write_text("\n".join(lines) + "\n")


if __name__ == "__main__":
    main()
