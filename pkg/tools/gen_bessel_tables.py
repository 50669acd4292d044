"""Regenerate the Chebyshev tables in ``src/drivendicke/_bessel_tables.py``.

The compiled kernels cannot call scipy.special, so J0 and J1 are evaluated
from piecewise Chebyshev interpolants on [0, 16] (four segments of length 4)
plus the standard large-argument asymptotic series beyond 16.  This script
fits the interpolants against scipy, verifies them on a dense grid, and
writes the table module.  Run it from the repository root:

    python tools/gen_bessel_tables.py
"""

from __future__ import annotations

import pathlib

import numpy as np
from numpy.polynomial import chebyshev
from scipy import special

SEG_EDGES = [0.0, 4.0, 8.0, 12.0, 16.0]
DEG = 40
TRIM = 1e-15


def fit_segment(func, a: float, b: float) -> np.ndarray:
    def on_unit(u):
        return func(0.5 * (b - a) * (np.asarray(u) + 1.0) + a)

    c = chebyshev.chebinterpolate(on_unit, DEG)
    keep = len(c)
    while keep > 1 and abs(c[keep - 1]) < TRIM:
        keep -= 1
    return c[:keep]


def clenshaw(u, c):
    b0 = np.zeros_like(u)
    b1 = np.zeros_like(u)
    for k in range(len(c) - 1, 0, -1):
        b0, b1 = c[k] + 2.0 * u * b0 - b1, b0
    return c[0] + u * b0 - b1


def check(func, segs, name):
    worst = 0.0
    for i in range(4):
        a, b = SEG_EDGES[i], SEG_EDGES[i + 1]
        x = np.linspace(a, b, 20001)
        u = (2.0 * x - (a + b)) / (b - a)
        err = np.max(np.abs(clenshaw(u, segs[i]) - func(x)))
        worst = max(worst, err)
    print(f"{name}: worst abs error on [0,16] = {worst:.3e}")
    if worst > 2.5e-14:
        raise SystemExit(f"{name} fit did not reach target accuracy")
    return worst


def emit(path: pathlib.Path, j0_segs, j1_segs) -> None:
    maxlen = max(len(c) for c in j0_segs + j1_segs)

    def table(segs):
        rows = []
        for c in segs:
            padded = list(c) + [0.0] * (maxlen - len(c))
            rows.append("    [" + ", ".join(repr(float(v)) for v in padded) + "],")
        return "\n".join(rows)

    lens0 = ", ".join(str(len(c)) for c in j0_segs)
    lens1 = ", ".join(str(len(c)) for c in j1_segs)
    body = f'''"""Chebyshev tables for the compiled J0/J1 kernels.

Generated by tools/gen_bessel_tables.py against the installed scipy; do not
edit by hand.  Segments cover x in [0,4], [4,8], [8,12], [12,16].
"""

import numpy as np

SEG_WIDTH = 4.0
N_SEGS = 4

J0_COEFFS = np.array([
{table(j0_segs)}
])
J0_LENS = np.array([{lens0}], dtype=np.int64)

J1_COEFFS = np.array([
{table(j1_segs)}
])
J1_LENS = np.array([{lens1}], dtype=np.int64)
'''
    path.write_text(body)
    print(f"wrote {path}")


def main() -> None:
    j0_segs = [fit_segment(special.j0, SEG_EDGES[i], SEG_EDGES[i + 1]) for i in range(4)]
    j1_segs = [fit_segment(special.j1, SEG_EDGES[i], SEG_EDGES[i + 1]) for i in range(4)]
    check(special.j0, j0_segs, "J0")
    check(special.j1, j1_segs, "J1")
    out = pathlib.Path(__file__).resolve().parents[1] / "src" / "drivendicke" / "_bessel_tables.py"
    emit(out, j0_segs, j1_segs)


if __name__ == "__main__":
    main()
