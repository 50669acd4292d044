"""Monodromy integration kernels (compiled scalar loop + numpy twin).

Both paths integrate

    q'' + [eps2 + drive * cos(Omega t)] q = 0

over one drive period with fixed-step RK4, propagating the two canonical
initial conditions (1,0) and (0,1) in a single pass.  The columns of the
monodromy matrix are the final (q, q') pairs.  Output layout per cell is
eight numbers: (q1, p1, q2, p2) for the + mode then the same for the -
mode.  The twin implementations use the same step layout, so they agree to
roundoff-accumulation level; tests pin that down.
"""

from __future__ import annotations

import math

import numpy as np

from .accel import njit, prange


@njit(cache=True)
def _monodromy_cell(eps2, drive, Omega, steps):
    T = 2.0 * math.pi / Omega
    h = T / steps
    q1 = 1.0
    p1 = 0.0
    q2 = 0.0
    p2 = 1.0
    w_a = eps2 + drive  # cos(0) = 1
    for i in range(steps):
        t = i * h
        w_m = eps2 + drive * math.cos(Omega * (t + 0.5 * h))
        w_b = eps2 + drive * math.cos(Omega * (t + h))

        k1q = p1
        k1p = -w_a * q1
        k2q = p1 + 0.5 * h * k1p
        k2p = -w_m * (q1 + 0.5 * h * k1q)
        k3q = p1 + 0.5 * h * k2p
        k3p = -w_m * (q1 + 0.5 * h * k2q)
        k4q = p1 + h * k3p
        k4p = -w_b * (q1 + h * k3q)
        q1 += h / 6.0 * (k1q + 2.0 * k2q + 2.0 * k3q + k4q)
        p1 += h / 6.0 * (k1p + 2.0 * k2p + 2.0 * k3p + k4p)

        k1q = p2
        k1p = -w_a * q2
        k2q = p2 + 0.5 * h * k1p
        k2p = -w_m * (q2 + 0.5 * h * k1q)
        k3q = p2 + 0.5 * h * k2p
        k3p = -w_m * (q2 + 0.5 * h * k2q)
        k4q = p2 + h * k3p
        k4p = -w_b * (q2 + h * k3q)
        q2 += h / 6.0 * (k1q + 2.0 * k2q + 2.0 * k3q + k4q)
        p2 += h / 6.0 * (k1p + 2.0 * k2p + 2.0 * k3p + k4p)

        w_a = w_b
    return q1, p1, q2, p2


@njit(cache=True, parallel=True)
def monodromy_grid_numba(g_flat, om_flat, dg, Omega, steps):
    n = g_flat.shape[0]
    out = np.empty((n, 8))
    for i in prange(n):
        g = g_flat[i]
        om = om_flat[i]
        for s in range(2):
            sign = 1.0 if s == 0 else -1.0
            eps2 = om * om + sign * 2.0 * g * om
            drive = sign * 2.0 * om * dg
            q1, p1, q2, p2 = _monodromy_cell(eps2, drive, Omega, steps)
            out[i, 4 * s] = q1
            out[i, 4 * s + 1] = p1
            out[i, 4 * s + 2] = q2
            out[i, 4 * s + 3] = p2
    return out


def monodromy_grid_numpy(g_flat, om_flat, dg, Omega, steps):
    n = g_flat.shape[0]
    out = np.empty((n, 8))
    T = 2.0 * math.pi / Omega
    h = T / steps
    ts = np.arange(steps) * h
    cos_a = np.cos(Omega * ts)
    cos_m = np.cos(Omega * (ts + 0.5 * h))
    cos_b = np.cos(Omega * (ts + h))
    for s, sign in enumerate((1.0, -1.0)):
        eps2 = om_flat * om_flat + sign * 2.0 * g_flat * om_flat
        drive = sign * 2.0 * om_flat * dg
        q1 = np.ones(n)
        p1 = np.zeros(n)
        q2 = np.zeros(n)
        p2 = np.ones(n)
        for i in range(steps):
            w_a = eps2 + drive * cos_a[i]
            w_m = eps2 + drive * cos_m[i]
            w_b = eps2 + drive * cos_b[i]
            for q, p in ((q1, p1), (q2, p2)):
                k1q = p
                k1p = -w_a * q
                k2q = p + 0.5 * h * k1p
                k2p = -w_m * (q + 0.5 * h * k1q)
                k3q = p + 0.5 * h * k2p
                k3p = -w_m * (q + 0.5 * h * k2q)
                k4q = p + h * k3p
                k4p = -w_b * (q + h * k3q)
                q += h / 6.0 * (k1q + 2.0 * k2q + 2.0 * k3q + k4q)
                p += h / 6.0 * (k1p + 2.0 * k2p + 2.0 * k3p + k4p)
        out[:, 4 * s] = q1
        out[:, 4 * s + 1] = p1
        out[:, 4 * s + 2] = q2
        out[:, 4 * s + 3] = p2
    return out
