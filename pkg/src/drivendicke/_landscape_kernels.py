"""Quasienergy landscape kernels: energy, gradient, multistart descent.

The landscape over the scaled field/atom displacements (X, Y) is

    E(X, Y) = c1 Y^2 (2 - Y^2) - c2 X Y sqrt(2 - Y^2) + omega X^2
              + omega0 (Y^2 - 1) J0(c3 X),

    c1 = omega (dg/Omega)^2,  c2 = 2 sqrt(2) g,  c3 = 2 sqrt(2) dg / Omega,

defined for |Y| <= sqrt(2).  Each seed runs Armijo-backtracked gradient
descent (one trial per iteration, step doubling on success) down to a coarse
gradient norm, then a damped Newton polish on the finite-difference Hessian
pushes the gradient norm below the final tolerance.  Newton could in
principle park on a saddle, so callers must keep only points whose Hessian
is positive definite; the descent phase itself never climbs.

Output layout per seed: (X, Y, E, gnorm, status, max_inc) with status 0 for
converged and 1 for discarded, and max_inc the largest energy increase over
any accepted move (<= 0 in the descent phase by construction, tiny roundoff
at most during polish).

The numpy twin implements the same trial schedule vectorized over seeds;
tests assert both paths find identical minima.
"""

from __future__ import annotations

import math

import numpy as np
from scipy import special

from .accel import njit, prange
from ._bessel import j0_scalar, j1_scalar

STATUS_OK = 0
STATUS_FAILED = 1

_WALL = math.sqrt(2.0) - 1e-9
_FD_H = 1e-6
_ARMIJO_C = 1e-4
_T_GROW = 1.6
_T_SHRINK = 0.5
_T_FLOOR = 1e-18
_POLISH_MAX = 30


@njit(cache=True)
def energy_scalar(x, y, omega, omega0, c1, c2, c3):
    y2 = y * y
    # 2 - y2 can round to -eps on the closed-disc boundary |y| = sqrt(2)
    s = math.sqrt(max(2.0 - y2, 0.0))
    return (
        c1 * y2 * (2.0 - y2)
        - c2 * x * y * s
        + omega * x * x
        + omega0 * (y2 - 1.0) * j0_scalar(c3 * x)
    )


@njit(cache=True)
def grad_scalar(x, y, omega, omega0, c1, c2, c3):
    y2 = y * y
    s = math.sqrt(2.0 - y2)
    u = c3 * x
    gx = -c2 * y * s + 2.0 * omega * x - omega0 * (y2 - 1.0) * j1_scalar(u) * c3
    gy = (
        4.0 * c1 * y * (1.0 - y2)
        - c2 * x * 2.0 * (1.0 - y2) / s
        + 2.0 * omega0 * y * j0_scalar(u)
    )
    return gx, gy


@njit(cache=True)
def _fd_hessian(x, y, omega, omega0, c1, c2, c3):
    h = _FD_H
    gxp, gyp = grad_scalar(x + h, y, omega, omega0, c1, c2, c3)
    gxm, gym = grad_scalar(x - h, y, omega, omega0, c1, c2, c3)
    hxx = (gxp - gxm) / (2.0 * h)
    hyx = (gyp - gym) / (2.0 * h)
    gxp, gyp = grad_scalar(x, y + h, omega, omega0, c1, c2, c3)
    gxm, gym = grad_scalar(x, y - h, omega, omega0, c1, c2, c3)
    hxy = (gxp - gxm) / (2.0 * h)
    hyy = (gyp - gym) / (2.0 * h)
    off = 0.5 * (hxy + hyx)
    return hxx, off, hyy


@njit(cache=True)
def _descend_seed(x0, y0, omega, omega0, c1, c2, c3, tol_grad, tol_coarse, max_iter):
    x = x0
    y = y0
    f = energy_scalar(x, y, omega, omega0, c1, c2, c3)
    t = 1.0
    max_inc = -1.0e300
    gx, gy = grad_scalar(x, y, omega, omega0, c1, c2, c3)
    gnorm = math.sqrt(gx * gx + gy * gy)
    reached_coarse = gnorm < tol_coarse
    trials = 0
    while not reached_coarse:
        if trials >= max_iter or t < _T_FLOOR:
            return x, y, f, gnorm, STATUS_FAILED, max_inc
        trials += 1
        xn = x - t * gx
        yn = y - t * gy
        if abs(yn) < _WALL:
            fn = energy_scalar(xn, yn, omega, omega0, c1, c2, c3)
            if fn <= f - _ARMIJO_C * t * (gx * gx + gy * gy):
                if fn - f > max_inc:
                    max_inc = fn - f
                x = xn
                y = yn
                f = fn
                t = min(t * _T_GROW, 1.0e6)
                gx, gy = grad_scalar(x, y, omega, omega0, c1, c2, c3)
                gnorm = math.sqrt(gx * gx + gy * gy)
                reached_coarse = gnorm < tol_coarse
                continue
        t *= _T_SHRINK

    # Newton polish on the FD Hessian; one extra step after crossing the
    # final tolerance tightens the cluster spread for deduplication.
    done_once = False
    for _ in range(_POLISH_MAX):
        if gnorm < tol_grad and done_once:
            return x, y, f, gnorm, STATUS_OK, max_inc
        if gnorm < tol_grad:
            done_once = True
        hxx, hxy, hyy = _fd_hessian(x, y, omega, omega0, c1, c2, c3)
        det = hxx * hyy - hxy * hxy
        if not (abs(det) > 1e-300 and math.isfinite(det)):
            break
        dx = (hyy * gx - hxy * gy) / det
        dy = (hxx * gy - hxy * gx) / det
        tau = 1.0
        improved = False
        for _ in range(10):
            xn = x - tau * dx
            yn = y - tau * dy
            if abs(yn) < _WALL:
                gxn, gyn = grad_scalar(xn, yn, omega, omega0, c1, c2, c3)
                gn = math.sqrt(gxn * gxn + gyn * gyn)
                if gn < gnorm:
                    fn = energy_scalar(xn, yn, omega, omega0, c1, c2, c3)
                    if fn - f > max_inc:
                        max_inc = fn - f
                    x = xn
                    y = yn
                    f = fn
                    gx = gxn
                    gy = gyn
                    gnorm = gn
                    improved = True
                    break
            tau *= 0.5
        if not improved:
            break
    if gnorm < tol_grad:
        return x, y, f, gnorm, STATUS_OK, max_inc
    return x, y, f, gnorm, STATUS_FAILED, max_inc


@njit(cache=True, parallel=True)
def multistart_numba(seed_x, seed_y, omega, omega0, c1, c2, c3, tol_grad, tol_coarse, max_iter):
    n = seed_x.shape[0]
    out = np.empty((n, 6))
    for i in prange(n):
        x, y, f, gn, st, inc = _descend_seed(
            seed_x[i], seed_y[i], omega, omega0, c1, c2, c3, tol_grad, tol_coarse, max_iter
        )
        out[i, 0] = x
        out[i, 1] = y
        out[i, 2] = f
        out[i, 3] = gn
        out[i, 4] = st
        out[i, 5] = inc
    return out


# ---------------------------------------------------------------------------
# numpy twin


def energy_numpy(x, y, omega, omega0, c1, c2, c3):
    x = np.asarray(x)
    y = np.asarray(y)
    y2 = y * y
    # 2 - y2 can round to -eps on the closed-disc boundary |y| = sqrt(2)
    s = np.sqrt(np.maximum(2.0 - y2, 0.0))
    return (
        c1 * y2 * (2.0 - y2)
        - c2 * x * y * s
        + omega * x * x
        + omega0 * (y2 - 1.0) * special.j0(c3 * x)
    )


def grad_numpy(x, y, omega, omega0, c1, c2, c3):
    x = np.asarray(x)
    y = np.asarray(y)
    y2 = y * y
    s = np.sqrt(2.0 - y2)
    u = c3 * x
    gx = -c2 * y * s + 2.0 * omega * x - omega0 * (y2 - 1.0) * special.j1(u) * c3
    gy = 4.0 * c1 * y * (1.0 - y2) - c2 * x * 2.0 * (1.0 - y2) / s + 2.0 * omega0 * y * special.j0(u)
    return gx, gy


def _fd_hessian_numpy(x, y, omega, omega0, c1, c2, c3):
    h = _FD_H
    gxp, gyp = grad_numpy(x + h, y, omega, omega0, c1, c2, c3)
    gxm, gym = grad_numpy(x - h, y, omega, omega0, c1, c2, c3)
    hxx = (gxp - gxm) / (2.0 * h)
    hyx = (gyp - gym) / (2.0 * h)
    gxp, gyp = grad_numpy(x, y + h, omega, omega0, c1, c2, c3)
    gxm, gym = grad_numpy(x, y - h, omega, omega0, c1, c2, c3)
    hxy = (gxp - gxm) / (2.0 * h)
    hyy = (gyp - gym) / (2.0 * h)
    return hxx, 0.5 * (hxy + hyx), hyy


def multistart_numpy(seed_x, seed_y, omega, omega0, c1, c2, c3, tol_grad, tol_coarse, max_iter):
    n = seed_x.shape[0]
    x = seed_x.astype(float).copy()
    y = seed_y.astype(float).copy()
    f = energy_numpy(x, y, omega, omega0, c1, c2, c3)
    t = np.ones(n)
    max_inc = np.full(n, -1.0e300)
    status = np.full(n, STATUS_FAILED, dtype=np.int64)
    gx, gy = grad_numpy(x, y, omega, omega0, c1, c2, c3)
    gnorm = np.hypot(gx, gy)

    active = gnorm >= tol_coarse
    for _ in range(max_iter):
        idx = np.flatnonzero(active & (t >= _T_FLOOR))
        if idx.size == 0:
            break
        xn = x[idx] - t[idx] * gx[idx]
        yn = y[idx] - t[idx] * gy[idx]
        ok = np.abs(yn) < _WALL
        fn = np.where(ok, energy_numpy(np.where(ok, xn, 0.0), np.where(ok, yn, 0.0),
                                       omega, omega0, c1, c2, c3), np.inf)
        g2 = gx[idx] ** 2 + gy[idx] ** 2
        accept = fn <= f[idx] - _ARMIJO_C * t[idx] * g2
        acc = idx[accept]
        rej = idx[~accept]
        if acc.size:
            max_inc[acc] = np.maximum(max_inc[acc], fn[accept] - f[acc])
            x[acc] = xn[accept]
            y[acc] = yn[accept]
            f[acc] = fn[accept]
            t[acc] = np.minimum(t[acc] * _T_GROW, 1.0e6)
            gx[acc], gy[acc] = grad_numpy(x[acc], y[acc], omega, omega0, c1, c2, c3)
            gnorm[acc] = np.hypot(gx[acc], gy[acc])
            active[acc] = gnorm[acc] >= tol_coarse
        t[rej] *= _T_SHRINK
    coarse_ok = ~active

    # vectorized Newton polish
    idx = np.flatnonzero(coarse_ok)
    tau = np.ones(n)
    done_once = np.zeros(n, dtype=bool)
    finished = np.zeros(n, dtype=bool)
    for _ in range(_POLISH_MAX * 10):
        live = np.flatnonzero(coarse_ok & ~finished)
        if live.size == 0:
            break
        below = gnorm[live] < tol_grad
        finished[live[below & done_once[live]]] = True
        done_once[live] |= below
        live = np.flatnonzero(coarse_ok & ~finished)
        if live.size == 0:
            break
        hxx, hxy, hyy = _fd_hessian_numpy(x[live], y[live], omega, omega0, c1, c2, c3)
        det = hxx * hyy - hxy * hxy
        bad = ~(np.abs(det) > 1e-300) | ~np.isfinite(det)
        det = np.where(bad, 1.0, det)
        dx = (hyy * gx[live] - hxy * gy[live]) / det
        dy = (hxx * gy[live] - hxy * gx[live]) / det
        xn = x[live] - tau[live] * dx
        yn = y[live] - tau[live] * dy
        ok = (np.abs(yn) < _WALL) & ~bad
        gxn, gyn = grad_numpy(np.where(ok, xn, 0.0), np.where(ok, yn, 0.0),
                              omega, omega0, c1, c2, c3)
        gn = np.where(ok, np.hypot(gxn, gyn), np.inf)
        better = gn < gnorm[live]
        upd = live[better]
        if upd.size:
            fn = energy_numpy(xn[better], yn[better], omega, omega0, c1, c2, c3)
            max_inc[upd] = np.maximum(max_inc[upd], fn - f[upd])
            x[upd] = xn[better]
            y[upd] = yn[better]
            f[upd] = fn
            gx[upd] = gxn[better]
            gy[upd] = gyn[better]
            gnorm[upd] = gn[better]
            tau[upd] = 1.0
        worse = live[~better]
        tau[worse] *= 0.5
        finished[worse[tau[worse] < 1e-4]] = True
        finished[live[bad]] = True
    status[coarse_ok & (gnorm < tol_grad)] = STATUS_OK

    out = np.empty((n, 6))
    out[:, 0] = x
    out[:, 1] = y
    out[:, 2] = f
    out[:, 3] = gnorm
    out[:, 4] = status
    out[:, 5] = max_inc
    return out
