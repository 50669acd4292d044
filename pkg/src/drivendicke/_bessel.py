"""Scalar J0 / J1 evaluators usable inside compiled kernels.

Piecewise Chebyshev interpolants (frozen tables, see
``tools/gen_bessel_tables.py``) cover x in [0, 16]; beyond that the classic
large-argument asymptotic series is summed to optimal truncation, which is
below 2e-15 for x > 16.  Absolute accuracy against scipy.special is a few
1e-14 everywhere, far tighter than any tolerance downstream.

Exact special values that the landscape invariants rely on:
``j0_scalar(0.0) == 1.0`` and ``j1_scalar(0.0) == 0.0``, and ``j1_scalar``
is exactly odd (evaluated on |x| with the sign applied afterwards).
"""

from __future__ import annotations

import math

from .accel import njit
from ._bessel_tables import J0_COEFFS, J0_LENS, J1_COEFFS, J1_LENS

_PIO4 = 0.25 * math.pi
_THPIO4 = 0.75 * math.pi
_TWO_OVER_PI = 2.0 / math.pi


@njit(cache=True)
def _cheb_eval(u, coeffs, n):
    b0 = 0.0
    b1 = 0.0
    for k in range(n - 1, 0, -1):
        b0, b1 = coeffs[k] + 2.0 * u * b0 - b1, b0
    return coeffs[0] + u * b0 - b1


@njit(cache=True)
def _hankel(x, nu):
    # cos/sin amplitude sums of the large-argument expansion, summed until
    # the terms stop shrinking (factorially divergent series).
    mu = 4.0 * nu * nu
    p = 1.0
    q = 0.0
    t = 1.0
    p_sign = -1.0
    q_sign = 1.0
    prev = 1.0e300
    for k in range(1, 60):
        odd = 2 * k - 1
        t = t * (mu - odd * odd) / (8.0 * k * x)
        at = abs(t)
        if at >= prev:
            break
        if k % 2 == 1:
            q += q_sign * t
            q_sign = -q_sign
        else:
            p += p_sign * t
            p_sign = -p_sign
        if at < 1e-18:
            break
        prev = at
    chi = x - (0.5 * nu + 0.25) * math.pi
    amp = math.sqrt(_TWO_OVER_PI / x)
    return amp * (math.cos(chi) * p - math.sin(chi) * q)


@njit(cache=True)
def j0_scalar(x):
    x = abs(x)
    if x < 1e-8:
        return 1.0 - 0.25 * x * x
    if x < 16.0:
        i = int(x * 0.25)
        if i > 3:
            i = 3
        u = 0.5 * (x - 4.0 * i) - 1.0
        return _cheb_eval(u, J0_COEFFS[i], J0_LENS[i])
    return _hankel(x, 0)


@njit(cache=True)
def j1_scalar(x):
    s = 1.0
    if x < 0.0:
        s = -1.0
        x = -x
    if x < 1e-8:
        return s * (0.5 * x - 0.0625 * x * x * x)
    if x < 16.0:
        i = int(x * 0.25)
        if i > 3:
            i = 3
        u = 0.5 * (x - 4.0 * i) - 1.0
        return s * _cheb_eval(u, J1_COEFFS[i], J1_LENS[i])
    return s * _hankel(x, 1)
