"""The compiled kernels cannot call scipy, so segment-Chebyshev/asymptotic
Bessel evaluators live in _bessel.py; scipy is the oracle here."""

import numpy as np
import scipy.special
from hypothesis import given, settings
from hypothesis import strategies as st

from drivendicke._bessel import j0_scalar, j1_scalar

ABS_TOL = 5e-14


def test_special_values_exact():
    assert j0_scalar(0.0) == 1.0
    assert j1_scalar(0.0) == 0.0


def test_dense_sweep_against_scipy():
    xs = np.linspace(-60.0, 60.0, 30001)
    j0 = np.array([j0_scalar(x) for x in xs])
    j1 = np.array([j1_scalar(x) for x in xs])
    assert np.abs(j0 - scipy.special.j0(xs)).max() < ABS_TOL
    assert np.abs(j1 - scipy.special.j1(xs)).max() < ABS_TOL


@given(st.floats(min_value=-500.0, max_value=500.0, allow_nan=False))
@settings(max_examples=300, deadline=None)
def test_pointwise_against_scipy(x):
    assert abs(j0_scalar(x) - scipy.special.j0(x)) < ABS_TOL
    assert abs(j1_scalar(x) - scipy.special.j1(x)) < ABS_TOL


@given(st.floats(min_value=0.0, max_value=200.0, allow_nan=False))
@settings(max_examples=200, deadline=None)
def test_parity(x):
    assert j0_scalar(-x) == j0_scalar(x)
    assert j1_scalar(-x) == -j1_scalar(x)


def test_segment_joints_are_smooth():
    # the Chebyshev tables switch segments at multiples of 4 and hand over
    # to the asymptotic series at 16; no jump may be visible at tolerance
    for edge in (4.0, 8.0, 12.0, 16.0):
        lo = np.nextafter(edge, 0.0)
        hi = np.nextafter(edge, np.inf)
        assert abs(j0_scalar(lo) - j0_scalar(hi)) < 1e-13
        assert abs(j1_scalar(lo) - j1_scalar(hi)) < 1e-13
