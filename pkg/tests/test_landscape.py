"""Time-averaged energy landscape over the (X, Y) order-parameter plane.

The static limit (dg = 0) has closed-form minima, which anchor the
multistart descent; the driven landscape is checked through parity, the
descent certificate (energies never increase along accepted paths) and
frozen minima censuses at one working point.
"""

import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from drivendicke import accel
from drivendicke.core import GridSpec, ModelParams
from drivendicke.errors import DomainError, NoBracket, SeedGridTooCoarse
from drivendicke.landscape import (
    PhaseLabel,
    Y_LIMIT,
    classify_phase,
    default_seed_grid,
    energy,
    find_minima,
    first_order_boundary,
    gradient,
    hessian_origin,
    section,
)


def params(g=0.0975, dg=0.0, omega=0.05):
    return ModelParams(omega=omega, omega0=omega, g=g, dg=dg, Omega=1.0)


def static_minimum(p):
    """Closed-form off-origin minimum of the undriven landscape."""
    mu = p.omega * p.omega0 / (4.0 * p.g * p.g)
    y = math.sqrt(1.0 - mu)
    x = math.sqrt(2.0) * p.g * y * math.sqrt(2.0 - y * y) / p.omega
    e = -p.omega0 * mu - (2.0 * p.g * p.g / p.omega) * (1.0 - mu * mu)
    return x, y, e


def test_origin_energy_is_exact():
    for dg in (0.0, 0.7, 2.5):
        assert energy(params(dg=dg), 0.0, 0.0) == -0.05


def test_energy_parity():
    rng = np.random.default_rng(7)
    x = rng.uniform(-3.0, 3.0, 200)
    y = rng.uniform(-0.9 * Y_LIMIT, 0.9 * Y_LIMIT, 200)
    p = params(dg=1.7)
    assert np.array_equal(energy(p, x, y), energy(p, -x, -y))


def test_static_energy_closed_form():
    # dg = 0 kills the Bessel and the Y^2(2 - Y^2) terms
    p = params(dg=0.0)
    rng = np.random.default_rng(11)
    x = rng.uniform(-3.0, 3.0, 50)
    y = rng.uniform(-1.2, 1.2, 50)
    expected = (
        p.omega * x * x
        + p.omega0 * (y * y - 1.0)
        - 2.0 * math.sqrt(2.0) * p.g * x * y * np.sqrt(2.0 - y * y)
    )
    assert np.allclose(energy(p, x, y), expected, rtol=0.0, atol=1e-14)


def test_gradient_matches_finite_differences():
    p = params(dg=2.1)
    rng = np.random.default_rng(3)
    x = rng.uniform(-3.0, 3.0, 300)
    y = rng.uniform(-0.9 * Y_LIMIT, 0.9 * Y_LIMIT, 300)
    gx, gy = gradient(p, x, y)
    h = 1e-6
    fd_x = (energy(p, x + h, y) - energy(p, x - h, y)) / (2.0 * h)
    fd_y = (energy(p, x, y + h) - energy(p, x, y - h)) / (2.0 * h)
    assert np.allclose(gx, fd_x, rtol=1e-6, atol=1e-8)
    assert np.allclose(gy, fd_y, rtol=1e-6, atol=1e-8)


def test_domain_boundary():
    p = params()
    # the energy is defined on the closed disc, the Y derivative is not
    assert np.isfinite(energy(p, 0.3, Y_LIMIT))
    with pytest.raises(DomainError):
        energy(p, 0.0, 1.5)
    with pytest.raises(DomainError):
        gradient(p, 0.3, Y_LIMIT)
    with pytest.raises(DomainError):
        gradient(p, 0.0, -1.5)


def test_hessian_origin_matches_finite_differences():
    p = params(dg=1.3)
    h = 1e-5
    fd = np.empty((2, 2))
    for i, (dx, dy) in enumerate(((h, 0.0), (0.0, h))):
        gp = gradient(p, dx, dy)
        gm = gradient(p, -dx, -dy)
        fd[:, i] = [(gp[0] - gm[0]) / (2 * h), (gp[1] - gm[1]) / (2 * h)]
    assert np.allclose(hessian_origin(p), fd, rtol=1e-7, atol=1e-7)


def test_origin_stabilizes_at_known_drive():
    # det H(0,0) = (2 om + 4 om0 r^2)(4 om r^2 + 2 om0) - 16 g^2 crosses
    # zero at r^2 = 1.45 for g = 0.0975, omega = omega0 = 0.05
    r_star = math.sqrt(1.45)
    assert np.linalg.det(hessian_origin(params(dg=r_star))) == pytest.approx(0.0, abs=1e-12)
    assert np.linalg.det(hessian_origin(params(dg=r_star - 0.01))) < 0.0
    assert np.linalg.det(hessian_origin(params(dg=r_star + 0.01))) > 0.0


@given(
    g=st.floats(min_value=0.0, max_value=0.5),
    dg=st.floats(min_value=0.0, max_value=3.5),
    omega=st.floats(min_value=0.01, max_value=1.0),
)
@settings(max_examples=60, deadline=None)
def test_hessian_origin_is_symmetric_with_positive_xx(g, dg, omega):
    hess = hessian_origin(params(g=g, dg=dg, omega=omega))
    assert hess[0, 1] == hess[1, 0]
    assert hess[0, 0] > 0.0
    assert hess[1, 1] > 0.0


def test_static_minima_match_closed_form():
    p = params(dg=0.0)
    ms = find_minima(p)
    assert ms.n_local == 2
    assert ms.n_global == 2
    x_ref, y_ref, e_ref = static_minimum(p)
    found = sorted(ms.minima, key=lambda m: m.x)
    assert found[1].x == pytest.approx(x_ref, abs=1e-9)
    assert found[1].y == pytest.approx(y_ref, abs=1e-9)
    assert found[1].energy == pytest.approx(e_ref, abs=1e-12)
    assert found[0].x == pytest.approx(-x_ref, abs=1e-9)
    assert found[0].y == pytest.approx(-y_ref, abs=1e-9)
    assert all(min(m.hess_eigs) > 0.0 for m in ms.minima)


def test_descent_never_raises_energy():
    for dg in (0.0, 1.3, 2.5):
        ms = find_minima(params(dg=dg))
        assert ms.max_energy_increase <= 1e-13


def test_minima_census_versus_drive():
    # fixed g = 0.0975, omega = omega0 = 0.05; the drive first wipes out
    # the superradiant pair's monopoly, then stabilizes the origin, then
    # spawns Bessel satellites
    expected = {
        1.0: (2, 2, False, PhaseLabel.SUPERRADIANT),
        1.3: (3, 2, False, PhaseLabel.MULTISTABLE),
        2.5: (9, 2, False, PhaseLabel.MULTISTABLE),
        3.0: (15, 1, True, PhaseLabel.MULTISTABLE),
    }
    for dg, (n_local, n_global, origin_global, label) in expected.items():
        ms = find_minima(params(dg=dg))
        assert ms.n_local == n_local, dg
        assert ms.n_global == n_global, dg
        assert ms.global_at_origin == origin_global, dg
        assert classify_phase(ms) is label, dg
        assert ms.n_local % 2 == 1 or not any(m.at_origin for m in ms.minima)


def test_normal_phase_below_static_coupling():
    ms = find_minima(params(g=0.02, dg=0.0))
    assert ms.n_local == 1
    assert ms.minima[0].at_origin
    assert classify_phase(ms) is PhaseLabel.NORMAL


def test_coarse_seed_grid_is_rejected():
    grid = GridSpec(x_min=-3.0, x_max=3.0, nx=5, y_min=-1.413, y_max=1.413, ny=5)
    with pytest.raises(SeedGridTooCoarse):
        find_minima(params(dg=2.5), seed_grid=grid)
    # the same grid is accepted when the caller opts out of the check
    ms = find_minima(params(dg=2.5), seed_grid=grid, check_seeds=False)
    assert ms.n_local >= 1


def test_default_seed_grid_stays_inside_domain():
    grid = default_seed_grid()
    assert grid.y_max < Y_LIMIT
    assert grid.y_min == -grid.y_max
    assert np.abs(grid.y_values()).max() < Y_LIMIT


def test_find_minima_twin_paths_agree():
    p = params(dg=2.5)
    results = []
    for flag in (False, True):
        accel.force_numpy(flag)
        try:
            results.append(find_minima(p, check_seeds=False))
        finally:
            accel.force_numpy(None)
    a, b = results
    assert a.n_local == b.n_local
    key = lambda m: (round(m.x, 6), round(m.y, 6))
    for ma, mb in zip(sorted(a.minima, key=key), sorted(b.minima, key=key)):
        assert ma.x == pytest.approx(mb.x, abs=1e-8)
        assert ma.y == pytest.approx(mb.y, abs=1e-8)
        assert ma.energy == pytest.approx(mb.energy, abs=1e-12)


def test_section_static_closed_form():
    p = params(dg=0.0)
    ys, x_of_y, e_of_y = section(p)
    expected = math.sqrt(2.0) * p.g * ys * np.sqrt(2.0 - ys * ys) / p.omega
    assert np.allclose(x_of_y, expected, rtol=0.0, atol=1e-8)
    assert np.allclose(e_of_y, energy(p, expected, ys), rtol=0.0, atol=1e-12)


def test_section_parity_and_shapes():
    p = params(dg=2.5)
    ys, x_of_y, e_of_y = section(p, n_y=201)
    assert ys.shape == x_of_y.shape == e_of_y.shape == (201,)
    assert np.allclose(x_of_y, -x_of_y[::-1], atol=1e-6)
    assert np.allclose(e_of_y, e_of_y[::-1], atol=1e-10)
    # the section never beats the true minima
    ms = find_minima(p, check_seeds=False)
    assert e_of_y.min() >= ms.global_energy - 1e-9


def test_first_order_boundary_requires_bracket():
    with pytest.raises(NoBracket):
        first_order_boundary(params(), 1.0, 1.2)
