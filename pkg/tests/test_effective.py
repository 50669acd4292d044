"""Static effective Hamiltonians on the truncated Fock x spin basis.

Operator algebra is pinned by exact commutators, the k = 0 Bessel dressing
by its second-order Taylor limit (eigenvalue gaps shrinking ~ (dg/Omega)^4
under drive halving) and the diagonal g = dg = 0 reduction.
"""

import math

import numpy as np
import pytest

from drivendicke.core import ModelParams
from drivendicke.effective import (
    QuantumBasis,
    bessel_of_quadrature,
    build_h0,
    build_operators,
    converged_spectrum,
    critical_line,
    default_n_max,
    parity_operator,
    rwa_validity,
    spectrum,
)
from drivendicke.errors import ConfigError, UnsupportedVariant

J0_MIN = -0.40275939570255268  # global minimum of the zeroth Bessel function

ALL_FORMS = [(0, "full"), (0, "second_order"), (1, "second_order"), (2, "second_order")]


def params(g=0.02, dg=0.15, omega=0.05):
    return ModelParams(omega=omega, omega0=omega, g=g, dg=dg, Omega=1.0)


def test_basis_counts():
    b = QuantumBasis(n_atoms=4, n_max=10)
    assert b.j == 2.0
    assert b.dim == 55
    assert b.with_n_max(20).dim == 105
    with pytest.raises(ConfigError):
        QuantumBasis(n_atoms=0, n_max=10)
    with pytest.raises(ConfigError):
        QuantumBasis(n_atoms=4, n_max=0)


def test_operator_algebra():
    b = QuantumBasis(n_atoms=5, n_max=12)
    ops = build_operators(b)
    eye = np.eye(b.dim)
    # [a, a+] = 1 holds below the cutoff corner; check the interior block
    comm = ops.a @ ops.ad - ops.ad @ ops.a
    cut = b.n_max * (b.n_atoms + 1)
    assert np.allclose(comm[:cut, :cut], eye[:cut, :cut], atol=1e-13)
    assert np.allclose(ops.jz @ ops.jp - ops.jp @ ops.jz, ops.jp, atol=1e-13)
    assert np.allclose(ops.jp @ ops.jm - ops.jm @ ops.jp, 2.0 * ops.jz, atol=1e-13)
    jy = (ops.jp - ops.jm) / 2.0j
    casimir = ops.jx @ ops.jx + (jy @ jy).real + ops.jz @ ops.jz
    assert np.allclose(casimir, b.j * (b.j + 1.0) * eye, atol=1e-12)


def test_parity_flips_odd_operators():
    b = QuantumBasis(n_atoms=3, n_max=8)
    ops = build_operators(b)
    par = parity_operator(b)
    assert np.array_equal(par @ par, np.eye(b.dim))
    assert np.allclose(par @ ops.quadrature @ par, -ops.quadrature, atol=0.0)
    assert np.allclose(par @ ops.jp @ par, -ops.jp, atol=0.0)
    assert np.allclose(par @ ops.number @ par, ops.number, atol=0.0)


@pytest.mark.parametrize("k,variant", ALL_FORMS)
def test_h0_hermitian_and_parity_conserving(k, variant):
    b = QuantumBasis(n_atoms=4, n_max=12)
    h = build_h0(k, params(), b, variant=variant)
    assert np.abs(h - h.T.conj()).max() < 1e-12
    par = parity_operator(b)
    assert np.abs(h @ par - par @ h).max() < 1e-10


def test_uncoupled_limit_is_diagonal():
    p = params(g=0.0, dg=0.0)
    b = QuantumBasis(n_atoms=4, n_max=6)
    for variant in ("full", "second_order"):
        h = build_h0(0, p, b, variant=variant)
        assert np.abs(h - np.diag(np.diag(h))).max() == 0.0
        res = spectrum(h, 1, p, b)
        assert res.eigenvalues[0] == pytest.approx(-b.j * p.omega0, abs=1e-14)
        assert res.order_field == pytest.approx(0.0, abs=1e-14)
        assert res.order_atom == pytest.approx(0.0, abs=1e-14)


def test_bessel_dressing_shrinks_as_fourth_power_of_drive():
    b = QuantumBasis(n_atoms=4, n_max=20)
    diffs = []
    for dg in (0.0625, 0.125, 0.25):
        p = params(dg=dg)
        wf = np.linalg.eigvalsh(build_h0(0, p, b, variant="full"))[:6]
        ws = np.linalg.eigvalsh(build_h0(0, p, b, variant="second_order"))[:6]
        diffs.append(np.abs(wf - ws).max())
    assert diffs[0] == pytest.approx(6.817e-07, rel=1e-3)
    for lo, hi in zip(diffs, diffs[1:]):
        assert 8.0 < hi / lo < 32.0


def test_bessel_of_quadrature_spectral_bounds():
    b = QuantumBasis(n_atoms=2, n_max=30)
    assert np.allclose(bessel_of_quadrature(b, 0.0), np.eye(b.dim), atol=1e-14)
    for scale in (0.1, 0.3, 1.0, 3.0):
        mat = bessel_of_quadrature(b, scale)
        assert np.abs(mat - mat.T).max() < 1e-13
        w = np.linalg.eigvalsh(mat)
        assert w.min() >= J0_MIN - 1e-12
        assert w.max() <= 1.0 + 1e-12
        par = parity_operator(b)
        assert np.abs(mat @ par - par @ mat).max() < 1e-12


def test_critical_line_values():
    # k = 0: g_c = omega/2 + omega (dg/Omega)^2
    assert critical_line(0, params(dg=0.0)) == [pytest.approx(0.025)]
    assert critical_line(0, params(dg=0.3)) == [pytest.approx(0.0295)]
    # k = 1 at omega = 0.8: delta = 0.3, line = -dg/2 + |delta + omega r^2|
    line = critical_line(1, ModelParams(omega=0.8, omega0=0.8, g=0.1, dg=0.2, Omega=1.0))
    assert line == [pytest.approx(-0.1 + 0.3 + 0.8 * 0.04)]
    # detuned past the sideband the k = 1 line leaves g >= 0
    assert critical_line(1, ModelParams(omega=0.5, omega0=0.5, g=0.1, dg=0.2, Omega=1.0)) == []
    # k = 2 on resonance keeps only the upper branch
    line = critical_line(2, ModelParams(omega=1.0, omega0=1.0, g=0.1, dg=0.3, Omega=1.0))
    assert line == [pytest.approx(0.5 * 1.0 * 0.09)]
    with pytest.raises(ConfigError):
        critical_line(3, params())


def test_build_h0_argument_validation():
    b = QuantumBasis(n_atoms=2, n_max=4)
    with pytest.raises(ConfigError):
        build_h0(3, params(), b)
    with pytest.raises(ConfigError):
        build_h0(0, params(), b, variant="fourth_order")
    with pytest.raises(UnsupportedVariant):
        build_h0(1, params(), b, variant="full")
    with pytest.raises(UnsupportedVariant):
        build_h0(2, params(), b, variant="full")


def test_spectrum_validation_and_ground_state():
    p = params()
    b = QuantumBasis(n_atoms=2, n_max=6)
    h = build_h0(0, p, b)
    with pytest.raises(ConfigError):
        spectrum(h, 0, p, b)
    with pytest.raises(ConfigError):
        spectrum(h, b.dim + 1, p, b)
    res = spectrum(h, 4, p, b)
    assert res.eigenvalues.shape == (4,)
    assert np.all(np.diff(res.eigenvalues) >= 0.0)
    assert np.linalg.norm(res.ground_state) == pytest.approx(1.0, abs=1e-12)
    assert res.order_field >= -1e-12
    assert -1e-12 <= res.order_atom <= 2.0 + 1e-12


def test_order_parameters_jump_across_transition():
    # omega = omega0 = 1: static critical coupling 0.5
    b = QuantumBasis(n_atoms=8, n_max=40)
    below = spectrum(
        build_h0(0, ModelParams(omega=1.0, omega0=1.0, g=0.1, dg=0.0, Omega=20.0), b),
        3,
        ModelParams(omega=1.0, omega0=1.0, g=0.1, dg=0.0, Omega=20.0),
        b,
    )
    above = spectrum(
        build_h0(0, ModelParams(omega=1.0, omega0=1.0, g=1.0, dg=0.0, Omega=20.0), b),
        3,
        ModelParams(omega=1.0, omega0=1.0, g=1.0, dg=0.0, Omega=20.0),
        b,
    )
    assert below.order_field == pytest.approx(0.00065, abs=5e-5)
    assert above.order_field > 0.5
    assert above.order_atom > 0.5


def test_converged_spectrum_reports_defect():
    p = ModelParams(omega=0.5, omega0=0.5, g=0.1, dg=0.0, Omega=1.0)
    res, defect = converged_spectrum(0, p, n_atoms=2, n_eigs=4, n_max=20)
    assert defect < 1e-12
    assert res.eigenvalues.shape == (4,)
    assert res.eigenvalues[0] == pytest.approx(-0.51030949, abs=1e-6)


def test_default_n_max_grows_with_coupling():
    assert default_n_max(ModelParams(omega=1.0, omega0=1.0, g=0.1, dg=0.0, Omega=1.0), 8) == 40
    strong = default_n_max(ModelParams(omega=1.0, omega0=1.0, g=1.0, dg=0.0, Omega=1.0), 8)
    assert strong == math.ceil(10 * 8 * 1.0)
    assert default_n_max(ModelParams(omega=0.5, omega0=0.5, g=1.0, dg=0.5, Omega=1.0), 4) == math.ceil(
        10 * 4 * 2.25 / 0.25
    )


def test_rwa_validity_ratio_sets():
    r0 = rwa_validity(params(g=0.02, dg=0.5), k=0)
    assert set(r0) == {"g", "omega", "omega0"}
    assert r0["g"] == pytest.approx(0.02)
    # dg/Omega > 1 enlarges the comparison scale
    r0b = rwa_validity(params(g=0.02, dg=2.0), k=0)
    assert r0b["g"] == pytest.approx(0.01)
    r1 = rwa_validity(ModelParams(omega=0.5, omega0=0.5, g=0.01, dg=0.1, Omega=1.0), k=1)
    assert set(r1) == {"delta", "delta0", "g", "drive_sq", "dg_over_omega", "omega_mismatch"}
    assert r1["delta"] == pytest.approx(0.0)
    assert r1["dg_over_omega"] == pytest.approx(0.2)
    assert all(v >= 0.0 for v in r1.values())
