"""Exact one-period propagation of the driven model at small N.

This module is the numerical referee for the effective Hamiltonians: it
integrates the lab-frame, explicitly time-dependent model over one drive
period with no rotating-wave step, extracts quasienergies and Floquet modes
from U(T), and averages the exactly transformed rotating-frame Hamiltonian
so that both sides of the approximation can be compared term-free.

The propagator uses midpoint exponential splitting,
U(T) = prod_i exp(-i H(t_i + dt/2) dt), built from per-slice dense
eigendecompositions; unitarity of the product is asserted, not assumed.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np
import scipy.linalg

from .core import ModelParams
from .effective import QuantumBasis, build_h0, build_operators
from .errors import ConfigError, QuadratureNonConvergence, UnitarityLoss

TOL_UNITARY = 1e-8
MIN_SLICES = 500
DEFAULT_SLICES = 4096


@dataclass(frozen=True)
class DriveConfig:
    """Lab-frame drive, optionally with the squared-vector-potential term
    alpha * g(t)^2 / omega0 * (a^dag + a)^2."""

    params: ModelParams
    include_a2: bool = False
    alpha: float = 0.0

    def __post_init__(self):
        if self.alpha < 0.0 or not math.isfinite(self.alpha):
            raise ConfigError(f"alpha must be finite and >= 0, got {self.alpha!r}")


@dataclass(frozen=True)
class FloquetResult:
    floquet_operator: np.ndarray = field(repr=False)
    quasienergies: np.ndarray
    floquet_modes: np.ndarray = field(repr=False)
    unitarity_defect: float


def hamiltonian_at(t: float, cfg: DriveConfig, basis: QuantumBasis) -> np.ndarray:
    """Lab-frame Hamiltonian with coupling g + dg cos(Omega t)."""
    p = cfg.params
    ops = build_operators(basis)
    gt = p.coupling_at(t)
    h = p.omega * ops.number + p.omega0 * ops.jz
    h += (gt / math.sqrt(basis.n_atoms)) * (ops.quadrature @ (ops.jp + ops.jm))
    if cfg.include_a2 and cfg.alpha != 0.0:
        h += (cfg.alpha * gt * gt / p.omega0) * (ops.quadrature @ ops.quadrature)
    return h


def _fold(qe: np.ndarray, Omega: float) -> np.ndarray:
    out = qe.copy()
    out[out <= -0.5 * Omega] += Omega
    return out


def propagate_period(
    cfg: DriveConfig,
    basis: QuantumBasis,
    n_slices: int = DEFAULT_SLICES,
    tol_unitary: float = TOL_UNITARY,
) -> FloquetResult:
    """U(T) by midpoint exponential splitting, then its eigensystem.

    Quasienergies are -arg(eigenvalue)/T folded into (-Omega/2, Omega/2],
    sorted ascending; modes are the matching orthonormal eigenvectors
    (complex Schur vectors, so orthonormality survives degeneracies).
    Raises UnitarityLoss when the product drifts; that signals n_slices or
    the Fock cutoff is too low, not a recoverable rounding issue.
    """
    if n_slices < MIN_SLICES:
        raise ConfigError(f"n_slices must be >= {MIN_SLICES}, got {n_slices}")
    p = cfg.params
    ops = build_operators(basis)
    coupling_op = ops.quadrature @ (ops.jp + ops.jm)
    quad_sq = ops.quadrature @ ops.quadrature
    static = p.omega * ops.number + p.omega0 * ops.jz
    sqrt_n = math.sqrt(basis.n_atoms)
    T = p.period
    dt = T / n_slices
    U = np.eye(basis.dim, dtype=complex)
    for i in range(n_slices):
        gt = p.coupling_at((i + 0.5) * dt)
        h = static + (gt / sqrt_n) * coupling_op
        if cfg.include_a2 and cfg.alpha != 0.0:
            h = h + (cfg.alpha * gt * gt / p.omega0) * quad_sq
        w, v = np.linalg.eigh(h)
        U = (v * np.exp(-1j * w * dt)) @ (v.T @ U)
    defect = float(np.abs(U.conj().T @ U - np.eye(basis.dim)).max())
    if defect > tol_unitary:
        raise UnitarityLoss(f"max |U^dag U - 1| = {defect:.3e} > {tol_unitary:.1e}")
    tri, z = scipy.linalg.schur(U, output="complex")
    qe = _fold(-np.angle(np.diag(tri)) / T, p.Omega)
    order = np.argsort(qe)
    return FloquetResult(
        floquet_operator=U,
        quasienergies=qe[order],
        floquet_modes=z[:, order],
        unitarity_defect=defect,
    )


def _frame_pieces(cfg: DriveConfig, k: int, basis: QuantumBasis):
    """Cached spectral data for U_k(t) = exp(-i mu(t) x J_x) exp(-i k Omega/2 (J_z + n) t)."""
    p = cfg.params
    ops = build_operators(basis)
    xjx = ops.quadrature @ ops.jx
    w_x, v_x = np.linalg.eigh(xjx)
    diag_b = np.diag(ops.jz) + np.diag(ops.number)
    return ops, xjx, w_x, v_x, diag_b


def _averaged_frame_hamiltonian(
    cfg: DriveConfig, k: int, basis: QuantumBasis, n_t: int, pieces
) -> np.ndarray:
    p = cfg.params
    ops, xjx, w_x, v_x, diag_b = pieces
    m0 = (2.0 / math.sqrt(basis.n_atoms)) * (p.dg / p.Omega)
    T = p.period
    acc = np.zeros((basis.dim, basis.dim), dtype=complex)
    for i in range(n_t):
        t = i * T / n_t
        mu = m0 * math.sin(p.Omega * t)
        dmu = m0 * p.Omega * math.cos(p.Omega * t)
        h_lab = hamiltonian_at(t, cfg, basis)
        a_t = (v_x * np.exp(-1j * mu * w_x)) @ v_x.T
        hk = a_t.conj().T @ h_lab @ a_t - dmu * xjx
        if k > 0:
            beta = np.exp(-1j * 0.5 * k * p.Omega * diag_b * t)
            hk = np.conj(beta)[:, None] * hk * beta[None, :]
            hk = hk - 0.5 * k * p.Omega * np.diag(diag_b)
        acc += hk
    return acc / n_t


def rotating_frame_average(
    cfg: DriveConfig,
    k: int,
    basis: QuantumBasis,
    n_t: int = 64,
    tol: float = 1e-7,
    max_doublings: int = 6,
) -> np.ndarray:
    """One-period average of the exactly transformed rotating-frame
    Hamiltonian U_k^dag (H - i d/dt) U_k.

    This is the quantity the time-independent h0 builders approximate; the
    comparison involves no expansion on this side.  The integrand is
    T-periodic (all frame phases pair into integer harmonics), so a uniform
    Riemann sum converges spectrally; the grid is doubled until two
    consecutive averages agree to ``tol`` in max norm.
    """
    if k not in (0, 1, 2):
        raise ConfigError(f"resonance order k must be 0, 1 or 2, got {k!r}")
    pieces = _frame_pieces(cfg, k, basis)
    prev = _averaged_frame_hamiltonian(cfg, k, basis, n_t, pieces)
    for _ in range(max_doublings):
        n_t *= 2
        cur = _averaged_frame_hamiltonian(cfg, k, basis, n_t, pieces)
        if float(np.abs(cur - prev).max()) < tol:
            return cur
        prev = cur
    raise QuadratureNonConvergence(
        f"period average still moving after n_t={n_t}; drive harmonics unresolved"
    )


@dataclass(frozen=True)
class CrosscheckReport:
    fidelities: np.ndarray
    quasienergy_errors: np.ndarray
    matched_modes: np.ndarray
    quasienergies: np.ndarray
    eigenvalues: np.ndarray


def rwa_crosscheck(
    cfg: DriveConfig,
    k: int,
    basis: QuantumBasis,
    n_low: int = 5,
    n_slices: int = DEFAULT_SLICES,
    floquet_result: FloquetResult | None = None,
) -> CrosscheckReport:
    """Compare the lowest h0 eigenvectors against exact Floquet modes.

    At t = 0 the frame transformation is the identity (mu(0) = 0 and the
    k-dependent phase factor is 1), so Floquet modes of U(T) approximate
    h0 eigenvectors directly.  fidelities[i] is the best overlap
    |<phi_i|f_j>|^2 over all Floquet modes; quasienergy errors compare
    eigenvalue differences within the matched set modulo Omega (absolute
    offsets between the frames are gauge).
    """
    p = cfg.params
    variant = "full" if k == 0 else "second_order"
    H = build_h0(k, p, basis, variant=variant)
    w, v = np.linalg.eigh(H)
    res = floquet_result if floquet_result is not None else propagate_period(cfg, basis, n_slices=n_slices)
    overlap = np.abs(v[:, :n_low].T @ np.conj(res.floquet_modes)) ** 2
    matched = np.argmax(overlap, axis=1)
    fidelities = overlap[np.arange(n_low), matched]
    qe = res.quasienergies[matched]
    gap_err = np.zeros(n_low)
    for i in range(1, n_low):
        diff = (qe[i] - qe[0]) - (w[i] - w[0])
        gap_err[i] = abs(diff - p.Omega * round(diff / p.Omega))
    return CrosscheckReport(
        fidelities=fidelities,
        quasienergy_errors=gap_err,
        matched_modes=matched,
        quasienergies=qe,
        eigenvalues=w[:n_low],
    )
