"""Time-independent effective Hamiltonians near the k = 0, 1, 2 resonances.

Matrices act on a truncated Fock space (photon number 0..n_max) tensored with
an exact collective-spin multiplet j = N/2, ordered |n> outer, |j, m> inner
with m = -j..+j.  The k = 0 Hamiltonian is known in closed form and contains
a Bessel function of the field quadrature, evaluated spectrally; k = 1 and
k = 2 are second-order expansions in the drive ratio dg/Omega and only that
variant exists for them.

All builders return real symmetric dense matrices; hermiticity is exact by
construction, not by symmetrization.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import cached_property

import numpy as np
from scipy.special import j0 as _scalar_j0

from .core import ModelParams, detunings
from .errors import ConfigError, EigensolverFailure, UnsupportedVariant

DENSE_DIM_LIMIT = 4000
TOL_HERMITICITY = 1e-12
CUTOFF_PROBE = 8


@dataclass(frozen=True)
class QuantumBasis:
    """Truncated product basis; dim = (n_max + 1) * (n_atoms + 1)."""

    n_atoms: int
    n_max: int

    def __post_init__(self):
        if not isinstance(self.n_atoms, int) or self.n_atoms < 1:
            raise ConfigError(f"n_atoms must be a positive integer, got {self.n_atoms!r}")
        if not isinstance(self.n_max, int) or self.n_max < 1:
            raise ConfigError(f"n_max must be a positive integer, got {self.n_max!r}")

    @property
    def j(self) -> float:
        return 0.5 * self.n_atoms

    @property
    def dim(self) -> int:
        return (self.n_max + 1) * (self.n_atoms + 1)

    def with_n_max(self, n_max: int) -> "QuantumBasis":
        return QuantumBasis(n_atoms=self.n_atoms, n_max=n_max)


@dataclass(frozen=True)
class Operators:
    """Dense matrices on the product basis (field factor outer)."""

    basis: QuantumBasis
    a: np.ndarray
    ad: np.ndarray
    jz: np.ndarray
    jp: np.ndarray
    jm: np.ndarray

    @cached_property
    def jx(self) -> np.ndarray:
        return 0.5 * (self.jp + self.jm)

    @cached_property
    def quadrature(self) -> np.ndarray:
        return self.a + self.ad

    @cached_property
    def number(self) -> np.ndarray:
        return self.ad @ self.a


def _field_ops(n_max: int) -> tuple[np.ndarray, np.ndarray]:
    a = np.zeros((n_max + 1, n_max + 1))
    ns = np.arange(1, n_max + 1)
    a[ns - 1, ns] = np.sqrt(ns)
    return a, a.T.copy()


def _spin_ops(n_atoms: int) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
    j = 0.5 * n_atoms
    m = np.arange(-j, j + 1)
    jz = np.diag(m)
    jp = np.zeros((n_atoms + 1, n_atoms + 1))
    jp[np.arange(1, n_atoms + 1), np.arange(n_atoms)] = np.sqrt(
        j * (j + 1) - m[:-1] * (m[:-1] + 1)
    )
    return jz, jp, jp.T.copy()


def build_operators(basis: QuantumBasis) -> Operators:
    a_f, ad_f = _field_ops(basis.n_max)
    jz_s, jp_s, jm_s = _spin_ops(basis.n_atoms)
    eye_f = np.eye(basis.n_max + 1)
    eye_s = np.eye(basis.n_atoms + 1)
    return Operators(
        basis=basis,
        a=np.kron(a_f, eye_s),
        ad=np.kron(ad_f, eye_s),
        jz=np.kron(eye_f, jz_s),
        jp=np.kron(eye_f, jp_s),
        jm=np.kron(eye_f, jm_s),
    )


def _bessel_field(n_max: int, scale: float) -> np.ndarray:
    """J0(scale * (a^dag + a)) on the field factor alone, via eigh."""
    a_f, ad_f = _field_ops(n_max)
    w, v = np.linalg.eigh(scale * (a_f + ad_f))
    return (v * _scalar_j0(w)) @ v.T


def bessel_of_quadrature(basis: QuantumBasis, scale: float) -> np.ndarray:
    """J0(scale * (a^dag + a)) on the full product basis.

    Spectral construction: diagonalize the (Hermitian) quadrature, apply the
    scalar Bessel function to its eigenvalues, rotate back.  Eigenvalues of
    the result therefore lie inside [min J0, 1].
    """
    return np.kron(_bessel_field(basis.n_max, scale), np.eye(basis.n_atoms + 1))


def parity_operator(basis: QuantumBasis) -> np.ndarray:
    """Diagonal parity exp[i pi (a^dag a + J_z + j)]; entries are +-1."""
    n = np.arange(basis.n_max + 1)
    mj = np.arange(basis.n_atoms + 1)  # m + j = 0..N
    return np.diag(np.kron((-1.0) ** n, (-1.0) ** mj))


def build_h0(
    k: int,
    params: ModelParams,
    basis: QuantumBasis,
    variant: str = "full",
) -> np.ndarray:
    """Effective Hamiltonian h0 for the k-th resonance.

    k = 0 supports variants "full" (Bessel-dressed, nonperturbative in
    dg/Omega) and "second_order"; k = 1, 2 exist only at second order in
    dg/Omega and reject variant "full".
    """
    if k not in (0, 1, 2):
        raise ConfigError(f"resonance order k must be 0, 1 or 2, got {k!r}")
    if variant not in ("full", "second_order"):
        raise ConfigError(f"unknown variant {variant!r}")
    if k > 0 and variant == "full":
        raise UnsupportedVariant(
            f"k={k} has no closed form; only the second_order expansion exists"
        )
    ops = build_operators(basis)
    d = detunings(params, k)
    n_at = basis.n_atoms
    sqrt_n = math.sqrt(n_at)
    r = params.dg / params.Omega
    r2 = r * r
    num = ops.number
    x = ops.quadrature

    if k == 0:
        h = d.delta * num + (params.g / sqrt_n) * (x @ (ops.jp + ops.jm))
        h += (2.0 * params.omega * r2 / n_at) * (ops.jx @ ops.jx)
        if variant == "full":
            scale = 2.0 * params.dg / (params.Omega * sqrt_n)
            jz_s, _, _ = _spin_ops(n_at)
            h += d.delta0 * np.kron(_bessel_field(basis.n_max, scale), jz_s)
        else:
            h += d.delta0 * ops.jz
            h -= (params.omega0 * r2 / n_at) * (x @ x @ ops.jz)
        return h

    h = d.delta * num + d.delta0 * ops.jz
    h += (params.g / sqrt_n) * (ops.ad @ ops.jm + ops.a @ ops.jp)
    h -= (2.0 * params.omega0 * r2 / n_at) * (num @ ops.jz)
    h += (params.omega * r2 / n_at) * (ops.jm @ ops.jp)
    if k == 1:
        h += (params.dg / (2.0 * sqrt_n)) * (ops.ad @ ops.jp + ops.a @ ops.jm)
    else:
        h += (params.omega0 * r2 / (2.0 * n_at)) * ((ops.ad @ ops.ad + ops.a @ ops.a) @ ops.jz)
        h -= (params.omega * r2 / (4.0 * n_at)) * (ops.jp @ ops.jp + ops.jm @ ops.jm)
    return h


@dataclass(frozen=True)
class SpectrumResult:
    eigenvalues: np.ndarray
    ground_state: np.ndarray
    order_field: float
    order_atom: float


def spectrum(H: np.ndarray, n_eigs: int, params: ModelParams, basis: QuantumBasis) -> SpectrumResult:
    """Lowest n_eigs eigenvalues plus ground-state order parameters.

    order_field = 2<a^dag a>/N, order_atom = 2<J_z>/N + 1, both evaluated in
    the lowest eigenvector.  Dense solver below DENSE_DIM_LIMIT, Lanczos
    above.
    """
    dim = H.shape[0]
    if n_eigs < 1 or n_eigs > dim:
        raise ConfigError(f"n_eigs must be in 1..{dim}, got {n_eigs}")
    try:
        if dim < DENSE_DIM_LIMIT:
            w, v = np.linalg.eigh(H)
            w, v = w[:n_eigs], v[:, :n_eigs]
        else:
            from scipy.sparse.linalg import eigsh

            w, v = eigsh(H, k=n_eigs, which="SA")
            order = np.argsort(w)
            w, v = w[order], v[:, order]
    except Exception as exc:  # LinAlgError, ArpackNoConvergence
        raise EigensolverFailure(str(exc)) from exc
    gs = v[:, 0]
    ops = build_operators(basis)
    n_at = basis.n_atoms
    order_field = float(2.0 * (gs @ ops.number @ gs) / n_at)
    order_atom = float(2.0 * (gs @ ops.jz @ gs) / n_at + 1.0)
    return SpectrumResult(
        eigenvalues=np.asarray(w, dtype=float),
        ground_state=gs,
        order_field=order_field,
        order_atom=order_atom,
    )


def default_n_max(params: ModelParams, n_atoms: int) -> int:
    """Fock cutoff heuristic; superradiant states displace the field by
    O(sqrt(N) g/omega), so the cutoff must grow with N (g + dg)^2 / omega^2."""
    scale = 10.0 * n_atoms * (params.g + params.dg) ** 2 / params.omega**2
    return max(40, int(math.ceil(scale)))


def converged_spectrum(
    k: int,
    params: ModelParams,
    n_atoms: int,
    n_eigs: int = 6,
    n_max: int | None = None,
    variant: str = "full",
) -> tuple[SpectrumResult, float]:
    """spectrum() plus a cutoff self-check.

    Recomputes at n_max + CUTOFF_PROBE and returns the largest eigenvalue
    shift as the convergence defect alongside the result at the larger
    cutoff.  Callers decide what defect they tolerate.
    """
    if variant == "full" and k > 0:
        variant = "second_order"
    if n_max is None:
        n_max = default_n_max(params, n_atoms)
    res = []
    for nm in (n_max, n_max + CUTOFF_PROBE):
        basis = QuantumBasis(n_atoms=n_atoms, n_max=nm)
        H = build_h0(k, params, basis, variant=variant)
        res.append(spectrum(H, n_eigs, params, basis))
    defect = float(np.max(np.abs(res[0].eigenvalues - res[1].eigenvalues)))
    return res[1], defect


def critical_line(k: int, params: ModelParams) -> list[float]:
    """Printed second-order critical couplings for resonance k (g >= 0 only).

    The k = 0 line assumes omega0 = omega; the static limit of that line is
    g = omega / 2.
    """
    d = detunings(params, k)
    r2 = (params.dg / params.Omega) ** 2
    if k == 0:
        lines = [params.omega / 2.0 + params.omega * r2]
    elif k == 1:
        lines = [-params.dg / 2.0 + abs(d.delta + params.omega * r2)]
    elif k == 2:
        lines = [
            d.delta + 0.5 * params.omega * r2,
            -d.delta - 1.5 * params.omega * r2,
        ]
    else:
        raise ConfigError(f"resonance order k must be 0, 1 or 2, got {k!r}")
    return sorted(g for g in lines if g >= 0.0)


def rwa_validity(params: ModelParams, k: int = 0) -> dict[str, float]:
    """Diagnostic smallness ratios for the k-th rotating-frame approximation.

    Values well below 1 indicate the validity window.  Reported, never
    enforced; probing the breakdown region is a supported use.  For k >= 1
    the drive amplitude enters at first order through the dg/2 sideband, so
    dg relative to omega is reported separately without a verdict.
    """
    if k == 0:
        cap = params.Omega * max(1.0, params.dg / params.Omega)
        return {
            "g": params.g / cap,
            "omega": params.omega / cap,
            "omega0": params.omega0 / cap,
        }
    d = detunings(params, k)
    w = min(params.omega, params.omega0)
    return {
        "delta": abs(d.delta) / w,
        "delta0": abs(d.delta0) / w,
        "g": params.g / w,
        "drive_sq": (params.dg / params.Omega) ** 2 / w,
        "dg_over_omega": params.dg / w,
        "omega_mismatch": abs(params.omega - params.omega0) / w,
    }
