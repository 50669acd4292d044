"""Parametric stability analysis of the normal phase.

Linearizing the driven model around the unexcited state (omega0 = omega)
decouples two quadrature modes obeying

    q_pm'' + [eps_pm^2 +- 2 omega dg cos(Omega t)] q_pm = 0,
    eps_pm^2 = omega^2 +- 2 g omega,

i.e. Mathieu equations.  A parameter point is stable when the monodromy
matrix of *both* modes has |tr M| <= 2.  The undriven traces are
2 cos(2 pi eps / Omega), continued to 2 cosh for eps^2 < 0, which pins the
static separatrix at g = omega / 2.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from . import accel
from ._mathieu_kernels import monodromy_grid_numba, monodromy_grid_numpy
from .core import GridSpec, ModelParams
from .errors import EmptyCurve, MultipleTongues, NonConvergence, NoTongue

TOL_STABILITY = 1e-9
TOL_DET = 1e-6
TOL_BISECT = 1e-6
DEFAULT_STEPS = 2000


@dataclass(frozen=True)
class ExcitationEnergies:
    """Squared normal-phase excitation energies of the two quadrature modes."""

    eps2_plus: float
    eps2_minus: float

    @property
    def eps_plus(self) -> float | None:
        return math.sqrt(self.eps2_plus) if self.eps2_plus >= 0.0 else None

    @property
    def eps_minus(self) -> float | None:
        return math.sqrt(self.eps2_minus) if self.eps2_minus >= 0.0 else None


@dataclass(frozen=True)
class MonodromyResult:
    sign: int
    trace: float
    det: float
    stable: bool
    matrix: np.ndarray = field(repr=False)


@dataclass(frozen=True)
class StabilityMap:
    g_values: np.ndarray
    omega_values: np.ndarray
    trace_plus: np.ndarray
    trace_minus: np.ndarray
    stable_plus: np.ndarray
    stable_minus: np.ndarray
    stable: np.ndarray

    @property
    def unstable_fraction(self) -> float:
        return float(1.0 - np.mean(self.stable))


def excitation_energies(params: ModelParams) -> ExcitationEnergies:
    om, g = params.omega, params.g
    return ExcitationEnergies(om * om + 2.0 * g * om, om * om - 2.0 * g * om)


def undriven_trace(eps2: float, Omega: float) -> float:
    """Closed-form monodromy trace of q'' + eps2 q = 0 over one period."""
    T = 2.0 * math.pi / Omega
    if eps2 >= 0.0:
        return 2.0 * math.cos(math.sqrt(eps2) * T)
    return 2.0 * math.cosh(math.sqrt(-eps2) * T)


def _grid_entries(g_flat, om_flat, dg, Omega, steps):
    if accel.numba_enabled():
        return monodromy_grid_numba(g_flat, om_flat, dg, Omega, steps)
    return monodromy_grid_numpy(g_flat, om_flat, dg, Omega, steps)


def _traces_dets(entries: np.ndarray):
    tr_p = entries[:, 0] + entries[:, 3]
    det_p = entries[:, 0] * entries[:, 3] - entries[:, 1] * entries[:, 2]
    tr_m = entries[:, 4] + entries[:, 7]
    det_m = entries[:, 4] * entries[:, 7] - entries[:, 5] * entries[:, 6]
    return tr_p, det_p, tr_m, det_m


def monodromy(params: ModelParams, sign: int, steps_per_period: int = DEFAULT_STEPS) -> MonodromyResult:
    """Monodromy matrix of one quadrature mode over a drive period.

    ``sign`` selects the +/- mode.  Raises NonConvergence when the Wronskian
    check |det M - 1| > 1e-6 fails, which indicates too few steps.
    """
    if sign not in (+1, -1):
        raise ValueError("sign must be +1 or -1")
    if steps_per_period < 16:
        raise ValueError("steps_per_period too small to mean anything")
    entries = _grid_entries(
        np.array([params.g]), np.array([params.omega]), params.dg, params.Omega, steps_per_period
    )
    col = 0 if sign > 0 else 4
    q1, p1, q2, p2 = entries[0, col : col + 4]
    trace = float(q1 + p2)
    det = float(q1 * p2 - p1 * q2)
    if abs(det - 1.0) > TOL_DET:
        raise NonConvergence(
            f"monodromy det drifted to {det!r} (mode {sign:+d}); increase steps_per_period"
        )
    return MonodromyResult(
        sign=sign,
        trace=trace,
        det=det,
        stable=bool(abs(trace) <= 2.0 + TOL_STABILITY),
        matrix=np.array([[q1, q2], [p1, p2]]),
    )


def stability_map(
    params: ModelParams,
    grid: GridSpec,
    steps_per_period: int = DEFAULT_STEPS,
) -> StabilityMap:
    """Raster |tr M| over a (g, omega) window at fixed drive amplitude.

    The grid x axis is g, the y axis is omega, and omega0 = omega is implied
    by the quadrature-mode reduction.  For dg = 0 cells with eps_minus^2 < 0
    are hyperbolic and marked unstable without integration.
    """
    g_vals = grid.x_values()
    om_vals = grid.y_values()
    gg, oo = np.meshgrid(g_vals, om_vals, indexing="ij")
    entries = _grid_entries(gg.ravel(), oo.ravel(), params.dg, params.Omega, steps_per_period)
    tr_p, det_p, tr_m, det_m = (a.reshape(gg.shape) for a in _traces_dets(entries))
    worst = max(np.max(np.abs(det_p - 1.0)), np.max(np.abs(det_m - 1.0)))
    if worst > TOL_DET:
        i = int(np.argmax(np.maximum(np.abs(det_p - 1.0), np.abs(det_m - 1.0))))
        cell = tuple(int(x) for x in np.unravel_index(i, gg.shape))
        raise NonConvergence(f"Wronskian drift {worst:.3e} at cell index {cell}")
    stable_p = np.abs(tr_p) <= 2.0 + TOL_STABILITY
    stable_m = np.abs(tr_m) <= 2.0 + TOL_STABILITY
    if params.dg == 0.0:
        stable_m &= oo * oo - 2.0 * gg * oo >= 0.0
    return StabilityMap(
        g_values=g_vals,
        omega_values=om_vals,
        trace_plus=tr_p,
        trace_minus=tr_m,
        stable_plus=stable_p,
        stable_minus=stable_m,
        stable=stable_p & stable_m,
    )


@dataclass(frozen=True)
class ResonanceCurve:
    """Locus eps_pm(g, omega) = k Omega / 2 where the k-th tongue is rooted."""

    k: int
    branch: int  # +1 / -1 mode
    omega: np.ndarray
    g: np.ndarray


def resonance_curves(k: int, Omega: float, omega_values: np.ndarray) -> list[ResonanceCurve]:
    """Undriven resonance conditions g = +-(k^2 Omega^2 / 4 - omega^2) / (2 omega).

    Only the g >= 0 parts are physical; an empty k raises EmptyCurve.
    """
    if k < 1:
        raise ValueError("tongue order k must be >= 1")
    omega_values = np.asarray(omega_values, dtype=float)
    if np.any(omega_values <= 0.0):
        raise ValueError("omega values must be positive")
    curves = []
    base = (0.25 * k * k * Omega * Omega - omega_values * omega_values) / (2.0 * omega_values)
    for branch, g in ((+1, base), (-1, -base)):
        keep = g >= 0.0
        if np.any(keep):
            curves.append(ResonanceCurve(k=k, branch=branch, omega=omega_values[keep], g=g[keep]))
    if not curves:
        raise EmptyCurve(f"no physical branch of the k={k} resonance in this omega range")
    return curves


@dataclass(frozen=True)
class Tongue:
    g_lower: float
    g_upper: float

    @property
    def width(self) -> float:
        return self.g_upper - self.g_lower


def _combined_margin(g_arr: np.ndarray, params: ModelParams, steps: int) -> np.ndarray:
    """max over modes of |tr M| - 2 at fixed omega along a g scan."""
    g_arr = np.asarray(g_arr, dtype=float)
    om = np.full_like(g_arr, params.omega)
    entries = _grid_entries(g_arr, om, params.dg, params.Omega, steps)
    tr_p, _, tr_m, _ = _traces_dets(entries)
    return np.maximum(np.abs(tr_p), np.abs(tr_m)) - 2.0


def tongue_width(
    params: ModelParams,
    g_lo: float,
    g_hi: float,
    n_scan: int = 200,
    steps_per_period: int = DEFAULT_STEPS,
    tol_bisect: float = TOL_BISECT,
) -> Tongue:
    """Locate one instability tongue inside [g_lo, g_hi] at fixed omega.

    Scans the less stable mode's margin |tr M| - 2, requires exactly one
    contiguous unstable run strictly inside the bracket, then bisects both
    edges to tol_bisect in g.
    """
    if not 0.0 <= g_lo < g_hi:
        raise ValueError("need 0 <= g_lo < g_hi")
    g_scan = np.linspace(g_lo, g_hi, n_scan)
    margin = _combined_margin(g_scan, params, steps_per_period)
    unstable = margin > TOL_STABILITY
    if unstable[0] or unstable[-1]:
        raise NoTongue("bracket endpoint is unstable; the tongue is not straddled")
    runs = _contiguous_runs(unstable)
    if len(runs) == 0:
        raise NoTongue(f"no instability found in [{g_lo}, {g_hi}] at the scan resolution")
    if len(runs) > 1:
        raise MultipleTongues(f"{len(runs)} separate unstable runs in [{g_lo}, {g_hi}]")
    first, last = runs[0]

    def f(g: float) -> float:
        return float(_combined_margin(np.array([g]), params, steps_per_period)[0])

    left = _bisect_sign_change(f, float(g_scan[first - 1]), float(g_scan[first]), tol_bisect)
    right = _bisect_sign_change(f, float(g_scan[last + 1]), float(g_scan[last]), tol_bisect)
    return Tongue(g_lower=left, g_upper=right)


def _contiguous_runs(mask: np.ndarray) -> list[tuple[int, int]]:
    runs = []
    in_run = False
    start = 0
    for i, m in enumerate(mask):
        if m and not in_run:
            in_run = True
            start = i
        elif not m and in_run:
            in_run = False
            runs.append((start, i - 1))
    if in_run:
        runs.append((start, len(mask) - 1))
    return runs


def _bisect_sign_change(f, a: float, b: float, tol: float) -> float:
    """Bisect f between a (f<=0) and b (f>0) down to |a-b| <= tol."""
    fa = f(a)
    fb = f(b)
    if fa > TOL_STABILITY or fb <= TOL_STABILITY:
        raise NoTongue("bisection bracket lost the crossing")
    while abs(b - a) > tol:
        mid = 0.5 * (a + b)
        if f(mid) > TOL_STABILITY:
            b = mid
        else:
            a = mid
    return 0.5 * (a + b)
