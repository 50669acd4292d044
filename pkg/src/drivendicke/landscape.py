"""Mean-field quasienergy landscape and nonequilibrium phase structure.

``energy`` is the effective ground-state quasienergy surface over the scaled
field quadrature X and atomic displacement Y (|Y| <= sqrt(2)); its global
minima decide the phase.  The surface is exactly parity symmetric,
E(X, Y) = E(-X, -Y), and E(0, 0) = -omega0 identically.  Minima are found by
multistart descent (see _landscape_kernels), classified through their
finite-difference Hessians, and deduplicated; parity partners the seed grid
happened to miss are filled in by symmetry.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass, field

import numpy as np

from . import accel
from ._landscape_kernels import (
    STATUS_OK,
    _fd_hessian_numpy,
    energy_numpy,
    grad_numpy,
    multistart_numba,
    multistart_numpy,
)
from .core import GridSpec, ModelParams
from .errors import DomainError, NoBracket, NonConvergence, SeedGridTooCoarse

TOL_GRAD = 1e-10
TOL_COARSE = 1e-7
TOL_DEDUP = 1e-6
TOL_HESS_PD = 1e-12
DEG_FACTOR = 1e-10  # energy degeneracy tolerance in units of omega0
MAX_ITER = 40000
Y_LIMIT = math.sqrt(2.0)
SEED_MARGIN = 1e-3


def _coeffs(params: ModelParams):
    r = params.dg / params.Omega
    c1 = params.omega * r * r
    c2 = 2.0 * math.sqrt(2.0) * params.g
    c3 = 2.0 * math.sqrt(2.0) * r
    return c1, c2, c3


def _check_domain(y) -> None:
    if np.any(np.abs(np.asarray(y)) > Y_LIMIT):
        raise DomainError("|Y| exceeds sqrt(2); outside the physical disc")


def energy(params: ModelParams, x, y):
    """Landscape energy; broadcasts over array inputs."""
    _check_domain(y)
    c1, c2, c3 = _coeffs(params)
    return energy_numpy(x, y, params.omega, params.omega0, c1, c2, c3)


def gradient(params: ModelParams, x, y):
    """Analytic (dE/dX, dE/dY); |Y| = sqrt(2) exactly is outside the domain
    of the Y derivative."""
    y_arr = np.asarray(y)
    _check_domain(y_arr)
    if np.any(np.abs(y_arr) == Y_LIMIT):
        raise DomainError("Y derivative diverges on |Y| = sqrt(2)")
    c1, c2, c3 = _coeffs(params)
    return grad_numpy(x, y, params.omega, params.omega0, c1, c2, c3)


def hessian_origin(params: ModelParams) -> np.ndarray:
    """Closed-form Hessian at (0, 0).

    Its determinant changes sign exactly on the second-order critical line
    of the k = 0 effective model.
    """
    r2 = (params.dg / params.Omega) ** 2
    exx = 2.0 * params.omega + 4.0 * params.omega0 * r2
    eyy = 4.0 * params.omega * r2 + 2.0 * params.omega0
    exy = -4.0 * params.g
    return np.array([[exx, exy], [exy, eyy]])


@dataclass(frozen=True)
class Minimum:
    x: float
    y: float
    energy: float
    hess_eigs: tuple[float, float]
    is_global: bool
    at_origin: bool


@dataclass(frozen=True)
class MinimaSet:
    params: ModelParams
    minima: tuple[Minimum, ...]
    n_failed_seeds: int
    max_energy_increase: float

    @property
    def n_local(self) -> int:
        return len(self.minima)

    @property
    def n_global(self) -> int:
        return sum(m.is_global for m in self.minima)

    @property
    def global_at_origin(self) -> bool:
        return any(m.is_global and m.at_origin for m in self.minima)

    @property
    def global_energy(self) -> float:
        return min(m.energy for m in self.minima)

    def global_minima(self) -> tuple[Minimum, ...]:
        return tuple(m for m in self.minima if m.is_global)


class PhaseLabel(str, enum.Enum):
    NORMAL = "normal"
    SUPERRADIANT = "superradiant"
    MULTISTABLE = "multistable"


def default_seed_grid(nx: int = 41, ny: int = 41, x_max: float = 3.0) -> GridSpec:
    ylim = Y_LIMIT - SEED_MARGIN
    return GridSpec(x_min=-x_max, x_max=x_max, nx=nx, y_min=-ylim, y_max=ylim, ny=ny)


def _run_multistart(params: ModelParams, seed_grid: GridSpec, tol_grad: float, max_iter: int):
    sx, sy = np.meshgrid(seed_grid.x_values(), seed_grid.y_values(), indexing="ij")
    c1, c2, c3 = _coeffs(params)
    args = (
        sx.ravel(),
        sy.ravel(),
        params.omega,
        params.omega0,
        c1,
        c2,
        c3,
        tol_grad,
        TOL_COARSE,
        max_iter,
    )
    if accel.numba_enabled():
        return multistart_numba(*args)
    return multistart_numpy(*args)


def _collect(params: ModelParams, out: np.ndarray, tol_grad: float) -> tuple[list, int, float]:
    ok = out[:, 4] == STATUS_OK
    n_failed = int(np.sum(~ok))
    max_inc = float(np.max(out[:, 5])) if out.shape[0] else 0.0
    pts = out[ok]
    if pts.shape[0] == 0:
        raise NonConvergence("no seed converged; landscape descent failed everywhere")
    c1, c2, c3 = _coeffs(params)
    hxx, hxy, hyy = _fd_hessian_numpy(pts[:, 0], pts[:, 1], params.omega, params.omega0, c1, c2, c3)
    tr = hxx + hyy
    disc = np.sqrt(np.maximum((hxx - hyy) ** 2 + 4.0 * hxy * hxy, 0.0))
    lo = 0.5 * (tr - disc)
    hi = 0.5 * (tr + disc)
    keep = lo > TOL_HESS_PD
    reps: list[tuple[float, float, float, float, float]] = []
    order = np.lexsort((pts[:, 1], pts[:, 0]))
    for i in order:
        if not keep[i]:
            continue
        x, y, f = pts[i, 0], pts[i, 1], pts[i, 2]
        dup = False
        for r in reps:
            if abs(r[0] - x) <= TOL_DEDUP and abs(r[1] - y) <= TOL_DEDUP:
                dup = True
                break
        if not dup:
            reps.append((x, y, f, lo[i], hi[i]))
    return reps, n_failed, max_inc


def _complete_parity(params: ModelParams, reps: list) -> list:
    extra = []
    for x, y, f, lo, hi in reps:
        if abs(x) <= TOL_DEDUP and abs(y) <= TOL_DEDUP:
            continue
        found = any(abs(r[0] + x) <= TOL_DEDUP and abs(r[1] + y) <= TOL_DEDUP for r in reps)
        if not found:
            extra.append((-x, -y, f, lo, hi))
    merged = reps + extra
    merged.sort(key=lambda r: (r[2], r[0], r[1]))
    return merged


def find_minima(
    params: ModelParams,
    seed_grid: GridSpec | None = None,
    tol_grad: float = TOL_GRAD,
    max_iter: int = MAX_ITER,
    check_seeds: bool = True,
) -> MinimaSet:
    """All local minima of the landscape reachable from a seed raster.

    With ``check_seeds`` the whole search is repeated at doubled seed
    density and a differing minima count raises SeedGridTooCoarse rather
    than silently returning an unconverged census.
    """
    if seed_grid is None:
        seed_grid = default_seed_grid()
    out = _run_multistart(params, seed_grid, tol_grad, max_iter)
    reps, n_failed, max_inc = _collect(params, out, tol_grad)
    reps = _complete_parity(params, reps)
    if check_seeds:
        dense = GridSpec(
            x_min=seed_grid.x_min,
            x_max=seed_grid.x_max,
            nx=2 * seed_grid.nx - 1,
            y_min=seed_grid.y_min,
            y_max=seed_grid.y_max,
            ny=2 * seed_grid.ny - 1,
        )
        out2 = _run_multistart(params, dense, tol_grad, max_iter)
        reps2, _, _ = _collect(params, out2, tol_grad)
        reps2 = _complete_parity(params, reps2)
        if len(reps2) != len(reps):
            raise SeedGridTooCoarse(
                f"minima count changed from {len(reps)} to {len(reps2)} "
                f"under seed-density doubling at g={params.g}, dg={params.dg}"
            )
    e_min = min(r[2] for r in reps)
    tol_deg = DEG_FACTOR * params.omega0
    minima = tuple(
        Minimum(
            x=r[0],
            y=r[1],
            energy=r[2],
            hess_eigs=(r[3], r[4]),
            is_global=bool(r[2] <= e_min + tol_deg),
            at_origin=bool(abs(r[0]) <= TOL_DEDUP and abs(r[1]) <= TOL_DEDUP),
        )
        for r in reps
    )
    return MinimaSet(params=params, minima=minima, n_failed_seeds=n_failed, max_energy_increase=max_inc)


def classify_phase(minima: MinimaSet) -> PhaseLabel:
    if minima.n_local == 1 and minima.global_at_origin:
        return PhaseLabel.NORMAL
    if minima.n_local == 2 and not any(m.at_origin for m in minima.minima):
        return PhaseLabel.SUPERRADIANT
    return PhaseLabel.MULTISTABLE


@dataclass(frozen=True)
class PhaseDiagram:
    g_values: np.ndarray
    dg_values: np.ndarray
    kind: np.ndarray  # PhaseLabel value strings, shape (len(g), len(dg))
    n_local: np.ndarray
    n_global: np.ndarray
    global_at_origin: np.ndarray
    second_order: np.ndarray = field(repr=False)  # g_c over dg_values
    first_order: np.ndarray = field(repr=False)  # rows (g, dg_star), possibly empty


def phase_diagram(
    params: ModelParams,
    grid: GridSpec,
    seed_grid: GridSpec | None = None,
    check_seeds: bool = False,
    locate_first_order: bool = True,
) -> PhaseDiagram:
    """Classify every (g, dg) cell of a raster window.

    The per-cell seed-doubling check is off by default here (it quintuples
    the raster cost); callers verify a sampled subset instead.  A cell where
    the check does trip raises through unchanged.
    """
    from .effective import critical_line

    g_vals = grid.x_values()
    dg_vals = grid.y_values()
    kind = np.empty((grid.nx, grid.ny), dtype=object)
    n_local = np.zeros((grid.nx, grid.ny), dtype=np.int64)
    n_global = np.zeros_like(n_local)
    at_origin = np.zeros((grid.nx, grid.ny), dtype=bool)
    for i, g in enumerate(g_vals):
        for j, dg in enumerate(dg_vals):
            p = params.replace(g=float(g), dg=float(dg))
            ms = find_minima(p, seed_grid=seed_grid, check_seeds=check_seeds)
            kind[i, j] = classify_phase(ms).value
            n_local[i, j] = ms.n_local
            n_global[i, j] = ms.n_global
            at_origin[i, j] = ms.global_at_origin
    second = np.array([critical_line(0, params.replace(dg=float(dg)))[0] for dg in dg_vals])
    rows = []
    if locate_first_order:
        for g in g_vals:
            try:
                dg_star = first_order_boundary(
                    params.replace(g=float(g)), float(dg_vals[0]), float(dg_vals[-1]),
                    seed_grid=seed_grid,
                )
            except (NoBracket, NonConvergence):
                continue
            rows.append((float(g), dg_star))
    return PhaseDiagram(
        g_values=g_vals,
        dg_values=dg_vals,
        kind=kind,
        n_local=n_local,
        n_global=n_global,
        global_at_origin=at_origin,
        second_order=second,
        first_order=np.array(rows) if rows else np.empty((0, 2)),
    )


def _off_origin_gap(params: ModelParams, seed_grid: GridSpec | None) -> float:
    """E(best off-origin minimum) - E(origin); +inf when none exists."""
    ms = find_minima(params, seed_grid=seed_grid, check_seeds=False)
    off = [m.energy for m in ms.minima if not m.at_origin]
    if not off:
        return math.inf
    return min(off) - (-params.omega0)


def first_order_boundary(
    params: ModelParams,
    dg_lo: float,
    dg_hi: float,
    seed_grid: GridSpec | None = None,
    max_bisect: int = 60,
) -> float:
    """Drive amplitude where the off-origin and origin minima are degenerate.

    Bisection on the energy gap; endpoints must straddle (gap < 0 at dg_lo:
    superradiant side, gap > 0 or no off-origin minimum at dg_hi).
    """
    f_lo = _off_origin_gap(params.replace(dg=dg_lo), seed_grid)
    f_hi = _off_origin_gap(params.replace(dg=dg_hi), seed_grid)
    tol_deg = DEG_FACTOR * params.omega0
    if not (f_lo < -tol_deg and f_hi > tol_deg):
        raise NoBracket(
            f"gap does not change sign on [{dg_lo}, {dg_hi}]: {f_lo:.3e} .. {f_hi:.3e}"
        )
    lo, hi = dg_lo, dg_hi
    for _ in range(max_bisect):
        mid = 0.5 * (lo + hi)
        f_mid = _off_origin_gap(params.replace(dg=mid), seed_grid)
        if abs(f_mid) <= tol_deg:
            return mid
        if f_mid < 0.0:
            lo = mid
        else:
            hi = mid
    return 0.5 * (lo + hi)


def section(
    params: ModelParams,
    n_y: int = 401,
    x_window: float = 3.0,
    n_x: int = 601,
    refine_steps: int = 4,
) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
    """Minimum-energy path X[Y]: for each Y, the global argmin of E over X.

    Returns (Y, X_of_Y, E(X_of_Y, Y)).  A dense X scan finds the global
    basin; a few Newton steps on dE/dX sharpen the argmin.
    """
    ylim = Y_LIMIT - SEED_MARGIN
    ys = np.linspace(-ylim, ylim, n_y)
    xs = np.linspace(-x_window, x_window, n_x)
    c1, c2, c3 = _coeffs(params)
    ee = energy_numpy(xs[None, :], ys[:, None], params.omega, params.omega0, c1, c2, c3)
    best = np.argmin(ee, axis=1)
    x_best = xs[best].astype(float)
    h = 1e-6
    for _ in range(refine_steps):
        gx, _ = grad_numpy(x_best, ys, params.omega, params.omega0, c1, c2, c3)
        gxp, _ = grad_numpy(x_best + h, ys, params.omega, params.omega0, c1, c2, c3)
        gxm, _ = grad_numpy(x_best - h, ys, params.omega, params.omega0, c1, c2, c3)
        curv = (gxp - gxm) / (2.0 * h)
        step = np.where(curv > 1e-14, gx / np.where(curv > 1e-14, curv, 1.0), 0.0)
        step = np.clip(step, -0.5 * (xs[1] - xs[0]) * 4, 0.5 * (xs[1] - xs[0]) * 4)
        x_best = np.clip(x_best - step, -x_window, x_window)
    e_best = energy_numpy(x_best, ys, params.omega, params.omega0, c1, c2, c3)
    return ys, x_best, e_best
