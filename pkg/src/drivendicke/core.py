"""Model parameters and shared small value types.

The driven model is

    H(t) = omega a^dag a + omega0 Jz + g(t)/sqrt(N) (a^dag + a)(J+ + J-),
    g(t) = g + dg * cos(Omega t),

so a parameter point is five numbers.  Everything downstream (stability maps,
effective Hamiltonians, landscapes, exact propagation) consumes this one
container.  Frequencies are all in the same units; callers that think in
units of the drive frequency simply set ``Omega = 1``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import ConfigError


@dataclass(frozen=True)
class ModelParams:
    """Classical parameter point of the driven model.

    Attributes:
        omega: field frequency (> 0).
        omega0: atomic splitting (> 0).
        g: mean coupling (>= 0).
        dg: drive amplitude of the coupling modulation (>= 0).
        Omega: drive frequency (> 0).
    """

    omega: float
    omega0: float
    g: float
    dg: float
    Omega: float = 1.0

    def __post_init__(self) -> None:
        for name in ("omega", "omega0", "Omega"):
            v = getattr(self, name)
            if not (isinstance(v, (int, float)) and math.isfinite(v) and v > 0):
                raise ConfigError(f"{name} must be a positive finite number, got {v!r}")
        for name in ("g", "dg"):
            v = getattr(self, name)
            if not (isinstance(v, (int, float)) and math.isfinite(v) and v >= 0):
                raise ConfigError(f"{name} must be a non-negative finite number, got {v!r}")

    @property
    def period(self) -> float:
        """One drive period 2 pi / Omega."""
        return 2.0 * math.pi / self.Omega

    def replace(self, **kw) -> "ModelParams":
        d = dict(omega=self.omega, omega0=self.omega0, g=self.g, dg=self.dg, Omega=self.Omega)
        d.update(kw)
        return ModelParams(**d)

    def coupling_at(self, t: float) -> float:
        """Instantaneous coupling g(t) = g + dg cos(Omega t)."""
        return self.g + self.dg * math.cos(self.Omega * t)


@dataclass(frozen=True)
class Detunings:
    """Field and atomic detunings from the k-th subharmonic of the drive."""

    delta: float
    delta0: float


def detunings(params: ModelParams, k: int) -> Detunings:
    """Detunings delta = omega - k Omega/2 and delta0 = omega0 - k Omega/2.

    ``k`` counts which resonance 2 omega ~ k Omega the rotating frame is
    anchored to; ``k = 0`` is the plain lab-frame case where the detunings
    reduce to the bare frequencies.
    """
    if not isinstance(k, (int, np.integer)) or k < 0:
        raise ConfigError(f"resonance index k must be a non-negative integer, got {k!r}")
    half = 0.5 * k * params.Omega
    return Detunings(delta=params.omega - half, delta0=params.omega0 - half)


@dataclass(frozen=True)
class GridSpec:
    """A rectangular raster: inclusive ranges and point counts per axis."""

    x_min: float
    x_max: float
    nx: int
    y_min: float
    y_max: float
    ny: int

    def __post_init__(self) -> None:
        if not (self.x_min < self.x_max and self.y_min < self.y_max):
            raise ConfigError("grid ranges must satisfy min < max")
        if self.nx < 2 or self.ny < 2:
            raise ConfigError("grids need at least 2 points per axis")

    def x_values(self) -> np.ndarray:
        return np.linspace(self.x_min, self.x_max, self.nx)

    def y_values(self) -> np.ndarray:
        return np.linspace(self.y_min, self.y_max, self.ny)

    @property
    def dx(self) -> float:
        return (self.x_max - self.x_min) / (self.nx - 1)

    @property
    def dy(self) -> float:
        return (self.y_max - self.y_min) / (self.ny - 1)
