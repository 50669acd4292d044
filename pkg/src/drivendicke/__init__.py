"""Driven Dicke model: stability, effective Hamiltonians, phase structure."""

from .core import Detunings, GridSpec, ModelParams, detunings

__all__ = ["Detunings", "GridSpec", "ModelParams", "detunings"]
__version__ = "0.1.0"
