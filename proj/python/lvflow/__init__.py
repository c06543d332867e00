"""Quantum Lotka-Volterra phase-space flow (C++ core)."""

from ._lvflow import (
    DomainError,
    IoError,
    LvflowError,
    NumericalError,
    alpha_sweep,
    classical_velocity,
    density,
    detect_extinctions,
    energy,
    erf,
    erfi,
    flow_grid,
    hermite,
    integrate,
    quantum_velocity,
    series_currents,
    verify,
)

__all__ = [
    "DomainError",
    "IoError",
    "LvflowError",
    "NumericalError",
    "alpha_sweep",
    "classical_velocity",
    "density",
    "detect_extinctions",
    "energy",
    "erf",
    "erfi",
    "flow_grid",
    "hermite",
    "integrate",
    "quantum_velocity",
    "series_currents",
    "verify",
]
