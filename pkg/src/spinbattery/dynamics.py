"""Exact unitary charging dynamics on a uniform time grid."""
from __future__ import annotations

import math
from dataclasses import dataclass
from functools import cached_property

import numpy as np

from . import kernels
from .linalg import check_state, eigh


@dataclass(frozen=True)
class TimeGrid:
    """Uniform samples of ``[t_start, t_end]`` including both endpoints (units of 1/omega)."""

    t_start: float = 0.0
    t_end: float = math.pi / 2
    steps: int = 2001

    def __post_init__(self):
        t0, t1 = float(self.t_start), float(self.t_end)
        if not (math.isfinite(t0) and math.isfinite(t1)):
            raise ValueError("time grid bounds must be finite")
        if t0 < 0:
            raise ValueError(f"t_start must be >= 0, got {t0!r}")
        if t1 <= t0:
            raise ValueError(f"t_end must exceed t_start, got [{t0!r}, {t1!r}]")
        if isinstance(self.steps, bool) or int(self.steps) != self.steps or self.steps < 2:
            raise ValueError(f"steps must be an integer >= 2, got {self.steps!r}")
        object.__setattr__(self, "t_start", t0)
        object.__setattr__(self, "t_end", t1)
        object.__setattr__(self, "steps", int(self.steps))

    @classmethod
    def window(cls, omega: float = 1.0, multiple: float = 1.0, steps: int = 2001) -> "TimeGrid":
        """``[0, multiple * t_min(omega)]``."""
        return cls(0.0, multiple * t_min(omega), steps)

    @cached_property
    def times(self) -> np.ndarray:
        t = np.linspace(self.t_start, self.t_end, self.steps)
        t.setflags(write=False)
        return t

    @property
    def spacing(self) -> float:
        return (self.t_end - self.t_start) / (self.steps - 1)


@dataclass(frozen=True)
class Trajectory:
    grid: TimeGrid
    states: np.ndarray  # (steps, 4), row k is psi(t_k)

    @property
    def times(self) -> np.ndarray:
        return self.grid.times


def evolve(h_total, psi0, grid: TimeGrid) -> Trajectory:
    """Propagate ``psi0`` under a time-independent Hamiltonian.

    ``h_total`` is diagonalised once and the spectral propagator is applied at
    every grid point, so there is no step-size error.
    """
    psi0 = check_state(psi0)
    decomp = eigh(h_total)
    if decomp.eigenvectors.shape[0] != psi0.shape[0]:
        raise ValueError(f"state dimension {psi0.shape[0]} does not match Hamiltonian "
                         f"dimension {decomp.eigenvectors.shape[0]}")
    states = kernels.evolve_states(decomp.eigenvalues, decomp.eigenvectors, psi0, grid.times)
    if grid.times[0] == 0.0:
        states[0] = psi0
    return Trajectory(grid=grid, states=states)


def t_min(omega: float) -> float:
    """Time for independent cells to reach full charge: ``pi / (2 omega)``."""
    if not omega > 0:
        raise ValueError(f"omega must be positive, got {omega!r}")
    return math.pi / (2 * omega)


def parallel_ergotropy(t, omega: float, omega0: float):
    """Closed-form ergotropy of two uncoupled cells, ``4 omega0 sin^2(omega t)``.

    Accepts scalar or array ``t``.
    """
    t_arr = np.asarray(t, dtype=float)
    if np.any(t_arr < 0):
        raise ValueError("t must be non-negative")
    zeta = 4.0 * omega0 * np.sin(omega * t_arr) ** 2
    return float(zeta) if zeta.ndim == 0 else zeta
