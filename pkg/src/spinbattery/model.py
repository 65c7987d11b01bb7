"""Hamiltonians of the two-cell spin-chain battery.

Energies are in units of the charging field strength ``omega`` and ``hbar = 1``.
"""
from __future__ import annotations

import enum
import math
from dataclasses import dataclass

import numpy as np

from .linalg import IDENTITY2, SIGMA_X, SIGMA_Y, SIGMA_Z, hermiticity_defect, kron

_XX = kron(SIGMA_X, SIGMA_X)
_YY = kron(SIGMA_Y, SIGMA_Y)
_ZZ = kron(SIGMA_Z, SIGMA_Z)
_XY_MINUS_YX = kron(SIGMA_X, SIGMA_Y) - kron(SIGMA_Y, SIGMA_X)
_X_SUM = kron(SIGMA_X, IDENTITY2) + kron(IDENTITY2, SIGMA_X)
_Z_SUM = kron(SIGMA_Z, IDENTITY2) + kron(IDENTITY2, SIGMA_Z)

DOWN_DOWN = 3


class PresetError(ValueError):
    pass


class Preset(str, enum.Enum):
    ISING = "ising"
    XXZ = "xxz"
    XYZ = "xyz"
    CUSTOM = "custom"

    @classmethod
    def parse(cls, value) -> "Preset":
        if isinstance(value, cls):
            return value
        try:
            return cls(str(value).lower())
        except ValueError:
            choices = ", ".join(p.value for p in cls)
            raise PresetError(f"unknown model {value!r}; expected one of {choices}") from None


@dataclass(frozen=True)
class ModelParams:
    """Physical parameters of the battery.

    ``J``, ``D`` and ``omega0`` are in units of ``omega``; ``gamma`` and
    ``delta`` are dimensionless anisotropies.  Negative ``J`` and ``D`` are
    accepted but have not been studied.
    """

    J: float = 1.0
    gamma: float = 0.0
    delta: float = 0.0
    D: float = 0.0
    omega: float = 1.0
    omega0: float = 1.0

    def __post_init__(self):
        for name in ("J", "gamma", "delta", "D", "omega", "omega0"):
            value = getattr(self, name)
            try:
                value = float(value)
            except (TypeError, ValueError):
                raise ValueError(f"{name} must be a real number, got {value!r}") from None
            if not math.isfinite(value):
                raise ValueError(f"{name} must be finite, got {value!r}")
            object.__setattr__(self, name, value)
        if self.omega <= 0:
            raise ValueError(f"omega must be positive, got {self.omega!r}")
        if self.omega0 <= 0:
            raise ValueError(f"omega0 must be positive, got {self.omega0!r}")

    def parallel(self) -> "ModelParams":
        """Same cells and field with the inter-cell coupling switched off."""
        return ModelParams(J=0.0, gamma=self.gamma, delta=self.delta, D=0.0,
                           omega=self.omega, omega0=self.omega0)


@dataclass(frozen=True)
class HamiltonianSet:
    h_ch: np.ndarray
    h_int: np.ndarray
    h_total: np.ndarray
    h_free: np.ndarray


def charging_term(omega: float) -> np.ndarray:
    return float(omega) * _X_SUM


def build_charging(params: ModelParams) -> np.ndarray:
    """Local x-field ``omega (sx x I + I x sx)`` acting on both cells."""
    return charging_term(params.omega)


def build_interaction(params: ModelParams) -> np.ndarray:
    """Anisotropic Heisenberg exchange plus z-aligned DM coupling."""
    p = params
    exchange = (1 + p.gamma) * _XX + (1 - p.gamma) * _YY + p.delta * _ZZ
    return p.J * exchange + p.D * _XY_MINUS_YX


def build_free(params: ModelParams) -> np.ndarray:
    return params.omega0 * _Z_SUM


def check_preset(params: ModelParams, preset) -> Preset:
    preset = Preset.parse(preset)
    if preset is Preset.ISING:
        if params.gamma != 1.0:
            raise PresetError(f"ising model requires gamma = 1, got gamma = {params.gamma!r}")
        if params.delta != 0.0:
            raise PresetError(f"ising model requires delta = 0, got delta = {params.delta!r}")
    elif preset is Preset.XXZ:
        if params.gamma != 0.0:
            raise PresetError(f"xxz model requires gamma = 0, got gamma = {params.gamma!r}")
    elif preset is Preset.XYZ:
        if params.gamma == 0.0:
            raise PresetError("xyz model requires a nonzero gamma")
        if params.delta == 0.0:
            raise PresetError("xyz model requires a nonzero delta")
    return preset


def build_all(params: ModelParams, preset=Preset.CUSTOM) -> HamiltonianSet:
    check_preset(params, preset)
    h_ch = build_charging(params)
    h_int = build_interaction(params)
    hs = HamiltonianSet(h_ch=h_ch, h_int=h_int, h_total=h_ch + h_int, h_free=build_free(params))
    for name in ("h_ch", "h_int", "h_total", "h_free"):
        m = getattr(hs, name)
        m.setflags(write=False)
        # guards against a future builder producing a non-Hermitian term
        assert hermiticity_defect(m) <= 1e-12, name
    return hs


def initial_state() -> np.ndarray:
    """Empty battery: both spins down."""
    psi = np.zeros(4, dtype=complex)
    psi[DOWN_DOWN] = 1.0
    return psi
