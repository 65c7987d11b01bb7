"""Dense complex linear algebra for one- and two-qubit operators.

Basis convention: single qubit ``|up> = (1, 0)``, ``|down> = (0, 1)`` so that
``sigma_z |up> = +|up>``.  Two-qubit states use the Kronecker ordering
``{|uu>, |ud>, |du>, |dd>}`` with qubit A as the left factor.
"""
from __future__ import annotations

from typing import NamedTuple

import numpy as np

HERMITIAN_TOL = 1e-12
DENSITY_TOL = 1e-10

IDENTITY2 = np.eye(2, dtype=complex)
SIGMA_X = np.array([[0, 1], [1, 0]], dtype=complex)
SIGMA_Y = np.array([[0, -1j], [1j, 0]], dtype=complex)
SIGMA_Z = np.array([[1, 0], [0, -1]], dtype=complex)
PAULIS = (SIGMA_X, SIGMA_Y, SIGMA_Z)

for _m in (IDENTITY2, *PAULIS):
    _m.setflags(write=False)


class NotHermitianError(ValueError):
    pass


class DensityMatrixError(ValueError):
    pass


class EigenDecomposition(NamedTuple):
    """Ascending real spectrum and matching orthonormal eigenvector columns."""

    eigenvalues: np.ndarray
    eigenvectors: np.ndarray

    def reconstruct(self) -> np.ndarray:
        v = self.eigenvectors
        return (v * self.eigenvalues) @ v.conj().T


def _square(m, name="matrix") -> np.ndarray:
    m = np.asarray(m, dtype=complex)
    if m.ndim != 2 or m.shape[0] != m.shape[1]:
        raise ValueError(f"{name} must be square, got shape {m.shape}")
    return m


def kron(a, b) -> np.ndarray:
    """Kronecker product of two single-qubit operators."""
    a = _square(a, "a")
    b = _square(b, "b")
    if a.shape != (2, 2) or b.shape != (2, 2):
        raise ValueError(f"kron expects two 2x2 operators, got {a.shape} and {b.shape}")
    return np.kron(a, b)


def hermiticity_defect(m) -> float:
    m = _square(m)
    return float(np.max(np.abs(m - m.conj().T))) if m.size else 0.0


def is_hermitian(m, tol: float = HERMITIAN_TOL) -> bool:
    return hermiticity_defect(m) <= tol


def eigh(m, tol: float = HERMITIAN_TOL) -> EigenDecomposition:
    """Eigendecomposition of a Hermitian matrix.

    Raises :class:`NotHermitianError` when ``max|M - M^dagger|`` exceeds ``tol``.
    """
    m = _square(m)
    defect = hermiticity_defect(m)
    if defect > tol:
        raise NotHermitianError(f"matrix is not Hermitian (defect {defect:.3e} > {tol:.0e})")
    w, v = np.linalg.eigh(m)
    return EigenDecomposition(w, v)


def propagator(decomp: EigenDecomposition, t: float) -> np.ndarray:
    """``exp(-i H t)`` from a precomputed decomposition of ``H``."""
    v = decomp.eigenvectors
    return (v * np.exp(-1j * decomp.eigenvalues * t)) @ v.conj().T


def expm_unitary(m, t: float) -> np.ndarray:
    """Unitary ``exp(-i M t)`` for Hermitian ``M``, computed spectrally."""
    return propagator(eigh(m), t)


def ket_to_dm(psi) -> np.ndarray:
    psi = np.asarray(psi, dtype=complex)
    return np.outer(psi, psi.conj())


def check_state(psi, tol: float = DENSITY_TOL) -> np.ndarray:
    psi = np.asarray(psi, dtype=complex)
    if psi.ndim != 1:
        raise ValueError(f"state vector must be one-dimensional, got shape {psi.shape}")
    norm = np.linalg.norm(psi)
    if abs(norm - 1.0) > tol:
        raise ValueError(f"state vector is not normalised (norm {norm!r})")
    return psi


def check_density_matrix(rho, tol: float = DENSITY_TOL) -> np.ndarray:
    """Validate Hermiticity, unit trace and positivity; return ``rho`` as complex array."""
    try:
        rho = _square(rho, "density matrix")
    except ValueError as exc:
        raise DensityMatrixError(str(exc)) from None
    defect = hermiticity_defect(rho)
    if defect > tol:
        raise DensityMatrixError(f"density matrix is not Hermitian (defect {defect:.3e})")
    tr = np.trace(rho)
    if abs(tr - 1.0) > tol:
        raise DensityMatrixError(f"density matrix trace is {tr.real:.12g}, expected 1")
    lowest = np.linalg.eigvalsh(rho)[0]
    if lowest < -tol:
        raise DensityMatrixError(f"density matrix has negative eigenvalue {lowest:.3e}")
    return rho


def partial_trace(rho, keep) -> np.ndarray:
    """Reduced state of one qubit of a two-qubit density matrix.

    ``keep`` selects the surviving qubit: ``"A"``/``0`` (left factor) or
    ``"B"``/``1`` (right factor).
    """
    rho = check_density_matrix(rho)
    if rho.shape != (4, 4):
        raise DensityMatrixError(f"partial_trace expects a 4x4 density matrix, got {rho.shape}")
    r = rho.reshape(2, 2, 2, 2)
    if keep in ("A", "a", 0):
        return np.einsum("ijkj->ik", r)
    if keep in ("B", "b", 1):
        return np.einsum("jijk->ik", r)
    raise ValueError(f"keep must be 'A' or 'B', got {keep!r}")


def purity(rho) -> float:
    rho = check_density_matrix(rho)
    # Tr(rho^2) = sum |rho_ij|^2 for Hermitian rho
    return float(np.sum(np.abs(rho) ** 2))
