"""Figures of merit evaluated along a charging trajectory.

Ergotropy is measured against the passive state of the free Hamiltonian
``h_free``.  Steering is the maximal violation of the three-setting linear
steering inequality, with ``a_i`` an orthonormal triad and ``b_i`` unit vectors.
"""
from __future__ import annotations

import enum
import math
from dataclasses import asdict, dataclass

import numpy as np

from . import kernels
from .linalg import (
    PAULIS,
    DensityMatrixError,
    check_density_matrix,
    eigh,
    kron,
    partial_trace,
    purity,
)

ERGOTROPY_TOL = 1e-12
SQRT3 = math.sqrt(3.0)


class PeakKind(str, enum.Enum):
    ERGOTROPY = "ergotropy"
    POWER = "power"


@dataclass(frozen=True)
class ObservableRecord:
    t: float
    ergotropy: float
    power: float
    coherence: float
    steering: float
    mean_energy: float

    def as_dict(self) -> dict:
        return asdict(self)


@dataclass(frozen=True)
class PeakReport:
    t_peak: float
    value_peak: float
    kind: PeakKind


def ergotropy(rho, h_free) -> float:
    """Mean energy minus the energy of the passive state with the same spectrum."""
    rho = check_density_matrix(rho)
    h_spec = eigh(h_free).eigenvalues
    if h_spec.shape[0] != rho.shape[0]:
        raise ValueError("density matrix and free Hamiltonian dimensions differ")
    energy = float(np.trace(rho @ np.asarray(h_free, dtype=complex)).real)
    populations = np.sort(np.linalg.eigvalsh(rho))[::-1]
    passive = float(np.dot(populations, np.sort(h_spec)))
    zeta = energy - passive
    if -ERGOTROPY_TOL <= zeta < 0:
        zeta = 0.0
    return zeta


def power(zeta: float, t: float) -> float:
    """Average charging power ``zeta / t``; zero at ``t = 0``."""
    if t < 0:
        raise ValueError(f"t must be non-negative, got {t!r}")
    if t == 0:
        return 0.0
    return zeta / t


def first_order_coherence_single(rho_k) -> float:
    return math.sqrt(max(0.0, 2.0 * purity(rho_k) - 1.0))


def first_order_coherence(rho) -> float:
    q_a = first_order_coherence_single(partial_trace(rho, "A"))
    q_b = first_order_coherence_single(partial_trace(rho, "B"))
    return math.sqrt((q_a ** 2 + q_b ** 2) / 2)


_PAIRS = tuple(tuple(kron(a, b) for b in PAULIS) for a in PAULIS)


def correlation_matrix(rho) -> np.ndarray:
    """3x3 real matrix ``T[i, j] = Tr(rho sigma_i (x) sigma_j)``."""
    rho = check_density_matrix(rho)
    if rho.shape != (4, 4):
        raise DensityMatrixError(f"expected a two-qubit density matrix, got shape {rho.shape}")
    raw = np.array([[np.trace(rho @ op) for op in row] for row in _PAIRS])
    if np.max(np.abs(raw.imag)) > 1e-8:
        raise DensityMatrixError("correlation matrix has a non-negligible imaginary part")
    return raw.real


def steering_max(T) -> float:
    """Maximal steering-inequality value, ``sqrt(Tr(T^T T))``.

    Values above 1 certify a steerable state.
    """
    T = np.asarray(T, dtype=float)
    return float(math.sqrt(np.sum(T * T)))


def _steering_objective(T, R) -> float:
    return float(np.sum(np.linalg.norm(T.T @ R, axis=0))) / SQRT3


def _random_rotation(rng) -> np.ndarray:
    q, r = np.linalg.qr(rng.standard_normal((3, 3)))
    q = q * np.sign(np.diag(r))
    if np.linalg.det(q) < 0:
        q[:, 0] = -q[:, 0]
    return q


def _rotation(w) -> np.ndarray:
    theta = float(np.linalg.norm(w))
    if theta == 0.0:
        return np.eye(3)
    k = np.asarray(w, dtype=float) / theta
    K = np.array([[0.0, -k[2], k[1]], [k[2], 0.0, -k[0]], [-k[1], k[0], 0.0]])
    return np.eye(3) + math.sin(theta) * K + (1.0 - math.cos(theta)) * (K @ K)


# Generators of rotations: _GENERATORS[k] @ v == cross(e_k, v)
_GENERATORS = np.zeros((3, 3, 3))
for _k, (_i, _j) in enumerate(((1, 2), (2, 0), (0, 1))):
    _GENERATORS[_k, _j, _i] = 1.0
    _GENERATORS[_k, _i, _j] = -1.0
_GENERATOR_PRODUCTS = np.einsum("kij,ljm->klim", _GENERATORS, _GENERATORS)


def _local_model(G, R):
    """Value, gradient and Hessian of sum_i sqrt(r_i.G.r_i) along R exp([w]x) at w = 0."""
    M = R.T @ G @ R
    n = np.sqrt(np.clip(np.diag(M), 0.0, None))
    live = n > 1e-14
    inv = np.where(live, 1.0 / np.where(live, n, 1.0), 0.0)
    MK = np.einsum("ij,kjl->kil", M, _GENERATORS)
    first = 2.0 * np.einsum("kii->ki", MK)  # d s_i / d w_k
    KKM = np.einsum("klim,mi->kli", _GENERATOR_PRODUCTS, M)  # diag of K_k K_l M (= diag of M K_l K_k)
    KMK = np.einsum("kij,jm,lmi->kli", _GENERATORS, M, _GENERATORS)
    second = (KKM + np.swapaxes(KKM, 0, 1)) / 2 - KMK
    second = (second + np.swapaxes(second, 0, 1)) / 2  # d2 s_i = w.second[..., i].w
    grad = first @ inv / 2
    hess = np.einsum("kli,i->kl", second, inv) - np.einsum("ki,li,i->kl", first, first, inv ** 3) / 4
    return float(n.sum()), grad, hess


def _ascend(T, R, tol, max_iter):
    """Newton ascent of sum_i ||T^T r_i|| over rotations, starting from ``R``."""
    G = T @ T.T
    # value error near a maximum is quadratic in the gradient norm
    grad_tol = math.sqrt(tol)
    value, g, H = _local_model(G, R)
    for _ in range(max_iter):
        lam, vec = np.linalg.eigh(H)
        scale = max(1.0, float(np.max(np.abs(lam))))
        if np.linalg.norm(g) <= grad_tol:
            if lam[-1] <= 1e-6 * scale:
                break
            # stationary but not a maximum: leave along the direction of positive curvature
            step = 0.1 * vec[:, -1]
            cand = R @ _rotation(step)
            alt = R @ _rotation(-step)
            R = cand if _steering_objective(T, cand) >= _steering_objective(T, alt) else alt
            value, g, H = _local_model(G, R)
            continue
        coeff = vec.T @ g
        # Newton along concave directions; along flat or convex ones move to the
        # trust radius uphill and let backtracking shorten the step
        concave = lam < -1e-8 * scale
        step = vec @ np.where(concave, -coeff / np.where(concave, lam, -1.0), 0.5 * np.sign(coeff))
        norm = np.linalg.norm(step)
        if norm > 0.5:
            step *= 0.5 / norm
        for _ in range(40):
            cand = R @ _rotation(step)
            new = float(np.sum(np.linalg.norm(T.T @ cand, axis=0)))
            if new >= value:
                break
            step = step / 2
        else:
            break
        R = cand
        value, g, H = _local_model(G, R)
    return value / SQRT3


def steering_bruteforce(T, restarts: int = 3, tol: float = 1e-14, max_iter: int = 100,
                        rng=None) -> float:
    """Direct numerical maximisation of the steering functional over measurement triads.

    For a rotation ``R`` with columns ``a_i`` the optimal unit ``b_i`` are the
    normalised ``T^T a_i``, leaving ``sum_i ||T^T a_i|| / sqrt(3)`` to be
    maximised over ``R``.  Each restart draws a random rotation and climbs with
    a Newton ascent on the three rotation angles, stepping off saddles.  The
    result is the best local maximum found, a lower bound on the true maximum.
    """
    if restarts < 1:
        raise ValueError("restarts must be >= 1")
    T = np.asarray(T, dtype=float)
    rng = np.random.default_rng(rng)
    best = 0.0
    for _ in range(restarts):
        best = max(best, _ascend(T, _random_rotation(rng), tol, max_iter))
    return best


def record_trajectory(traj, h_free) -> list[ObservableRecord]:
    """One :class:`ObservableRecord` per grid point of a pure-state trajectory."""
    times = traj.times
    energy, coherence, steering = kernels.pure_state_observables(traj.states, h_free)
    e_ground = float(eigh(h_free).eigenvalues[0])
    zeta = energy - e_ground
    zeta = np.where((zeta < 0) & (zeta >= -ERGOTROPY_TOL), 0.0, zeta)
    safe_t = np.where(times > 0, times, 1.0)
    pw = np.where(times > 0, zeta / safe_t, 0.0)
    return [
        ObservableRecord(float(t), float(z), float(p), float(q), float(s), float(e))
        for t, z, p, q, s, e in zip(times, zeta, pw, coherence, steering, energy)
    ]


def find_peak(records, kind) -> PeakReport:
    """Maximum of ergotropy or power, refined by a parabola through the top three samples.

    The earliest grid maximum is used when several samples tie.  A maximum at
    either end of the series is reported without refinement.
    """
    kind = PeakKind(kind)
    if not records:
        raise ValueError("find_peak needs at least one record")
    t = np.array([r.t for r in records], dtype=float)
    y = np.array([getattr(r, kind.value) for r in records], dtype=float)
    i = int(np.argmax(y))
    if i == 0 or i == len(y) - 1:
        return PeakReport(float(t[i]), float(y[i]), kind)
    x0, x1, x2 = t[i - 1], t[i], t[i + 1]
    y0, y1, y2 = y[i - 1], y[i], y[i + 1]
    # divided differences of the interpolating quadratic
    d01 = (y1 - y0) / (x1 - x0)
    d12 = (y2 - y1) / (x2 - x1)
    curv = (d12 - d01) / (x2 - x0)
    if not curv < 0:
        return PeakReport(float(x1), float(y1), kind)
    slope = d01 - curv * (x0 + x1)
    tv = -slope / (2 * curv)
    tv = min(max(tv, x0), x2)
    yv = y1 + (tv - x1) * (d01 + curv * (tv - x0))
    return PeakReport(float(tv), float(yv), kind)
