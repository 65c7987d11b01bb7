"""Numpy implementation of the trajectory kernels (fallback backend)."""
import numpy as np

_PAULIS = np.array([
    [[0, 1], [1, 0]],
    [[0, -1j], [1j, 0]],
    [[1, 0], [0, -1]],
], dtype=complex)


def evolve_states(eigvals, eigvecs, psi0, times):
    eigvals = np.asarray(eigvals, dtype=float)
    eigvecs = np.asarray(eigvecs, dtype=complex)
    coeffs = eigvecs.conj().T @ np.asarray(psi0, dtype=complex)
    phases = np.exp(-1j * np.outer(np.asarray(times, dtype=float), eigvals))
    return (phases * coeffs) @ eigvecs.T


def correlation_tensors(states):
    m = np.asarray(states, dtype=complex).reshape(-1, 2, 2)
    return np.einsum("tab,iac,jbd,tcd->tij", m.conj(), _PAULIS, _PAULIS, m).real


def pure_state_observables(states, h_free):
    states = np.asarray(states, dtype=complex)
    energy = np.einsum("ti,ij,tj->t", states.conj(), np.asarray(h_free, dtype=complex), states).real

    m = states.reshape(-1, 2, 2)
    rho_a = m @ m.conj().transpose(0, 2, 1)
    rho_b = m.transpose(0, 2, 1) @ m.conj()
    q2_a = np.maximum(0.0, 2 * np.sum(np.abs(rho_a) ** 2, axis=(1, 2)) - 1)
    q2_b = np.maximum(0.0, 2 * np.sum(np.abs(rho_b) ** 2, axis=(1, 2)) - 1)
    coherence = np.sqrt((q2_a + q2_b) / 2)

    t = correlation_tensors(states)
    steering = np.sqrt(np.sum(t * t, axis=(1, 2)))
    return energy, coherence, steering
