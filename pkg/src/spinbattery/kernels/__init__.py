"""Hot loops over a time grid.

The compiled ``_ckernels`` extension is used when it has been built; otherwise
the numpy implementation in ``_pykernels`` is loaded.  Set
``SPINBATTERY_PURE_PYTHON=1`` to force the fallback.

Kernels
-------
evolve_states(eigvals, eigvecs, psi0, times)
    States ``V exp(-i w t) V^dagger psi0`` for every ``t``, shape ``(n, d)``.
pure_state_observables(states, h_free)
    ``(energy, coherence, steering)`` arrays for a batch of two-qubit kets.
correlation_tensors(states)
    Two-site Pauli correlation matrices, shape ``(n, 3, 3)``.
"""
import importlib
import os

BACKENDS = ("cython", "python")
_MODULES = {"cython": "._ckernels", "python": "._pykernels"}


def load(name):
    """Import a specific backend module; raises ImportError if unavailable."""
    return importlib.import_module(_MODULES[name], __name__)


def available():
    found = []
    for name in BACKENDS:
        try:
            load(name)
        except ImportError:
            continue
        found.append(name)
    return found


if os.environ.get("SPINBATTERY_PURE_PYTHON", "").strip() not in ("", "0"):
    _impl = load("python")
    BACKEND = "python"
else:
    try:
        _impl = load("cython")
        BACKEND = "cython"
    except ImportError:
        _impl = load("python")
        BACKEND = "python"

evolve_states = _impl.evolve_states
pure_state_observables = _impl.pure_state_observables
correlation_tensors = _impl.correlation_tensors

__all__ = ["BACKEND", "available", "load", "evolve_states", "pure_state_observables",
           "correlation_tensors"]
