import os
import subprocess
import sys

import numpy as np
import pytest

from spinbattery import kernels
from spinbattery.linalg import eigh
from spinbattery.model import ModelParams, Preset, build_all, initial_state

from conftest import random_hermitian, random_ket

needs_cython = pytest.mark.skipif("cython" not in kernels.available(), reason="extension not built")


def _run(code, **env):
    full = dict(os.environ, **env)
    out = subprocess.run([sys.executable, "-c", code], capture_output=True, text=True, env=full, check=True)
    return out.stdout.strip()


def test_python_backend_always_available():
    assert "python" in kernels.available()


def test_default_backend_prefers_extension():
    expected = "cython" if "cython" in kernels.available() else "python"
    assert _run("from spinbattery import kernels; print(kernels.BACKEND)", SPINBATTERY_PURE_PYTHON="") == expected


def test_env_var_forces_fallback():
    out = _run("from spinbattery import kernels; print(kernels.BACKEND, kernels.evolve_states.__module__)",
               SPINBATTERY_PURE_PYTHON="1")
    assert out == "python spinbattery.kernels._pykernels"


def test_unknown_backend():
    with pytest.raises(KeyError):
        kernels.load("fortran")


@needs_cython
class TestParity:
    py = kernels.load("python")

    @property
    def cy(self):
        return kernels.load("cython")

    def test_evolve(self, rng):
        d = eigh(random_hermitian(rng))
        psi = random_ket(rng)
        times = np.linspace(0, 7, 301)
        a = self.py.evolve_states(d.eigenvalues, d.eigenvectors, psi, times)
        b = self.cy.evolve_states(d.eigenvalues, d.eigenvectors, psi, times)
        assert a.shape == b.shape == (301, 4)
        assert np.max(np.abs(a - b)) <= 1e-13

    def test_observables(self, rng):
        states = np.array([random_ket(rng) for _ in range(200)])
        h = build_all(ModelParams()).h_free
        for x, y in zip(self.py.pure_state_observables(states, h), self.cy.pure_state_observables(states, h)):
            assert np.max(np.abs(x - y)) <= 1e-13

    def test_correlations(self, rng):
        states = np.array([random_ket(rng) for _ in range(50)])
        assert np.max(np.abs(self.py.correlation_tensors(states) - self.cy.correlation_tensors(states))) <= 1e-13

    def test_read_only_inputs(self):
        hs = build_all(ModelParams(J=1.0, gamma=1.0), Preset.ISING)
        d = eigh(hs.h_total)
        times = np.linspace(0, 1, 5)
        times.setflags(write=False)
        psi = initial_state()
        psi.setflags(write=False)
        states = self.cy.evolve_states(d.eigenvalues, d.eigenvectors, psi, times)
        states.setflags(write=False)
        self.cy.pure_state_observables(states, hs.h_free)


def test_empty_grid(backend):
    d = eigh(np.eye(4))
    out = kernels.evolve_states(d.eigenvalues, d.eigenvectors, initial_state(), np.zeros(0))
    assert out.shape == (0, 4)
