import math

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from spinbattery.linalg import IDENTITY2, SIGMA_X, SIGMA_Y, SIGMA_Z, hermiticity_defect, kron
from spinbattery.model import (
    ModelParams,
    Preset,
    PresetError,
    build_all,
    build_charging,
    build_free,
    build_interaction,
    charging_term,
    initial_state,
)

reals = st.floats(-10, 10, allow_nan=False)


def comm(a, b):
    return a @ b - b @ a


class TestParams:
    @pytest.mark.parametrize("field", ["J", "gamma", "delta", "D", "omega", "omega0"])
    @pytest.mark.parametrize("bad", [math.nan, math.inf, -math.inf])
    def test_rejects_non_finite(self, field, bad):
        with pytest.raises(ValueError, match=field):
            ModelParams(**{field: bad})

    @pytest.mark.parametrize("field", ["omega", "omega0"])
    def test_rejects_nonpositive_frequency(self, field):
        with pytest.raises(ValueError):
            ModelParams(**{field: 0.0})

    def test_negative_couplings_allowed(self):
        p = ModelParams(J=-1.0, D=-2.0)
        assert p.J == -1.0 and p.D == -2.0

    def test_parallel_drops_coupling(self):
        p = ModelParams(J=1.0, gamma=1.0, D=3.0, omega0=2.0).parallel()
        assert p.J == 0.0 and p.D == 0.0 and p.omega0 == 2.0


class TestCharging:
    def test_unit_field_couples_single_flips(self):
        h = build_charging(ModelParams(omega=1.0))
        expected = np.array([[0, 1, 1, 0], [1, 0, 0, 1], [1, 0, 0, 1], [0, 1, 1, 0]])
        assert np.array_equal(h, expected)

    def test_zero_field(self):
        assert np.array_equal(charging_term(0.0), np.zeros((4, 4)))

    def test_linear_in_field(self):
        assert np.array_equal(build_charging(ModelParams(omega=2.0)), 2 * build_charging(ModelParams()))


class TestInteraction:
    def test_ising_is_twice_xx(self):
        h = build_interaction(ModelParams(J=1.0, gamma=1.0, delta=0.0, D=0.0))
        assert np.array_equal(h, 2 * np.fliplr(np.eye(4)))

    def test_decoupled(self):
        assert np.array_equal(build_interaction(ModelParams(J=0.0, gamma=0.3, delta=2.0, D=0.0)),
                              np.zeros((4, 4)))

    def test_xxz_with_dm(self):
        h = build_interaction(ModelParams(J=1.0, gamma=0.0, delta=2.0, D=1.7))
        expected = (kron(SIGMA_X, SIGMA_X) + kron(SIGMA_Y, SIGMA_Y) + 2 * kron(SIGMA_Z, SIGMA_Z)
                    + 1.7 * (kron(SIGMA_X, SIGMA_Y) - kron(SIGMA_Y, SIGMA_X)))
        assert np.allclose(h, expected, atol=1e-15)

    def test_dm_term_matrix_elements(self):
        # sx(x)sy - sy(x)sx = 2i(|ud><du| - |du><ud|) in the {uu, ud, du, dd} basis
        h = build_interaction(ModelParams(J=0.0, D=1.0))
        expected = np.zeros((4, 4), dtype=complex)
        expected[1, 2], expected[2, 1] = 2j, -2j
        assert np.allclose(h, expected, atol=1e-15)

    @given(reals, reals, reals, reals)
    def test_hermitian(self, J, gamma, delta, D):
        h = build_interaction(ModelParams(J=J, gamma=gamma, delta=delta, D=D))
        assert hermiticity_defect(h) <= 1e-12

    @given(reals, reals, reals)
    def test_linear_in_exchange(self, J, gamma, delta):
        one = build_interaction(ModelParams(J=J, gamma=gamma, delta=delta))
        two = build_interaction(ModelParams(J=2 * J, gamma=gamma, delta=delta))
        assert np.allclose(two, 2 * one, atol=1e-12)


class TestFree:
    def test_diagonal(self):
        assert np.array_equal(build_free(ModelParams(omega0=1.0)), np.diag([2, 0, 0, -2]))

    @pytest.mark.parametrize("omega0", [0.5, 1.0, 3.0])
    def test_extreme_levels(self, omega0):
        h0 = build_free(ModelParams(omega0=omega0))
        w = np.linalg.eigvalsh(h0)
        assert w[0] == pytest.approx(-2 * omega0) and w[-1] == pytest.approx(2 * omega0)
        assert h0[3, 3].real == pytest.approx(-2 * omega0)  # |dd>
        assert h0[0, 0].real == pytest.approx(2 * omega0)  # |uu>

    def test_commutes_with_parity(self):
        parity = kron(SIGMA_Z, SIGMA_Z)
        assert np.allclose(comm(build_free(ModelParams()), parity), 0)


class TestBuildAll:
    def test_ising_rejects_delta(self):
        with pytest.raises(PresetError, match="delta"):
            build_all(ModelParams(gamma=1.0, delta=0.5), Preset.ISING)

    def test_ising_rejects_gamma(self):
        with pytest.raises(PresetError, match="gamma"):
            build_all(ModelParams(gamma=0.5), "ising")

    def test_xxz_requires_gamma_zero(self):
        with pytest.raises(PresetError):
            build_all(ModelParams(gamma=0.2, delta=2.0), Preset.XXZ)
        build_all(ModelParams(gamma=0.0, delta=2.0, D=1.7), Preset.XXZ)

    @pytest.mark.parametrize("kw", [{"gamma": 0.0, "delta": 2.0}, {"gamma": 0.3, "delta": 0.0}])
    def test_xyz_requires_anisotropy(self, kw):
        with pytest.raises(PresetError):
            build_all(ModelParams(**kw), Preset.XYZ)

    def test_unknown_preset(self):
        with pytest.raises(PresetError):
            build_all(ModelParams(), "heisenberg")

    def test_parallel_configuration(self):
        hs = build_all(ModelParams(J=0.0, D=0.0))
        assert np.array_equal(hs.h_total, hs.h_ch)

    def test_xxz_scenario(self):
        p = ModelParams(J=1.0, gamma=0.0, delta=2.0, D=0.0)
        hs = build_all(p, Preset.XXZ)
        assert np.array_equal(hs.h_total, hs.h_ch + hs.h_int)
        assert np.allclose(hs.h_int, kron(SIGMA_X, SIGMA_X) + kron(SIGMA_Y, SIGMA_Y) + 2 * kron(SIGMA_Z, SIGMA_Z))
        for m in (hs.h_ch, hs.h_int, hs.h_total, hs.h_free):
            assert hermiticity_defect(m) <= 1e-12

    def test_commutator_ising_vs_xxz(self):
        ising = build_all(ModelParams(J=1.0, gamma=1.0, delta=0.0, D=0.0), Preset.ISING)
        assert np.max(np.abs(comm(ising.h_ch, ising.h_int))) <= 1e-12
        xxz = build_all(ModelParams(J=1.0, gamma=0.0, delta=2.0, D=0.0), Preset.XXZ)
        assert np.linalg.norm(comm(xxz.h_ch, xxz.h_int)) > 0.1


class TestInitialState:
    def test_down_down(self):
        assert np.array_equal(initial_state(), [0, 0, 0, 1])
        assert np.linalg.norm(initial_state()) == 1.0

    @pytest.mark.parametrize("omega0", [1.0, 2.5])
    def test_empty_energy(self, omega0):
        psi = initial_state()
        h0 = build_free(ModelParams(omega0=omega0))
        assert np.vdot(psi, h0 @ psi).real == pytest.approx(-2 * omega0)

    def test_fresh_copy(self):
        a = initial_state()
        a[0] = 5
        assert initial_state()[0] == 0
