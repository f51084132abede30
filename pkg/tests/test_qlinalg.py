import math

import numpy as np
import pytest
import scipy.linalg
from hypothesis import given, settings
from hypothesis import strategies as st

from xxzswap.errors import NormalizationError, NotHermitianError
from xxzswap.qlinalg import (
    Density2,
    State2,
    density_from_state,
    expm,
    is_unitary,
    partial_trace_second,
    propagator,
    reduced_first,
    tensor_product,
)
from xxzswap.xxz_model import ModelParams, build_hamiltonian

from conftest import qubits

S = 1 / math.sqrt(2)


def random_hermitian(rng, scale=3.0):
    a = rng.normal(size=(4, 4)) + 1j * rng.normal(size=(4, 4))
    return scale * (a + a.conj().T) / 2


class TestState2:
    def test_basis(self):
        np.testing.assert_array_equal(State2.up().vector, [0, 1])
        np.testing.assert_array_equal(State2.down().vector, [1, 0])

    def test_silent_renormalization(self):
        q = State2(1 + 5e-10, 0)
        assert q.amp_up == pytest.approx(1.0, abs=1e-15)

    def test_rejects_unnormalized(self):
        with pytest.raises(NormalizationError):
            State2(0.5, 0.5)

    def test_rejects_nan(self):
        with pytest.raises(NormalizationError):
            State2(float("nan"), 0)


class TestTensorProduct:
    def test_up_up_is_index_3(self):
        np.testing.assert_array_equal(tensor_product(State2.up(), State2.up()), [0, 0, 0, 1])

    def test_second_spin_up(self):
        a = State2(0.6, 0.8j)
        psi = tensor_product(a, State2.up())
        # a1 |11> + a2 |01>
        np.testing.assert_allclose(psi, [0, 0.8j, 0, 0.6])

    def test_uniform(self):
        h = State2(S, S)
        np.testing.assert_allclose(tensor_product(h, h), [0.5] * 4)

    @given(qubits(), qubits())
    def test_normalized(self, a, b):
        assert np.linalg.norm(tensor_product(a, b)) == pytest.approx(1.0, abs=1e-12)


class TestPropagator:
    def test_zero_time(self, rng):
        np.testing.assert_array_equal(propagator(random_hermitian(rng), 0.0), np.eye(4))

    def test_diagonal(self):
        e = np.array([-1.5, 0.25, 0.7, 2.0])
        np.testing.assert_allclose(propagator(np.diag(e), 1.3), np.diag(np.exp(-1j * e * 1.3)), atol=1e-13)

    def test_xxx_maps_10_to_01(self):
        h = build_hamiltonian(ModelParams(J=1, lam=1))
        u = propagator(h, math.pi / 2)
        out = u @ np.array([0, 0, 1, 0])
        assert abs(out[1]) == pytest.approx(1.0, abs=1e-12)
        # independent routes: scipy Pade expm and numpy eigh spectral form
        w, v = np.linalg.eigh(h)
        spectral = v @ np.diag(np.exp(-1j * w * math.pi / 2)) @ v.conj().T
        np.testing.assert_allclose(u, scipy.linalg.expm(-1j * h * math.pi / 2), atol=1e-13)
        np.testing.assert_allclose(u, spectral, atol=1e-13)

    @pytest.mark.parametrize("t", [0.01, 1.0, 7.5, 20.0, 300.0])
    def test_matches_scipy(self, rng, t):
        h = random_hermitian(rng)
        u = propagator(h, t)
        assert is_unitary(u)
        np.testing.assert_allclose(u, scipy.linalg.expm(-1j * h * t), atol=1e-10)

    def test_rejects_non_hermitian(self):
        with pytest.raises(NotHermitianError):
            propagator(np.triu(np.ones((4, 4))), 1.0)

    @settings(max_examples=60, deadline=None)
    @given(st.floats(-20, 20), st.floats(-20, 20), st.integers(0, 2**32 - 1))
    def test_group_property(self, t1, t2, seed):
        h = random_hermitian(np.random.default_rng(seed), scale=1.0)
        lhs = propagator(h, t1) @ propagator(h, t2)
        np.testing.assert_allclose(lhs, propagator(h, t1 + t2), atol=1e-9)

    def test_expm_of_zero(self):
        np.testing.assert_array_equal(expm(np.zeros((4, 4))), np.eye(4))


class TestPartialTrace:
    def test_basis_state(self):
        rho = partial_trace_second(density_from_state([0, 0, 0, 1]))
        np.testing.assert_allclose(rho.matrix, [[0, 0], [0, 1]])
        assert rho.up_up == 1

    def test_bell_like(self):
        rho = partial_trace_second(density_from_state([0, S, S, 0]))
        np.testing.assert_allclose(rho.matrix, np.eye(2) / 2, atol=1e-15)

    @given(qubits(), qubits())
    def test_product_states_reduce_purely(self, a, b):
        rho = reduced_first(tensor_product(a, b))
        np.testing.assert_allclose(rho.matrix, Density2.from_state(a).matrix, atol=1e-12)

    def test_trace_preserved(self, rng):
        for _ in range(200):
            psi = rng.normal(size=4) + 1j * rng.normal(size=4)
            psi /= np.linalg.norm(psi)
            assert np.trace(reduced_first(psi).matrix) == pytest.approx(1.0, abs=1e-12)


class TestDensityFromState:
    def test_basis(self):
        rho = density_from_state([1, 0, 0, 0])
        assert rho[0, 0] == 1 and np.count_nonzero(rho) == 1

    def test_corners(self):
        rho = density_from_state([S, 0, 0, S])
        for i, j in [(0, 0), (0, 3), (3, 0), (3, 3)]:
            assert rho[i, j] == pytest.approx(0.5)

    def test_projector(self, rng):
        psi = rng.normal(size=4) + 1j * rng.normal(size=4)
        psi /= np.linalg.norm(psi)
        rho = density_from_state(psi)
        assert np.trace(rho) == pytest.approx(1.0, abs=1e-12)
        np.testing.assert_allclose(rho @ rho, rho, atol=1e-12)

    def test_rejects_unnormalized(self):
        with pytest.raises(NormalizationError):
            density_from_state([1, 1, 0, 0])


def test_density2_validation():
    with pytest.raises(ValueError):
        Density2(np.diag([0.7, 0.7]))
    with pytest.raises(NotHermitianError):
        Density2(np.array([[0.5, 0.1], [0.3, 0.5]]))
