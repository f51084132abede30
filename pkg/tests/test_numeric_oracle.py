import math

import numpy as np
import pytest

from xxzswap.errors import InvalidParamsError
from xxzswap.numeric_oracle import energy, evolve_numeric, max_deviation, swap_error_numeric
from xxzswap.qlinalg import State2, tensor_product
from xxzswap.sampling import random_params, random_qubit
from xxzswap.xxz_model import ModelParams, eigensystem

UP, DOWN = State2.up(), State2.down()


def test_time_zero_is_identity(rng):
    a, b = random_qubit(rng, True), random_qubit(rng, True)
    res = evolve_numeric(a, b, random_params(rng), 0.0)
    assert np.allclose(res.state, tensor_product(a, b), atol=1e-15)


def test_xxx_swaps_basis_state():
    res = evolve_numeric(UP, DOWN, ModelParams(J=1, lam=1), math.pi / 2)
    # |10> -> phase |01>
    assert abs(res.state[1]) == pytest.approx(1, abs=1e-12)
    assert np.max(np.abs(np.delete(res.state, 1))) < 1e-12
    assert res.purity == pytest.approx(0, abs=1e-12)


def test_norm_and_purity_range(rng):
    for _ in range(50):
        a, b = random_qubit(rng, True), random_qubit(rng, True)
        res = evolve_numeric(a, b, random_params(rng), rng.uniform(-100, 100))
        assert np.linalg.norm(res.state) == pytest.approx(1, abs=1e-10)
        assert -1e-12 <= res.purity <= 0.25 + 1e-10


def test_time_cap():
    with pytest.raises(InvalidParamsError):
        evolve_numeric(UP, DOWN, ModelParams(), 1001.0)
    with pytest.raises(InvalidParamsError):
        evolve_numeric(UP, DOWN, ModelParams(), math.nan)


def test_target_fidelity():
    target = tensor_product(DOWN, UP)
    res = evolve_numeric(UP, DOWN, ModelParams(J=1, lam=1), math.pi / 2, target=target)
    assert res.fidelity_vs_target == pytest.approx(1, abs=1e-12)


class TestMaxDeviation:
    def test_eigenstate_input(self):
        # |11> is an eigenstate for any parameters
        ts = np.linspace(0.1, 10, 25)
        assert max_deviation(UP, UP, ModelParams(J=0.7, lam=0.3, B=1.2, b=0.4), ts) < 1e-12

    @pytest.mark.parametrize("b", [0.0, 0.9])
    def test_random_inputs(self, rng, b):
        for _ in range(10):
            p = random_params(rng).replace(b=b)
            ts = np.arange(1, 101) / 10
            assert max_deviation(random_qubit(rng, True), random_qubit(rng, True), p, ts) < 1e-9

    def test_empty_samples(self):
        with pytest.raises(InvalidParamsError):
            max_deviation(UP, DOWN, ModelParams(), [])


def test_energy_conservation(rng):
    for _ in range(10):
        a, b, p = random_qubit(rng, True), random_qubit(rng, True), random_params(rng)
        e0 = energy(a, b, p, 0.0)
        for t in np.linspace(0, 10, 21):
            assert energy(a, b, p, t) == pytest.approx(e0, abs=1e-10)


def test_rk4_agrees_with_expm(rng):
    a, b, p = random_qubit(rng, True), random_qubit(rng, True), random_params(rng)
    exact = evolve_numeric(a, b, p, 2.5)
    rk4 = evolve_numeric(a, b, p, 2.5, integrator="rk4")
    assert np.max(np.abs(exact.state - rk4.state)) < 1e-8


def test_unknown_integrator():
    with pytest.raises(ValueError):
        evolve_numeric(UP, DOWN, ModelParams(), 1.0, integrator="euler")


def test_oracle_independent_of_closed_form_eigensystem(rng):
    # decompose the oracle state on the closed-form eigenbasis: each weight stays fixed
    a, b, p = random_qubit(rng, True), random_qubit(rng, True), random_params(rng)
    es = eigensystem(p)
    w0 = np.abs(es.states.conj() @ tensor_product(a, b)) ** 2
    wt = np.abs(es.states.conj() @ evolve_numeric(a, b, p, 7.3).state) ** 2
    assert np.allclose(w0, wt, atol=1e-12)


def test_swap_error_numeric_ideal():
    err = swap_error_numeric(UP, DOWN, ModelParams(J=1, lam=1), math.pi / 2, 1.0)
    assert err == pytest.approx(0, abs=1e-12)
