"""Tests for Bell-diagonal states, decay, twirling and the PPT criterion."""
import math

import numpy as np
import pytest
from pydantic import ValidationError

from entbuffer.core.errors import DomainError
from entbuffer.core.states import (
    BellDiagonalState,
    DensityMatrix4,
    WernerState,
    depolarize,
    fidelity,
    is_entangled,
    partial_transpose,
    ppt_min_eigenvalue,
    random_bell_diagonal,
    to_density_matrix,
    twirl,
    twirl_to_werner,
)


def test_depolarize_examples():
    assert depolarize(0.8, 0.0, 0.025) == 0.8
    assert depolarize(0.25, 7.3, 1.0) == pytest.approx(0.25, abs=1e-15)
    assert depolarize(0.8, math.log(2), 1.0) == pytest.approx(0.525, abs=1e-12)


@pytest.mark.parametrize("dt, gamma", [(-1.0, 0.1), (1.0, -0.1)])
def test_depolarize_rejects_negative_inputs(dt, gamma):
    with pytest.raises(DomainError):
        depolarize(0.8, dt, gamma)


def test_depolarize_semigroup(rng):
    for _ in range(200):
        f, t1, t2, gamma = rng.uniform(0, 1), rng.exponential(2.0), rng.exponential(2.0), rng.uniform(0, 1)
        once = depolarize(f, t1 + t2, gamma)
        twice = depolarize(depolarize(f, t1, gamma), t2, gamma)
        assert twice == pytest.approx(once, abs=1e-12)


def test_bell_diagonal_rejects_unnormalized_weights():
    with pytest.raises(ValidationError):
        BellDiagonalState(f=0.8, l1=0.1, l2=0.1, l3=0.1)
    with pytest.raises(ValidationError):
        BellDiagonalState(f=1.2, l1=-0.2, l2=0.0, l3=0.0)


def test_werner_state_weights():
    state = WernerState(f=0.7).to_bell_diagonal()
    assert state.l1 == pytest.approx(0.1)
    assert state.l2 == pytest.approx(0.1)
    assert state.l3 == pytest.approx(0.1)
    with pytest.raises(ValidationError):
        WernerState(f=0.2)


def test_density_matrix_of_phi_plus():
    m = to_density_matrix(BellDiagonalState(f=1.0, l1=0.0, l2=0.0, l3=0.0)).matrix
    expected = np.zeros((4, 4))
    for i in (0, 3):
        for j in (0, 3):
            expected[i, j] = 0.5
    np.testing.assert_allclose(m, expected, atol=1e-12)


def test_density_matrix_of_maximally_mixed_state():
    m = to_density_matrix(BellDiagonalState(f=0.25, l1=0.25, l2=0.25, l3=0.25)).matrix
    np.testing.assert_allclose(m, np.eye(4) / 4, atol=1e-12)


def test_density_matrix_block_form(band_rho):
    m = to_density_matrix(band_rho).matrix
    np.testing.assert_allclose(np.diag(m).real, [0.4, 0.1, 0.1, 0.4], atol=1e-12)
    # corners carry (f - l3)/2, centre off-diagonals (l1 - l2)/2
    assert m[0, 3].real == pytest.approx(0.4, abs=1e-12)
    assert m[3, 0].real == pytest.approx(0.4, abs=1e-12)
    assert abs(m[1, 2]) == pytest.approx(0.0, abs=1e-12)
    assert np.trace(m).real == pytest.approx(1.0, abs=1e-12)


def test_twirl_of_product_state():
    m = np.zeros((4, 4), dtype=complex)
    m[0, 0] = 1.0
    state = twirl(m)
    np.testing.assert_allclose(state.weights, [0.5, 0.0, 0.0, 0.5], atol=1e-12)


def test_twirl_of_maximally_mixed_state():
    state = twirl(np.eye(4) / 4)
    np.testing.assert_allclose(state.weights, [0.25] * 4, atol=1e-12)


def test_twirl_rejects_invalid_matrices():
    with pytest.raises(DomainError):
        twirl(np.diag([1.5, -0.5, 0.0, 0.0]))
    with pytest.raises(DomainError):
        twirl(np.eye(4) / 2)
    with pytest.raises(DomainError):
        twirl(np.eye(3) / 3)


def test_density_matrix_model_validates():
    with pytest.raises(ValidationError):
        DensityMatrix4(matrix=np.diag([1.5, -0.5, 0.0, 0.0]))


def test_twirl_fixes_bell_diagonal_states(rng):
    for _ in range(1000):
        state = random_bell_diagonal(rng, entangled=False)
        back = twirl(to_density_matrix(state))
        np.testing.assert_allclose(back.weights, state.weights, atol=1e-12)


def test_twirl_preserves_fidelity(rng):
    for _ in range(200):
        a = rng.normal(size=(4, 4)) + 1j * rng.normal(size=(4, 4))
        m = a @ a.conj().T
        m = m / np.trace(m).real
        assert twirl(m).f == pytest.approx(fidelity(m), abs=1e-12)


def test_twirl_to_werner_keeps_fidelity(band_rho):
    werner = twirl_to_werner(to_density_matrix(band_rho))
    assert werner.f == pytest.approx(0.8, abs=1e-12)


@pytest.mark.parametrize("weights, expected", [
    ((1.0, 0.0, 0.0, 0.0), True),
    ((0.25, 0.25, 0.25, 0.25), False),
    ((0.5, 0.5, 0.0, 0.0), False),
    ((0.1, 0.6, 0.2, 0.1), True),
])
def test_is_entangled_examples(weights, expected):
    assert is_entangled(BellDiagonalState.from_weights(weights)) is expected


def test_entanglement_matches_partial_transpose(rng):
    for k in range(1000):
        state = random_bell_diagonal(rng, entangled=bool(k % 2))
        assert is_entangled(state) == (ppt_min_eigenvalue(state) < -1e-10)


def test_partial_transpose_eigenvalues_are_one_minus_twice_the_weights(rng):
    state = random_bell_diagonal(rng)
    eigenvalues = np.sort(np.linalg.eigvalsh(partial_transpose(to_density_matrix(state))))
    np.testing.assert_allclose(eigenvalues, np.sort((1 - 2 * state.weights) / 2), atol=1e-12)


def test_random_entangled_states(rng):
    for _ in range(100):
        state = random_bell_diagonal(rng)
        assert 0.5 < state.f < 1.0
        assert is_entangled(state)
