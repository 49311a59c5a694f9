import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from lfpoly.errors import DimensionMismatch, NotHermitian, NotNormalized, ValidationError
from lfpoly.quantum import (
    BipartiteState, behavior_from_strategy, check_dichotomic, hermitian_eigensystem,
    observable_from_angle, rho_mu, schmidt_coefficients,
)
from lfpoly.scenario import check_no_signalling, check_normalized, to_correlators
from lfpoly.seesaw import FIG4_ANGLES


def random_hermitian(rng, n):
    g = rng.standard_normal((n, n)) + 1j * rng.standard_normal((n, n))
    return (g + g.conj().T) / 2


def test_jacobi_diagonal_and_pauli_x():
    w, v = hermitian_eigensystem(np.diag([3.0, -1.0, 2.0]))
    assert np.allclose(w, [-1, 2, 3])
    w, _ = hermitian_eigensystem([[0, 1], [1, 0]])
    assert np.allclose(w, [-1, 1])


@settings(max_examples=200, deadline=None)
@given(st.integers(0, 2 ** 32 - 1), st.integers(1, 9))
def test_jacobi_against_numpy(seed, n):
    m = random_hermitian(np.random.default_rng(seed), n)
    w, v = hermitian_eigensystem(m)
    assert np.max(np.abs(m @ v - v * w)) <= 1e-10
    assert np.max(np.abs(v.conj().T @ v - np.eye(n))) <= 1e-10
    assert np.allclose(w, np.linalg.eigvalsh(m), atol=1e-10)
    assert np.allclose(v @ np.diag(w) @ v.conj().T, m, atol=1e-10)


def test_jacobi_rejects_non_hermitian():
    with pytest.raises(NotHermitian):
        hermitian_eigensystem([[0, 1], [0, 0]])


@pytest.mark.parametrize("mu", [0.0, 0.3, 0.8, 1.0])
def test_rho_mu_spectrum(mu):
    w = np.sort(np.linalg.eigvalsh(rho_mu(mu).rho))[::-1]
    assert np.allclose(w, [(1 + mu) / 2, (1 - mu) / 2, 0, 0])


def test_rho_mu_range():
    with pytest.raises(ValidationError):
        rho_mu(1.5)


def test_observables_from_angles():
    assert np.allclose(observable_from_angle(0), [[0, 1], [1, 0]])
    assert np.allclose(observable_from_angle(90), [[0, -1j], [1j, 0]])
    for th in np.linspace(0, 360, 13):
        o = check_dichotomic(observable_from_angle(th))
        assert abs(np.trace(o)) < 1e-12


def test_singlet_correlators_match_closed_form():
    b = behavior_from_strategy(rho_mu(1.0), FIG4_ANGLES.alice(), FIG4_ANGLES.bob())
    assert np.allclose(np.array(to_correlators(b).AB), FIG4_ANGLES.singlet_correlators(), atol=1e-12)


def test_direct_trace_oracle():
    """Plain 4x4 traces, independent of the einsum path."""
    rho = rho_mu(0.6).rho
    A, B = FIG4_ANGLES.alice(), FIG4_ANGLES.bob()
    b = behavior_from_strategy(rho_mu(0.6), A, B)
    for x in range(3):
        for y in range(3):
            expected = np.trace(rho @ np.kron(A[x], B[y])).real
            assert to_correlators(b).AB[x][y] == pytest.approx(expected, abs=1e-12)


@pytest.mark.parametrize("mu", [0.0, 0.5, 0.87])
def test_rho_mu_behaviors(mu):
    b = behavior_from_strategy(rho_mu(mu), FIG4_ANGLES.alice(), FIG4_ANGLES.bob())
    assert check_no_signalling(b).deviation <= 1e-10
    assert check_normalized(b)
    form = to_correlators(b)
    assert np.max(np.abs(form.A)) < 1e-10 and np.max(np.abs(form.B)) < 1e-10
    assert np.allclose(np.array(form.AB), mu * FIG4_ANGLES.singlet_correlators(), atol=1e-12)


def test_maximally_mixed_gives_uniform():
    state = BipartiteState(np.eye(4) / 4, (2, 2))
    b = behavior_from_strategy(state, FIG4_ANGLES.alice(), FIG4_ANGLES.bob())
    assert np.allclose(b.table, 0.25)


def test_behavior_dimension_mismatch():
    with pytest.raises(DimensionMismatch):
        behavior_from_strategy(rho_mu(1), [np.eye(3)], [np.eye(2)])


def test_state_validation():
    with pytest.raises(NotNormalized):
        BipartiteState(np.eye(4), (2, 2))
    with pytest.raises(DimensionMismatch):
        BipartiteState(np.eye(4) / 4, (2, 3))


def test_schmidt_examples():
    bell = np.array([1, 0, 0, 1]) / np.sqrt(2)
    assert np.allclose(schmidt_coefficients(bell), [2 ** -0.5] * 2)
    assert np.allclose(schmidt_coefficients(np.array([1, 0, 0, 0])), [1, 0])
    c, s = np.cos(np.pi / 8), np.sin(np.pi / 8)
    assert np.allclose(schmidt_coefficients(np.array([c, 0, 0, s])), [c, s])
    with pytest.raises(NotNormalized):
        schmidt_coefficients(np.array([1, 1, 0, 0]))


@settings(max_examples=30, deadline=None)
@given(st.integers(0, 10 ** 6), st.sampled_from([(2, 2), (2, 3), (3, 3)]))
def test_schmidt_invariant_under_local_unitaries(seed, dims):
    rng = np.random.default_rng(seed)
    psi = rng.standard_normal(dims[0] * dims[1]) + 1j * rng.standard_normal(dims[0] * dims[1])
    psi /= np.linalg.norm(psi)
    ua = np.linalg.qr(rng.standard_normal((dims[0],) * 2) + 1j * rng.standard_normal((dims[0],) * 2))[0]
    ub = np.linalg.qr(rng.standard_normal((dims[1],) * 2) + 1j * rng.standard_normal((dims[1],) * 2))[0]
    rotated = np.kron(ua, ub) @ psi
    assert np.allclose(schmidt_coefficients(psi, dims), schmidt_coefficients(rotated, dims), atol=1e-9)
