import numpy as np
import pytest
from hypothesis import given, strategies as st

from bargmann.linalg import (
    NotHermitianError,
    commutator,
    dagger,
    hermitian_eig,
    hs_norm_sq,
    is_psd,
    matmul,
    trace,
)
from bargmann.states import random_unitary

from conftest import random_complex, random_hermitian

dims = st.integers(1, 8)
seeds = st.integers(0, 2**32 - 1)

PROP1_SIGMA1 = np.array([[0.25, 0, 0.25], [0, 0.25, 0], [0.25, 0, 0.5]])
PROP3_RHO = np.diag([0.5, 0.5, 0, 0])
PROP3_SIGMA1 = np.array(
    [[0.25, 0, 0.25, 0], [0, 0.25, 0, 0.25], [0.25, 0, 0.25, 0], [0, 0.25, 0, 0.25]]
)


def test_matmul_examples():
    np.testing.assert_array_equal(matmul(np.eye(2), np.eye(2)), np.eye(2))
    a = random_complex(3, 0)
    np.testing.assert_array_equal(matmul(a, np.zeros((3, 3))), np.zeros((3, 3)))
    expected = np.zeros((4, 4))
    for i, j in [(0, 0), (0, 2), (1, 1), (1, 3)]:
        expected[i, j] = 1 / 8
    np.testing.assert_array_equal(matmul(PROP3_RHO, PROP3_SIGMA1), expected)


def test_matmul_dimension_mismatch():
    with pytest.raises(ValueError, match="dimension mismatch"):
        matmul(np.eye(2), np.eye(3))


def test_trace_examples():
    assert trace(np.eye(3)) == 3
    assert trace(np.diag([0.5, 0.5, 0])) == 1
    assert trace(PROP1_SIGMA1) == 1


def test_dagger():
    d = np.diag([1.0, 2.0, 3.0])
    np.testing.assert_array_equal(dagger(d), d)
    np.testing.assert_array_equal(dagger([[0, 1j], [0, 0]]), [[0, 0], [-1j, 0]])
    u = random_unitary(5, 3)
    np.testing.assert_allclose(u @ dagger(u), np.eye(5), atol=1e-12)


def test_commutator_examples():
    expected = np.zeros((4, 4))
    expected[0, 2] = expected[1, 3] = 1 / 8
    expected[2, 0] = expected[3, 1] = -1 / 8
    c = commutator(PROP3_RHO, PROP3_SIGMA1)
    np.testing.assert_array_equal(c, expected)
    assert hs_norm_sq(c) == 1 / 16


def test_hs_norm_sq_examples():
    assert hs_norm_sq(np.zeros((3, 3))) == 0
    for d in range(1, 6):
        assert hs_norm_sq(np.eye(d)) == d


def test_hermitian_eig_examples():
    np.testing.assert_allclose(hermitian_eig(np.diag([0, 0.5, 0.5])).eigenvalues, [0, 0.5, 0.5])
    s5 = np.sqrt(5)
    np.testing.assert_allclose(
        hermitian_eig(PROP1_SIGMA1).eigenvalues, [(3 - s5) / 8, 0.25, (3 + s5) / 8], atol=1e-14
    )
    np.testing.assert_allclose(hermitian_eig(PROP3_SIGMA1).eigenvalues, [0, 0, 0.5, 0.5], atol=1e-14)


def test_hermitian_eig_rejects_non_hermitian():
    with pytest.raises(NotHermitianError):
        hermitian_eig([[0, 1], [0, 0]])


def test_is_psd():
    assert is_psd(np.eye(4) / 4)
    assert not is_psd(np.diag([1, -0.1]))
    assert is_psd(PROP1_SIGMA1)
    with pytest.raises(NotHermitianError):
        is_psd([[1, 1], [0, 1]])


def test_rejects_non_finite_and_non_square():
    with pytest.raises(ValueError):
        trace([[1, np.nan], [0, 1]])
    with pytest.raises(ValueError):
        trace(np.ones((2, 3)))


@given(dims, seeds)
def test_trace_cyclicity(d, seed):
    a, b = random_complex(d, seed), random_complex(d, seed + 1)
    assert abs(trace(matmul(a, b)) - trace(matmul(b, a))) <= 1e-12 * max(1, hs_norm_sq(a) + hs_norm_sq(b))


@given(dims, seeds)
def test_hs_norm_is_trace_of_gram(d, seed):
    a = random_complex(d, seed) / d
    assert abs(hs_norm_sq(a) - trace(matmul(dagger(a), a)).real) <= 1e-12


@given(dims, seeds)
def test_eig_reconstruction(d, seed):
    a = random_hermitian(d, seed)
    eig = hermitian_eig(a)
    assert np.all(np.diff(eig.eigenvalues) >= 0)
    v = eig.eigenvectors
    assert np.sqrt(hs_norm_sq(v.conj().T @ v - np.eye(d))) <= 1e-12
    assert np.sqrt(hs_norm_sq(eig.reconstruct() - a)) <= 1e-10 * np.sqrt(hs_norm_sq(a))


@given(dims, seeds)
def test_self_commutator_is_exactly_zero(d, seed):
    a = random_complex(d, seed)
    assert not np.any(commutator(a, a))
