import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from szewalk.linalg import (
    NotSymmetric,
    orthonormalize,
    symmetric_eig,
    unitarity_defect,
)


def test_known_2x2():
    # [[2,1],[1,2]] has eigenpairs (1, (1,-1)/sqrt2) and (3, (1,1)/sqrt2)
    spec = symmetric_eig([[2.0, 1.0], [1.0, 2.0]])
    np.testing.assert_allclose(spec.eigenvalues, [1.0, 3.0], atol=1e-12)
    v0 = spec.eigenvectors[:, 0]
    v1 = spec.eigenvectors[:, 1]
    np.testing.assert_allclose(np.abs(v0), [1, 1] / np.sqrt(2), atol=1e-12)
    np.testing.assert_allclose(np.abs(v1), [1, 1] / np.sqrt(2), atol=1e-12)
    assert np.sign(v0[0]) != np.sign(v0[1])
    assert np.sign(v1[0]) == np.sign(v1[1])


def test_diagonal_and_tiny():
    spec = symmetric_eig(np.diag([3.0, -1.0, 2.0]))
    np.testing.assert_allclose(spec.eigenvalues, [-1.0, 2.0, 3.0])
    one = symmetric_eig([[5.0]])
    np.testing.assert_allclose(one.eigenvalues, [5.0])
    np.testing.assert_allclose(one.eigenvectors, [[1.0]])


def test_matches_numpy_on_random_matrices():
    rng = np.random.default_rng(20240817)
    for n in (2, 3, 5, 8, 12):
        m = rng.standard_normal((n, n))
        m = (m + m.T) / 2
        spec = symmetric_eig(m)
        np.testing.assert_allclose(spec.eigenvalues, np.linalg.eigvalsh(m), atol=1e-10)
        # residuals and orthonormality, not vector-by-vector comparison
        # (eigenvectors are only defined up to sign / degenerate rotation)
        for lam, v in zip(spec.eigenvalues, spec.eigenvectors.T):
            assert np.linalg.norm(m @ v - lam * v) < 1e-10
        gram = spec.eigenvectors.T @ spec.eigenvectors
        np.testing.assert_allclose(gram, np.eye(n), atol=1e-12)


def test_reconstruction():
    rng = np.random.default_rng(7)
    m = rng.standard_normal((6, 6))
    m = m + m.T
    spec = symmetric_eig(m)
    rebuilt = spec.eigenvectors @ np.diag(spec.eigenvalues) @ spec.eigenvectors.T
    np.testing.assert_allclose(rebuilt, m, atol=1e-10)


def test_near_converged_offdiagonal_still_resolved():
    # almost-diagonal input with an off-diagonal entry far below the scale
    # of the diagonal; the solver must still rotate it away rather than
    # declare victory early
    m = np.diag([0.9, 0.3, -0.2])
    m[0, 1] = m[1, 0] = 3e-9
    spec = symmetric_eig(m)
    for lam, v in zip(spec.eigenvalues, spec.eigenvectors.T):
        assert np.linalg.norm(m @ v - lam * v) < 1e-14


def test_rejects_nonsymmetric():
    with pytest.raises(NotSymmetric):
        symmetric_eig([[0.0, 1.0], [0.0, 0.0]])
    with pytest.raises(NotSymmetric):
        symmetric_eig(np.zeros((2, 3)))


@settings(max_examples=25, deadline=None)
@given(st.integers(min_value=0, max_value=2**32 - 1), st.integers(min_value=2, max_value=7))
def test_property_spectrum_sorted_and_accurate(seed, n):
    rng = np.random.default_rng(seed)
    m = rng.uniform(-1, 1, size=(n, n))
    m = (m + m.T) / 2
    spec = symmetric_eig(m)
    assert np.all(np.diff(spec.eigenvalues) >= -1e-14)
    np.testing.assert_allclose(
        spec.eigenvectors @ np.diag(spec.eigenvalues) @ spec.eigenvectors.T,
        m,
        atol=1e-9,
    )


def test_unitarity_defect():
    assert unitarity_defect(np.eye(4)) < 1e-15
    assert unitarity_defect(2 * np.eye(2)) == pytest.approx(3.0)
    theta = 0.37
    rot = np.array([[np.cos(theta), -np.sin(theta)], [np.sin(theta), np.cos(theta)]])
    assert unitarity_defect(rot) < 1e-15


def test_orthonormalize_basic():
    rows = np.array([[1.0, 0.0, 0.0], [1.0, 1.0, 0.0], [2.0, 1.0, 0.0]])
    q = orthonormalize(rows)
    assert q.shape == (2, 3)  # third row is dependent, dropped
    np.testing.assert_allclose(q.conj() @ q.T, np.eye(2), atol=1e-14)


def test_orthonormalize_against():
    against = np.array([[1.0, 0.0, 0.0, 0.0]])
    q = orthonormalize(np.eye(4), against=against)
    assert q.shape == (3, 4)
    # nothing left along the excluded direction
    np.testing.assert_allclose(q @ against.T, 0.0, atol=1e-14)
