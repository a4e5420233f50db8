"""
Test the dense linear algebra kernels against numpy.linalg
"""
import numpy as np
import numpy.testing as npt
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from conftest import SWAP, random_complex, random_hermitian
from src.config import settings as qmap_settings
from src.errors import (
    DimensionMismatch,
    IllConditioned,
    NoConvergence,
    NonFiniteEntries,
    NotHermitian,
    Singular,
)
from src.linalg import (
    adjoint,
    as_matrix,
    frob_norm,
    herm_eig,
    hermitian_part,
    hermiticity_defect,
    invert,
    mat_exp,
    matmul,
    relative_distance,
)


def test_as_matrix_rejects_bad_input():
    with pytest.raises(DimensionMismatch):
        as_matrix(np.zeros(3))
    with pytest.raises(DimensionMismatch):
        as_matrix(np.zeros((0, 2)))
    with pytest.raises(NonFiniteEntries):
        as_matrix([[1.0, np.nan], [0.0, 1.0]])


def test_matmul_shape_check():
    with pytest.raises(DimensionMismatch):
        matmul(np.eye(2), np.eye(3))


def test_hermitian_helpers(rng):
    m = random_complex(rng, (4, 4))
    h = hermitian_part(m)
    assert hermiticity_defect(h) < 1e-15
    npt.assert_allclose(adjoint(m), m.conj().T)
    assert relative_distance(m, m) == 0.0


@given(seed=st.integers(0, 2**32 - 1), n=st.integers(1, 6))
@settings(deadline=None, max_examples=50)
def test_herm_eig_matches_numpy(seed, n):
    m = random_hermitian(np.random.default_rng(seed), n)
    values, vectors = herm_eig(m)

    npt.assert_allclose(values, np.sort(np.linalg.eigvalsh(m))[::-1], atol=1e-10)
    assert np.all(np.diff(values) <= 0)
    npt.assert_allclose(vectors.conj().T @ vectors, np.eye(n), atol=1e-12)
    npt.assert_allclose(vectors @ np.diag(values) @ vectors.conj().T, m, atol=1e-10)


@pytest.mark.parametrize("seed", range(500))
def test_herm_eig_reconstruction_up_to_sixteen(seed):
    rng = np.random.default_rng(seed)
    n = int(rng.integers(1, 17))
    m = random_hermitian(rng, n)
    values, vectors = herm_eig(m)
    reconstructed = vectors @ np.diag(values) @ vectors.conj().T
    assert frob_norm(m - reconstructed) <= 1e-10 * frob_norm(m)


@pytest.mark.parametrize("seed", range(50))
def test_herm_eig_inertia_matches_leading_minors(seed):
    rng = np.random.default_rng(seed)
    n = int(rng.integers(2, 9))
    m = random_hermitian(rng, n)
    minors = [1.0] + [np.linalg.det(m[:k, :k]).real for k in range(1, n + 1)]
    assert min(abs(x) for x in minors) > 1e-8
    # negative eigenvalues = sign changes along 1, D1, ..., Dn
    sign_changes = sum(1 for a, b in zip(minors, minors[1:]) if a * b < 0)

    values, _ = herm_eig(m)
    assert int(np.sum(values < 0)) == sign_changes
    assert int(np.sum(values > 0)) == n - sign_changes


def test_herm_eig_pauli_x():
    values, vectors = herm_eig(np.array([[0, 1], [1, 0]], dtype=complex))
    npt.assert_allclose(values, [1, -1], atol=1e-14)
    npt.assert_allclose(np.abs(vectors), np.full((2, 2), 1 / np.sqrt(2)), atol=1e-14)
    npt.assert_allclose(vectors[0, 1], -vectors[1, 1], atol=1e-14)


def test_herm_eig_sweep_budget(monkeypatch):
    monkeypatch.setattr(qmap_settings, "jacobi_max_sweeps", 1)
    with pytest.raises(NoConvergence):
        herm_eig(random_hermitian(np.random.default_rng(3), 6))


def test_herm_eig_swap_spectrum():
    values, vectors = herm_eig(SWAP)
    npt.assert_allclose(values, [1, 1, 1, -1], atol=1e-12)
    # the antisymmetric vector spans the -1 eigenspace
    npt.assert_allclose(abs(vectors[1, 3]), 1 / np.sqrt(2), atol=1e-12)
    npt.assert_allclose(vectors[1, 3], -vectors[2, 3], atol=1e-12)


def test_herm_eig_edge_cases():
    values, vectors = herm_eig(np.array([[3.0]]))
    npt.assert_allclose(values, [3.0])
    npt.assert_allclose(vectors, [[1.0]])

    values, _ = herm_eig(np.zeros((3, 3)))
    npt.assert_allclose(values, np.zeros(3))

    with pytest.raises(NotHermitian):
        herm_eig(np.array([[0, 1], [0, 0]], dtype=complex))
    with pytest.raises(DimensionMismatch):
        herm_eig(np.zeros((2, 3)))


def test_mat_exp_known_values():
    npt.assert_allclose(mat_exp(np.zeros((3, 3))), np.eye(3), atol=1e-15)

    theta = 0.7
    generator = np.array([[0, -theta], [theta, 0]])
    rotation = np.array([[np.cos(theta), -np.sin(theta)], [np.sin(theta), np.cos(theta)]])
    npt.assert_allclose(mat_exp(generator), rotation, atol=1e-14)

    diag = np.diag([1.0, -2.0, 3.5j])
    npt.assert_allclose(mat_exp(diag), np.diag(np.exp([1.0, -2.0, 3.5j])), rtol=1e-13)


@pytest.mark.parametrize("seed", range(10))
def test_mat_exp_of_antihermitian_is_unitary(seed):
    h = random_hermitian(np.random.default_rng(seed), 4)
    u = mat_exp(1j * h * 3)
    npt.assert_allclose(u.conj().T @ u, np.eye(4), atol=1e-12)
    npt.assert_allclose(mat_exp(-1j * h * 3) @ u, np.eye(4), atol=1e-12)


@pytest.mark.parametrize("n", [1, 2, 5, 8])
def test_invert_matches_numpy(rng, n):
    m = random_complex(rng, (n, n)) + 2 * np.eye(n)
    inv = invert(m)
    npt.assert_allclose(inv @ m, np.eye(n), atol=1e-12)
    npt.assert_allclose(inv, np.linalg.inv(m), atol=1e-10)


def test_invert_needs_pivoting():
    m = np.array([[0, 1], [1, 0]], dtype=complex)
    npt.assert_allclose(invert(m), m)


def test_invert_failures():
    with pytest.raises(Singular):
        invert(np.zeros((2, 2)))
    with pytest.raises(Singular):
        invert(np.array([[1, 2], [2, 4]], dtype=complex))
    with pytest.raises(IllConditioned):
        invert(np.diag([1.0, 1e-9]), cond_limit=1e6)
    with pytest.raises(DimensionMismatch):
        invert(np.zeros((2, 3)))


def test_singular_is_a_linalg_error():
    with pytest.raises(np.linalg.LinAlgError):
        invert(np.zeros((3, 3)))


def test_frob_norm():
    assert frob_norm(np.array([[3, 4j]])) == pytest.approx(5.0)


def test_mat_exp_closed_forms():
    npt.assert_allclose(mat_exp(np.array([[0, 1], [0, 0]])), [[1, 1], [0, 1]], atol=1e-15)
    npt.assert_allclose(mat_exp(np.diag([np.log(2), 0.0])), np.diag([2.0, 1.0]), rtol=1e-14)


@pytest.mark.parametrize("seed", range(20))
def test_mat_exp_group_law_on_commuting_arguments(seed):
    rng = np.random.default_rng(seed)
    # polynomials in one matrix commute
    base = random_complex(rng, (4, 4), scale=0.5)
    x = 0.7 * base + 0.2 * base @ base
    y = -1.1 * base + 0.3 * np.eye(4)
    npt.assert_allclose(x @ y, y @ x, atol=1e-12)
    assert frob_norm(mat_exp(x) @ mat_exp(y) - mat_exp(x + y)) <= 1e-9


def test_invert_closed_forms():
    npt.assert_allclose(invert(np.array([[1, 1], [0, 1]])), [[1, -1], [0, 1]], atol=1e-15)
    npt.assert_allclose(invert(np.diag([2.0, 4.0])), np.diag([0.5, 0.25]), atol=1e-15)
    npt.assert_allclose(invert(np.eye(3)), np.eye(3), atol=1e-15)


@pytest.mark.parametrize("seed", range(20))
def test_invert_twice_is_identity(seed):
    rng = np.random.default_rng(seed)
    n = int(rng.integers(1, 9))
    m = random_complex(rng, (n, n)) + 3 * np.eye(n)
    assert frob_norm(invert(invert(m)) - m) <= 1e-9
