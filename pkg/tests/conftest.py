import numpy as np
import pytest

from src.maps import ChoiMatrix, SignedOSR

PAULI_I = np.eye(2, dtype=np.complex128)
PAULI_X = np.array([[0, 1], [1, 0]], dtype=np.complex128)
PAULI_Y = np.array([[0, -1j], [1j, 0]], dtype=np.complex128)
PAULI_Z = np.array([[1, 0], [0, -1]], dtype=np.complex128)

SWAP = np.array(
    [[1, 0, 0, 0],
     [0, 0, 1, 0],
     [0, 1, 0, 0],
     [0, 0, 0, 1]],
    dtype=np.complex128,
)
IDENTITY_CHOI = np.outer([1, 0, 0, 1], [1, 0, 0, 1]).astype(np.complex128)


def random_complex(rng: np.random.Generator, shape, scale: float = 1.0) -> np.ndarray:
    return scale * (rng.standard_normal(shape) + 1j * rng.standard_normal(shape)) / np.sqrt(2)


def random_signed_osr(seed: int, d: int, p: int, q: int, scale: float = 1.0) -> SignedOSR:
    """p positive then q negative terms with Gaussian operators"""
    rng = np.random.default_rng(seed)
    signs = [1] * p + [-1] * q
    return SignedOSR(dim=d, terms=tuple((s, random_complex(rng, (d, d), scale)) for s in signs))


def random_hermitian(rng: np.random.Generator, n: int) -> np.ndarray:
    m = random_complex(rng, (n, n))
    return (m + m.conj().T) / 2


@pytest.fixture
def paulis():
    return PAULI_I, PAULI_X, PAULI_Y, PAULI_Z


@pytest.fixture
def rng():
    return np.random.default_rng(12345)


@pytest.fixture
def identity_osr():
    return SignedOSR.kraus([np.eye(2)])


@pytest.fixture
def transpose_choi():
    return ChoiMatrix(dim=2, matrix=SWAP)


@pytest.fixture
def signed_osr_factory():
    return random_signed_osr
