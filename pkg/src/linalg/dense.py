"""Dense complex matrix helpers: validation, norms, products and LU inversion."""

import logging
from typing import Optional

import numpy as np
import numpy.typing as npt

from ..config import resolve
from ..errors import DimensionMismatch, IllConditioned, NonFiniteEntries, Singular

logger = logging.getLogger(__name__)

ComplexMatrix = npt.NDArray[np.complex128]


def as_matrix(x, name: str = "matrix") -> ComplexMatrix:
    """Coerce ``x`` to a finite, non-empty 2-D complex128 array."""
    arr = np.array(x, dtype=np.complex128)
    if arr.ndim != 2 or arr.shape[0] == 0 or arr.shape[1] == 0:
        raise DimensionMismatch(f"{name} must be a non-empty 2-D matrix, got shape {arr.shape}")
    if not np.all(np.isfinite(arr)):
        raise NonFiniteEntries(f"{name} has NaN or Inf entries")
    return arr


def require_square(m: ComplexMatrix, name: str = "matrix") -> int:
    if m.ndim != 2 or m.shape[0] != m.shape[1]:
        raise DimensionMismatch(f"{name} must be square, got shape {m.shape}")
    return m.shape[0]


def frob_norm(m) -> float:
    return float(np.sqrt(np.sum(np.abs(np.asarray(m)) ** 2)))


def adjoint(m: ComplexMatrix) -> ComplexMatrix:
    return np.conj(np.asarray(m)).T


def matmul(a: ComplexMatrix, b: ComplexMatrix) -> ComplexMatrix:
    if a.shape[-1] != b.shape[0]:
        raise DimensionMismatch(f"Inner dimensions differ: {a.shape} @ {b.shape}")
    return a @ b


def hermitian_part(m: ComplexMatrix) -> ComplexMatrix:
    return (m + adjoint(m)) / 2


def hermiticity_defect(m: ComplexMatrix) -> float:
    """‖M − M†‖_F relative to max(1, ‖M‖_F)."""
    return frob_norm(m - adjoint(m)) / max(1.0, frob_norm(m))


def relative_distance(a, b) -> float:
    """‖a − b‖_F relative to max(1, ‖b‖_F)."""
    return frob_norm(np.asarray(a) - np.asarray(b)) / max(1.0, frob_norm(b))


def condition_estimate(m: ComplexMatrix, m_inv: ComplexMatrix) -> float:
    return frob_norm(m) * frob_norm(m_inv)


def invert(m: ComplexMatrix, cond_limit: Optional[float] = None) -> ComplexMatrix:
    """Invert a square matrix by Gauss-Jordan elimination with partial pivoting.

    Args:
        m: Square complex matrix
        cond_limit: Largest acceptable ‖M‖_F·‖M⁻¹‖_F; defaults to settings.cond_limit

    Returns:
        The inverse matrix

    Raises:
        Singular: If a pivot falls below pivot_tol * ‖M‖_F
        IllConditioned: If the condition estimate exceeds cond_limit
    """
    cond_limit = resolve(cond_limit, 'cond_limit')
    pivot_tol = resolve(None, 'pivot_tol')
    n = require_square(m)

    a = np.array(m, dtype=np.complex128)
    inv = np.eye(n, dtype=np.complex128)
    threshold = pivot_tol * frob_norm(m)

    for k in range(n):
        pivot_row = k + int(np.argmax(np.abs(a[k:, k])))
        pivot = a[pivot_row, k]
        if abs(pivot) < threshold or pivot == 0:
            raise Singular(f"Pivot {abs(pivot):.3e} at column {k} is below {threshold:.3e}")
        if pivot_row != k:
            a[[k, pivot_row]] = a[[pivot_row, k]]
            inv[[k, pivot_row]] = inv[[pivot_row, k]]

        a[k] /= pivot
        inv[k] /= pivot
        factors = a[:, k].copy()
        factors[k] = 0
        a -= np.outer(factors, a[k])
        inv -= np.outer(factors, inv[k])

    cond = condition_estimate(m, inv)
    logger.debug(f"invert: n={n}, condition estimate {cond:.3e}")
    if cond > cond_limit:
        raise IllConditioned(f"Condition estimate {cond:.3e} exceeds limit {cond_limit:.3e}")
    return inv
