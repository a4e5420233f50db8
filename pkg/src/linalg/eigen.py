"""Cyclic Jacobi eigensolver for complex Hermitian matrices."""

import logging
from typing import Optional, Tuple

import numpy as np
import numpy.typing as npt

from ..config import resolve
from ..errors import NoConvergence, NotHermitian
from .dense import ComplexMatrix, adjoint, frob_norm, hermitian_part, require_square

logger = logging.getLogger(__name__)


def _off_norm(a: ComplexMatrix) -> float:
    return frob_norm(a - np.diag(np.diag(a)))


def _rotate(a: ComplexMatrix, v: ComplexMatrix, p: int, q: int) -> None:
    """Zero a[p, q] in place with a complex Jacobi rotation and accumulate it in v."""
    apq = a[p, q]
    r = abs(apq)
    phase = apq / r

    # Phase-rotate the pair to a real symmetric 2x2 block, then rotate
    theta = (a[q, q].real - a[p, p].real) / (2.0 * r)
    t = np.sign(theta) / (abs(theta) + np.sqrt(theta * theta + 1.0)) if theta != 0 else 1.0
    c = 1.0 / np.sqrt(t * t + 1.0)
    s = t * c

    rot = np.array([[c, s], [-s * np.conj(phase), c * np.conj(phase)]], dtype=np.complex128)
    idx = [p, q]
    a[:, idx] = a[:, idx] @ rot
    a[idx, :] = adjoint(rot) @ a[idx, :]
    v[:, idx] = v[:, idx] @ rot

    a[p, q] = a[q, p] = 0.0
    a[p, p] = a[p, p].real
    a[q, q] = a[q, q].real


def herm_eig(m: ComplexMatrix, tol_sym: Optional[float] = None) -> Tuple[npt.NDArray[np.float64], ComplexMatrix]:
    """Eigendecomposition of a Hermitian matrix by cyclic Jacobi sweeps.

    Args:
        m: Square complex matrix, Hermitian within tol_sym
        tol_sym: Relative Hermiticity tolerance; defaults to settings.herm_tol

    Returns:
        (values, vectors) with values real and descending and the columns of
        vectors the matching orthonormal eigenvectors. Order inside a
        degenerate cluster is unspecified.

    Raises:
        NotHermitian: If ‖M − M†‖_F > tol_sym * max(1, ‖M‖_F)
        NoConvergence: If the sweep budget runs out
    """
    tol_sym = resolve(tol_sym, 'herm_tol')
    max_sweeps = resolve(None, 'jacobi_max_sweeps')
    n = require_square(m)

    norm = frob_norm(m)
    defect = frob_norm(m - adjoint(m))
    if defect > tol_sym * max(1.0, norm):
        raise NotHermitian(f"‖M − M†‖_F = {defect:.3e} exceeds {tol_sym:.1e} * max(1, {norm:.3e})")

    a = hermitian_part(np.asarray(m, dtype=np.complex128)).copy()
    v = np.eye(n, dtype=np.complex128)
    target = resolve(None, 'jacobi_off_tol') * norm
    # per-element skip threshold keeps the total off-diagonal norm under target
    skip = target / max(n, 1)

    sweeps = 0
    while _off_norm(a) > target:
        if sweeps >= max_sweeps:
            raise NoConvergence(f"Jacobi did not converge in {max_sweeps} sweeps (off-norm {_off_norm(a):.3e})")
        for p in range(n - 1):
            for q in range(p + 1, n):
                if abs(a[p, q]) > skip:
                    _rotate(a, v, p, q)
        sweeps += 1

    values = np.real(np.diag(a)).copy()
    order = np.argsort(-values, kind='stable')
    logger.debug(f"herm_eig: n={n}, {sweeps} sweeps")
    return values[order], v[:, order]
