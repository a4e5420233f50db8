"""The pseudo-unitary group U(p,q): membership, sampling and completion."""

import logging
from itertools import combinations
from typing import List, Optional, Sequence

import numpy as np

from ..config import resolve
from ..errors import DimensionMismatch, NumericalBreakdown, ScaleOutOfRange
from ..linalg import ComplexMatrix, adjoint, as_matrix, frob_norm, mat_exp
from .schemas import Completion, Metric

logger = logging.getLogger(__name__)


def metric_matrix(m: Metric) -> ComplexMatrix:
    return np.diag(m.signs).astype(np.complex128)


def _check_size(u: ComplexMatrix, m: Metric) -> None:
    if u.shape != (m.size, m.size):
        raise DimensionMismatch(f"Expected a {m.size}x{m.size} matrix for metric ({m.p}, {m.q}), got {u.shape}")


def metric_defect(u: ComplexMatrix, m: Metric) -> float:
    """‖U†ηU − η‖_F"""
    u = as_matrix(u)
    _check_size(u, m)
    eta = metric_matrix(m)
    return frob_norm(adjoint(u) @ eta @ u - eta)


def is_pseudo_unitary(u: ComplexMatrix, m: Metric, tol: Optional[float] = None) -> bool:
    """U ∈ U(p,q), checked as ‖U†ηU − η‖_F ≤ tol. With q = 0 this is unitarity."""
    tol = resolve(tol, 'equivalence_tol')
    return metric_defect(u, m) <= tol


def is_left_pseudo_unitary(t: ComplexMatrix, in_signs: Sequence[int], out_signs: Sequence[int],
                           tol: Optional[float] = None) -> bool:
    """Rectangular freedom: ‖T† diag(out_signs) T − diag(in_signs)‖_F ≤ tol for T of shape m×n."""
    tol = resolve(tol, 'equivalence_tol')
    t = as_matrix(t)
    if t.shape != (len(out_signs), len(in_signs)):
        raise DimensionMismatch(f"Expected a {len(out_signs)}x{len(in_signs)} matrix, got {t.shape}")
    gram = adjoint(t) @ np.diag(np.asarray(out_signs, dtype=float)) @ t
    return frob_norm(gram - np.diag(np.asarray(in_signs, dtype=float))) <= tol


def random_pseudo_unitary(m: Metric, seed: Optional[int] = None, scale: float = 1.0) -> ComplexMatrix:
    """Sample exp(X) with X = (M − ηM†η)/2, M uniform in the box of half-width ``scale``.

    X satisfies X†η + ηX = 0, so exp(X) lies in U(p,q). Deterministic for a
    given seed.
    """
    limit = resolve(None, 'random_scale_limit')
    if scale < 0 or scale > limit:
        raise ScaleOutOfRange(f"scale must lie in [0, {limit}], got {scale}")
    rng = np.random.default_rng(seed)
    n = m.size
    raw = rng.uniform(-scale, scale, (n, n)) + 1j * rng.uniform(-scale, scale, (n, n))
    eta = metric_matrix(m)
    generator = (raw - eta @ adjoint(raw) @ eta) / 2
    u = mat_exp(generator)
    logger.debug(f"random_pseudo_unitary: ({m.p}, {m.q}), defect {metric_defect(u, m):.2e}")
    return u


def random_unitary(n: int, seed: Optional[int] = None, scale: float = 1.0) -> ComplexMatrix:
    return random_pseudo_unitary(Metric(n, 0), seed=seed, scale=scale)


def _project_out(x: np.ndarray, columns: List[np.ndarray], signs: List[int], gamma: np.ndarray) -> np.ndarray:
    # two passes of indefinite Gram-Schmidt
    for _ in range(2):
        for col, s in zip(columns, signs):
            x = x - s * np.vdot(col, gamma * x) * col
    return x


def _indefinite_norm(x: np.ndarray, gamma: np.ndarray) -> float:
    return float(np.real(np.vdot(x, gamma * x)))


def complete_to_pseudo_unitary(w_partial: ComplexMatrix, gamma: Metric, tol: Optional[float] = None) -> Completion:
    """Extend N×r columns with w†γw = diag(±1) to a square γ-orthonormal basis.

    Candidates are the standard basis vectors projected onto the γ-orthogonal
    complement; the one with the largest |γ-norm| is normalised and kept
    (greedy pivoting). When every projected basis vector is isotropic, sums
    x_a + x_b and x_a + i·x_b of pairs are tried before giving up. Appended
    columns are ordered +1 first, then −1.

    Raises:
        DimensionMismatch: If w_partial does not have N = gamma.size rows or has more than N columns
        NumericalBreakdown: If the columns are not γ-orthonormal within tol, or no
            candidate has |γ-norm| ≥ tol
    """
    tol = resolve(tol, 'isotropic_tol')
    w = np.array(w_partial, dtype=np.complex128)
    n = gamma.size
    if w.ndim != 2 or w.shape[0] != n or w.shape[1] > n:
        raise DimensionMismatch(f"Partial matrix must be {n}xr with r <= {n}, got {w.shape}")

    g = gamma.signs.astype(float)
    gram = adjoint(w) @ (g[:, None] * w)
    given_signs = np.sign(np.real(np.diag(gram))).astype(np.int64)
    scale = max(1.0, frob_norm(w) ** 2)
    if np.any(given_signs == 0) or frob_norm(gram - np.diag(given_signs)) > tol * scale:
        raise NumericalBreakdown("Partial columns are not γ-orthonormal")

    columns = [w[:, c] for c in range(w.shape[1])]
    signs = [int(s) for s in given_signs]
    added: List[np.ndarray] = []
    added_signs: List[int] = []
    identity = np.eye(n, dtype=np.complex128)

    while len(columns) + len(added) < n:
        basis = columns + added
        basis_signs = signs + added_signs
        candidates = [_project_out(identity[:, j], basis, basis_signs, g) for j in range(n)]
        norms = [_indefinite_norm(x, g) for x in candidates]
        best = int(np.argmax(np.abs(norms)))
        x, norm = candidates[best], norms[best]

        if abs(norm) < tol:
            x, norm = None, 0.0
            for a, b in combinations(range(n), 2):
                for phase in (1.0, 1j):
                    trial = _project_out(candidates[a] + phase * candidates[b], basis, basis_signs, g)
                    trial_norm = _indefinite_norm(trial, g)
                    if abs(trial_norm) > abs(norm):
                        x, norm = trial, trial_norm
            if x is None or abs(norm) < tol:
                raise NumericalBreakdown(
                    f"Every completion candidate is isotropic (|γ-norm| < {tol:.1e}) after {len(basis)} columns")

        added.append(x / np.sqrt(abs(norm)))
        added_signs.append(1 if norm > 0 else -1)

    order = sorted(range(len(added)), key=lambda k: -added_signs[k])
    matrix = np.column_stack(columns + [added[k] for k in order])
    column_signs = np.array(signs + [added_signs[k] for k in order], dtype=np.int64)
    logger.debug(f"complete_to_pseudo_unitary: appended {len(added)} columns to {w.shape[1]}")
    return Completion(matrix=matrix, column_signs=column_signs)
