"""Classification predicates, Choi inertia and the difference-of-CP-maps split."""

import logging
from typing import Optional, Tuple

import numpy as np

from ..config import resolve
from ..errors import DimensionMismatch
from ..linalg import ComplexMatrix, adjoint, as_matrix, frob_norm, herm_eig, hermitian_part
from .conversions import choi_from_osr, dim_of_square, osr_from_choi
from .schemas import ChoiMatrix, MapReport, Signature, SignedOSR, Superoperator

logger = logging.getLogger(__name__)


def signature(choi: ChoiMatrix, rank_tol: Optional[float] = None) -> Signature:
    """Count positive, negative and near-zero Choi eigenvalues.

    The zero band is rank_tol * max(1, max|λ|) wide on either side.
    """
    rank_tol = resolve(rank_tol, 'rank_tol')
    values, _ = herm_eig(choi.matrix, tol_sym=resolve(choi.herm_tol, 'herm_tol'))
    band = rank_tol * max(1.0, float(np.max(np.abs(values))))
    p = int(np.sum(values > band))
    q = int(np.sum(values < -band))
    return Signature(p=p, q=q, z=values.size - p - q)


def is_cp(choi: ChoiMatrix, tol: Optional[float] = None) -> bool:
    """Complete positivity: the Choi matrix is positive semidefinite."""
    tol = resolve(tol, 'predicate_tol')
    values, _ = herm_eig(choi.matrix, tol_sym=resolve(choi.herm_tol, 'herm_tol'))
    return bool(values[-1] >= -tol * max(1.0, frob_norm(choi.matrix)))


def is_hp(matrix: ComplexMatrix, tol: Optional[float] = None) -> bool:
    """Hermiticity preservation judged on a raw (unvalidated) Choi matrix."""
    tol = resolve(tol, 'predicate_tol')
    matrix = as_matrix(matrix, "Choi matrix")
    if matrix.shape[0] != matrix.shape[1]:
        raise DimensionMismatch(f"Choi matrix must be square, got {matrix.shape}")
    dim_of_square(matrix.shape[0])
    return frob_norm(matrix - adjoint(matrix)) <= tol * max(1.0, frob_norm(matrix))


def is_hp_superop(superop: Superoperator, tol: Optional[float] = None) -> bool:
    """Hermiticity preservation on the superoperator side:
    A[(s,r),(s′,r′)] = conj(A[(r,s),(r′,s′)])."""
    tol = resolve(tol, 'predicate_tol')
    d = superop.dim
    t = superop.matrix.reshape(d, d, d, d)
    mirrored = np.conj(t.transpose(1, 0, 3, 2))
    return frob_norm(t - mirrored) <= tol * max(1.0, frob_norm(t))


def is_tp(osr: SignedOSR, tol: Optional[float] = None) -> bool:
    """Trace preservation: Σₖ ηₖ Cₖ†Cₖ = I."""
    tol = resolve(tol, 'predicate_tol')
    total = np.zeros((osr.dim, osr.dim), dtype=np.complex128)
    for sign, op in osr.terms:
        total += sign * (adjoint(op) @ op)
    return frob_norm(total - np.eye(osr.dim)) <= tol


def _partial_trace_defect(matrix: ComplexMatrix, d: int) -> float:
    partial = np.einsum('rarb->ab', matrix.reshape(d, d, d, d))
    return frob_norm(partial - np.eye(d))


def is_tp_choi(choi: ChoiMatrix, tol: Optional[float] = None) -> bool:
    """Trace preservation on the Choi side: Σ_r B[(r,r′),(r,s′)] = δ_{r′s′}."""
    tol = resolve(tol, 'predicate_tol')
    return _partial_trace_defect(choi.matrix, choi.dim) <= tol


def analyze(osr: SignedOSR, tol: Optional[float] = None, rank_tol: Optional[float] = None) -> MapReport:
    choi = choi_from_osr(osr)
    values, _ = herm_eig(choi.matrix)
    sig = signature(choi, rank_tol=rank_tol)
    # a negative eigenvalue inside the CP tolerance but outside the rank band still counts
    cp = is_cp(choi, tol=tol) and sig.q == 0
    report = MapReport(
        dim=osr.dim,
        hermiticity_preserving=is_hp(choi.matrix, tol=tol),
        completely_positive=cp,
        trace_preserving=is_tp(osr, tol=tol),
        signature=sig,
        choi_eigenvalues=tuple(float(x) for x in values),
    )
    logger.step(f"analyze: d={osr.dim}, signature {sig.as_tuple()}, CP={cp}, TP={report.trace_preserving}")
    return report


def cp_difference(osr: SignedOSR) -> Tuple[SignedOSR, SignedOSR]:
    """Split Φ = Φ₊ − Φ₋ into two completely positive maps.

    Returns:
        (plus, minus): the +1 terms and the −1 terms, both with sign +1
    """
    plus = tuple((1, op) for sign, op in osr.terms if sign == 1)
    minus = tuple((1, op) for sign, op in osr.terms if sign == -1)
    return SignedOSR(dim=osr.dim, terms=plus), SignedOSR(dim=osr.dim, terms=minus)


def analyze_choi(matrix: ComplexMatrix, tol: Optional[float] = None,
                 rank_tol: Optional[float] = None) -> MapReport:
    """Report on a raw d²×d² Choi matrix that need not be Hermitian.

    A map that fails Hermiticity preservation has no signature or real Choi
    spectrum; its report carries ``signature=None`` and no eigenvalues. The
    trace condition is linear and is still evaluated.
    """
    matrix = as_matrix(matrix, "Choi matrix")
    hp = is_hp(matrix, tol=tol)
    d = dim_of_square(matrix.shape[0])
    if not hp:
        tp = _partial_trace_defect(matrix, d) <= resolve(tol, 'predicate_tol')
        logger.step(f"analyze: d={d}, not Hermiticity preserving, TP={tp}")
        return MapReport(dim=d, hermiticity_preserving=False, completely_positive=False,
                         trace_preserving=tp, signature=None, choi_eigenvalues=())
    choi = ChoiMatrix(dim=d, matrix=hermitian_part(matrix))
    return analyze(osr_from_choi(choi, rank_tol=rank_tol), tol=tol, rank_tol=rank_tol)
