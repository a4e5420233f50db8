"""Lossless conversions between the superoperator, Choi and signed OSR forms.

Vectorisation is row-major everywhere: vec(C)[i·d + j] = C[i, j]. With that
convention

    superoperator  A = Σₖ ηₖ Cₖ ⊗ conj(Cₖ)
    Choi matrix    B = Σₖ ηₖ vec(Cₖ) vec(Cₖ)†

and B[(i,j),(k,l)] = A[(i,k),(j,l)].
"""

import logging
from typing import Optional

import numpy as np
import numpy.typing as npt

from ..config import resolve
from ..errors import DimensionMismatch, DimensionNotSquare
from ..linalg import ComplexMatrix, as_matrix, herm_eig
from .schemas import ChoiMatrix, SignedOSR, Superoperator

logger = logging.getLogger(__name__)


def vec(c: ComplexMatrix) -> npt.NDArray[np.complex128]:
    c = as_matrix(c, "operator")
    if c.shape[0] != c.shape[1]:
        raise DimensionMismatch(f"vec expects a square operator, got {c.shape}")
    return c.reshape(-1).copy()


def unvec(v, d: int) -> ComplexMatrix:
    v = np.asarray(v, dtype=np.complex128)
    if v.ndim != 1 or v.size != d * d:
        raise DimensionMismatch(f"unvec expects a vector of length {d * d}, got shape {v.shape}")
    return v.reshape(d, d).copy()


def dim_of_square(n: int) -> int:
    """Return d when n == d², else raise DimensionNotSquare."""
    d = int(round(np.sqrt(n)))
    if d < 1 or d * d != n:
        raise DimensionNotSquare(f"Size {n} is not a perfect square")
    return d


def reshuffle(m: ComplexMatrix) -> ComplexMatrix:
    """Index permutation B[(i,j),(k,l)] = A[(i,k),(j,l)]; an involution."""
    m = as_matrix(m)
    if m.shape[0] != m.shape[1]:
        raise DimensionNotSquare(f"reshuffle expects a square matrix, got {m.shape}")
    d = dim_of_square(m.shape[0])
    return m.reshape(d, d, d, d).transpose(0, 2, 1, 3).reshape(d * d, d * d).copy()


def superop_from_osr(osr: SignedOSR) -> Superoperator:
    d = osr.dim
    a = np.zeros((d * d, d * d), dtype=np.complex128)
    for sign, op in osr.terms:
        a += sign * np.kron(op, np.conj(op))
    return Superoperator(dim=d, matrix=a)


def choi_from_osr(osr: SignedOSR) -> ChoiMatrix:
    d = osr.dim
    b = np.zeros((d * d, d * d), dtype=np.complex128)
    for sign, op in osr.terms:
        v = op.reshape(-1)
        b += sign * np.outer(v, np.conj(v))
    return ChoiMatrix(dim=d, matrix=b)


def choi_from_superop(superop: Superoperator, herm_tol: Optional[float] = None) -> ChoiMatrix:
    """Raises NotHermitian when the map is not Hermiticity-preserving."""
    return ChoiMatrix(dim=superop.dim, matrix=reshuffle(superop.matrix), herm_tol=herm_tol)


def superop_from_choi(choi: ChoiMatrix) -> Superoperator:
    return Superoperator(dim=choi.dim, matrix=reshuffle(choi.matrix))


def _fix_phase(v: npt.NDArray[np.complex128]) -> npt.NDArray[np.complex128]:
    """Rotate v so its largest-modulus entry is real positive."""
    pivot = v[int(np.argmax(np.abs(v)))]
    if pivot == 0:
        return v
    return v * (np.conj(pivot) / abs(pivot))


def osr_from_choi(choi: ChoiMatrix, rank_tol: Optional[float] = None) -> SignedOSR:
    """Canonical (spectral) signed OSR of a Choi matrix.

    Each eigenpair (λ, v) with |λ| > rank_tol * max|λ| becomes the term
    (sign λ, √|λ| unvec(v)). Positive terms come first, then negative ones,
    each block by descending |λ|. The operators are mutually orthogonal in the
    Hilbert-Schmidt inner product, so the decomposition is minimal.
    """
    rank_tol = resolve(rank_tol, 'rank_tol')
    d = choi.dim
    values, vectors = herm_eig(choi.matrix, tol_sym=resolve(choi.herm_tol, 'herm_tol'))

    scale = float(np.max(np.abs(values))) if values.size else 0.0
    keep = np.abs(values) > rank_tol * scale
    positive = [k for k in range(values.size) if keep[k] and values[k] > 0]
    negative = [k for k in reversed(range(values.size)) if keep[k] and values[k] < 0]

    terms = []
    for sign, indices in ((1, positive), (-1, negative)):
        for k in indices:
            v = _fix_phase(vectors[:, k])
            terms.append((sign, np.sqrt(abs(values[k])) * unvec(v, d)))

    logger.debug(f"osr_from_choi: d={d}, kept {len(positive)} positive and {len(negative)} negative terms")
    return SignedOSR(dim=d, terms=tuple(terms))


def osr_from_superop(superop: Superoperator, rank_tol: Optional[float] = None) -> SignedOSR:
    return osr_from_choi(choi_from_superop(superop), rank_tol=rank_tol)


def canonical_order(osr: SignedOSR) -> SignedOSR:
    """Stable reorder placing all +1 terms before all −1 terms."""
    plus = [t for t in osr.terms if t[0] == 1]
    minus = [t for t in osr.terms if t[0] == -1]
    return SignedOSR(dim=osr.dim, terms=tuple(plus + minus))
