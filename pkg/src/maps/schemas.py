from dataclasses import dataclass, field
from typing import Iterable, List, Optional, Sequence, Tuple

import numpy as np
import numpy.typing as npt

from ..config import resolve
from ..errors import DimensionMismatch, InvalidSign, NotHermitian
from ..linalg import ComplexMatrix, as_matrix, hermiticity_defect


def _frozen(m: ComplexMatrix) -> ComplexMatrix:
    m = np.array(m, dtype=np.complex128)
    m.setflags(write=False)
    return m


def _check_square_of(matrix: ComplexMatrix, dim: int, name: str) -> None:
    if dim < 1:
        raise DimensionMismatch(f"{name} dim must be positive, got {dim}")
    if matrix.shape != (dim * dim, dim * dim):
        raise DimensionMismatch(f"{name} must be {dim * dim}x{dim * dim} for d={dim}, got {matrix.shape}")


@dataclass(frozen=True, eq=False)
class Superoperator:
    """The map as a d²×d² matrix acting on row-major vectorised inputs"""
    dim: int
    matrix: ComplexMatrix

    def __post_init__(self):
        matrix = _frozen(as_matrix(self.matrix, "superoperator"))
        _check_square_of(matrix, self.dim, "Superoperator")
        object.__setattr__(self, 'matrix', matrix)


@dataclass(frozen=True, eq=False)
class ChoiMatrix:
    """The Hermitian d²×d² reshuffle of the superoperator"""
    dim: int
    matrix: ComplexMatrix
    herm_tol: Optional[float] = field(default=None, repr=False)

    def __post_init__(self):
        matrix = _frozen(as_matrix(self.matrix, "Choi matrix"))
        _check_square_of(matrix, self.dim, "ChoiMatrix")
        tol = resolve(self.herm_tol, 'herm_tol')
        defect = hermiticity_defect(matrix)
        if defect > tol:
            raise NotHermitian(f"Choi matrix Hermiticity defect {defect:.3e} exceeds {tol:.1e}")
        object.__setattr__(self, 'matrix', matrix)


@dataclass(frozen=True, eq=False)
class SignedOSR:
    """Ordered (sign, operator) terms of Φ(ρ) = Σₖ ηₖ Cₖ ρ Cₖ†"""
    dim: int
    terms: Tuple[Tuple[int, ComplexMatrix], ...] = ()

    def __post_init__(self):
        if self.dim < 1:
            raise DimensionMismatch(f"SignedOSR dim must be positive, got {self.dim}")
        checked = []
        for k, (sign, op) in enumerate(self.terms):
            if sign not in (1, -1):
                raise InvalidSign(f"Term {k} sign must be +1 or -1, got {sign!r}")
            op = _frozen(as_matrix(op, f"term {k} operator"))
            if op.shape != (self.dim, self.dim):
                raise DimensionMismatch(f"Term {k} operator must be {self.dim}x{self.dim}, got {op.shape}")
            checked.append((int(sign), op))
        object.__setattr__(self, 'terms', tuple(checked))

    @classmethod
    def from_pairs(cls, dim: int, pairs: Iterable[Tuple[int, ComplexMatrix]]) -> 'SignedOSR':
        return cls(dim=dim, terms=tuple(pairs))

    @classmethod
    def kraus(cls, ops: Sequence[ComplexMatrix]) -> 'SignedOSR':
        """All-positive OSR from a list of Kraus operators"""
        ops = [as_matrix(op) for op in ops]
        if not ops:
            raise ValueError("At least one operator is needed to infer the dimension")
        return cls(dim=ops[0].shape[0], terms=tuple((1, op) for op in ops))

    def __len__(self) -> int:
        return len(self.terms)

    @property
    def signs(self) -> npt.NDArray[np.int64]:
        return np.array([sign for sign, _ in self.terms], dtype=np.int64)

    @property
    def ops(self) -> List[ComplexMatrix]:
        return [op for _, op in self.terms]

    @property
    def plus_count(self) -> int:
        return sum(1 for sign, _ in self.terms if sign == 1)

    @property
    def minus_count(self) -> int:
        return sum(1 for sign, _ in self.terms if sign == -1)

    def is_canonically_ordered(self) -> bool:
        """True when every +1 term precedes every −1 term"""
        signs = self.signs
        return bool(np.all(signs[:self.plus_count] == 1))


@dataclass(frozen=True)
class Signature:
    """Inertia of the Choi matrix"""
    p: int
    q: int
    z: int

    def as_tuple(self) -> Tuple[int, int, int]:
        return (self.p, self.q, self.z)


@dataclass(frozen=True)
class MapReport:
    dim: int
    hermiticity_preserving: bool
    completely_positive: bool
    trace_preserving: bool
    signature: Optional[Signature]
    choi_eigenvalues: Tuple[float, ...]

    def __post_init__(self):
        if self.signature is None and self.hermiticity_preserving:
            raise ValueError("A Hermiticity-preserving map always has a Choi signature")
        if self.completely_positive and (self.signature is None or self.signature.q != 0):
            raise ValueError("A completely positive map cannot have negative Choi eigenvalues")
