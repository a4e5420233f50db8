"""Dense complex linear algebra used by the map and equivalence modules."""

from .dense import (
    ComplexMatrix,
    adjoint,
    as_matrix,
    condition_estimate,
    frob_norm,
    hermitian_part,
    hermiticity_defect,
    invert,
    matmul,
    relative_distance,
    require_square,
)
from .eigen import herm_eig
from .expm import mat_exp

__all__ = [
    'ComplexMatrix',
    'adjoint',
    'as_matrix',
    'condition_estimate',
    'frob_norm',
    'hermitian_part',
    'hermiticity_defect',
    'herm_eig',
    'invert',
    'mat_exp',
    'matmul',
    'relative_distance',
    'require_square',
]
