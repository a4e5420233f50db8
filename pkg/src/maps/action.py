import numpy as np

from ..errors import DimensionMismatch
from ..linalg import ComplexMatrix, adjoint, as_matrix
from .conversions import unvec, vec
from .schemas import SignedOSR, Superoperator


def _check_input(rho, d: int) -> ComplexMatrix:
    rho = as_matrix(rho, "input matrix")
    if rho.shape != (d, d):
        raise DimensionMismatch(f"Input must be {d}x{d}, got {rho.shape}")
    return rho


def apply_osr(osr: SignedOSR, rho: ComplexMatrix) -> ComplexMatrix:
    """Φ(ρ) = Σₖ ηₖ Cₖ ρ Cₖ†"""
    rho = _check_input(rho, osr.dim)
    out = np.zeros_like(rho)
    for sign, op in osr.terms:
        out += sign * (op @ rho @ adjoint(op))
    return out


def apply_superop(superop: Superoperator, rho: ComplexMatrix) -> ComplexMatrix:
    """unvec(A · vec(ρ))"""
    rho = _check_input(rho, superop.dim)
    return unvec(superop.matrix @ vec(rho), superop.dim)
