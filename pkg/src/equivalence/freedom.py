"""Operator-sum freedom: transforming signed OSRs by U(p,q) and recovering the
transformation that relates two OSRs of the same map."""

import logging
from typing import Dict, List, Optional, Sequence, Tuple

import numpy as np

from ..config import resolve
from ..errors import (
    DimensionMismatch,
    IllConditioned,
    NumericalBreakdown,
    SignPatternMismatch,
    Singular,
    TargetTooSmall,
)
from ..linalg import ComplexMatrix, as_matrix, frob_norm, invert
from ..maps import SignedOSR, canonical_order, choi_from_osr, osr_from_choi
from .group import complete_to_pseudo_unitary, metric_defect
from .schemas import (
    EquivalenceResult,
    EquivalentNoWitness,
    EquivalentWithWitness,
    Metric,
    NotEquivalent,
    NoWitnessReason,
)

logger = logging.getLogger(__name__)


def pad_osr(osr: SignedOSR, target_p: int, target_q: int) -> SignedOSR:
    """Append zero operators so the OSR has exactly target_p +1 terms and
    target_q −1 terms, +1 block first. The map is unchanged."""
    if target_p < osr.plus_count or target_q < osr.minus_count:
        raise TargetTooSmall(
            f"Cannot pad ({osr.plus_count}, {osr.minus_count}) terms down to ({target_p}, {target_q})")
    zero = np.zeros((osr.dim, osr.dim), dtype=np.complex128)
    plus = [t for t in osr.terms if t[0] == 1] + [(1, zero)] * (target_p - osr.plus_count)
    minus = [t for t in osr.terms if t[0] == -1] + [(-1, zero)] * (target_q - osr.minus_count)
    return SignedOSR(dim=osr.dim, terms=tuple(plus + minus))


def _combine(u: ComplexMatrix, ops: Sequence[ComplexMatrix]) -> np.ndarray:
    """Stack of Σᵢ u[j,i] opᵢ for every row j"""
    return np.tensordot(u, np.stack(ops), axes=1)


def mix_osr(osr: SignedOSR, t: ComplexMatrix, out_signs: Sequence[int]) -> SignedOSR:
    """Term j of the result is (out_signs[j], Σᵢ T[j,i] Cᵢ).

    The map is preserved whenever T† diag(out_signs) T = diag(osr.signs).
    """
    t = as_matrix(t, "mixing matrix")
    if t.shape != (len(out_signs), len(osr)):
        raise DimensionMismatch(f"Mixing matrix must be {len(out_signs)}x{len(osr)}, got {t.shape}")
    if len(osr) == 0:
        raise DimensionMismatch("Cannot mix an empty OSR")
    mixed = _combine(t, osr.ops)
    return SignedOSR(dim=osr.dim, terms=tuple((int(s), op) for s, op in zip(out_signs, mixed)))


def transform_osr(osr: SignedOSR, u: ComplexMatrix, metric: Optional[Metric] = None) -> SignedOSR:
    """Dⱼ = Σᵢ U[j,i] Cᵢ with the sign of each term kept.

    The OSR must be canonically ordered (p terms of sign +1, then q of sign
    −1) and match ``metric`` when given. If U ∈ U(p,q) the Choi matrix, hence
    the map, is unchanged.
    """
    if metric is None:
        metric = Metric.of(osr)
    elif list(osr.signs) != list(metric.signs):
        raise SignPatternMismatch(
            f"OSR signs {list(osr.signs)} do not match metric ({metric.p}, {metric.q})")
    u = as_matrix(u, "transformation")
    if u.shape != (metric.size, metric.size):
        raise DimensionMismatch(f"Transformation must be {metric.size}x{metric.size}, got {u.shape}")
    return mix_osr(osr, u, metric.signs)


def _operator_residuals(source: SignedOSR, target: SignedOSR, u: ComplexMatrix) -> List[float]:
    mapped = _combine(u, source.ops)
    return [frob_norm(d - m) for d, m in zip(target.ops, mapped)]


def verify_equivalence(source: SignedOSR, target: SignedOSR, u: ComplexMatrix, metric: Metric,
                       tol: Optional[float] = None) -> bool:
    """True iff U ∈ U(p,q) within tol and ‖Dⱼ − Σᵢ U[j,i]Cᵢ‖_F ≤ tol for every j."""
    tol = resolve(tol, 'equivalence_tol')
    if source.dim != target.dim:
        raise DimensionMismatch(f"Operator dimensions differ: {source.dim} vs {target.dim}")
    for name, osr in (("source", source), ("target", target)):
        if list(osr.signs) != list(metric.signs):
            raise SignPatternMismatch(
                f"{name} signs {list(osr.signs)} do not match metric ({metric.p}, {metric.q})")
    u = as_matrix(u, "witness")
    if metric_defect(u, metric) > tol:
        return False
    return max(_operator_residuals(source, target, u)) <= tol


def _expand(osr: SignedOSR, basis: SignedOSR) -> Tuple[np.ndarray, float]:
    """Coefficients w[i,k] of each operator over the orthogonal canonical basis,
    and the largest relative expansion residual."""
    w = np.zeros((len(osr), len(basis)), dtype=np.complex128)
    residual = 0.0
    weights = [frob_norm(k) ** 2 for k in basis.ops]
    for i, op in enumerate(osr.ops):
        for k, (kop, weight) in enumerate(zip(basis.ops, weights)):
            w[i, k] = np.vdot(kop, op) / weight
        approx = np.tensordot(w[i], np.stack(basis.ops), axes=1) if len(basis) else np.zeros_like(op)
        residual = max(residual, frob_norm(op - approx) / max(1.0, frob_norm(op)))
    return w, residual


def find_equivalence(osr_c: SignedOSR, osr_d: SignedOSR, tol: Optional[float] = None) -> EquivalenceResult:
    """Decide whether two signed OSRs describe the same map and, if so, build
    a witness u ∈ U(p,q) with Dⱼ = Σᵢ u[j,i] Cᵢ.

    Both OSRs are put in canonical order and padded with zero operators to a
    common sign pattern; the witness acts on those padded lists, which are
    returned alongside it. The construction expands both lists over the
    canonical spectral OSR of the shared Choi matrix (coefficient matrices w
    and v), completes w and v to square γ-orthonormal matrices and forms
    u = v w⁻¹.
    """
    tol = resolve(tol, 'equivalence_tol')
    if osr_c.dim != osr_d.dim:
        raise DimensionMismatch(f"Operator dimensions differ: {osr_c.dim} vs {osr_d.dim}")
    diagnostics: Dict[str, float] = {'witness_tol': tol}

    choi_c = choi_from_osr(osr_c)
    choi_d = choi_from_osr(osr_d)
    distance = frob_norm(choi_c.matrix - choi_d.matrix)
    diagnostics['choi_distance'] = distance
    if distance > tol * max(1.0, frob_norm(choi_c.matrix)):
        logger.step(f"find_equivalence: Choi distance {distance:.3e}, not equivalent")
        return EquivalenceResult(NotEquivalent(choi_distance=distance), diagnostics)

    canonical = osr_from_choi(choi_c)
    target_p = max(osr_c.plus_count, osr_d.plus_count, canonical.plus_count)
    target_q = max(osr_c.minus_count, osr_d.minus_count, canonical.minus_count)
    if target_p + target_q == 0:
        target_p = 1
    metric = Metric(target_p, target_q)
    source = pad_osr(canonical_order(osr_c), target_p, target_q)
    target = pad_osr(canonical_order(osr_d), target_p, target_q)

    w, residual_c = _expand(source, canonical)
    v, residual_d = _expand(target, canonical)
    diagnostics['expansion_residual_source'] = residual_c
    diagnostics['expansion_residual_target'] = residual_d
    logger.step(f"find_equivalence: canonical rank {len(canonical)}, padded to ({target_p}, {target_q}), "
                f"expansion residuals {residual_c:.2e} / {residual_d:.2e}")
    if max(residual_c, residual_d) > tol:
        return EquivalenceResult(EquivalentNoWitness(NoWitnessReason.SUPPORT_VIOLATION), diagnostics)

    completion_tol = max(tol, resolve(None, 'isotropic_tol'))
    try:
        w_full = complete_to_pseudo_unitary(w, metric, tol=completion_tol)
        v_full = complete_to_pseudo_unitary(v, metric, tol=completion_tol)
    except NumericalBreakdown as e:
        logger.warning(f"find_equivalence: completion failed: {e}")
        return EquivalenceResult(EquivalentNoWitness(NoWitnessReason.NUMERICAL_BREAKDOWN), diagnostics)
    if list(w_full.column_signs) != list(v_full.column_signs):
        logger.warning("find_equivalence: completions disagree on column signs")
        return EquivalenceResult(EquivalentNoWitness(NoWitnessReason.VERIFICATION_FAILED), diagnostics)

    try:
        u = v_full.matrix @ invert(w_full.matrix)
    except Singular as e:
        logger.warning(f"find_equivalence: {e}")
        return EquivalenceResult(EquivalentNoWitness(NoWitnessReason.SINGULAR), diagnostics)
    except IllConditioned as e:
        logger.warning(f"find_equivalence: {e}")
        return EquivalenceResult(EquivalentNoWitness(NoWitnessReason.ILL_CONDITIONED), diagnostics)

    diagnostics['metric_defect'] = metric_defect(u, metric)
    diagnostics['operator_residual'] = max(_operator_residuals(source, target, u))
    logger.step(f"find_equivalence: witness defect {diagnostics['metric_defect']:.2e}, "
                f"operator residual {diagnostics['operator_residual']:.2e}")
    if not verify_equivalence(source, target, u, metric, tol=tol):
        return EquivalenceResult(EquivalentNoWitness(NoWitnessReason.VERIFICATION_FAILED), diagnostics)

    witness = EquivalentWithWitness(u=u, metric=metric, padded_size=metric.size, source=source, target=target)
    return EquivalenceResult(witness, diagnostics)
