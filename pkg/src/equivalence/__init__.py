"""Pseudo-unitary freedom of signed operator-sum representations."""

from .freedom import find_equivalence, mix_osr, pad_osr, transform_osr, verify_equivalence
from .group import (
    complete_to_pseudo_unitary,
    is_left_pseudo_unitary,
    is_pseudo_unitary,
    metric_defect,
    metric_matrix,
    random_pseudo_unitary,
    random_unitary,
)
from .schemas import (
    Completion,
    EquivalenceResult,
    EquivalentNoWitness,
    EquivalentWithWitness,
    Metric,
    NotEquivalent,
    NoWitnessReason,
    metric_from_signs,
)

__all__ = [
    'Completion', 'EquivalenceResult', 'EquivalentNoWitness', 'EquivalentWithWitness',
    'Metric', 'NotEquivalent', 'NoWitnessReason',
    'complete_to_pseudo_unitary', 'find_equivalence', 'is_left_pseudo_unitary',
    'is_pseudo_unitary', 'metric_defect', 'metric_from_signs', 'metric_matrix', 'mix_osr', 'pad_osr',
    'random_pseudo_unitary', 'random_unitary', 'transform_osr', 'verify_equivalence',
]
