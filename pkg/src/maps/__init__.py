"""Map representations, conversions, application and classification."""

from .action import apply_osr, apply_superop
from .classify import (
    analyze,
    analyze_choi,
    cp_difference,
    is_cp,
    is_hp,
    is_hp_superop,
    is_tp,
    is_tp_choi,
    signature,
)
from .conversions import (
    canonical_order,
    choi_from_osr,
    choi_from_superop,
    dim_of_square,
    osr_from_choi,
    osr_from_superop,
    reshuffle,
    superop_from_choi,
    superop_from_osr,
    unvec,
    vec,
)
from .schemas import ChoiMatrix, MapReport, Signature, SignedOSR, Superoperator

__all__ = [
    'ChoiMatrix', 'MapReport', 'Signature', 'SignedOSR', 'Superoperator',
    'analyze', 'analyze_choi', 'apply_osr', 'apply_superop', 'canonical_order',
    'choi_from_osr', 'choi_from_superop', 'cp_difference', 'dim_of_square',
    'is_cp', 'is_hp', 'is_hp_superop', 'is_tp', 'is_tp_choi',
    'osr_from_choi', 'osr_from_superop', 'reshuffle', 'signature',
    'superop_from_choi', 'superop_from_osr', 'unvec', 'vec',
]
