from dataclasses import dataclass, field
from enum import Enum
from typing import Dict, Optional, Sequence, Union

import numpy as np
import numpy.typing as npt

from ..errors import InvalidMetric, SignPatternMismatch
from ..linalg import ComplexMatrix
from ..maps import SignedOSR


@dataclass(frozen=True)
class Metric:
    """Signature (p, q) of the diagonal metric η = diag(+1 × p, −1 × q)"""
    p: int
    q: int

    def __post_init__(self):
        if self.p < 0 or self.q < 0:
            raise InvalidMetric(f"Metric counts must be nonnegative, got ({self.p}, {self.q})")
        if self.p + self.q < 1:
            raise InvalidMetric("Metric must have at least one entry")

    @property
    def size(self) -> int:
        return self.p + self.q

    @property
    def signs(self) -> npt.NDArray[np.int64]:
        return np.array([1] * self.p + [-1] * self.q, dtype=np.int64)

    @classmethod
    def from_signs(cls, signs: Sequence[int]) -> 'Metric':
        """Metric of a canonically ordered sign sequence (+1 block, then −1 block)"""
        signs = [int(s) for s in signs]
        p = sum(1 for s in signs if s == 1)
        if signs != [1] * p + [-1] * (len(signs) - p):
            raise SignPatternMismatch(f"Signs are not ordered +1 block first: {signs}")
        return cls(p=p, q=len(signs) - p)

    @classmethod
    def of(cls, osr: SignedOSR) -> 'Metric':
        return cls.from_signs(osr.signs)


class NoWitnessReason(str, Enum):
    SUPPORT_VIOLATION = "support_violation"
    VERIFICATION_FAILED = "verification_failed"
    SINGULAR = "singular"
    ILL_CONDITIONED = "ill_conditioned"
    NUMERICAL_BREAKDOWN = "numerical_breakdown"


@dataclass(frozen=True)
class NotEquivalent:
    choi_distance: float


@dataclass(frozen=True, eq=False)
class EquivalentWithWitness:
    """u maps the padded source terms onto the padded target terms: Dⱼ = Σᵢ u[j,i] Cᵢ"""
    u: ComplexMatrix
    metric: Metric
    padded_size: int
    source: SignedOSR
    target: SignedOSR


@dataclass(frozen=True)
class EquivalentNoWitness:
    reason: NoWitnessReason


Verdict = Union[NotEquivalent, EquivalentWithWitness, EquivalentNoWitness]


@dataclass(frozen=True, eq=False)
class EquivalenceResult:
    verdict: Verdict
    diagnostics: Dict[str, float] = field(default_factory=dict)

    @property
    def equivalent(self) -> bool:
        return not isinstance(self.verdict, NotEquivalent)

    @property
    def witness(self) -> Optional[EquivalentWithWitness]:
        return self.verdict if isinstance(self.verdict, EquivalentWithWitness) else None


@dataclass(frozen=True, eq=False)
class Completion:
    """Square completion with matrix† · γ · matrix = diag(column_signs)"""
    matrix: ComplexMatrix
    column_signs: npt.NDArray[np.int64]


def metric_from_signs(signs: Sequence[int]) -> Metric:
    return Metric.from_signs(signs)
