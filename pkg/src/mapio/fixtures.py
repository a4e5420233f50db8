"""Named map generators used by the tests and ``qmap gen``."""

import json
import logging
from abc import ABC, abstractmethod
from typing import Any, Dict, Type

import numpy as np
from pydantic import BaseModel, ConfigDict, Field, ValidationError, model_validator

from ..errors import ParamOutOfRange, UnknownFixture
from ..maps import ChoiMatrix, SignedOSR, osr_from_choi, vec
from .document import MapDocument, document_from_osr

logger = logging.getLogger(__name__)

MAX_DIM = 16


class FixtureParams(BaseModel):
    model_config = ConfigDict(extra='forbid')

    d: int = Field(default=2, ge=1, le=MAX_DIM)


class DepolarizingParams(FixtureParams):
    p: float = Field(default=0.0, allow_inf_nan=False)


class AmplitudeDampingParams(BaseModel):
    model_config = ConfigDict(extra='forbid')

    gamma: float = Field(ge=0.0, le=1.0)


class RandomHPParams(FixtureParams):
    p: int = Field(ge=0)
    q: int = Field(ge=0)
    seed: int = 0

    @model_validator(mode='after')
    def _check_counts(self) -> 'RandomHPParams':
        if self.p + self.q < 1 or self.p + self.q > self.d ** 2:
            raise ValueError(f"p + q must lie in [1, d² = {self.d ** 2}], got {self.p + self.q}")
        return self


class MapFixture(ABC):
    """Abstract base factory for fixture maps"""
    params_model: Type[BaseModel] = FixtureParams
    description: str = ""
    trace_preserving: bool = True

    def __init__(self, name: str):
        self.name = name

    def params(self, raw: Dict[str, Any]) -> BaseModel:
        try:
            return self.params_model(**raw)
        except ValidationError as e:
            first = e.errors()[0]
            field = ".".join(str(part) for part in first['loc']) or "params"
            raise ParamOutOfRange(f"{self.name}: {field}: {first['msg']}") from e

    @abstractmethod
    def build(self, params: BaseModel) -> SignedOSR:
        pass

    def document(self, **raw: Any) -> MapDocument:
        params = self.params(raw)
        osr = self.build(params)
        logger.debug(f"Generated {self.name} fixture with {len(osr)} terms")
        meta = {
            'name': self.name,
            'description': self.description,
            'params': json.dumps(params.model_dump(), sort_keys=True),
            'trace_preserving': "yes" if self.trace_preserving else "not imposed",
        }
        return document_from_osr(osr, meta=meta)


class IdentityFixture(MapFixture):
    description = "ρ ↦ ρ"

    def __init__(self):
        super().__init__('identity')

    def build(self, params: FixtureParams) -> SignedOSR:
        return SignedOSR(dim=params.d, terms=((1, np.eye(params.d, dtype=np.complex128)),))


class TransposeFixture(MapFixture):
    description = "ρ ↦ ρᵀ; Hermiticity and trace preserving, not completely positive"

    def __init__(self):
        super().__init__('transpose')

    def build(self, params: FixtureParams) -> SignedOSR:
        d = params.d
        # Choi matrix of the transpose is the swap operator on C^d ⊗ C^d
        swap = np.eye(d * d, dtype=np.complex128).reshape(d, d, d, d).transpose(0, 1, 3, 2).reshape(d * d, d * d)
        return osr_from_choi(ChoiMatrix(dim=d, matrix=swap))


class DepolarizingFixture(MapFixture):
    params_model = DepolarizingParams
    description = "ρ ↦ (1−p)ρ + p·Tr(ρ)·I/d"

    def __init__(self):
        super().__init__('depolarizing')

    def build(self, params: DepolarizingParams) -> SignedOSR:
        d, p = params.d, params.p
        v = vec(np.eye(d, dtype=np.complex128))
        choi = (1 - p) * np.outer(v, v.conj()) + (p / d) * np.eye(d * d, dtype=np.complex128)
        return osr_from_choi(ChoiMatrix(dim=d, matrix=choi))


class CompletelyDepolarizingFixture(MapFixture):
    description = "ρ ↦ Tr(ρ)·I/d"

    def __init__(self):
        super().__init__('completely_depolarizing')

    def build(self, params: FixtureParams) -> SignedOSR:
        d = params.d
        terms = []
        for i in range(d):
            for j in range(d):
                op = np.zeros((d, d), dtype=np.complex128)
                op[i, j] = 1 / np.sqrt(d)
                terms.append((1, op))
        return SignedOSR(dim=d, terms=tuple(terms))


class AmplitudeDampingFixture(MapFixture):
    params_model = AmplitudeDampingParams
    description = "Qubit decay |1⟩ → |0⟩ with probability gamma"

    def __init__(self):
        super().__init__('amplitude_damping')

    def build(self, params: AmplitudeDampingParams) -> SignedOSR:
        g = params.gamma
        k0 = np.array([[1, 0], [0, np.sqrt(1 - g)]], dtype=np.complex128)
        k1 = np.array([[0, np.sqrt(g)], [0, 0]], dtype=np.complex128)
        return SignedOSR.kraus([k0, k1])


class RandomHPFixture(MapFixture):
    params_model = RandomHPParams
    description = "Random Hermiticity-preserving map with p positive and q negative Choi eigenvalues"
    trace_preserving = False

    def __init__(self):
        super().__init__('random_hp')

    def build(self, params: RandomHPParams) -> SignedOSR:
        d, n = params.d, params.p + params.q
        rng = np.random.default_rng(params.seed)
        raw = rng.standard_normal((d * d, n)) + 1j * rng.standard_normal((d * d, n))
        vectors, _ = np.linalg.qr(raw)
        weights = rng.uniform(0.5, 1.5, n)
        signs = np.array([1.0] * params.p + [-1.0] * params.q)
        choi = (vectors * (signs * weights)) @ vectors.conj().T
        return osr_from_choi(ChoiMatrix(dim=d, matrix=(choi + choi.conj().T) / 2))


FIXTURES: Dict[str, MapFixture] = {
    fixture.name: fixture
    for fixture in (
        IdentityFixture(),
        TransposeFixture(),
        DepolarizingFixture(),
        CompletelyDepolarizingFixture(),
        AmplitudeDampingFixture(),
        RandomHPFixture(),
    )
}


def gen_fixture(name: str, **params: Any) -> MapDocument:
    """Build the named fixture as an ``osr`` document.

    Raises:
        UnknownFixture: If no fixture is registered under ``name``
        ParamOutOfRange: If a parameter is missing, unknown or outside its range
    """
    fixture = FIXTURES.get(name)
    if fixture is None:
        raise UnknownFixture(f"Unknown fixture {name!r}; choose from {', '.join(sorted(FIXTURES))}")
    return fixture.document(**params)
