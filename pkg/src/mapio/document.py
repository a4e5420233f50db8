"""The .qmap.json document format.

A document is a single JSON object::

    {"kind": "osr", "dim": 2,
     "payload": [{"sign": 1, "op": {"rows": 2, "cols": 2, "data": [[1.0, 0.0], ...]}}],
     "meta": {"name": "identity"}}

Complex entries are [re, im] pairs in row-major order. ``superop``, ``choi``
and ``matrix`` documents carry a single matrix object as payload.
"""

import json
import logging
from pathlib import Path
from typing import Annotated, Dict, List, Literal, Optional, Tuple, Union

import numpy as np
from pydantic import BaseModel, ConfigDict, Field, PositiveInt, ValidationError, model_validator

from ..errors import ParseError, ShapeError
from ..linalg import ComplexMatrix
from ..maps import (
    ChoiMatrix,
    MapReport,
    SignedOSR,
    Superoperator,
    analyze,
    analyze_choi,
    choi_from_superop,
    osr_from_choi,
    reshuffle,
)

logger = logging.getLogger(__name__)

FILE_SUFFIX = ".qmap.json"

FiniteFloat = Annotated[float, Field(allow_inf_nan=False)]
ComplexPair = Tuple[FiniteFloat, FiniteFloat]
MapKind = Literal["superop", "choi", "osr", "matrix"]


class MatrixObject(BaseModel):
    model_config = ConfigDict(extra='forbid')

    rows: PositiveInt
    cols: PositiveInt
    data: List[ComplexPair]

    @model_validator(mode='after')
    def _check_length(self) -> 'MatrixObject':
        if len(self.data) != self.rows * self.cols:
            raise ValueError(f"data holds {len(self.data)} entries, expected rows*cols = {self.rows * self.cols}")
        return self

    @classmethod
    def from_array(cls, m: ComplexMatrix) -> 'MatrixObject':
        m = np.asarray(m, dtype=np.complex128)
        return cls(
            rows=m.shape[0],
            cols=m.shape[1],
            data=[(float(z.real), float(z.imag)) for z in m.reshape(-1)],
        )

    def to_array(self) -> ComplexMatrix:
        flat = np.array([complex(re, im) for re, im in self.data], dtype=np.complex128)
        return flat.reshape(self.rows, self.cols)


class OSRTermObject(BaseModel):
    model_config = ConfigDict(extra='forbid')

    sign: Literal[1, -1]
    op: MatrixObject


class MapDocument(BaseModel):
    model_config = ConfigDict(extra='forbid')

    kind: MapKind
    dim: PositiveInt
    payload: Union[List[OSRTermObject], MatrixObject]
    meta: Optional[Dict[str, str]] = None


class WitnessDocument(BaseModel):
    """Result file written by ``equiv --out``"""
    model_config = ConfigDict(extra='forbid')

    verdict: Literal["equivalent", "equivalent_no_witness", "not_equivalent"]
    metric: Optional[Dict[str, int]] = None
    padded_size: Optional[int] = None
    u: Optional[MatrixObject] = None
    choi_distance: Optional[float] = None
    reason: Optional[str] = None
    diagnostics: Dict[str, float] = Field(default_factory=dict)


def check_shapes(doc: MapDocument) -> MapDocument:
    """Raise ShapeError when the payload disagrees with kind and dim."""
    d = doc.dim
    if doc.kind == "osr":
        if not isinstance(doc.payload, list):
            raise ShapeError("osr payload must be a list of {sign, op} terms")
        for k, term in enumerate(doc.payload):
            if (term.op.rows, term.op.cols) != (d, d):
                raise ShapeError(f"payload[{k}].op is {term.op.rows}x{term.op.cols}, expected {d}x{d}")
        return doc

    if not isinstance(doc.payload, MatrixObject):
        raise ShapeError(f"{doc.kind} payload must be a single matrix object")
    expected = (d, d) if doc.kind == "matrix" else (d * d, d * d)
    got = (doc.payload.rows, doc.payload.cols)
    if got != expected:
        raise ShapeError(f"{doc.kind} payload is {got[0]}x{got[1]}, expected {expected[0]}x{expected[1]} for dim {d}")
    return doc


def _location(error: ValidationError) -> str:
    first = error.errors()[0]
    return ".".join(str(part) for part in first['loc']) or "<document>"


def loads_map(text: str) -> MapDocument:
    try:
        raw = json.loads(text)
    except json.JSONDecodeError as e:
        raise ParseError(e.msg, location=f"line {e.lineno}, column {e.colno}") from e
    try:
        doc = MapDocument.model_validate(raw)
    except ValidationError as e:
        raise ParseError(e.errors()[0]['msg'], location=_location(e)) from e
    return check_shapes(doc)


def dumps_map(doc: MapDocument) -> str:
    check_shapes(doc)
    return json.dumps(doc.model_dump(mode='json', exclude_none=True), indent=2, ensure_ascii=False) + "\n"


def load_map(source: Path) -> MapDocument:
    source = Path(source)
    text = source.read_text(encoding='utf-8')
    logger.debug(f"Loaded {source} ({len(text)} bytes)")
    return loads_map(text)


def _write_atomic(destination: Path, text: str) -> None:
    destination = Path(destination)
    destination.parent.mkdir(parents=True, exist_ok=True)
    temp_file = destination.with_name(destination.name + '.tmp')
    temp_file.write_text(text, encoding='utf-8')
    temp_file.replace(destination)


def save_map(doc: MapDocument, destination: Path) -> None:
    """Write atomically through a temporary file next to the destination."""
    _write_atomic(destination, dumps_map(doc))
    logger.debug(f"Saved {doc.kind} document to {destination}")


def dumps_witness(doc: WitnessDocument) -> str:
    return json.dumps(doc.model_dump(mode='json'), indent=2, ensure_ascii=False) + "\n"


def save_witness(doc: WitnessDocument, destination: Path) -> None:
    _write_atomic(destination, dumps_witness(doc))
    logger.debug(f"Saved {doc.verdict} witness document to {destination}")


# Domain objects <-> documents

def document_from_osr(osr: SignedOSR, meta: Optional[Dict[str, str]] = None) -> MapDocument:
    terms = [OSRTermObject(sign=sign, op=MatrixObject.from_array(op)) for sign, op in osr.terms]
    return MapDocument(kind="osr", dim=osr.dim, payload=terms, meta=meta)


def document_from_superop(superop: Superoperator, meta: Optional[Dict[str, str]] = None) -> MapDocument:
    return MapDocument(kind="superop", dim=superop.dim, payload=MatrixObject.from_array(superop.matrix), meta=meta)


def document_from_choi(choi: ChoiMatrix, meta: Optional[Dict[str, str]] = None) -> MapDocument:
    return MapDocument(kind="choi", dim=choi.dim, payload=MatrixObject.from_array(choi.matrix), meta=meta)


def document_from_matrix(m: ComplexMatrix, meta: Optional[Dict[str, str]] = None) -> MapDocument:
    m = np.asarray(m)
    if m.ndim != 2 or m.shape[0] != m.shape[1]:
        raise ShapeError(f"matrix documents hold square matrices, got shape {m.shape}")
    return MapDocument(kind="matrix", dim=m.shape[0], payload=MatrixObject.from_array(m), meta=meta)


def _expect(doc: MapDocument, kind: str) -> None:
    if doc.kind != kind:
        raise ShapeError(f"Expected a {kind} document, got {doc.kind}")
    check_shapes(doc)


def osr_from_document(doc: MapDocument) -> SignedOSR:
    _expect(doc, "osr")
    return SignedOSR(dim=doc.dim, terms=tuple((term.sign, term.op.to_array()) for term in doc.payload))


def superop_from_document(doc: MapDocument) -> Superoperator:
    _expect(doc, "superop")
    return Superoperator(dim=doc.dim, matrix=doc.payload.to_array())


def choi_from_document(doc: MapDocument) -> ChoiMatrix:
    """Raises NotHermitian for a non-Hermitian payload; loading alone does not check."""
    _expect(doc, "choi")
    return ChoiMatrix(dim=doc.dim, matrix=doc.payload.to_array())


def matrix_from_document(doc: MapDocument) -> ComplexMatrix:
    _expect(doc, "matrix")
    return doc.payload.to_array()


def map_from_document(doc: MapDocument, rank_tol: Optional[float] = None) -> SignedOSR:
    """Any map document as a signed OSR; Choi and superoperator payloads go
    through the canonical spectral decomposition."""
    if doc.kind == "osr":
        return osr_from_document(doc)
    if doc.kind == "choi":
        return osr_from_choi(choi_from_document(doc), rank_tol=rank_tol)
    if doc.kind == "superop":
        return osr_from_choi(choi_from_superop(superop_from_document(doc)), rank_tol=rank_tol)
    raise ShapeError(f"A {doc.kind} document does not describe a map")


def analyze_document(doc: MapDocument, tol: Optional[float] = None, rank_tol: Optional[float] = None) -> MapReport:
    """Classify a map document.

    Choi and superoperator payloads are judged as stored, so a map that
    breaks Hermiticity preservation is reported as such instead of failing
    the Hermitian Choi construction.
    """
    if doc.kind == "osr":
        return analyze(osr_from_document(doc), tol=tol, rank_tol=rank_tol)
    if doc.kind == "choi":
        _expect(doc, "choi")
        return analyze_choi(doc.payload.to_array(), tol=tol, rank_tol=rank_tol)
    if doc.kind == "superop":
        superop = superop_from_document(doc)
        return analyze_choi(reshuffle(superop.matrix), tol=tol, rank_tol=rank_tol)
    raise ShapeError(f"A {doc.kind} document does not describe a map")
