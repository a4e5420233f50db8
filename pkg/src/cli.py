"""``qmap``: batch analysis of quantum dynamical maps stored as .qmap.json documents.

Exit codes: 0 success, 1 maps not equivalent (``equiv`` only), 2 usage error,
3 input or parse error, 4 numerical failure.
"""

import argparse
import json
import logging
import sys
from pathlib import Path
from typing import Callable, Dict, Optional, Sequence

import numpy as np

from .config import settings
from .equivalence import (
    EquivalenceResult,
    EquivalentNoWitness,
    EquivalentWithWitness,
    Metric,
    NotEquivalent,
    find_equivalence,
    random_pseudo_unitary,
    transform_osr,
)
from .errors import NotHermitian, NumericalError, QmapError, ShapeError
from .linalg import hermiticity_defect
from .log_level import LogLevel
from .mapio import (
    MapDocument,
    MatrixObject,
    WitnessDocument,
    analyze_document,
    choi_from_document,
    document_from_choi,
    document_from_matrix,
    document_from_osr,
    document_from_superop,
    dumps_map,
    dumps_witness,
    gen_fixture,
    load_map,
    loads_map,
    map_from_document,
    matrix_from_document,
    osr_from_document,
    save_map,
    save_witness,
    superop_from_document,
)
from .maps import (
    apply_osr,
    canonical_order,
    choi_from_osr,
    choi_from_superop,
    cp_difference,
    osr_from_choi,
    superop_from_choi,
    superop_from_osr,
)
from .utils import setup_logging

logger = logging.getLogger(__name__)

EXIT_OK = 0
EXIT_NOT_EQUIVALENT = 1
EXIT_USAGE = 2
EXIT_INPUT = 3
EXIT_NUMERICAL = 4

def _read(path: str) -> MapDocument:
    if path == "-":
        return loads_map(sys.stdin.read())
    return load_map(Path(path))


def _emit(doc: MapDocument, out: Optional[Path]) -> None:
    if out is None:
        sys.stdout.write(dumps_map(doc))
    else:
        save_map(doc, out)
        logger.progress(f"Wrote {doc.kind} document to {out}")


def _fmt(x: float) -> str:
    return f"{x:.6g}"


def _flag(value: bool) -> str:
    return "true" if value else "false"


def cmd_analyze(args: argparse.Namespace) -> int:
    report = analyze_document(_read(args.input), tol=args.tol)
    signature = report.signature
    if args.format == "json":
        payload = {
            'dim': report.dim,
            'hermiticity_preserving': report.hermiticity_preserving,
            'completely_positive': report.completely_positive,
            'trace_preserving': report.trace_preserving,
            'signature': None if signature is None else {'p': signature.p, 'q': signature.q, 'z': signature.z},
            'choi_eigenvalues': list(report.choi_eigenvalues),
        }
        print(json.dumps(payload, indent=2))
        return EXIT_OK

    print(f"dimension: {report.dim}")
    print(f"hermiticity preserving: {_flag(report.hermiticity_preserving)}")
    print(f"completely positive: {_flag(report.completely_positive)}")
    print(f"trace preserving: {_flag(report.trace_preserving)}")
    if signature is None:
        print("signature: undefined")
        print("choi eigenvalues: undefined")
    else:
        print(f"signature: {signature.as_tuple()}")
        print(f"choi eigenvalues: {' '.join(_fmt(x) for x in report.choi_eigenvalues)}")
    return EXIT_OK


def _convert(doc: MapDocument, to: str) -> MapDocument:
    meta = doc.meta
    if to == doc.kind:
        return doc
    if to == "osr":
        return document_from_osr(map_from_document(doc), meta=meta)
    if doc.kind == "osr":
        osr = osr_from_document(doc)
        if to == "choi":
            return document_from_choi(choi_from_osr(osr), meta=meta)
        return document_from_superop(superop_from_osr(osr), meta=meta)
    if doc.kind == "superop":
        return document_from_choi(choi_from_superop(superop_from_document(doc)), meta=meta)
    if doc.kind == "choi":
        return document_from_superop(superop_from_choi(choi_from_document(doc)), meta=meta)
    raise ShapeError(f"A {doc.kind} document does not describe a map")


def cmd_convert(args: argparse.Namespace) -> int:
    _emit(_convert(_read(args.input), args.to), args.out)
    return EXIT_OK


def cmd_extract(args: argparse.Namespace) -> int:
    doc = _read(args.input)
    osr = map_from_document(doc)
    canonical = osr_from_choi(choi_from_osr(osr))
    logger.progress(f"Canonical OSR: {canonical.plus_count} positive, {canonical.minus_count} negative terms")
    _emit(document_from_osr(canonical, meta=doc.meta), args.out)
    return EXIT_OK


def cmd_apply(args: argparse.Namespace) -> int:
    osr = map_from_document(_read(args.map))
    rho = matrix_from_document(_read(args.rho))
    defect = hermiticity_defect(rho)
    if defect > settings.herm_tol:
        raise NotHermitian(f"Input matrix Hermiticity defect {defect:.3e} exceeds {settings.herm_tol:.1e}")
    result = apply_osr(osr, rho)
    trace = complex(np.trace(result))
    logger.progress(f"Trace of output: {_fmt(trace.real)} (imaginary part {_fmt(trace.imag)})")
    meta = {'trace': repr(trace.real), 'trace_imag': repr(trace.imag)}
    _emit(document_from_matrix(result, meta=meta), args.out)
    return EXIT_OK


def _witness_document(result: EquivalenceResult) -> WitnessDocument:
    verdict = result.verdict
    if isinstance(verdict, NotEquivalent):
        return WitnessDocument(verdict="not_equivalent", choi_distance=verdict.choi_distance,
                               diagnostics=result.diagnostics)
    if isinstance(verdict, EquivalentWithWitness):
        return WitnessDocument(
            verdict="equivalent",
            metric={'p': verdict.metric.p, 'q': verdict.metric.q},
            padded_size=verdict.padded_size,
            u=MatrixObject.from_array(verdict.u),
            diagnostics=result.diagnostics,
        )
    return WitnessDocument(verdict="equivalent_no_witness", reason=verdict.reason.value,
                           diagnostics=result.diagnostics)


def cmd_equiv(args: argparse.Namespace) -> int:
    osr_c = map_from_document(_read(args.first))
    osr_d = map_from_document(_read(args.second))
    result = find_equivalence(osr_c, osr_d, tol=args.tol)
    witness = _witness_document(result)
    if args.out is not None:
        save_witness(witness, args.out)
        logger.progress(f"Wrote witness document to {args.out}")

    verdict = result.verdict
    if args.format == "json":
        sys.stdout.write(dumps_witness(witness))
    elif isinstance(verdict, NotEquivalent):
        print(f"not equivalent, Choi distance {verdict.choi_distance:.10g}")
    elif isinstance(verdict, EquivalentWithWitness):
        print("equivalent")
        print(f"metric: ({verdict.metric.p}, {verdict.metric.q}), padded size {verdict.padded_size}")
    else:
        print("equivalent")

    if isinstance(verdict, NotEquivalent):
        return EXIT_NOT_EQUIVALENT
    if isinstance(verdict, EquivalentNoWitness):
        # printed regardless of --log-level
        print(f"qmap equiv: warning: equivalent maps but no witness ({verdict.reason.value})", file=sys.stderr)
    return EXIT_OK


def cmd_transform(args: argparse.Namespace) -> int:
    doc = _read(args.input)
    osr = canonical_order(map_from_document(doc))
    metric = Metric.of(osr)
    if args.unitary is not None:
        u = matrix_from_document(_read(args.unitary))
    else:
        u = random_pseudo_unitary(metric, seed=args.seed, scale=args.scale)
    _emit(document_from_osr(transform_osr(osr, u, metric), meta=doc.meta), args.out)
    return EXIT_OK


def cmd_decompose(args: argparse.Namespace) -> int:
    doc = _read(args.input)
    plus, minus = cp_difference(map_from_document(doc))
    plus_doc = document_from_osr(plus, meta=doc.meta)
    minus_doc = document_from_osr(minus, meta=doc.meta)
    if args.out is None:
        payload = {
            'plus': json.loads(dumps_map(plus_doc)),
            'minus': json.loads(dumps_map(minus_doc)),
        }
        print(json.dumps(payload, indent=2, ensure_ascii=False))
        return EXIT_OK

    stem = str(args.out)
    for part, part_doc in (("plus", plus_doc), ("minus", minus_doc)):
        _emit(part_doc, Path(f"{stem}.{part}.qmap.json"))
    return EXIT_OK


def cmd_gen(args: argparse.Namespace) -> int:
    params = {
        key: value
        for key, value in (('d', args.d), ('p', args.p), ('q', args.q), ('gamma', args.gamma), ('seed', args.seed))
        if value is not None
    }
    _emit(gen_fixture(args.name, **params), args.out)
    return EXIT_OK


COMMANDS: Dict[str, Callable[[argparse.Namespace], int]] = {
    'analyze': cmd_analyze,
    'convert': cmd_convert,
    'extract': cmd_extract,
    'apply': cmd_apply,
    'equiv': cmd_equiv,
    'transform': cmd_transform,
    'decompose': cmd_decompose,
    'gen': cmd_gen,
}


def _scale(text: str) -> float:
    value = float(text)
    limit = settings.random_scale_limit
    if not 0 <= value <= limit:
        raise argparse.ArgumentTypeError(f"scale must lie in [0, {limit}], got {value}")
    return value


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--tol", type=float, default=None,
                        help=f"Numerical tolerance (default {settings.predicate_tol:g} for analyze, "
                             f"{settings.equivalence_tol:g} for equiv)")
    common.add_argument("--format", choices=["text", "json"], default="text", help="Output format")
    common.add_argument("--out", type=Path, default=None, help="Output path; standard output when omitted")
    common.add_argument("--log-level", type=LogLevel, choices=list(LogLevel), default=settings.log_level,
                        help="Logging verbosity on standard error")
    common.add_argument("--log-dir", type=Path, default=settings.logs_dir, help="Directory for a log file")

    parser = argparse.ArgumentParser(prog="qmap", description="Analyse, convert and compare quantum dynamical maps.")
    sub = parser.add_subparsers(dest="command", required=True, metavar="COMMAND")

    p = sub.add_parser("analyze", parents=[common], help="Report HP, CP, TP, signature and Choi eigenvalues")
    p.add_argument("input", help="Map document, or - for standard input")

    p = sub.add_parser("convert", parents=[common], help="Rewrite a map in another representation")
    p.add_argument("input")
    p.add_argument("--to", choices=["superop", "choi", "osr"], required=True)

    p = sub.add_parser("extract", parents=[common], help="Canonical OSR from the Choi spectrum")
    p.add_argument("input")

    p = sub.add_parser("apply", parents=[common], help="Apply a map to a Hermitian matrix")
    p.add_argument("map")
    p.add_argument("rho", help="Matrix document holding the input")

    p = sub.add_parser("equiv", parents=[common], help="Decide equivalence of two maps and build a witness")
    p.add_argument("first")
    p.add_argument("second")

    p = sub.add_parser("transform", parents=[common], help="Mix OSR terms by a pseudo-unitary matrix")
    p.add_argument("input")
    group = p.add_mutually_exclusive_group()
    group.add_argument("--unitary", help="Matrix document holding the transformation")
    group.add_argument("--seed", type=int, default=None, help="Seed for a random transformation")
    p.add_argument("--scale", type=_scale, default=1.0, help="Generator scale for the random transformation")

    p = sub.add_parser("decompose", parents=[common], help="Split into the difference of two CP maps")
    p.add_argument("input")

    p = sub.add_parser("gen", parents=[common], help="Write a named fixture map")
    p.add_argument("name")
    p.add_argument("--d", type=int, default=None)
    p.add_argument("--p", type=float, default=None)
    p.add_argument("--q", type=int, default=None)
    p.add_argument("--gamma", type=float, default=None)
    p.add_argument("--seed", type=int, default=None)

    return parser


def run(argv: Optional[Sequence[str]] = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        return EXIT_OK if e.code == 0 else EXIT_USAGE

    setup_logging(args.log_dir, args.log_level)

    try:
        return COMMANDS[args.command](args)
    except NumericalError as e:
        print(f"qmap {args.command}: numerical failure: {e}", file=sys.stderr)
        return EXIT_NUMERICAL
    except (QmapError, OSError, ValueError) as e:
        print(f"qmap {args.command}: {e}", file=sys.stderr)
        return EXIT_INPUT
