"""JSON persistence for graphs, eigensystems, and certification reports.

Complex numbers are stored as [re, im] pairs; matrices as row-major nested
lists of those pairs.  Graph files carry a format tag plus optional exact
circulant data, the eigensystem used to build the graph, and the generator
descriptor, so a verifier can cross-check the matrix against its recipe.
"""

from __future__ import annotations

import json
import math
from fractions import Fraction
from typing import Optional

import numpy as np

from .graph import CirculantSpec, HermitianGraph
from .spectra import EigenSystem
from .walk import TransferReport

GRAPH_FORMAT = "upst-graph"


def complex_to_pair(z: complex) -> list[float]:
    return [float(z.real), float(z.imag)]


def pair_to_complex(pair) -> complex:
    if not isinstance(pair, (list, tuple)) or len(pair) != 2:
        raise ValueError("complex entries must be [re, im] pairs, got %r" % (pair,))
    return complex(float(pair[0]), float(pair[1]))


def matrix_to_json(matrix: np.ndarray) -> list[list[list[float]]]:
    m = np.asarray(matrix, dtype=complex)
    return [[complex_to_pair(z) for z in row] for row in m]


def matrix_from_json(data) -> np.ndarray:
    if not isinstance(data, list) or not data:
        raise ValueError("matrix must be a non-empty list of rows")
    rows = [[pair_to_complex(z) for z in row] for row in data]
    width = len(rows[0])
    if any(len(row) != width for row in rows):
        raise ValueError("matrix rows have inconsistent lengths")
    return np.array(rows, dtype=complex)


def _fraction_to_json(f: Fraction) -> list[int]:
    return [f.numerator, f.denominator]


def _fraction_from_json(pair) -> Fraction:
    return Fraction(int(pair[0]), int(pair[1]))


def eigensystem_to_json(es: EigenSystem) -> dict:
    return {
        "X": matrix_to_json(es.X),
        "lambdas": [float(v) for v in es.lambdas],
        "exact_lambdas": None
        if es.exact_lambdas is None
        else [_fraction_to_json(v) for v in es.exact_lambdas],
    }


def eigensystem_from_json(data: dict) -> EigenSystem:
    x = matrix_from_json(data["X"])
    lambdas = np.array([float(v) for v in data["lambdas"]], dtype=float)
    exact = data.get("exact_lambdas")
    return EigenSystem(
        n=x.shape[0],
        X=x,
        lambdas=lambdas,
        exact_lambdas=None if exact is None else tuple(_fraction_from_json(v) for v in exact),
    )


def graph_to_json(
    graph: HermitianGraph,
    eigensystem: Optional[EigenSystem] = None,
    descriptor: Optional[dict] = None,
) -> dict:
    return {
        "format": GRAPH_FORMAT,
        "n": graph.n,
        "matrix": matrix_to_json(graph.adjacency),
        "circulant": None if graph.spec is None else graph.spec.to_json_dict(),
        "eigensystem": None if eigensystem is None else eigensystem_to_json(eigensystem),
        "descriptor": descriptor,
    }


def graph_from_json(data: dict) -> tuple[HermitianGraph, Optional[EigenSystem], Optional[dict]]:
    """Rebuild (graph, eigensystem, descriptor) from a graph dict.

    errors: ValueError on a missing/foreign format tag or malformed fields.
    """
    if not isinstance(data, dict):
        raise ValueError("graph file must contain a JSON object")
    if data.get("format") != GRAPH_FORMAT:
        raise ValueError(
            "unrecognized graph format %r (expected %r)" % (data.get("format"), GRAPH_FORMAT)
        )
    try:
        n = int(data["n"])
        matrix = matrix_from_json(data["matrix"])
    except KeyError as exc:
        raise ValueError("graph file is missing field %s" % (exc,)) from exc
    if matrix.shape != (n, n):
        raise ValueError("matrix shape %s does not match n = %d" % (matrix.shape, n))
    spec_data = data.get("circulant")
    spec = None if spec_data is None else CirculantSpec.from_json_dict(spec_data)
    if spec is not None and spec.n != n:
        raise ValueError("circulant order %d does not match n = %d" % (spec.n, n))
    graph = HermitianGraph(n=n, adjacency=matrix, spec=spec)
    es_data = data.get("eigensystem")
    es = None if es_data is None else eigensystem_from_json(es_data)
    if es is not None and es.n != n:
        raise ValueError("eigensystem order %d does not match n = %d" % (es.n, n))
    return graph, es, data.get("descriptor")


def _float_or_none(x: float) -> Optional[float]:
    return None if (x is None or not math.isfinite(x)) else float(x)


def report_to_json(report: TransferReport) -> dict:
    """TransferReport as a JSON-safe dict; NaN transfer times become null."""
    return {
        "n": report.n,
        "upst": report.upst,
        "circulant_timing": report.circulant_timing,
        "dense": report.dense,
        "reasons": list(report.reasons),
        "return_period": _float_or_none(report.return_period),
        "literal_phase_equality": report.literal_phase_equality,
        "spacing_order": None if report.spacing_order is None else list(report.spacing_order),
        "analytic_times": None
        if report.analytic_times is None
        else [float(t) for t in report.analytic_times],
        "min_times": [[_float_or_none(t) for t in row] for row in report.min_times],
        "phases": matrix_to_json(report.phases),
    }


def save_graph(
    path: str,
    graph: HermitianGraph,
    eigensystem: Optional[EigenSystem] = None,
    descriptor: Optional[dict] = None,
) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        json.dump(graph_to_json(graph, eigensystem, descriptor), fh, indent=2)
        fh.write("\n")


def load_graph(path: str) -> tuple[HermitianGraph, Optional[EigenSystem], Optional[dict]]:
    with open(path, "r", encoding="utf-8") as fh:
        try:
            data = json.load(fh)
        except json.JSONDecodeError as exc:
            raise ValueError("not valid JSON: %s" % (exc,)) from exc
    return graph_from_json(data)
