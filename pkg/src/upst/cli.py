"""Batch front-end: construct fixture graphs, certify transfer, dump timing.

Subcommands: generate | verify | times.  Exit codes: 0 all requested checks
pass, 1 a check failed, 2 input error.  UPST_SCAN_STEPS overrides the default
grid density of the time scan.
"""

from __future__ import annotations

import argparse
import csv
import json
import os
import sys
from dataclasses import dataclass
from fractions import Fraction
from typing import Optional, Sequence, TextIO

import numpy as np

from .constructors import (
    NoncirculantParams,
    circulant_from_c,
    nondense_circulant,
    noncirculant_graph,
)
from .graph import (
    HermitianGraph,
    circulant_to_graph,
    is_connected_circulant,
    validate_hermitian,
    with_diagonal_shift,
)
from .serialize import (
    graph_from_json,
    graph_to_json,
    matrix_from_json,
    report_to_json,
)
from .spectra import (
    EigenSystem,
    circulant_eigensystem,
    is_type_ii,
    numerical_eigensystem,
)
from .walk import TransferReport, denseness_check, verify_upst

CHECK_NAMES = ("upst", "spacing", "dense", "typeii", "connectivity")
FAMILIES = ("circulant_c", "nondense", "noncirculant")
MATRIX_MATCH_TOL = 1e-12
FLOAT_FMT = "%.15g"


class InputError(ValueError):
    """Problems with descriptors, files, or flag values: exit code 2."""


@dataclass(frozen=True)
class JobSpec:
    """One CLI job: where the graph comes from, what to do, where output goes."""

    source: str
    checks: tuple[str, ...] = ("upst",)
    output_format: str = "json"
    out: Optional[str] = None
    shift: Optional[Fraction] = None
    scan_steps: Optional[int] = None

    def __post_init__(self) -> None:
        if not self.checks:
            raise InputError("at least one check must be requested")
        for name in self.checks:
            if name not in CHECK_NAMES:
                raise InputError(
                    "unknown check %r (choose from %s)" % (name, ", ".join(CHECK_NAMES))
                )
        if self.output_format not in ("json", "table", "csv"):
            raise InputError("unknown output format %r" % (self.output_format,))


def _parse_fraction(text: str) -> Fraction:
    try:
        return Fraction(text)
    except (ValueError, ZeroDivisionError) as exc:
        raise InputError("not a rational number: %r" % (text,)) from exc


def _scan_steps_from_env() -> Optional[int]:
    raw = os.environ.get("UPST_SCAN_STEPS")
    if raw is None:
        return None
    try:
        steps = int(raw)
    except ValueError as exc:
        raise InputError("UPST_SCAN_STEPS must be an integer, got %r" % (raw,)) from exc
    if steps < 10:
        raise InputError("UPST_SCAN_STEPS must be at least 10, got %d" % steps)
    return steps


def _parse_descriptor(source: str) -> dict:
    """Descriptor as inline JSON (starts with '{') or a path to a JSON file."""
    text = source.strip()
    if not text.startswith("{"):
        try:
            with open(source, "r", encoding="utf-8") as fh:
                text = fh.read()
        except OSError as exc:
            raise InputError("cannot read descriptor file %r: %s" % (source, exc)) from exc
    try:
        desc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise InputError("descriptor is not valid JSON: %s" % (exc,)) from exc
    if not isinstance(desc, dict):
        raise InputError("descriptor must be a JSON object")
    return desc


def _require_int(desc: dict, key: str) -> int:
    if key not in desc:
        raise InputError("descriptor is missing %r" % (key,))
    value = desc[key]
    if isinstance(value, bool) or not isinstance(value, int):
        raise InputError("descriptor field %r must be an integer, got %r" % (key, value))
    return value


def build_from_descriptor(
    desc: dict, shift: Optional[Fraction] = None
) -> tuple[HermitianGraph, EigenSystem, dict]:
    """Instantiate a graph family from its JSON descriptor.

    Returns (graph, eigensystem, descriptor-with-shift-recorded).  Circulant
    shifts stay exact in the spec; the non-circulant family shifts the float
    matrix and the exact eigenvalue list.
    """
    family = desc.get("family")
    if family not in FAMILIES:
        raise InputError(
            "unknown family %r (choose from %s)" % (family, ", ".join(FAMILIES))
        )
    try:
        if family == "circulant_c":
            n = _require_int(desc, "n")
            c_raw = desc.get("c")
            if not isinstance(c_raw, list) or len(c_raw) != n:
                raise InputError("field 'c' must be a list of %d integers" % n)
            c = []
            for entry in c_raw:
                if isinstance(entry, bool) or not isinstance(entry, int):
                    raise InputError("entries of 'c' must be integers, got %r" % (entry,))
                c.append(entry)
            spec = circulant_from_c(n, c)
        elif family == "nondense":
            spec = nondense_circulant(_require_int(desc, "p"), _require_int(desc, "q"))
        else:
            params = NoncirculantParams(
                _require_int(desc, "a"), _require_int(desc, "b"), _require_int(desc, "beta")
            )
            graph, es = noncirculant_graph(params)
            if shift is not None:
                value = float(shift)
                adjacency = graph.adjacency + value * np.eye(params.n)
                graph = HermitianGraph(n=params.n, adjacency=adjacency)
                es = EigenSystem(
                    n=params.n,
                    X=es.X,
                    lambdas=es.lambdas + value,
                    exact_lambdas=None
                    if es.exact_lambdas is None
                    else tuple(v + shift for v in es.exact_lambdas),
                )
            out_desc = dict(desc)
            if shift is not None:
                out_desc["shift"] = str(shift)
            return graph, es, out_desc
    except ValueError as exc:
        raise InputError(str(exc)) from exc
    if shift is not None:
        spec = with_diagonal_shift(spec, shift)
    graph = circulant_to_graph(spec)
    es = circulant_eigensystem(spec)
    out_desc = dict(desc)
    if shift is not None:
        out_desc["shift"] = str(shift)
    return graph, es, out_desc


def load_input(path: str) -> tuple[HermitianGraph, EigenSystem, Optional[dict]]:
    """Read a graph file and choose the best available eigensystem.

    Accepts either a graph bundle or a bare matrix (nested [re, im] rows).
    Bundles with circulant data are cross-checked: the stored matrix must
    match the exact embedding to 1e-12.  A stored eigensystem must actually
    diagonalize the matrix.  Matrix-only inputs get a dense numerical solve.
    """
    try:
        with open(path, "r", encoding="utf-8") as fh:
            data = json.load(fh)
    except OSError as exc:
        raise InputError("cannot read %r: %s" % (path, exc)) from exc
    except json.JSONDecodeError as exc:
        raise InputError("%r is not valid JSON: %s" % (path, exc)) from exc

    try:
        if isinstance(data, list):
            matrix = matrix_from_json(data)
            graph = validate_hermitian(matrix)
            return graph, numerical_eigensystem(graph.adjacency), None
        graph, stored_es, desc = graph_from_json(data)
        validate_hermitian(graph.adjacency)
    except ValueError as exc:
        raise InputError(str(exc)) from exc

    if graph.spec is not None:
        rebuilt = circulant_to_graph(graph.spec)
        deviation = float(np.max(np.abs(rebuilt.adjacency - graph.adjacency)))
        if deviation > MATRIX_MATCH_TOL:
            raise InputError(
                "matrix does not match its circulant data (max deviation %.3e)" % deviation
            )
        return graph, circulant_eigensystem(graph.spec), desc
    if stored_es is not None:
        residual = float(
            np.max(
                np.abs(
                    graph.adjacency @ stored_es.X - stored_es.X * stored_es.lambdas
                )
            )
        )
        scale = max(1.0, float(np.max(np.abs(stored_es.lambdas))))
        if residual > 1e-8 * scale:
            raise InputError(
                "stored eigensystem does not diagonalize the matrix (residual %.3e)" % residual
            )
        return graph, stored_es, desc
    return graph, numerical_eigensystem(graph.adjacency), desc


def _run_checks(
    graph: HermitianGraph, es: EigenSystem, checks: Sequence[str], scan_steps: Optional[int]
) -> tuple[dict, TransferReport]:
    needs_report = any(name in ("upst", "spacing") for name in checks)
    for name in checks:
        if name in ("dense", "connectivity") and graph.spec is None:
            raise InputError(
                "check %r needs exact circulant data, which this input lacks" % name
            )
    report = (
        verify_upst(graph, es, scan_steps=scan_steps)
        if needs_report
        else TransferReport(
            n=graph.n,
            min_times=np.full((graph.n, graph.n), np.nan),
            phases=np.zeros((graph.n, graph.n), dtype=complex),
        )
    )
    results: dict = {}
    for name in checks:
        if name == "upst":
            results[name] = report.upst is True
        elif name == "spacing":
            results[name] = report.circulant_timing is True
        elif name == "dense":
            results[name] = denseness_check(graph.spec)[0]
        elif name == "typeii":
            results[name] = is_type_ii(es.X)
        elif name == "connectivity":
            results[name] = is_connected_circulant(graph.spec)
    return results, report


def _open_out(path: Optional[str]) -> TextIO:
    return open(path, "w", encoding="utf-8") if path else sys.stdout


def _emit(path: Optional[str], text: str) -> None:
    fh = _open_out(path)
    try:
        fh.write(text)
        if not text.endswith("\n"):
            fh.write("\n")
    finally:
        if fh is not sys.stdout:
            fh.close()


def cmd_generate(job: JobSpec) -> int:
    desc = _parse_descriptor(job.source)
    graph, es, out_desc = build_from_descriptor(desc, job.shift)
    document = graph_to_json(graph, es, out_desc)
    _emit(job.out, json.dumps(document, indent=2))
    return 0


def _format_verdict_table(results: dict, report: TransferReport) -> str:
    lines = ["check         verdict", "-----         -------"]
    for name, ok in results.items():
        lines.append("%-13s %s" % (name, "pass" if ok else "FAIL"))
    if report.reasons:
        lines.append("reasons: " + ", ".join(report.reasons))
    if report.analytic_times is not None:
        times = "  ".join(FLOAT_FMT % t for t in report.analytic_times)
        lines.append("analytic transfer times from vertex 0: " + times)
    if report.return_period is not None:
        lines.append("return period: " + FLOAT_FMT % report.return_period)
    return "\n".join(lines)


def cmd_verify(job: JobSpec) -> int:
    graph, es, _ = load_input(job.source)
    results, report = _run_checks(graph, es, job.checks, job.scan_steps)
    all_pass = all(results.values())
    if job.output_format == "table":
        _emit(job.out, _format_verdict_table(results, report))
    else:
        document = {
            "input": job.source,
            "checks": results,
            "pass": all_pass,
            "report": report_to_json(report),
        }
        _emit(job.out, json.dumps(document, indent=2))
    return 0 if all_pass else 1


def cmd_times(job: JobSpec) -> int:
    graph, es, _ = load_input(job.source)
    report = verify_upst(graph, es, scan_steps=job.scan_steps)
    if report.upst is not True:
        print(
            "input does not certify universal perfect state transfer: %s"
            % (", ".join(report.reasons) or "unknown"),
            file=sys.stderr,
        )
        return 1
    n = report.n
    rows = []
    for u in range(n):
        for v in range(n):
            phase = report.phases[u, v]
            rows.append(
                [
                    str(u),
                    str(v),
                    FLOAT_FMT % report.min_times[u, v],
                    FLOAT_FMT % phase.real,
                    FLOAT_FMT % phase.imag,
                    FLOAT_FMT % report.analytic_times[v] if u == 0 else "",
                ]
            )
    header = ["u", "v", "t_uv", "phase_re", "phase_im", "analytic_t"]
    if job.output_format == "table":
        widths = [max(len(header[i]), max(len(r[i]) for r in rows)) for i in range(6)]
        lines = ["  ".join(header[i].ljust(widths[i]) for i in range(6))]
        for r in rows:
            lines.append("  ".join(r[i].ljust(widths[i]) for i in range(6)))
        _emit(job.out, "\n".join(lines))
    else:
        fh = _open_out(job.out)
        try:
            writer = csv.writer(fh, lineterminator="\n")
            writer.writerow(header)
            writer.writerows(rows)
        finally:
            if fh is not sys.stdout:
                fh.close()
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="upst",
        description="Construct graphs with universal perfect state transfer and certify them.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    gen = sub.add_parser("generate", help="build a graph from a JSON family descriptor")
    gen.add_argument(
        "descriptor",
        help='inline JSON like {"family":"nondense","p":2,"q":3} or a path to a JSON file',
    )
    gen.add_argument("--out", help="output path (default stdout)")
    gen.add_argument(
        "--shift",
        help="rational diagonal shift alpha added as alpha*I (e.g. 5/2)",
    )

    ver = sub.add_parser("verify", help="run certification checks on a graph file")
    ver.add_argument("input", help="graph file (bundle or bare matrix JSON)")
    ver.add_argument(
        "--checks",
        default="upst",
        help="comma-separated subset of %s (default: upst)" % (",".join(CHECK_NAMES),),
    )
    ver.add_argument("--out", help="report path (default stdout)")
    ver.add_argument(
        "--format", choices=("json", "table"), default="json", dest="output_format"
    )

    tim = sub.add_parser("times", help="dump the per-pair transfer timing table")
    tim.add_argument("input", help="graph file (bundle or bare matrix JSON)")
    tim.add_argument("--out", help="CSV path (default stdout)")
    tim.add_argument(
        "--format", choices=("csv", "table"), default="csv", dest="output_format"
    )

    return parser


def main(argv: Optional[Sequence[str]] = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        scan_steps = _scan_steps_from_env()
        if args.command == "generate":
            job = JobSpec(
                source=args.descriptor,
                out=args.out,
                shift=None if args.shift is None else _parse_fraction(args.shift),
                scan_steps=scan_steps,
            )
            return cmd_generate(job)
        if args.command == "verify":
            checks = tuple(s.strip() for s in args.checks.split(",") if s.strip())
            job = JobSpec(
                source=args.input,
                checks=checks,
                output_format=args.output_format,
                out=args.out,
                scan_steps=scan_steps,
            )
            return cmd_verify(job)
        job = JobSpec(
            source=args.input,
            output_format=args.output_format,
            out=args.out,
            scan_steps=scan_steps,
        )
        return cmd_times(job)
    except InputError as exc:
        print("error: %s" % (exc,), file=sys.stderr)
        return 2
    except (ValueError, ArithmeticError, OSError) as exc:
        print("error: %s" % (exc,), file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
