#!/usr/bin/env python3
# -*- coding: utf-8 -*-

"""
Report serialization (JSON and CSV) and configuration files.

Output carries no timestamps or host details: the same report always
serializes to the same bytes.
"""

import csv
import io
import json
import logging
import os
import sys
from typing import Any, Dict, Iterable, List, Optional, Union

from core.bounds import BoundKind, BoundReport, BoundValue
from core.errors import ConfigError, OutputError, ParseError
from core.linalg import DEFAULT_CONFIG, ComplexMatrix, EngineConfig
from core.numrange import RangeSample
from core.polyzero import Polynomial, ZeroBoundReport

# Configure logger for this module
logger = logging.getLogger('numradius.storage')

Report = Union[BoundReport, ZeroBoundReport]

CSV_HEADER = ("theta", "lambda_max", "re", "im")


def _pair(z: complex) -> List[float]:
    return [float(z.real), float(z.imag)]


def _complex(pair: Any) -> complex:
    if not (isinstance(pair, (list, tuple)) and len(pair) == 2):
        raise ParseError(f"expected a [re, im] pair, got {pair!r}")
    return complex(float(pair[0]), float(pair[1]))


def matrix_to_dict(matrix: ComplexMatrix) -> Dict[str, Any]:
    """The matrix file layout: row-major [re, im] entries"""
    return {
        "rows": matrix.rows,
        "cols": matrix.cols,
        "entries": [_pair(z) for z in matrix.entries],
    }


def _bound_to_dict(bound: BoundValue) -> Dict[str, Any]:
    return {
        "name": bound.name,
        "kind": bound.kind.value,
        "value": bound.value,
        "inputs": bound.inputs_digest,
    }


def _bound_from_dict(data: Dict[str, Any]) -> BoundValue:
    try:
        return BoundValue(name=data["name"], value=float(data["value"]),
                          kind=BoundKind(data["kind"]), inputs_digest=data.get("inputs", ""))
    except (KeyError, TypeError, ValueError) as e:
        raise ParseError(f"malformed bound entry {data!r}: {e}") from e


def report_to_dict(report: Report) -> Dict[str, Any]:
    """
    Plain-data form of a report.

    Polynomial reports carry "roots" and "max_root_modulus"; matrix reports carry
    "rho", the Gelfand estimate of the spectral radius.
    """
    data: Dict[str, Any] = {}
    if isinstance(report, ZeroBoundReport):
        data["input"] = {
            "type": "polynomial",
            "coefficients": [_pair(c) for c in report.polynomial.descending()],
        }
        data["bounds"] = [_bound_to_dict(b) for b in report.bounds]
        data["w"] = report.numerical_radius
        data["roots"] = [_pair(z) for z in report.roots]
        data["max_root_modulus"] = report.max_root_modulus
    else:
        data["input"] = {"type": "matrix", **matrix_to_dict(report.subject)}
        data["bounds"] = [_bound_to_dict(b) for b in report.bounds]
        data["w"] = report.numerical_radius
        data["rho"] = report.spectral_radius
        data["metadata"] = report.metadata
    data["warnings"] = list(report.warnings)
    return data


def report_to_json(report: Report) -> str:
    return json.dumps(report_to_dict(report), indent=2) + "\n"


def report_from_json(text: str) -> Report:
    """
    Rebuild a report from its JSON form.

    Floats are written with repr precision, so bound values survive the round
    trip bit for bit.

    Raises:
        ParseError: Not JSON, or not a report this module wrote
    """
    try:
        data = json.loads(text)
    except json.JSONDecodeError as e:
        raise ParseError(f"report is not valid JSON: {e.msg}", e.pos) from e
    if not isinstance(data, dict) or "input" not in data or "bounds" not in data:
        raise ParseError("report JSON needs 'input' and 'bounds' fields")

    source = data["input"]
    bounds = [_bound_from_dict(b) for b in data["bounds"]]
    warnings = list(data.get("warnings", []))
    kind = source.get("type")
    if kind == "polynomial":
        polynomial = Polynomial.from_descending([_complex(c) for c in source["coefficients"]])
        return ZeroBoundReport(
            polynomial=polynomial,
            bounds=bounds,
            roots=[_complex(z) for z in data.get("roots", [])],
            max_root_modulus=float(data["max_root_modulus"]),
            numerical_radius=float(data["w"]),
            warnings=warnings,
        )
    if kind == "matrix":
        subject = ComplexMatrix(int(source["rows"]), int(source["cols"]),
                                [_complex(z) for z in source["entries"]])
        return BoundReport(
            subject=subject,
            bounds=bounds,
            numerical_radius=float(data["w"]),
            spectral_radius=float(data["rho"]),
            metadata=dict(data.get("metadata", {})),
            warnings=warnings,
        )
    raise ParseError(f"unknown report input type {kind!r}")


def range_samples_to_csv(samples: Iterable[RangeSample]) -> str:
    """CSV with header theta,lambda_max,re,im; one row per boundary sample"""
    buffer = io.StringIO()
    writer = csv.writer(buffer, lineterminator="\n")
    writer.writerow(CSV_HEADER)
    for s in samples:
        writer.writerow([repr(s.theta), repr(s.lambda_max),
                         repr(s.boundary_point.real), repr(s.boundary_point.imag)])
    return buffer.getvalue()


def bounds_to_csv(bounds: Iterable[BoundValue]) -> str:
    """CSV with header name,kind,value"""
    buffer = io.StringIO()
    writer = csv.writer(buffer, lineterminator="\n")
    writer.writerow(["name", "kind", "value"])
    for b in bounds:
        writer.writerow([b.name, b.kind.value, repr(b.value)])
    return buffer.getvalue()


def write_report(text: str, file_path: Optional[str] = None) -> None:
    """
    Write rendered output to a file, creating parent directories, or to stdout.

    Args:
        text: Rendered output
        file_path: Destination; None writes to stdout

    Raises:
        OutputError: The destination or its parent directories cannot be written
    """
    if file_path is None:
        sys.stdout.write(text)
        return
    directory = os.path.dirname(file_path)
    try:
        if directory:
            os.makedirs(directory, exist_ok=True)
        with open(file_path, 'w', encoding='utf-8', newline='') as f:
            f.write(text)
    except OSError as e:
        raise OutputError(f"cannot write {file_path}: {e.strerror or e}") from e
    logger.debug(f"Wrote {len(text)} characters to {file_path}")


def load_config(file_path: str, base: EngineConfig = DEFAULT_CONFIG) -> EngineConfig:
    """
    Apply a JSON object of EngineConfig fields on top of base.

    Raises:
        ConfigError: Unreadable file, malformed JSON, unknown or invalid fields
    """
    try:
        with open(file_path, 'r', encoding='utf-8') as f:
            data = json.load(f)
    except OSError as e:
        raise ConfigError(f"cannot read config file {file_path}: {e.strerror}") from e
    except json.JSONDecodeError as e:
        raise ConfigError(f"config file {file_path} is not valid JSON: {e.msg} (line {e.lineno})") from e
    if not isinstance(data, dict):
        raise ConfigError(f"config file {file_path} must hold a JSON object")
    logger.debug(f"Loaded config overrides from {file_path}: {sorted(data)}")
    try:
        return base.with_overrides(**data)
    except TypeError as e:
        raise ConfigError(f"config file {file_path} has a field of the wrong type: {e}") from e
