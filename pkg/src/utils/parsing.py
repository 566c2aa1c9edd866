#!/usr/bin/env python3
# -*- coding: utf-8 -*-

"""
Parsing of user-supplied complex numbers, polynomials and matrix files.
"""

import json
import logging
import math
import re
from typing import Any, Iterator, List, Mapping, Tuple

from core.errors import ParseError, PolynomialError
from core.linalg import ComplexMatrix
from core.polyzero import Polynomial

# Configure logger for this module
logger = logging.getLogger('numradius.parsing')

_NUMBER = r'(?:\d+(?:\.\d*)?|\.\d+)(?:[eE][+-]?\d+)?'

# "a", "bi", "a+bi", "a-bi"; "i" and "-i" stand for unit imaginary parts
_COMPLEX_PATTERN = re.compile(
    rf'^(?:(?P<pure>[+-]?(?:{_NUMBER})?)[ij]'
    rf'|(?P<real>[+-]?{_NUMBER})(?:(?P<imag>[+-](?:{_NUMBER})?)[ij])?)$'
)

_TOKEN_PATTERN = re.compile(r'[^\s,]+')


def _imaginary(text: str) -> float:
    if text in ("", "+"):
        return 1.0
    if text == "-":
        return -1.0
    return float(text)


def parse_complex(text: str, position: int = 0) -> complex:
    """
    Parse one complex literal.

    Parsing is locale-independent; "." is the only decimal separator.

    Args:
        text: The literal, without surrounding whitespace
        position: Offset of the literal in the enclosing input, for error messages

    Returns:
        The parsed value

    Raises:
        ParseError: Malformed or non-finite literal
    """
    match = _COMPLEX_PATTERN.match(text)
    if not match:
        raise ParseError(f"malformed complex literal {text!r}", position)
    if match.group("pure") is not None:
        value = complex(0.0, _imaginary(match.group("pure")))
    else:
        imag = match.group("imag")
        value = complex(float(match.group("real")), _imaginary(imag) if imag is not None else 0.0)
    if not (math.isfinite(value.real) and math.isfinite(value.imag)):
        raise ParseError(f"complex literal {text!r} overflows", position)
    return value


def tokenize(text: str) -> Iterator[Tuple[str, int]]:
    """Comma- or whitespace-separated tokens with their offsets"""
    for match in _TOKEN_PATTERN.finditer(text):
        yield match.group(0), match.start()


def parse_coefficients(text: str) -> List[complex]:
    """Descending-order coefficient list, exactly as written"""
    return [parse_complex(token, position) for token, position in tokenize(text)]


def parse_polynomial(text: str) -> Polynomial:
    """
    Parse a polynomial written as its coefficients in descending degree order.

    "1 1 0 0 0 -2" is z^5 + z^4 - 2. The result is normalized to monic.

    Raises:
        ParseError: A malformed literal
        PolynomialError: Fewer than 3 coefficients or a zero leading coefficient
    """
    coefficients = parse_coefficients(text)
    if len(coefficients) < 3:
        raise PolynomialError(
            f"a polynomial of degree n >= 2 needs at least 3 coefficients, got {len(coefficients)}"
        )
    if coefficients[0] == 0:
        raise PolynomialError("leading coefficient must be nonzero")
    polynomial = Polynomial.from_descending(coefficients).monic()
    logger.debug(f"Parsed polynomial of degree {polynomial.degree}: {polynomial}")
    return polynomial


def _entry(value: Any, index: int) -> complex:
    if isinstance(value, (list, tuple)) and len(value) == 2 and all(
            isinstance(v, (int, float)) and not isinstance(v, bool) for v in value):
        return complex(float(value[0]), float(value[1]))
    if isinstance(value, (int, float)) and not isinstance(value, bool):
        return complex(float(value), 0.0)
    if isinstance(value, str):
        return parse_complex(value.strip())
    raise ParseError(f"entry {index} must be [re, im], a number or a complex literal, got {value!r}")


def matrix_from_dict(data: Mapping[str, Any]) -> ComplexMatrix:
    """
    Matrix from {"rows": n, "cols": n, "entries": [[re, im], ...]}, row-major.

    Raises:
        ParseError: Missing fields or malformed entries
        DimensionError: len(entries) != rows * cols
        InputError: Non-finite entries
    """
    if not isinstance(data, Mapping):
        raise ParseError("matrix JSON must be an object with rows, cols and entries")
    missing = [key for key in ("rows", "cols", "entries") if key not in data]
    if missing:
        raise ParseError(f"matrix JSON is missing field(s): {', '.join(missing)}")
    rows, cols, entries = data["rows"], data["cols"], data["entries"]
    if not (isinstance(rows, int) and isinstance(cols, int)):
        raise ParseError(f"rows and cols must be integers, got {rows!r} and {cols!r}")
    if not isinstance(entries, list):
        raise ParseError("entries must be a list")
    return ComplexMatrix(rows, cols, [_entry(value, i) for i, value in enumerate(entries)])


def matrix_from_json(text: str) -> ComplexMatrix:
    try:
        data = json.loads(text)
    except json.JSONDecodeError as e:
        raise ParseError(f"matrix file is not valid JSON: {e.msg}", e.pos) from e
    return matrix_from_dict(data)


def parse_matrix(path: str) -> ComplexMatrix:
    """
    Read and validate a matrix file.

    Args:
        path: Path to the JSON matrix file

    Returns:
        The validated matrix
    """
    try:
        with open(path, 'r', encoding='utf-8') as f:
            text = f.read()
    except OSError as e:
        raise ParseError(f"cannot read matrix file {path}: {e.strerror}") from e
    matrix = matrix_from_json(text)
    logger.debug(f"Loaded {matrix.rows}x{matrix.cols} matrix from {path}")
    return matrix
