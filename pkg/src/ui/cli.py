#!/usr/bin/env python3
# -*- coding: utf-8 -*-

"""
Command-line front end: bound tables for polynomials and matrices, boundary data
of the numerical range, and the spectral-radius bound for sums of products.
"""

import argparse
import json
import logging
import sys
from dataclasses import dataclass, field
from typing import Dict, List, Optional, Sequence, Tuple

from core.bounds import matrix_bound_report, upper_thm27_spectral
from core.errors import InputError, NumericalError, ParseError
from core.linalg import DEFAULT_CONFIG, EIGENSOLVERS, EngineConfig, spectral_radius_estimate
from core.numrange import range_boundary
from core.polyzero import zero_bound_report
from core.storage import (
    bounds_to_csv, load_config, matrix_to_dict, range_samples_to_csv, report_to_json, write_report
)
from ui.formatting import render_bound, render_matrix_report, render_zero_report
from utils.parsing import matrix_from_json, parse_matrix, parse_polynomial

# Configure logger for this module
logger = logging.getLogger('numradius.cli')

COMMANDS = ("poly-bounds", "matrix-bounds", "range-data", "spectral-bound")
FORMATS = ("table", "json", "csv")

EXIT_OK = 0
EXIT_INPUT = 2
EXIT_NUMERICAL = 3

# Flags that override the EngineConfig field of the same name
CONFIG_FLAGS = ("theta_grid", "eig_tol", "refine_tol", "max_iter", "workers", "eigensolver")


@dataclass
class CliRequest:
    """
    One invocation of the tool.

    Exactly one input source is allowed: inline text, an input file, or (for
    spectral-bound only) a list of matrix-pair files.
    """
    command: str
    inline: Optional[str] = None
    input_path: Optional[str] = None
    pairs: List[Tuple[str, str]] = field(default_factory=list)
    output_format: str = "table"
    output_path: Optional[str] = None
    config_path: Optional[str] = None
    overrides: Dict[str, object] = field(default_factory=dict)
    r_values: List[float] = field(default_factory=lambda: [1.0, 2.0, 3.0])
    samples: Optional[int] = None

    def validate(self) -> None:
        if self.command not in COMMANDS:
            raise ParseError(f"unknown command {self.command!r}")
        if self.output_format not in FORMATS:
            raise ParseError(f"unknown output format {self.output_format!r}")
        sources = (self.inline is not None) + (self.input_path is not None) + bool(self.pairs)
        if sources != 1:
            raise ParseError(f"{self.command} needs exactly one input source, got {sources}")
        if self.pairs and self.command != "spectral-bound":
            raise ParseError("--pair is only accepted by spectral-bound")
        if self.command == "spectral-bound" and not self.pairs:
            raise ParseError("spectral-bound reads its matrices from --pair A B")

    def config(self) -> EngineConfig:
        """Defaults, then the --config file, then individual flags"""
        cfg = DEFAULT_CONFIG
        if self.config_path:
            cfg = load_config(self.config_path, cfg)
        return cfg.with_overrides(**self.overrides)


def _add_common_arguments(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("--input", dest="input_path", metavar="PATH",
                        help="read the input from a file instead of the command line")
    parser.add_argument("--format", dest="output_format", choices=FORMATS, default="table",
                        help="output format (default: table)")
    parser.add_argument("--output", dest="output_path", metavar="PATH",
                        help="write output to a file instead of stdout")
    parser.add_argument("--config", dest="config_path", metavar="PATH",
                        help="JSON file of engine settings")
    parser.add_argument("--theta-grid", type=int, help="angle samples per optimization")
    parser.add_argument("--eig-tol", type=float, help="eigensolver tolerance")
    parser.add_argument("--refine-tol", type=float, help="golden-section stopping width")
    parser.add_argument("--max-iter", type=int, help="iteration cap of every iterative method")
    parser.add_argument("--workers", type=int, help="threads for angle-grid evaluation")
    parser.add_argument("--eigensolver", choices=EIGENSOLVERS, help="Hermitian eigensolver")
    parser.add_argument("-v", "--verbose", action="store_true", help="debug logging on stderr")


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    _add_common_arguments(common)

    parser = argparse.ArgumentParser(
        prog="numradius",
        description="Numerical radius bounds for matrices and zero bounds for polynomials.",
    )
    commands = parser.add_subparsers(dest="command", required=True, metavar="COMMAND")

    poly = commands.add_parser("poly-bounds", parents=[common],
                               help="bounds on the zeros of a polynomial")
    poly.add_argument("coefficients", nargs="?",
                      help='coefficients in descending order, e.g. "1 1 0 0 0 -2"')

    matrix = commands.add_parser("matrix-bounds", parents=[common],
                                 help="upper and lower bounds on w(T)")
    matrix.add_argument("matrix", nargs="?", help="matrix JSON text")
    matrix.add_argument("--r", dest="r_values", type=float, action="append", metavar="R",
                        help="exponent for the power-mean bounds, repeatable (default: 1 2 3)")

    range_data = commands.add_parser("range-data", parents=[common],
                                     help="boundary samples of the numerical range")
    range_data.add_argument("matrix", nargs="?", help="matrix JSON text")
    range_data.add_argument("--samples", type=int, help="number of angles (default: theta grid)")

    spectral = commands.add_parser("spectral-bound", parents=[common],
                                   help="bound on the spectral radius of A1 B1 + ... + An Bn")
    spectral.add_argument("--pair", dest="pairs", nargs=2, action="append", metavar=("A", "B"),
                          default=[], help="matrix files of one (A, B) pair, repeatable")
    return parser


def request_from_args(args: argparse.Namespace) -> CliRequest:
    inline = getattr(args, "coefficients", None) or getattr(args, "matrix", None)
    overrides = {name: getattr(args, name) for name in CONFIG_FLAGS
                 if getattr(args, name, None) is not None}
    request = CliRequest(
        command=args.command,
        inline=inline,
        input_path=args.input_path,
        pairs=[tuple(p) for p in getattr(args, "pairs", [])],
        output_format=args.output_format,
        output_path=args.output_path,
        config_path=args.config_path,
        overrides=overrides,
        samples=getattr(args, "samples", None),
    )
    if getattr(args, "r_values", None):
        request.r_values = list(args.r_values)
    return request


def _read_input(request: CliRequest) -> str:
    if request.inline is not None:
        return request.inline
    try:
        with open(request.input_path, 'r', encoding='utf-8') as f:
            return f.read()
    except OSError as e:
        raise ParseError(f"cannot read input file {request.input_path}: {e.strerror}") from e


def _poly_bounds(request: CliRequest, cfg: EngineConfig) -> str:
    report = zero_bound_report(parse_polynomial(_read_input(request)), cfg)
    if request.output_format == "json":
        return report_to_json(report)
    if request.output_format == "csv":
        return bounds_to_csv(report.bounds)
    return render_zero_report(report)


def _matrix_bounds(request: CliRequest, cfg: EngineConfig) -> str:
    report = matrix_bound_report(matrix_from_json(_read_input(request)), cfg, request.r_values)
    if request.output_format == "json":
        return report_to_json(report)
    if request.output_format == "csv":
        return bounds_to_csv(report.bounds)
    return render_matrix_report(report, cfg.bound_slack)


def _range_data(request: CliRequest, cfg: EngineConfig) -> str:
    matrix = matrix_from_json(_read_input(request))
    samples = range_boundary(matrix, request.samples or cfg.theta_grid)
    if request.output_format == "json":
        data = {
            "input": {"type": "matrix", **matrix_to_dict(matrix)},
            "samples": [
                {"theta": s.theta, "lambda_max": s.lambda_max,
                 "re": s.boundary_point.real, "im": s.boundary_point.imag}
                for s in samples
            ],
        }
        return json.dumps(data, indent=2) + "\n"
    return range_samples_to_csv(samples)


def _spectral_bound(request: CliRequest, cfg: EngineConfig) -> str:
    pairs = [(parse_matrix(a), parse_matrix(b)) for a, b in request.pairs]
    bound = upper_thm27_spectral(pairs, cfg)
    total = pairs[0][0] @ pairs[0][1]
    for a, b in pairs[1:]:
        total = total + a @ b
    rho = spectral_radius_estimate(total, cfg)
    if rho > bound.value + 1e-4:
        logger.warning(f"spectral radius estimate {rho:.9g} exceeds {bound.name} = {bound.value:.9g}")
    if request.output_format == "json":
        data = {
            "input": {"type": "pairs", "pairs": [[matrix_to_dict(a), matrix_to_dict(b)] for a, b in pairs]},
            "bounds": [{"name": bound.name, "kind": bound.kind.value, "value": bound.value,
                        "inputs": bound.inputs_digest}],
            "rho": rho,
        }
        return json.dumps(data, indent=2) + "\n"
    if request.output_format == "csv":
        return bounds_to_csv([bound])
    return render_bound(bound) + f"\nrho(sum A_i B_i) = {rho:.6g}\n"


HANDLERS = {
    "poly-bounds": _poly_bounds,
    "matrix-bounds": _matrix_bounds,
    "range-data": _range_data,
    "spectral-bound": _spectral_bound,
}


def run(request: CliRequest) -> int:
    """
    Execute one request and write its output.

    Returns:
        0 on success, 2 for invalid input, 3 for a numerical failure
    """
    try:
        request.validate()
        cfg = request.config()
        logger.debug(f"Running {request.command} with {cfg.to_dict()}")
        write_report(HANDLERS[request.command](request, cfg), request.output_path)
    except InputError as e:
        sys.stderr.write(f"error: {e}\n")
        logger.debug("input rejected", exc_info=True)
        return EXIT_INPUT
    except NumericalError as e:
        sys.stderr.write(f"numerical failure: {e}\n")
        logger.debug("numerical failure", exc_info=True)
        return EXIT_NUMERICAL
    return EXIT_OK


def main(argv: Optional[Sequence[str]] = None) -> int:
    """Parse arguments, set the log level and run"""
    args = build_parser().parse_args(argv)
    logging.getLogger().setLevel(logging.DEBUG if args.verbose else logging.WARNING)
    return run(request_from_args(args))
