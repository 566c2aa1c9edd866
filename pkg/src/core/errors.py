#!/usr/bin/env python3
# -*- coding: utf-8 -*-

"""
Exception hierarchy shared by the numerical core and the command-line front end.
"""

from typing import Any, Optional, Sequence


class NumRadiusError(Exception):
    """Base class for every error raised by this package"""


class InputError(NumRadiusError, ValueError):
    """The caller handed in something the computation cannot accept"""


class DimensionError(InputError):
    """Operands have incompatible shapes"""


class NotHermitianError(InputError):
    """A Hermitian matrix was required"""


class PolynomialError(InputError):
    """Polynomial is of too low degree, zero, or not normalized"""


class ConfigError(InputError):
    """An EngineConfig field is out of range"""


class OutputError(InputError):
    """The report destination cannot be written"""


class ParseError(InputError):
    """Malformed user text; ``position`` points at the offending token"""

    def __init__(self, message: str, position: Optional[int] = None):
        if position is not None:
            message = f"{message} (at position {position})"
        super().__init__(message)
        self.position = position


class NumericalError(NumRadiusError, ArithmeticError):
    """A numerical procedure failed on valid input"""


class ConvergenceError(NumericalError):
    """An iterative procedure ran out of iterations"""

    def __init__(self, message: str, best: Any = None, residuals: Optional[Sequence[float]] = None):
        super().__init__(message)
        self.best = best
        self.residuals = list(residuals) if residuals is not None else None
