#!/usr/bin/env python3
# -*- coding: utf-8 -*-

"""
Plain-text tables for bound reports.
"""

from typing import List, Sequence, Tuple

from core.bounds import BoundKind, BoundReport, BoundValue
from core.polyzero import ZeroBoundReport


def format_value(value: float) -> str:
    """Table rendering of a real number: 6 significant digits"""
    return f"{value:.6g}"


# parts below this fraction of max(1, |z|) print as zero
PART_SNAP = 1e-12


def format_complex(z: complex) -> str:
    snap = PART_SNAP * max(1.0, abs(z))
    z = complex(0.0 if abs(z.real) <= snap else z.real, 0.0 if abs(z.imag) <= snap else z.imag)
    if z.imag == 0:
        return format_value(z.real)
    sign = "-" if z.imag < 0 else "+"
    return f"{format_value(z.real)}{sign}{format_value(abs(z.imag))}i"


class BoundTable:
    """Fixed-column text table, one row per bound"""

    def __init__(self, columns: Sequence[Tuple[str, int]]):
        """
        Args:
            columns: (header, minimum width) pairs
        """
        self.columns = list(columns)
        self.rows: List[List[str]] = []

    def set_cell_value(self, row: int, col: int, value: str) -> None:
        while len(self.rows) <= row:
            self.rows.append([""] * len(self.columns))
        self.rows[row][col] = value

    def widths(self) -> List[int]:
        return [
            max([width, len(header)] + [len(r[i]) for r in self.rows])
            for i, (header, width) in enumerate(self.columns)
        ]

    def render(self) -> str:
        widths = self.widths()
        lines = ["  ".join(h.ljust(w) for (h, _), w in zip(self.columns, widths)).rstrip()]
        lines.append("  ".join("-" * w for w in widths))
        for r in self.rows:
            lines.append("  ".join(cell.ljust(w) for cell, w in zip(r, widths)).rstrip())
        return "\n".join(lines) + "\n"


def _status(bound: BoundValue, reference: float, slack: float) -> str:
    """Flag bounds that contradict the reference value"""
    if bound.kind is BoundKind.UPPER and bound.value < reference - slack:
        return "VIOLATED"
    if bound.kind is BoundKind.LOWER and bound.value > reference + slack:
        return "VIOLATED"
    return "ok"


def render_zero_report(report: ZeroBoundReport) -> str:
    """
    Bounds on |zero| for one polynomial, smallest first, followed by the roots.
    """
    table = BoundTable([("Bound", 26), ("Value", 10), ("Status", 8)])
    smallest = report.smallest.name
    for row, b in enumerate(report.bounds):
        table.set_cell_value(row, 0, b.name + (" *" if b.name == smallest else ""))
        table.set_cell_value(row, 1, format_value(b.value))
        table.set_cell_value(row, 2, _status(b, report.max_root_modulus, 1e-6))

    lines = [f"p(z) = {report.polynomial}", "", table.render()]
    lines.append(f"max |zero|  = {format_value(report.max_root_modulus)}")
    lines.append(f"w(C(p))     = {format_value(report.numerical_radius)}")
    lines.append("zeros       = " + ", ".join(format_complex(z) for z in report.roots))
    lines.extend(f"warning: {message}" for message in report.warnings)
    return "\n".join(lines) + "\n"


def render_matrix_report(report: BoundReport, slack: float = 5e-6) -> str:
    """
    Upper bounds then lower bounds for one matrix, each group sorted by value.
    """
    table = BoundTable([("Bound", 26), ("Kind", 6), ("Value", 10), ("Status", 8)])
    ordered = sorted(report.upper(), key=lambda b: b.value) + sorted(report.lower(), key=lambda b: -b.value)
    for row, b in enumerate(ordered):
        table.set_cell_value(row, 0, b.name)
        table.set_cell_value(row, 1, b.kind.value)
        table.set_cell_value(row, 2, format_value(b.value))
        table.set_cell_value(row, 3, _status(b, report.numerical_radius, slack))

    lines = [f"T: {report.subject.rows}x{report.subject.cols}", "", table.render()]
    lines.append(f"w(T)   = {format_value(report.numerical_radius)}")
    lines.append(f"rho(T) = {format_value(report.spectral_radius)}")
    lines.extend(f"warning: {message}" for message in report.warnings)
    return "\n".join(lines) + "\n"


def render_bound(bound: BoundValue) -> str:
    table = BoundTable([("Bound", 26), ("Kind", 6), ("Value", 10)])
    table.set_cell_value(0, 0, bound.name)
    table.set_cell_value(0, 1, bound.kind.value)
    table.set_cell_value(0, 2, format_value(bound.value))
    return table.render()
