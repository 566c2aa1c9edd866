#!/usr/bin/env python3
# -*- coding: utf-8 -*-

"""
Zero localization for complex polynomials through the Frobenius companion matrix.
"""

import cmath
import logging
import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field, replace
from typing import List, Optional, Sequence, Union

import numpy as np

from core.bounds import BoundKind, BoundValue, OperatorQuantities, upper_thm21, upper_thm23
from core.errors import ConvergenceError, PolynomialError
from core.linalg import DEFAULT_CONFIG, ComplexMatrix, EngineConfig, operator_norm
from core.numrange import numerical_radius

# Configure logger for this module
logger = logging.getLogger('numradius.polyzero')

# Angular offset of the Durand-Kerner starting circle
START_OFFSET = 0.4

# Residual certificate: |p(z)| <= RESIDUAL_TOL * (1 + |z|)^n
RESIDUAL_TOL = 1e-8

CLASSICAL_BOUND_NAMES = (
    "carmichael_mason", "cauchy", "fujii_kubo", "kittaneh",
    "paul_bag_1", "paul_bag_2", "aok_poly", "alpin",
)


@dataclass(frozen=True)
class Polynomial:
    """
    p(z) = a_0 + a_1 z + ... + a_n z^n with complex coefficients in ascending order.

    The leading coefficient must be nonzero; ``monic()`` divides it out.
    """
    coefficients: tuple

    def __post_init__(self):
        coeffs = tuple(complex(c) for c in self.coefficients)
        if not coeffs or all(c == 0 for c in coeffs):
            raise PolynomialError("the zero polynomial has no well-defined zeros")
        if coeffs[-1] == 0:
            raise PolynomialError("leading coefficient must be nonzero")
        if not all(cmath.isfinite(c) for c in coeffs):
            raise PolynomialError("coefficients must be finite")
        object.__setattr__(self, "coefficients", coeffs)

    @classmethod
    def from_descending(cls, coefficients: Sequence[complex]) -> "Polynomial":
        """Build from a_n, a_{n-1}, ..., a_0, the order p(z) is written in"""
        return cls(tuple(reversed(list(coefficients))))

    @classmethod
    def from_roots(cls, roots: Sequence[complex]) -> "Polynomial":
        """Monic polynomial with exactly the given zeros"""
        return cls.from_descending(np.poly(np.asarray(roots, dtype=np.complex128)))

    @property
    def degree(self) -> int:
        return len(self.coefficients) - 1

    @property
    def leading(self) -> complex:
        return self.coefficients[-1]

    @property
    def is_monic(self) -> bool:
        return self.leading == 1

    def descending(self) -> List[complex]:
        return list(reversed(self.coefficients))

    def monic(self) -> "Polynomial":
        if self.is_monic:
            return self
        lead = self.leading
        return Polynomial(tuple(c / lead for c in self.coefficients[:-1]) + (1 + 0j,))

    def __call__(self, z):
        return np.polyval(np.asarray(self.descending()), z)

    def __str__(self) -> str:
        terms = []
        for power in range(self.degree, -1, -1):
            c = self.coefficients[power]
            if c == 0:
                continue
            text = _complex_text(c)
            if power == 0:
                terms.append(text)
            else:
                base = "z" if power == 1 else f"z^{power}"
                terms.append(base if c == 1 else f"-{base}" if c == -1 else f"{text}*{base}")
        return " + ".join(terms).replace("+ -", "- ")


def _complex_text(c: complex) -> str:
    if c.imag == 0:
        return f"{c.real:g}"
    if c.real == 0:
        return f"{c.imag:g}i"
    return f"({c.real:g}{c.imag:+g}i)"


PolynomialLike = Union[Polynomial, Sequence[complex]]


def as_polynomial(value: PolynomialLike) -> Polynomial:
    """Polynomial from an instance or a descending coefficient sequence"""
    if isinstance(value, Polynomial):
        return value
    return Polynomial.from_descending(value)


@dataclass
class ZeroBoundReport:
    """Every zero bound for one monic polynomial, with the root oracle's answer"""
    polynomial: Polynomial
    bounds: List[BoundValue]
    roots: List[complex]
    max_root_modulus: float
    numerical_radius: float
    warnings: List[str] = field(default_factory=list)

    def bound(self, name: str) -> BoundValue:
        for b in self.bounds:
            if b.name == name:
                return b
        raise KeyError(name)

    @property
    def smallest(self) -> BoundValue:
        return min(self.bounds, key=lambda b: b.value)


def _require_degree(p: Polynomial, operation: str) -> None:
    if p.degree < 2:
        raise PolynomialError(
            f"{operation} applies to polynomials of degree n >= 2 (the companion-matrix "
            f"bounds are stated for n >= 2), got degree {p.degree}"
        )


def companion_matrix(p: Polynomial) -> ComplexMatrix:
    """
    Frobenius companion matrix of a monic p of degree n >= 2.

    First row (-a_{n-1}, ..., -a_1, -a_0), ones on the subdiagonal, zeros elsewhere.

    Raises:
        PolynomialError: degree < 2 or p not monic
    """
    _require_degree(p, "companion_matrix")
    if not p.is_monic:
        raise PolynomialError("companion_matrix needs a monic polynomial; call monic() first")
    n = p.degree
    c = np.zeros((n, n), dtype=np.complex128)
    c[0, :] = -np.asarray(p.coefficients[n - 1::-1])
    c[np.arange(1, n), np.arange(n - 1)] = 1.0
    return ComplexMatrix.from_array(c)


def _durand_kerner(desc: np.ndarray, cfg: EngineConfig) -> np.ndarray:
    """Simultaneous iteration on a monic polynomial given in descending order"""
    n = len(desc) - 1
    radius = 1.0 + float(np.max(np.abs(desc[1:])))
    z = radius * np.exp(1j * (2.0 * np.pi * np.arange(n) / n + START_OFFSET))
    for iteration in range(1, cfg.max_iter + 1):
        diff = z[:, None] - z[None, :]
        np.fill_diagonal(diff, 1.0)
        denom = np.prod(diff, axis=1)
        denom[denom == 0] = cfg.root_tol
        step = np.polyval(desc, z) / denom
        z = z - step
        if np.max(np.abs(step)) <= cfg.root_tol * max(1.0, float(np.max(np.abs(z)))):
            logger.debug(f"Durand-Kerner converged in {iteration} iterations (degree {n})")
            return z
    logger.debug(f"Durand-Kerner reached max_iter={cfg.max_iter} (degree {n})")
    return z


def roots(p: PolynomialLike, cfg: EngineConfig = DEFAULT_CONFIG) -> List[complex]:
    """
    All zeros of p with multiplicity.

    Exact zero roots are factored out first; the rest come from Durand-Kerner
    iteration started on the Cauchy circle. Every returned root is certified by
    |p(z)| <= 1e-8 (1 + |z|)^n.

    Raises:
        PolynomialError: degree < 1
        ConvergenceError: A residual certificate failed; carries the best iterate
    """
    p = as_polynomial(p).monic()
    if p.degree < 1:
        raise PolynomialError("a constant polynomial has no zeros to find")
    coeffs = np.asarray(p.coefficients)
    zero_count = int(np.argmax(coeffs != 0))
    reduced = coeffs[zero_count:][::-1]

    found = np.zeros(zero_count, dtype=np.complex128)
    if len(reduced) > 1:
        found = np.concatenate((found, _durand_kerner(reduced, cfg)))

    residuals = np.abs(p(found))
    allowed = RESIDUAL_TOL * (1.0 + np.abs(found)) ** p.degree
    if np.any(residuals > allowed):
        raise ConvergenceError(
            f"root finder failed to certify all roots of {p} "
            f"(worst residual {float(np.max(residuals)):.3e})",
            best=[complex(z) for z in found],
            residuals=[float(r) for r in residuals],
        )
    return sorted((complex(z) for z in found), key=lambda z: (abs(z), cmath.phase(z)))


def classical_bounds(p: PolynomialLike, cfg: EngineConfig = DEFAULT_CONFIG) -> List[BoundValue]:
    """
    The eight classical upper bounds on |zero| of a monic p of degree n >= 2.

    Returns:
        BoundValues named carmichael_mason, cauchy, fujii_kubo, kittaneh,
        paul_bag_1, paul_bag_2, aok_poly and alpin
    """
    p = as_polynomial(p)
    if not p.is_monic:
        raise PolynomialError("classical_bounds needs a monic polynomial; call monic() first")
    _require_degree(p, "classical_bounds")
    n = p.degree
    mod = np.abs(np.asarray(p.coefficients[:-1]))   # |a_0|, ..., |a_{n-1}|
    sq = mod ** 2
    c = companion_matrix(p)

    top = mod[n - 1]
    cos_n1 = math.cos(math.pi / (n + 1))
    tail_pb1 = math.sqrt(float(np.sum(sq[:n - 1])))   # sum_{j=0}^{n-2} |a_j|^2
    tail_pb2 = math.sqrt(float(np.sum(sq[:n - 2])))   # sum_{j=0}^{n-3} |a_j|^2
    alpha = math.sqrt(float(np.sum(sq)))

    cos_n = math.cos(math.pi / n)
    paul_bag_1 = 0.5 * (top + cos_n + math.sqrt((top - cos_n) ** 2 + (1.0 + tail_pb1) ** 2))

    head = ComplexMatrix.from_rows([[-p.coefficients[n - 1], -p.coefficients[n - 2]], [1, 0]])
    w_head = numerical_radius(head, cfg)
    cos_nm1 = math.cos(math.pi / (n - 1))
    paul_bag_2 = 0.5 * (w_head + cos_nm1 + math.sqrt((w_head - cos_nm1) ** 2 + (1.0 + tail_pb2) ** 2))

    # (1 + |a_{n-1}|)(1 + |a_{n-2}|)...(1 + |a_{n-k}|), k = 1..n
    logs = np.cumsum(np.log1p(mod[::-1]))
    alpin = float(np.max(np.exp(logs / np.arange(1, n + 1))))

    values = {
        "carmichael_mason": (math.sqrt(1.0 + float(np.sum(sq))), "|a_j|"),
        "cauchy": (1.0 + float(np.max(mod)), "max |a_j|"),
        "fujii_kubo": (cos_n1 + 0.5 * (top + alpha), "|a_{n-1}|, alpha, cos(pi/(n+1))"),
        "kittaneh": (0.5 * (operator_norm(c, cfg) + math.sqrt(operator_norm(c @ c, cfg))), "||C||, ||C^2||"),
        "paul_bag_1": (paul_bag_1, "|a_{n-1}|, cos(pi/n)"),
        "paul_bag_2": (paul_bag_2, "w([[-a_{n-1}, -a_{n-2}], [1, 0]]), cos(pi/(n-1))"),
        "aok_poly": (math.sqrt(0.25 * (top ** 2 + alpha) ** 2 + alpha + cos_n1 ** 2), "alpha, cos(pi/(n+1))"),
        "alpin": (alpin, "prod (1 + |a_{n-k}|)"),
    }
    return [
        BoundValue(name=name, value=values[name][0], kind=BoundKind.UPPER, inputs_digest=values[name][1])
        for name in CLASSICAL_BOUND_NAMES
    ]


def _companion_quantities(p: PolynomialLike, cfg: EngineConfig) -> OperatorQuantities:
    p = as_polynomial(p)
    if not p.is_monic:
        raise PolynomialError("companion-matrix bounds need a monic polynomial; call monic() first")
    return OperatorQuantities(companion_matrix(p), cfg)


def new_bound_thm41(p: PolynomialLike, cfg: EngineConfig = DEFAULT_CONFIG,
                    quantities: Optional[OperatorQuantities] = None) -> BoundValue:
    """|zero| <= (1/2 w^2(C^2) + 1/4 ||(C*C)^2 + (CC*)^2||)^{1/4}, C = C(p)"""
    q = quantities or _companion_quantities(p, cfg)
    return replace(upper_thm23(q, 2, cfg), name="thm41", inputs_digest="w(C^2), ||(C*C)^2+(CC*)^2||")


def new_bound_thm42(p: PolynomialLike, cfg: EngineConfig = DEFAULT_CONFIG,
                    quantities: Optional[OperatorQuantities] = None) -> BoundValue:
    """|zero| <= (1/4 w^2(C^2) + 1/8 w(C^2 P + P C^2) + 1/16 ||P||^2)^{1/4}, P = C*C + CC*"""
    q = quantities or _companion_quantities(p, cfg)
    return replace(upper_thm21(q, cfg), name="thm42", inputs_digest="w(C^2), w(C^2P+PC^2), ||P||")


def zero_bound_report(p: PolynomialLike, cfg: EngineConfig = DEFAULT_CONFIG) -> ZeroBoundReport:
    """
    All zero bounds for p, normalized to monic, sorted ascending.

    Includes the eight classical bounds, thm41, thm42 and w(C(p)) itself (named
    "numerical_radius_exactish"), together with the oracle roots.

    Raises:
        PolynomialError: zero polynomial or degree < 2
    """
    p = as_polynomial(p)
    _require_degree(p, "zero_bound_report")
    p = p.monic()
    q = _companion_quantities(p, cfg)

    bounds = classical_bounds(p, cfg)
    bounds.append(new_bound_thm41(p, cfg, q))
    bounds.append(new_bound_thm42(p, cfg, q))
    bounds.append(BoundValue(name="numerical_radius_exactish", value=q.w,
                             kind=BoundKind.UPPER, inputs_digest="w(C)"))
    bounds.sort(key=lambda b: b.value)

    zeros = roots(p, cfg)
    max_modulus = max(abs(z) for z in zeros)
    report = ZeroBoundReport(polynomial=p, bounds=bounds, roots=zeros,
                             max_root_modulus=max_modulus, numerical_radius=q.w)
    for b in bounds:
        if max_modulus > b.value + 1e-6:
            message = f"zero of modulus {max_modulus:.9g} lies outside bound {b.name} = {b.value:.9g}"
            report.warnings.append(message)
            logger.warning(message)
    return report


def zero_bound_reports(polys: Sequence[PolynomialLike], cfg: EngineConfig = DEFAULT_CONFIG,
                       workers: int = 4) -> List[ZeroBoundReport]:
    """
    Reports for a batch of polynomials, one thread-pool task per polynomial.

    Results keep the input order; the first failure is re-raised.
    """
    if not polys:
        return []
    with ThreadPoolExecutor(max_workers=max(1, min(workers, len(polys)))) as executor:
        futures = [executor.submit(zero_bound_report, p, cfg) for p in polys]
        return [future.result() for future in futures]
