#!/usr/bin/env python3
# -*- coding: utf-8 -*-

"""
Upper and lower bounds for the numerical radius, the block-matrix bound, the
spectral-radius bound for sums of products, and the earlier bounds they are
compared against.
"""

import logging
import math
from dataclasses import dataclass, field
from enum import Enum
from functools import cached_property
from typing import Any, Dict, Iterable, List, Sequence, Tuple

import numpy as np

from core.errors import DimensionError, InputError, NumericalError
from core.linalg import (
    DEFAULT_CONFIG, ComplexMatrix, EngineConfig, MatrixLike, as_array, block_sizes,
    hermitian_spectrum, hermitize, operator_norm, psd_power, require_square,
    spectral_radius_estimate
)
from core.numrange import (
    c_quantity, crawford_number, numerical_radius, optimize_angle, rotated_spectra
)

# Configure logger for this module
logger = logging.getLogger('numradius.bounds')

# thm22 is an equality for T^3 = 0; larger gaps are logged
NILPOTENT_EQUALITY_TOL = 1e-5


class BoundKind(str, Enum):
    UPPER = "upper"
    LOWER = "lower"


@dataclass(frozen=True)
class BoundValue:
    """
    One evaluated inequality.

    Attributes:
        name: Stable identifier, e.g. "thm21_upper"
        value: The bound on w(T) (or on |zero| for polynomial reports)
        kind: Whether the value bounds from above or below
        inputs_digest: Short description of the operands used
    """
    name: str
    value: float
    kind: BoundKind
    inputs_digest: str = ""

    def __post_init__(self):
        if not math.isfinite(self.value) or self.value < 0:
            raise NumericalError(f"bound {self.name} evaluated to {self.value!r}")
        object.__setattr__(self, "value", float(self.value))
        object.__setattr__(self, "kind", BoundKind(self.kind))


@dataclass
class BoundReport:
    """Catalog of bounds for one matrix"""
    subject: ComplexMatrix
    bounds: List[BoundValue]
    numerical_radius: float
    spectral_radius: float
    metadata: Dict[str, Any] = field(default_factory=dict)
    warnings: List[str] = field(default_factory=list)

    def bound(self, name: str) -> BoundValue:
        for b in self.bounds:
            if b.name == name:
                return b
        raise KeyError(name)

    def upper(self) -> List[BoundValue]:
        return [b for b in self.bounds if b.kind is BoundKind.UPPER]

    def lower(self) -> List[BoundValue]:
        return [b for b in self.bounds if b.kind is BoundKind.LOWER]


def _upper(name: str, value: float, digest: str) -> BoundValue:
    return BoundValue(name=name, value=float(value), kind=BoundKind.UPPER, inputs_digest=digest)


def _lower(name: str, value: float, digest: str) -> BoundValue:
    return BoundValue(name=name, value=float(value), kind=BoundKind.LOWER, inputs_digest=digest)


def _hermitian_crawford(h: np.ndarray, cfg: EngineConfig) -> float:
    """m(H) for Hermitian H: distance from 0 to [lambda_min, lambda_max]"""
    values, _ = hermitian_spectrum(hermitize(h), cfg, False)
    lam_min, lam_max = float(values[0]), float(values[-1])
    if lam_min >= 0:
        return lam_min
    if lam_max <= 0:
        return -lam_max
    return 0.0


def _r_label(r: float) -> str:
    return f"{r:g}".replace(".", "_")


class OperatorQuantities:
    """
    Operands shared by the bounds of one matrix, each computed at most once.

    T2 = T^2, P = T*T + TT*, Q = T^2 P + P T^2 and S = T^2 T* + T* T^2 + T T* T.
    """

    def __init__(self, T: MatrixLike, cfg: EngineConfig = DEFAULT_CONFIG):
        self.t = np.array(as_array(T))
        require_square(self.t, "numerical radius bounds")
        self.cfg = cfg
        self._psd_sum_norms: Dict[float, float] = {}

    @cached_property
    def t_adj(self) -> np.ndarray:
        return self.t.conj().T

    @cached_property
    def t2(self) -> np.ndarray:
        return self.t @ self.t

    @cached_property
    def t3(self) -> np.ndarray:
        return self.t2 @ self.t

    @cached_property
    def gram(self) -> np.ndarray:
        return hermitize(self.t_adj @ self.t)

    @cached_property
    def cogram(self) -> np.ndarray:
        return hermitize(self.t @ self.t_adj)

    @cached_property
    def p(self) -> np.ndarray:
        return self.gram + self.cogram

    @cached_property
    def q(self) -> np.ndarray:
        return self.t2 @ self.p + self.p @ self.t2

    @cached_property
    def s(self) -> np.ndarray:
        return self.t2 @ self.t_adj + self.t_adj @ self.t2 + self.t @ self.t_adj @ self.t

    @cached_property
    def re(self) -> np.ndarray:
        return 0.5 * (self.t + self.t_adj)

    @cached_property
    def im(self) -> np.ndarray:
        return (self.t - self.t_adj) / 2j

    @cached_property
    def w(self) -> float:
        return numerical_radius(self.t, self.cfg)

    @cached_property
    def w_t2(self) -> float:
        return numerical_radius(self.t2, self.cfg)

    @cached_property
    def w_t3(self) -> float:
        return numerical_radius(self.t3, self.cfg)

    @cached_property
    def w_q(self) -> float:
        return numerical_radius(self.q, self.cfg)

    @cached_property
    def w_s(self) -> float:
        return numerical_radius(self.s, self.cfg)

    @cached_property
    def m_q(self) -> float:
        return crawford_number(self.q, self.cfg)

    @cached_property
    def c_t2(self) -> float:
        return c_quantity(self.t2, self.cfg)

    @cached_property
    def norm_t(self) -> float:
        return operator_norm(self.t, self.cfg)

    @cached_property
    def norm_t2(self) -> float:
        return operator_norm(self.t2, self.cfg)

    @cached_property
    def norm_p(self) -> float:
        return operator_norm(self.p, self.cfg)

    @cached_property
    def norm_re(self) -> float:
        return operator_norm(self.re, self.cfg)

    @cached_property
    def norm_im(self) -> float:
        return operator_norm(self.im, self.cfg)

    @cached_property
    def m_re(self) -> float:
        return _hermitian_crawford(self.re, self.cfg)

    @cached_property
    def m_im(self) -> float:
        return _hermitian_crawford(self.im, self.cfg)

    def psd_sum_norm(self, r: float) -> float:
        """||(T*T)^r + (TT*)^r||"""
        if r not in self._psd_sum_norms:
            total = psd_power(self.gram, r, self.cfg).array + psd_power(self.cogram, r, self.cfg).array
            self._psd_sum_norms[r] = operator_norm(total, self.cfg)
        return self._psd_sum_norms[r]


def _quantities(T: Any, cfg: EngineConfig) -> OperatorQuantities:
    if isinstance(T, OperatorQuantities):
        return T
    return OperatorQuantities(T, cfg)


def upper_thm21(T: MatrixLike, cfg: EngineConfig = DEFAULT_CONFIG) -> BoundValue:
    """w^4(T) <= 1/4 w^2(T^2) + 1/8 w(T^2 P + P T^2) + 1/16 ||P||^2, P = T*T + TT*"""
    q = _quantities(T, cfg)
    value = (0.25 * q.w_t2 ** 2 + 0.125 * q.w_q + q.norm_p ** 2 / 16.0) ** 0.25
    return _upper("thm21_upper", value, "w(T^2), w(T^2P+PT^2), ||P||")


def upper_thm22(T: MatrixLike, cfg: EngineConfig = DEFAULT_CONFIG) -> BoundValue:
    """
    w^3(T) <= 1/4 w(T^3) + 1/4 w(T^2 T* + T* T^2 + T T* T).

    Equality holds when T^3 = 0; when T^2 = 0, w(T) = 1/2 sqrt(||TT* + T*T||).
    """
    q = _quantities(T, cfg)
    value = (0.25 * q.w_t3 + 0.25 * q.w_s) ** (1.0 / 3.0)
    if q.t3.size and np.max(np.abs(q.t3)) <= cfg.eig_tol * max(1.0, q.norm_t) ** 3:
        if abs(value - q.w) > NILPOTENT_EQUALITY_TOL:
            logger.warning(f"T^3 = 0 but thm22 value {value:.9g} differs from w(T) = {q.w:.9g}")
    return _upper("thm22_upper", value, "w(T^3), w(T^2T*+T*T^2+TT*T)")


def upper_thm23(T: MatrixLike, r: float, cfg: EngineConfig = DEFAULT_CONFIG) -> BoundValue:
    """
    w^{2r}(T) <= 1/2 w^r(T^2) + 1/4 ||(T*T)^r + (TT*)^r|| for r >= 1.

    Raises:
        InputError: r < 1
    """
    if not (isinstance(r, (int, float)) and math.isfinite(r) and r >= 1):
        raise InputError(f"upper_thm23 needs r >= 1, got {r!r}")
    q = _quantities(T, cfg)
    value = (0.5 * q.w_t2 ** r + 0.25 * q.psd_sum_norm(r)) ** (1.0 / (2.0 * r))
    return _upper(f"thm23_upper_r{_r_label(r)}", value, f"w(T^2), ||(T*T)^{r:g}+(TT*)^{r:g}||")


def upper_thm25(T: MatrixLike, cfg: EngineConfig = DEFAULT_CONFIG) -> BoundValue:
    """w(T) <= inf over phi of sqrt(||H_phi||^2 + ||H_{phi + pi/2}||^2)"""
    q = _quantities(T, cfg)
    a = q.t

    def objective(phis: np.ndarray) -> np.ndarray:
        first = rotated_spectra(a, phis, cfg)
        second = rotated_spectra(a, phis + 0.5 * math.pi, cfg)
        norm_first = np.max(np.abs(first), axis=1)
        norm_second = np.max(np.abs(second), axis=1)
        return np.sqrt(norm_first ** 2 + norm_second ** 2)

    value, phi = optimize_angle(objective, math.pi, cfg, maximize=False)
    logger.debug(f"thm25 infimum {value:.12g} near phi = {phi:.6f}")
    return _upper("thm25_upper", value, "||H_phi||, ||H_{phi+pi/2}||")


def upper_thm26_block(blocks: Sequence[Sequence[MatrixLike]], cfg: EngineConfig = DEFAULT_CONFIG) -> BoundValue:
    """
    w(A) <= max_i [ w(A_ii) + 1/2 sum_{j != i} (||A_ij|| + ||A_ji||) ] for A = (A_ij).

    Raises:
        DimensionError: The blocks do not form a conformable partition
    """
    block_sizes(blocks)
    k = len(blocks)
    norms = [[operator_norm(blocks[i][j], cfg) if i != j else 0.0 for j in range(k)] for i in range(k)]
    rows = []
    for i in range(k):
        off = sum(norms[i][j] + norms[j][i] for j in range(k) if j != i)
        rows.append(numerical_radius(blocks[i][i], cfg) + 0.5 * off)
    return _upper("thm26_block_upper", max(rows), "w(A_ii), ||A_ij||")


def upper_thm27_spectral(pairs: Sequence[Tuple[MatrixLike, MatrixLike]],
                         cfg: EngineConfig = DEFAULT_CONFIG) -> BoundValue:
    """
    rho(sum A_i B_i) <= max_i [ w(B_i A_i) + 1/2 sum_{j != i} (||B_i A_j|| + ||B_j A_i||) ].

    Evaluated as the block bound on the operator matrix (B_i A_j), which has the
    same nonzero spectrum as diag(sum A_i B_i, 0, ..., 0).

    Raises:
        DimensionError: Empty list, non-square or differently sized factors
    """
    if not pairs:
        raise DimensionError("upper_thm27_spectral needs at least one (A, B) pair")
    factors = [(as_array(a), as_array(b)) for a, b in pairs]
    size = factors[0][0].shape
    for index, (a, b) in enumerate(factors):
        for label, m in (("A", a), ("B", b)):
            if m.shape[0] != m.shape[1] or m.shape != size:
                raise DimensionError(
                    f"pair {index}: {label} is {m.shape[0]}x{m.shape[1]}, expected square {size[0]}x{size[1]}"
                )
    blocks = [[ComplexMatrix.from_array(b_i @ a_j) for a_j, _ in factors] for _, b_i in factors]
    bound = upper_thm26_block(blocks, cfg)
    return _upper("thm27_spectral_upper", bound.value, "w(B_iA_i), ||B_iA_j||")


def lower_thm31(T: MatrixLike, cfg: EngineConfig = DEFAULT_CONFIG) -> BoundValue:
    """w^4(T) >= 1/4 C^2(T^2) + 1/8 m(T^2 P + P T^2) + 1/16 ||P||^2"""
    q = _quantities(T, cfg)
    value = (0.25 * q.c_t2 ** 2 + 0.125 * q.m_q + q.norm_p ** 2 / 16.0) ** 0.25
    return _lower("thm31_lower", value, "C(T^2), m(T^2P+PT^2), ||P||")


def lower_thm33(T: MatrixLike, cfg: EngineConfig = DEFAULT_CONFIG) -> Tuple[BoundValue, BoundValue]:
    """
    w(T) >= sqrt(||Re T||^2 + m^2(Im T)) and w(T) >= sqrt(||Im T||^2 + m^2(Re T)).

    Both are equalities when Re(T) or Im(T) is a scalar multiple of the identity.
    """
    q = _quantities(T, cfg)
    first = math.sqrt(q.norm_re ** 2 + q.m_im ** 2)
    second = math.sqrt(q.norm_im ** 2 + q.m_re ** 2)
    return (
        _lower("thm33_lower_re", first, "||Re T||, m(Im T)"),
        _lower("thm33_lower_im", second, "||Im T||, m(Re T)"),
    )


def sattari_bound(T: MatrixLike, r: float, cfg: EngineConfig = DEFAULT_CONFIG) -> BoundValue:
    """
    w(T) <= (1/2 ||(T*T)^r + (TT*)^r||)^{1/(2r)}, the w^r(B*A) product bound taken
    at A = B* = T. Never smaller than upper_thm23 for the same r.
    """
    if not (isinstance(r, (int, float)) and math.isfinite(r) and r >= 1):
        raise InputError(f"sattari_bound needs r >= 1, got {r!r}")
    q = _quantities(T, cfg)
    value = (0.5 * q.psd_sum_norm(r)) ** (1.0 / (2.0 * r))
    return _upper(f"sattari_r{_r_label(r)}", value, f"||(T*T)^{r:g}+(TT*)^{r:g}||")


def competitor_bounds(T: MatrixLike, cfg: EngineConfig = DEFAULT_CONFIG,
                      rs: Iterable[float] = (1, 2, 3)) -> List[BoundValue]:
    """
    Earlier bounds the new inequalities are measured against, each evaluated literally.
    """
    q = _quantities(T, cfg)
    w2, norm_p, norm_t = q.w_t2, q.norm_p, q.norm_t
    bounds = [
        _upper("aok_quartic", (0.25 * w2 ** 2 + 0.25 * w2 * norm_p + norm_p ** 2 / 16.0) ** 0.25,
               "w(T^2), ||P||"),
        _upper("kittaneh_norm_avg", 0.5 * (norm_t + math.sqrt(q.norm_t2)), "||T||, ||T^2||"),
        _upper("kittaneh_half_p", math.sqrt(0.5 * norm_p), "||P||"),
        _upper("dragomir", math.sqrt(0.5 * (w2 + norm_t ** 2)), "w(T^2), ||T||"),
        _upper("aok_quadratic", math.sqrt(0.5 * w2 + 0.25 * norm_p), "w(T^2), ||P||"),
    ]
    bounds.extend(sattari_bound(q, r, cfg) for r in rs)
    bounds.extend([
        _upper("norm_upper", norm_t, "||T||"),
        _upper("cartesian_upper", math.hypot(q.norm_re, q.norm_im), "||Re T||, ||Im T||"),
        _lower("kittaneh_lower_quarter_p", math.sqrt(0.25 * norm_p), "||P||"),
        _lower("kmy_lower_re", q.norm_re, "||Re T||"),
        _lower("kmy_lower_im", q.norm_im, "||Im T||"),
        _lower("half_norm_lower", 0.5 * norm_t, "||T||"),
    ])
    return bounds


def matrix_bound_report(T: MatrixLike, cfg: EngineConfig = DEFAULT_CONFIG,
                        rs: Sequence[float] = (1, 2, 3)) -> BoundReport:
    """
    Every bound for one matrix, plus w(T) and a Gelfand estimate of rho(T).

    Upper bounds below w(T) or lower bounds above it (beyond cfg.bound_slack) are
    recorded as warnings rather than dropped.
    """
    q = OperatorQuantities(T, cfg)
    bounds = [upper_thm21(q, cfg), upper_thm22(q, cfg)]
    bounds.extend(upper_thm23(q, r, cfg) for r in rs)
    bounds.append(upper_thm25(q, cfg))
    bounds.append(lower_thm31(q, cfg))
    bounds.extend(lower_thm33(q, cfg))
    bounds.extend(competitor_bounds(q, cfg, rs))

    report = BoundReport(
        subject=ComplexMatrix.from_array(q.t),
        bounds=bounds,
        numerical_radius=q.w,
        spectral_radius=spectral_radius_estimate(q.t, cfg),
        metadata={"rows": q.t.shape[0], "cols": q.t.shape[1], "r_values": [float(r) for r in rs]},
    )
    report.warnings.extend(consistency_warnings(report.bounds, report.numerical_radius, cfg.bound_slack))
    for message in report.warnings:
        logger.warning(message)
    return report


def consistency_warnings(bounds: Iterable[BoundValue], w: float, slack: float) -> List[str]:
    """Messages for every bound that contradicts the computed w(T)"""
    messages = []
    for b in bounds:
        if b.kind is BoundKind.UPPER and b.value < w - slack:
            messages.append(f"upper bound {b.name} = {b.value:.9g} is below w(T) = {w:.9g}")
        elif b.kind is BoundKind.LOWER and b.value > w + slack:
            messages.append(f"lower bound {b.name} = {b.value:.9g} exceeds w(T) = {w:.9g}")
    return messages
