#!/usr/bin/env python3
# -*- coding: utf-8 -*-

"""
Numerical-range quantities: rotated Hermitian parts, numerical radius, Crawford
number, the C(T) quantity and boundary samples of W(T).

Every supremum/infimum over an angle is computed by the same engine: a uniform
grid over one period followed by golden-section refinement of the best
grid-local extrema. All brackets are refined together, one stacked eigenvalue
call per golden-section step.
"""

import logging
import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from typing import Callable, List, Tuple

import numpy as np

from core.errors import DimensionError
from core.linalg import (
    DEFAULT_CONFIG, ComplexMatrix, EngineConfig, MatrixLike, as_array, require_square
)

# Configure logger for this module
logger = logging.getLogger('numradius.numrange')

INV_PHI = (math.sqrt(5.0) - 1.0) / 2.0

# Eigenvalues closer than this to lambda_max count as the same eigenvalue
MULTIPLICITY_GAP = 1e-10

Objective = Callable[[np.ndarray], np.ndarray]


@dataclass(frozen=True)
class RangeSample:
    """One supporting point of W(T): Re(e^{i theta} boundary_point) == lambda_max"""
    theta: float
    lambda_max: float
    boundary_point: complex


def _square(T: MatrixLike, operation: str) -> np.ndarray:
    a = as_array(T)
    require_square(a, operation)
    return a


def rotated_stack(a: np.ndarray, thetas: np.ndarray) -> np.ndarray:
    """Stack of H_theta = (e^{i theta} T + e^{-i theta} T*)/2, one per angle"""
    phases = np.exp(1j * np.asarray(thetas, dtype=float))[:, None, None]
    h = 0.5 * (phases * a + phases.conj() * a.conj().T)
    return 0.5 * (h + np.conj(np.swapaxes(h, -1, -2)))


def _spectra_chunk(a: np.ndarray, thetas: np.ndarray) -> np.ndarray:
    return np.linalg.eigvalsh(rotated_stack(a, thetas))


def rotated_spectra(T: MatrixLike, thetas: np.ndarray, cfg: EngineConfig = DEFAULT_CONFIG) -> np.ndarray:
    """
    Ascending spectra of H_theta for every angle.

    With cfg.workers > 1 the angles are split into contiguous chunks evaluated in a
    thread pool; each row depends only on its own angle, so the result is the same
    as sequential evaluation.

    Returns:
        Array of shape (len(thetas), n)
    """
    a = T if isinstance(T, np.ndarray) else as_array(T)
    thetas = np.atleast_1d(np.asarray(thetas, dtype=float))
    if cfg.workers == 1 or len(thetas) < 2 * cfg.workers:
        return _spectra_chunk(a, thetas)
    chunks = np.array_split(thetas, cfg.workers)
    with ThreadPoolExecutor(max_workers=cfg.workers) as executor:
        parts = list(executor.map(lambda chunk: _spectra_chunk(a, chunk), chunks))
    return np.concatenate(parts, axis=0)


def optimize_angle(objective: Objective, period: float, cfg: EngineConfig = DEFAULT_CONFIG,
                   maximize: bool = True) -> Tuple[float, float]:
    """
    Global extremum of a periodic angle function.

    The objective is sampled on cfg.theta_grid uniform points of [0, period); up to
    cfg.max_brackets grid-local extrema (best first) are refined by golden-section
    search on [theta_k - h, theta_k + h] until every bracket is narrower than
    cfg.refine_tol. The result is never worse than the best grid sample.

    Args:
        objective: Vectorized map from an array of angles to an array of values
        period: Length of the sampled interval
        cfg: Engine configuration
        maximize: Search for the supremum (True) or infimum (False)

    Returns:
        (extreme value, angle where it was attained)
    """
    sign = 1.0 if maximize else -1.0
    step = period / cfg.theta_grid
    grid = np.arange(cfg.theta_grid) * step
    g = sign * objective(grid)

    peaks = np.flatnonzero((g >= np.roll(g, 1)) & (g > np.roll(g, -1)))
    best = int(np.argmax(g))
    best_value, best_theta = float(g[best]), float(grid[best])
    if peaks.size == 0:
        return sign * best_value, best_theta
    peaks = peaks[np.argsort(-g[peaks], kind="stable")][:cfg.max_brackets]

    lo = grid[peaks] - step
    hi = grid[peaks] + step
    c = hi - INV_PHI * (hi - lo)
    d = lo + INV_PHI * (hi - lo)
    fc = sign * objective(c)
    fd = sign * objective(d)
    iterations = 0
    while np.max(hi - lo) > cfg.refine_tol and iterations < cfg.max_iter:
        keep_left = fc >= fd
        hi = np.where(keep_left, d, hi)
        lo = np.where(keep_left, lo, c)
        probe = np.where(keep_left, hi - INV_PHI * (hi - lo), lo + INV_PHI * (hi - lo))
        fp = sign * objective(probe)
        c, d, fc, fd = (
            np.where(keep_left, probe, d),
            np.where(keep_left, c, probe),
            np.where(keep_left, fp, fd),
            np.where(keep_left, fc, fp),
        )
        iterations += 1

    candidates = np.concatenate((c, d))
    values = np.concatenate((fc, fd))
    top = int(np.argmax(values))
    if values[top] > best_value:
        best_value, best_theta = float(values[top]), float(candidates[top] % period)
    logger.debug(f"angle search: {cfg.theta_grid} grid points, {peaks.size} brackets, "
                 f"{iterations} golden-section steps")
    return sign * best_value, best_theta


def herm_part_rotated(T: MatrixLike, theta: float) -> ComplexMatrix:
    """H_theta = Re(e^{i theta} T), exactly Hermitian"""
    a = _square(T, "herm_part_rotated")
    return ComplexMatrix.from_array(rotated_stack(a, np.array([theta]))[0])


def real_part(T: MatrixLike) -> ComplexMatrix:
    """Re(T) = (T + T*)/2"""
    a = _square(T, "real_part")
    return ComplexMatrix.from_array(0.5 * (a + a.conj().T))


def imag_part(T: MatrixLike) -> ComplexMatrix:
    """Im(T) = (T - T*)/2i"""
    a = _square(T, "imag_part")
    return ComplexMatrix.from_array((a - a.conj().T) / 2j)


def numerical_radius(T: MatrixLike, cfg: EngineConfig = DEFAULT_CONFIG) -> float:
    """
    w(T) = sup over theta of lambda_max(H_theta).

    Sampling lambda_max over [0, 2 pi) covers lambda_min as well, since
    lambda_max(H_{theta + pi}) = -lambda_min(H_theta). The value is a refined
    lower approximation of w(T).
    """
    a = _square(T, "numerical_radius")
    value, theta = optimize_angle(lambda th: rotated_spectra(a, th, cfg)[:, -1], 2.0 * math.pi, cfg)
    logger.debug(f"w(T) = {value:.12g} attained near theta = {theta:.6f}")
    return max(value, 0.0)


def crawford_number(T: MatrixLike, cfg: EngineConfig = DEFAULT_CONFIG) -> float:
    """
    m(T), the distance from 0 to W(T): max(0, sup over theta of lambda_min(H_theta)).

    Returns 0 when 0 lies in W(T).
    """
    a = _square(T, "crawford_number")
    value, _ = optimize_angle(lambda th: rotated_spectra(a, th, cfg)[:, 0], 2.0 * math.pi, cfg)
    return max(value, 0.0)


def c_quantity(T: MatrixLike, cfg: EngineConfig = DEFAULT_CONFIG) -> float:
    """
    C(T) = inf over unit x and angles phi of ||Re(e^{i phi} T) x||.

    The two infima commute, and the inner one is the smallest |eigenvalue| of the
    Hermitian H_phi, so this minimizes min_i |lambda_i(H_phi)| over phi in [0, pi).
    """
    a = _square(T, "c_quantity")
    value, _ = optimize_angle(lambda th: np.min(np.abs(rotated_spectra(a, th, cfg)), axis=1),
                              math.pi, cfg, maximize=False)
    return max(value, 0.0)


def range_boundary(T: MatrixLike, n_samples: int) -> List[RangeSample]:
    """
    Supporting points of W(T) at theta_k = 2 pi k / n_samples.

    Each boundary point is <T x_k, x_k> for a unit eigenvector x_k of the largest
    eigenvalue of H_theta_k. For a repeated largest eigenvalue the first such
    eigenvector column is used.
    """
    a = _square(T, "range_boundary")
    if n_samples < 3:
        raise DimensionError(f"range_boundary needs at least 3 samples, got {n_samples}")
    thetas = 2.0 * math.pi * np.arange(n_samples) / n_samples
    values, vectors = np.linalg.eigh(rotated_stack(a, thetas))

    top = values[:, -1]
    first = np.argmax(values >= (top - MULTIPLICITY_GAP)[:, None], axis=1)
    x = vectors[np.arange(n_samples), :, first]
    points = np.einsum("ki,ij,kj->k", x.conj(), a, x)
    return [
        RangeSample(theta=float(theta), lambda_max=float(lam), boundary_point=complex(z))
        for theta, lam, z in zip(thetas, top, points)
    ]
