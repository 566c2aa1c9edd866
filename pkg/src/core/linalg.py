#!/usr/bin/env python3
# -*- coding: utf-8 -*-

"""
Dense complex-matrix arithmetic, Hermitian eigensolvers, operator norm and
spectral-radius estimation.
"""

import cmath
import logging
import math
from dataclasses import dataclass, fields, replace
from typing import Any, Dict, Iterable, List, Mapping, Optional, Sequence, Tuple, Union

import numpy as np

from core.errors import (
    ConfigError, ConvergenceError, DimensionError, InputError,
    NotHermitianError, NumericalError
)

# Configure logger for this module
logger = logging.getLogger('numradius.linalg')

EIGENSOLVERS = ("jacobi", "lapack")

# Relative size below which a negative eigenvalue of a PSD factor is round-off
PSD_CLAMP_REL = 1e-9


@dataclass(frozen=True)
class EngineConfig:
    """
    Numerical settings shared by every estimator.

    Attributes:
        theta_grid: Number of uniform angle samples per optimization
        eig_tol: Relative Jacobi off-diagonal threshold and Hermiticity tolerance
        refine_tol: Golden-section bracket width at which refinement stops (radians)
        max_iter: Iteration cap (Jacobi sweeps, Durand-Kerner steps, golden-section steps)
        gelfand_rel_tol: Relative change that stops the Gelfand squaring
        gelfand_max_squarings: Hard cap on the number of squarings
        root_tol: Durand-Kerner step size (relative to the root scale) that counts as converged
        eigensolver: "jacobi" (cyclic Jacobi rotations) or "lapack" (numpy.linalg.eigh)
        workers: Threads used to evaluate angle grids; 1 evaluates sequentially
        max_brackets: Grid-local extrema refined per optimization
        bound_slack: Tolerance used when cross-checking bounds against w(T)
    """
    theta_grid: int = 3600
    eig_tol: float = 1e-12
    refine_tol: float = 1e-10
    max_iter: int = 10000
    gelfand_rel_tol: float = 1e-6
    gelfand_max_squarings: int = 20
    root_tol: float = 1e-12
    eigensolver: str = "jacobi"
    workers: int = 1
    max_brackets: int = 8
    bound_slack: float = 5e-6

    def __post_init__(self):
        for name in ("theta_grid", "max_iter", "gelfand_max_squarings", "workers", "max_brackets"):
            value = getattr(self, name)
            if isinstance(value, bool) or not isinstance(value, int):
                raise ConfigError(f"{name} must be an integer, got {value!r}")
        if self.theta_grid < 8:
            raise ConfigError(f"theta_grid must be at least 8, got {self.theta_grid}")
        for name in ("eig_tol", "refine_tol", "gelfand_rel_tol", "root_tol", "bound_slack"):
            value = getattr(self, name)
            if not (isinstance(value, (int, float)) and math.isfinite(value) and value > 0):
                raise ConfigError(f"{name} must be a positive number, got {value!r}")
        for name in ("max_iter", "gelfand_max_squarings", "workers", "max_brackets"):
            if getattr(self, name) < 1:
                raise ConfigError(f"{name} must be a positive integer, got {getattr(self, name)}")
        if self.eigensolver not in EIGENSOLVERS:
            raise ConfigError(f"eigensolver must be one of {EIGENSOLVERS}, got {self.eigensolver!r}")

    def with_overrides(self, **overrides: Any) -> "EngineConfig":
        """Return a copy with every non-None override applied"""
        changes = {key: value for key, value in overrides.items() if value is not None}
        unknown = set(changes) - {f.name for f in fields(self)}
        if unknown:
            raise ConfigError(f"unknown config field(s): {', '.join(sorted(unknown))}")
        return replace(self, **changes)

    @classmethod
    def from_mapping(cls, data: Mapping[str, Any]) -> "EngineConfig":
        """Build a config from a plain mapping such as a parsed JSON file"""
        return cls().with_overrides(**dict(data))

    def to_dict(self) -> Dict[str, Any]:
        return {f.name: getattr(self, f.name) for f in fields(self)}


DEFAULT_CONFIG = EngineConfig()


class ComplexMatrix:
    """
    Dense rows x cols complex matrix with finite entries.

    Entries live in a read-only complex128 array; every operation returns a new
    matrix, so instances can be shared freely between threads.
    """

    __slots__ = ("_data",)

    def __init__(self, rows: int, cols: int, entries: Iterable[complex]):
        if rows < 1 or cols < 1:
            raise DimensionError(f"matrix dimensions must be positive, got {rows}x{cols}")
        data = np.array(list(entries) if not isinstance(entries, np.ndarray) else entries,
                        dtype=np.complex128).reshape(-1)
        if data.size != rows * cols:
            raise DimensionError(
                f"a {rows}x{cols} matrix needs {rows * cols} entries, got {data.size}"
            )
        if not np.all(np.isfinite(data)):
            raise InputError("matrix entries must be finite (no NaN/Inf)")
        data = data.reshape(rows, cols)
        data.setflags(write=False)
        self._data = data

    @classmethod
    def from_array(cls, array: Any) -> "ComplexMatrix":
        arr = np.asarray(array, dtype=np.complex128)
        if arr.ndim != 2:
            raise DimensionError(f"expected a 2-D array, got shape {arr.shape}")
        return cls(arr.shape[0], arr.shape[1], arr.copy())

    @classmethod
    def from_rows(cls, rows: Sequence[Sequence[complex]]) -> "ComplexMatrix":
        return cls.from_array(rows)

    @classmethod
    def identity(cls, n: int) -> "ComplexMatrix":
        return cls.from_array(np.eye(n))

    @classmethod
    def zeros(cls, rows: int, cols: Optional[int] = None) -> "ComplexMatrix":
        return cls.from_array(np.zeros((rows, rows if cols is None else cols)))

    @classmethod
    def diag(cls, values: Sequence[complex]) -> "ComplexMatrix":
        return cls.from_array(np.diag(np.asarray(values, dtype=np.complex128)))

    @property
    def rows(self) -> int:
        return self._data.shape[0]

    @property
    def cols(self) -> int:
        return self._data.shape[1]

    @property
    def shape(self) -> Tuple[int, int]:
        return self._data.shape

    @property
    def is_square(self) -> bool:
        return self.rows == self.cols

    @property
    def array(self) -> np.ndarray:
        """Read-only view of the entries"""
        return self._data

    @property
    def entries(self) -> Tuple[complex, ...]:
        """Row-major entries"""
        return tuple(complex(z) for z in self._data.reshape(-1))

    def to_rows(self) -> List[List[complex]]:
        return [[complex(z) for z in row] for row in self._data]

    def __getitem__(self, index: Tuple[int, int]) -> complex:
        return complex(self._data[index])

    def __matmul__(self, other: "ComplexMatrix") -> "ComplexMatrix":
        return mat_mul(self, other)

    def __add__(self, other: "ComplexMatrix") -> "ComplexMatrix":
        return mat_add(self, other)

    def __sub__(self, other: "ComplexMatrix") -> "ComplexMatrix":
        return mat_sub(self, other)

    def __mul__(self, c: complex) -> "ComplexMatrix":
        return scale(c, self)

    __rmul__ = __mul__

    def __neg__(self) -> "ComplexMatrix":
        return scale(-1, self)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, ComplexMatrix):
            return NotImplemented
        return self.shape == other.shape and bool(np.array_equal(self._data, other._data))

    __hash__ = None

    def allclose(self, other: "MatrixLike", atol: float = 1e-12) -> bool:
        other = as_matrix(other)
        return self.shape == other.shape and bool(np.allclose(self._data, other.array, rtol=0.0, atol=atol))

    def __repr__(self) -> str:
        return f"ComplexMatrix({self.rows}x{self.cols}, {self.to_rows()!r})"


MatrixLike = Union[ComplexMatrix, np.ndarray, Sequence[Sequence[complex]]]


@dataclass(frozen=True)
class EigenDecomposition:
    """Ascending real eigenvalues, with orthonormal eigenvectors as columns when requested"""
    values: np.ndarray
    vectors: Optional[ComplexMatrix] = None

    @property
    def lambda_min(self) -> float:
        return float(self.values[0])

    @property
    def lambda_max(self) -> float:
        return float(self.values[-1])


def as_matrix(value: MatrixLike) -> ComplexMatrix:
    if isinstance(value, ComplexMatrix):
        return value
    return ComplexMatrix.from_array(value)


def as_array(value: MatrixLike) -> np.ndarray:
    """Validated read-only array for any matrix-like value"""
    return as_matrix(value).array


def require_square(a: np.ndarray, operation: str) -> None:
    if a.ndim != 2 or a.shape[0] != a.shape[1]:
        raise DimensionError(f"{operation} needs a square matrix, got shape {a.shape[0]}x{a.shape[1]}")


def hermitize(a: np.ndarray) -> np.ndarray:
    """Exactly Hermitian (A + A*)/2"""
    return 0.5 * (a + a.conj().T)


def _shape_text(a: np.ndarray) -> str:
    return f"{a.shape[0]}x{a.shape[1]}"


def adjoint(A: MatrixLike) -> ComplexMatrix:
    """Conjugate transpose T*"""
    return ComplexMatrix.from_array(as_array(A).conj().T)


def mat_add(A: MatrixLike, B: MatrixLike) -> ComplexMatrix:
    a, b = as_array(A), as_array(B)
    if a.shape != b.shape:
        raise DimensionError(f"cannot add {_shape_text(a)} and {_shape_text(b)} matrices")
    return ComplexMatrix.from_array(a + b)


def mat_sub(A: MatrixLike, B: MatrixLike) -> ComplexMatrix:
    a, b = as_array(A), as_array(B)
    if a.shape != b.shape:
        raise DimensionError(f"cannot subtract {_shape_text(b)} from {_shape_text(a)} matrix")
    return ComplexMatrix.from_array(a - b)


def mat_mul(A: MatrixLike, B: MatrixLike) -> ComplexMatrix:
    a, b = as_array(A), as_array(B)
    if a.shape[1] != b.shape[0]:
        raise DimensionError(f"cannot multiply {_shape_text(a)} by {_shape_text(b)} matrix")
    return ComplexMatrix.from_array(a @ b)


def scale(c: complex, A: MatrixLike) -> ComplexMatrix:
    if not cmath.isfinite(complex(c)):
        raise InputError(f"scale factor must be finite, got {c!r}")
    return ComplexMatrix.from_array(complex(c) * as_array(A))


def _off_diagonal_norm(a: np.ndarray) -> float:
    return float(np.linalg.norm(a - np.diag(np.diag(a))))


def jacobi_eigh(h: np.ndarray, cfg: EngineConfig = DEFAULT_CONFIG,
                want_vectors: bool = True) -> Tuple[np.ndarray, Optional[np.ndarray]]:
    """
    Cyclic Jacobi rotations on a Hermitian matrix.

    Each rotation first removes the phase of the pivot a_pq with diag(1, e^{-i arg a_pq})
    and then applies the real symmetric Jacobi rotation that zeroes it.

    Args:
        h: Exactly Hermitian square array
        cfg: Supplies eig_tol (relative off-diagonal threshold) and max_iter (sweeps)
        want_vectors: Accumulate the eigenvector matrix

    Returns:
        (eigenvalues ascending, eigenvectors as columns or None)
    """
    a = np.array(h, dtype=np.complex128, copy=True)
    n = a.shape[0]
    v = np.eye(n, dtype=np.complex128) if want_vectors else None
    threshold = cfg.eig_tol * float(np.linalg.norm(a))
    skip_below = threshold / n

    sweeps = 0
    off = _off_diagonal_norm(a)
    while off > threshold:
        if sweeps >= cfg.max_iter:
            raise ConvergenceError(
                f"Jacobi eigensolver did not converge in {cfg.max_iter} sweeps "
                f"(off-diagonal norm {off:.3e}, threshold {threshold:.3e})",
                best=np.sort(a.diagonal().real),
            )
        for p in range(n - 1):
            for q in range(p + 1, n):
                apq = a[p, q]
                modulus = abs(apq)
                if modulus <= skip_below:
                    continue
                phase = (apq / modulus).conjugate()
                angle = 0.5 * math.atan2(2.0 * modulus, a[q, q].real - a[p, p].real)
                c, s = math.cos(angle), math.sin(angle)
                rot = np.array([[c, s], [-s * phase, c * phase]], dtype=np.complex128)
                pair = [p, q]
                a[:, pair] = a[:, pair] @ rot
                a[pair, :] = rot.conj().T @ a[pair, :]
                a[p, q] = a[q, p] = 0.0
                a[p, p] = a[p, p].real
                a[q, q] = a[q, q].real
                if v is not None:
                    v[:, pair] = v[:, pair] @ rot
        sweeps += 1
        off = _off_diagonal_norm(a)

    logger.debug(f"Jacobi converged after {sweeps} sweeps on a {n}x{n} matrix")
    values = a.diagonal().real
    order = np.argsort(values, kind="stable")
    return values[order], (v[:, order] if v is not None else None)


def hermitian_spectrum(h: np.ndarray, cfg: EngineConfig,
                        want_vectors: bool) -> Tuple[np.ndarray, Optional[np.ndarray]]:
    if cfg.eigensolver == "lapack":
        if want_vectors:
            return np.linalg.eigh(h)
        return np.linalg.eigvalsh(h), None
    return jacobi_eigh(h, cfg, want_vectors)


def hermitian_eigenvalues(A: MatrixLike, cfg: EngineConfig = DEFAULT_CONFIG,
                          vectors: bool = False) -> EigenDecomposition:
    """
    Eigenvalues (ascending) of a Hermitian matrix, optionally with eigenvectors.

    Args:
        A: Square matrix, Hermitian up to ||A - A*||_F <= eig_tol * ||A||_F
        cfg: Engine configuration; ``eigensolver`` selects Jacobi or LAPACK
        vectors: Also return orthonormal eigenvectors

    Returns:
        EigenDecomposition with sorted real eigenvalues

    Raises:
        DimensionError: A is not square
        NotHermitianError: A is not Hermitian within tolerance
        ConvergenceError: Jacobi ran out of sweeps
    """
    a = as_array(A)
    require_square(a, "hermitian_eigenvalues")
    size = float(np.linalg.norm(a))
    skew = float(np.linalg.norm(a - a.conj().T))
    if skew > cfg.eig_tol * size:
        raise NotHermitianError(
            f"matrix is not Hermitian: ||A - A*||_F = {skew:.3e} exceeds {cfg.eig_tol:g} * ||A||_F"
        )
    values, vecs = hermitian_spectrum(hermitize(a), cfg, vectors)
    return EigenDecomposition(
        values=np.asarray(values, dtype=float),
        vectors=ComplexMatrix.from_array(vecs) if vecs is not None else None,
    )


def operator_norm(A: MatrixLike, cfg: EngineConfig = DEFAULT_CONFIG) -> float:
    """Largest singular value, sqrt(lambda_max(A*A)), for any rectangular A"""
    a = as_array(A)
    gram = a.conj().T @ a if a.shape[0] >= a.shape[1] else a @ a.conj().T
    values, _ = hermitian_spectrum(hermitize(gram), cfg, False)
    return math.sqrt(max(float(values[-1]), 0.0))


def psd_power(H: MatrixLike, r: float, cfg: EngineConfig = DEFAULT_CONFIG) -> ComplexMatrix:
    """
    H^r for a positive semidefinite Hermitian H via spectral calculus.

    Negative eigenvalues within PSD_CLAMP_REL of the spectral scale are treated as
    round-off and clamped to zero before powering.
    """
    h = hermitize(as_array(H))
    require_square(h, "psd_power")
    values, vecs = hermitian_spectrum(h, cfg, True)
    tolerance = PSD_CLAMP_REL * max(1.0, float(np.max(np.abs(values))))
    if values[0] < -tolerance:
        raise NumericalError(f"matrix is not positive semidefinite (lambda_min = {values[0]:.3e})")
    powered = (vecs * np.clip(values, 0.0, None) ** r) @ vecs.conj().T
    return ComplexMatrix.from_array(hermitize(powered))


def spectral_radius_estimate(A: MatrixLike, cfg: EngineConfig = DEFAULT_CONFIG) -> float:
    """
    Gelfand estimate ||A^(2^k)||^(1/2^k) of the spectral radius by repeated squaring.

    The iterate is renormalized after every squaring and its logarithmic scale is
    accumulated separately, so the estimate never overflows for well-posed input.
    The returned value is always an upper estimate of rho(A).

    Raises:
        DimensionError: A is not square
        NumericalError: The squared iterates stopped being finite
    """
    a = np.array(as_array(A))
    require_square(a, "spectral_radius_estimate")
    norm = operator_norm(a, cfg)
    if norm == 0.0:
        return 0.0

    b = a / norm
    log_scale = math.log(norm)
    value = norm
    for k in range(1, cfg.gelfand_max_squarings + 1):
        b = b @ b
        nu = operator_norm(b, cfg) if np.all(np.isfinite(b)) else math.inf
        if nu == 0.0:
            logger.debug(f"Gelfand squaring reached the zero matrix after {k} steps")
            return 0.0
        if not math.isfinite(nu):
            raise NumericalError("Gelfand squaring overflowed despite rescaling; input is ill-conditioned")
        log_scale = 2.0 * log_scale + math.log(nu)
        b = b / nu
        estimate = math.exp(log_scale / 2 ** k)
        converged = abs(value - estimate) < cfg.gelfand_rel_tol * value
        value = min(value, estimate)
        if converged:
            logger.debug(f"Gelfand estimate converged after {k} squarings: {value:.12g}")
            break
    return value


def block_sizes(blocks: Sequence[Sequence[MatrixLike]]) -> List[int]:
    """
    Diagonal block sizes of a conformable square partition.

    Raises:
        DimensionError: The grid is not square or a block has the wrong shape
    """
    k = len(blocks)
    if k == 0 or any(len(row) != k for row in blocks):
        raise DimensionError("block partition must be a non-empty square grid of blocks")
    sizes = []
    for i in range(k):
        diagonal = as_array(blocks[i][i])
        if diagonal.shape[0] != diagonal.shape[1]:
            raise DimensionError(f"diagonal block ({i},{i}) must be square, got {_shape_text(diagonal)}")
        sizes.append(diagonal.shape[0])
    for i in range(k):
        for j in range(k):
            shape = as_array(blocks[i][j]).shape
            if shape != (sizes[i], sizes[j]):
                raise DimensionError(
                    f"non-conformable partition: block ({i},{j}) is {shape[0]}x{shape[1]}, "
                    f"expected {sizes[i]}x{sizes[j]}"
                )
    return sizes


def assemble_blocks(blocks: Sequence[Sequence[MatrixLike]]) -> ComplexMatrix:
    """Assemble a conformable grid of blocks into one matrix"""
    block_sizes(blocks)
    return ComplexMatrix.from_array(np.block([[as_array(b) for b in row] for row in blocks]))


def split_blocks(A: MatrixLike, sizes: Sequence[int]) -> List[List[ComplexMatrix]]:
    """Partition a square matrix into blocks with the given diagonal sizes"""
    a = as_array(A)
    require_square(a, "split_blocks")
    if any(s < 1 for s in sizes) or sum(sizes) != a.shape[0]:
        raise DimensionError(f"block sizes {list(sizes)} do not partition a {_shape_text(a)} matrix")
    edges = np.concatenate(([0], np.cumsum(sizes)))
    return [
        [ComplexMatrix.from_array(a[edges[i]:edges[i + 1], edges[j]:edges[j + 1]]) for j in range(len(sizes))]
        for i in range(len(sizes))
    ]
