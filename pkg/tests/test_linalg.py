"""Tests for core/linalg.py: matrix arithmetic, eigensolvers, norms, spectral radius."""

import math

import numpy as np
import pytest
from numpy.testing import assert_allclose

from core.errors import (
    ConfigError, ConvergenceError, DimensionError, InputError, NotHermitianError, NumericalError
)
from core.linalg import (
    ComplexMatrix,
    EngineConfig,
    adjoint,
    assemble_blocks,
    hermitian_eigenvalues,
    jacobi_eigh,
    mat_add,
    mat_mul,
    mat_sub,
    operator_norm,
    psd_power,
    scale,
    spectral_radius_estimate,
    split_blocks,
)
from core.polyzero import Polynomial, companion_matrix, roots


class TestEngineConfig:
    def test_defaults(self):
        cfg = EngineConfig()
        assert cfg.theta_grid == 3600
        assert cfg.eig_tol == 1e-12
        assert cfg.refine_tol == 1e-10
        assert cfg.max_iter == 10000
        assert cfg.gelfand_rel_tol == 1e-6

    def test_theta_grid_floor(self):
        with pytest.raises(ConfigError, match="theta_grid"):
            EngineConfig(theta_grid=4)

    @pytest.mark.parametrize("field, value", [("theta_grid", 100.5), ("max_iter", 10.0), ("workers", True)])
    def test_counts_must_be_integers(self, field, value):
        with pytest.raises(ConfigError, match=f"{field} must be an integer"):
            EngineConfig(**{field: value})

    def test_non_positive_tolerance(self):
        with pytest.raises(ConfigError, match="eig_tol"):
            EngineConfig(eig_tol=0.0)

    def test_unknown_eigensolver(self):
        with pytest.raises(ConfigError):
            EngineConfig(eigensolver="qr")

    def test_overrides_skip_none(self):
        cfg = EngineConfig().with_overrides(theta_grid=720, eig_tol=None)
        assert cfg.theta_grid == 720
        assert cfg.eig_tol == 1e-12

    def test_unknown_override(self):
        with pytest.raises(ConfigError, match="grid_size"):
            EngineConfig().with_overrides(grid_size=10)

    def test_mapping_round_trip(self):
        cfg = EngineConfig(theta_grid=100, workers=2)
        assert EngineConfig.from_mapping(cfg.to_dict()) == cfg


class TestComplexMatrix:
    def test_entries_length(self):
        with pytest.raises(DimensionError, match="needs 4 entries, got 3"):
            ComplexMatrix(2, 2, [1, 2, 3])

    def test_non_finite(self):
        with pytest.raises(InputError):
            ComplexMatrix(1, 2, [1.0, float("nan")])

    def test_read_only(self):
        m = ComplexMatrix.identity(2)
        with pytest.raises(ValueError):
            m.array[0, 0] = 5

    def test_row_major(self):
        m = ComplexMatrix(2, 3, range(6))
        assert m[1, 0] == 3
        assert m.to_rows() == [[0, 1, 2], [3, 4, 5]]

    def test_equality(self):
        assert ComplexMatrix.from_rows([[1, 0], [0, 1]]) == ComplexMatrix.identity(2)
        assert ComplexMatrix.identity(2) != ComplexMatrix.zeros(2)


class TestAdjoint:
    def test_scalar(self):
        assert adjoint([[1j]]) == ComplexMatrix.from_rows([[-1j]])

    def test_jordan(self, jordan):
        assert adjoint(jordan) == ComplexMatrix.from_rows([[0, 0], [1, 0]])

    def test_involution(self, random_matrix):
        a = random_matrix(3, 4)
        assert adjoint(a).shape == (4, 3)
        assert adjoint(adjoint(a)) == a

    def test_norm_isometry(self, random_matrix):
        for _ in range(20):
            a = random_matrix(4)
            assert abs(operator_norm(adjoint(a)) - operator_norm(a)) <= 1e-9


class TestArithmetic:
    def test_identity_multiply(self, random_matrix):
        a = random_matrix(2)
        assert mat_mul(ComplexMatrix.identity(2), a).allclose(a)

    def test_scale_identity(self):
        assert scale(2, ComplexMatrix.identity(2)) == ComplexMatrix.diag([2, 2])

    def test_adjoint_anti_homomorphism(self, random_matrix):
        a, b = random_matrix(3), random_matrix(3)
        assert adjoint(a @ b).allclose(adjoint(b) @ adjoint(a))

    def test_operators(self, random_matrix):
        a, b = random_matrix(3), random_matrix(3)
        assert (a + b - b).allclose(a)
        assert (-a).allclose(scale(-1, a))
        assert (2 * a).allclose(mat_add(a, a))

    def test_mul_mismatch_names_shapes(self):
        with pytest.raises(DimensionError, match="3x4 by 3x4"):
            mat_mul(ComplexMatrix.zeros(3, 4), ComplexMatrix.zeros(3, 4))

    def test_add_mismatch_names_shapes(self):
        with pytest.raises(DimensionError, match="2x2 and 3x3"):
            mat_add(ComplexMatrix.zeros(2), ComplexMatrix.zeros(3))

    def test_sub_mismatch(self):
        with pytest.raises(DimensionError):
            mat_sub(ComplexMatrix.zeros(2), ComplexMatrix.zeros(2, 3))


class TestHermitianEigenvalues:
    def test_diagonal(self):
        values = hermitian_eigenvalues(ComplexMatrix.diag([3, -1])).values
        assert_allclose(values, [-1, 3], atol=1e-14)

    def test_pauli_y(self):
        values = hermitian_eigenvalues([[0, -1j], [1j, 0]]).values
        assert_allclose(values, [-1, 1], atol=1e-14)

    def test_trace(self, random_hermitian):
        h = random_hermitian(5)
        values = hermitian_eigenvalues(h).values
        assert abs(values.sum() - np.trace(h.array).real) <= 1e-10

    def test_matches_lapack(self, random_hermitian):
        h = random_hermitian(6)
        jacobi = hermitian_eigenvalues(h).values
        lapack = hermitian_eigenvalues(h, EngineConfig(eigensolver="lapack")).values
        assert_allclose(jacobi, lapack, atol=1e-10)

    def test_reconstruction(self, random_hermitian):
        h = random_hermitian(5)
        cfg = EngineConfig()
        decomposition = hermitian_eigenvalues(h, cfg, vectors=True)
        v = decomposition.vectors.array
        rebuilt = (v * decomposition.values) @ v.conj().T
        size = np.linalg.norm(h.array)
        assert np.linalg.norm(h.array - rebuilt) <= 10 * cfg.eig_tol * size
        assert_allclose(v.conj().T @ v, np.eye(5), atol=1e-12)

    def test_permutation_invariance(self, random_hermitian, rng):
        h = random_hermitian(5).array
        p = np.eye(5)[rng.permutation(5)]
        a = hermitian_eigenvalues(h).values
        b = hermitian_eigenvalues(p.T @ h @ p).values
        assert_allclose(a, b, atol=1e-9)

    def test_extremes(self):
        decomposition = hermitian_eigenvalues(ComplexMatrix.diag([2, -5, 1]))
        assert decomposition.lambda_min == -5
        assert decomposition.lambda_max == 2

    def test_not_hermitian(self, jordan):
        with pytest.raises(NotHermitianError):
            hermitian_eigenvalues(jordan)

    def test_not_square(self):
        with pytest.raises(DimensionError):
            hermitian_eigenvalues(ComplexMatrix.zeros(2, 3))

    def test_sweep_cap(self, random_hermitian):
        with pytest.raises(ConvergenceError, match="1 sweeps"):
            jacobi_eigh(random_hermitian(6).array, EngineConfig(max_iter=1))


class TestOperatorNorm:
    def test_jordan(self, jordan):
        assert abs(operator_norm(jordan) - 1.0) <= 1e-12

    def test_permutation(self):
        p = ComplexMatrix.from_rows([[0, 1, 0], [0, 0, 1], [1, 0, 0]])
        assert abs(operator_norm(p) - 1.0) <= 1e-12

    def test_rectangular(self, random_matrix):
        a = random_matrix(3, 5)
        assert abs(operator_norm(a) - np.linalg.norm(a.array, 2)) <= 1e-10

    def test_companion_power_iteration(self, example_poly, rng):
        c = companion_matrix(example_poly).array
        gram = c.conj().T @ c
        x = rng.normal(size=5) + 1j * rng.normal(size=5)
        for _ in range(10000):
            x = gram @ x
            x /= np.linalg.norm(x)
        oracle = math.sqrt((x.conj() @ gram @ x).real)
        assert abs(operator_norm(c) - oracle) <= 1e-8

    def test_submultiplicative(self, random_matrix):
        for _ in range(20):
            a, b = random_matrix(4), random_matrix(4)
            assert operator_norm(a @ b) <= operator_norm(a) * operator_norm(b) + 1e-9


class TestPsdPower:
    def test_square_root(self):
        root = psd_power(ComplexMatrix.diag([4, 9]), 0.5)
        assert root.allclose(ComplexMatrix.diag([2, 3]), atol=1e-12)

    def test_identity_power(self, random_matrix):
        a = random_matrix(4).array
        gram = a.conj().T @ a
        assert psd_power(gram, 1).allclose(gram, atol=1e-12)

    def test_clamps_round_off(self):
        h = ComplexMatrix.diag([1.0, -1e-15])
        assert psd_power(h, 2).allclose(ComplexMatrix.diag([1.0, 0.0]), atol=1e-14)

    def test_rejects_indefinite(self):
        with pytest.raises(NumericalError, match="positive semidefinite"):
            psd_power(ComplexMatrix.diag([1.0, -0.5]), 2)


class TestSpectralRadiusEstimate:
    def test_normal(self):
        assert abs(spectral_radius_estimate(ComplexMatrix.diag([2, 0.5])) - 2.0) <= 1e-6

    def test_nilpotent(self, jordan):
        assert spectral_radius_estimate(jordan) < 1e-3

    def test_zero(self):
        assert spectral_radius_estimate(ComplexMatrix.zeros(3)) == 0.0

    def test_companion(self, example_poly):
        rho = spectral_radius_estimate(companion_matrix(example_poly))
        largest = max(abs(z) for z in roots(example_poly))
        assert largest - 1e-6 <= rho <= largest + 1e-3

    def test_dominates_every_root(self, rng):
        for _ in range(10):
            coefficients = [1] + list(rng.uniform(-1, 1, size=4) + 1j * rng.uniform(-1, 1, size=4))
            c = companion_matrix(Polynomial.from_descending(coefficients))
            rho = spectral_radius_estimate(c)
            for z in roots(coefficients):
                assert abs(z) <= rho + 1e-6

    def test_not_square(self):
        with pytest.raises(DimensionError):
            spectral_radius_estimate(ComplexMatrix.zeros(2, 3))


class TestBlocks:
    def test_split_then_assemble(self, random_matrix):
        a = random_matrix(5)
        blocks = split_blocks(a, [2, 3])
        assert blocks[0][1].shape == (2, 3)
        assert assemble_blocks(blocks) == a

    def test_non_conformable(self):
        blocks = [[ComplexMatrix.zeros(2), ComplexMatrix.zeros(2, 1)],
                  [ComplexMatrix.zeros(2, 2), ComplexMatrix.zeros(1)]]
        with pytest.raises(DimensionError, match="non-conformable"):
            assemble_blocks(blocks)

    def test_bad_sizes(self, random_matrix):
        with pytest.raises(DimensionError):
            split_blocks(random_matrix(4), [2, 3])
