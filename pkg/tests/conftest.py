"""Shared fixtures: seeded generators, random matrices and reference inputs."""

import json

import numpy as np
import pytest

from core.linalg import ComplexMatrix, EngineConfig
from core.polyzero import Polynomial


@pytest.fixture
def rng():
    return np.random.default_rng(20240611)


@pytest.fixture(scope="session")
def fast_cfg():
    """Coarser angle grid and LAPACK spectra for the large randomized suites"""
    return EngineConfig(theta_grid=720, eigensolver="lapack")


def unit_disk(rng, shape):
    """Entries uniform in the closed unit disk"""
    radius = np.sqrt(rng.uniform(0.0, 1.0, size=shape))
    angle = rng.uniform(0.0, 2.0 * np.pi, size=shape)
    return radius * np.exp(1j * angle)


@pytest.fixture
def disk(rng):
    """Sampler of complex arrays with entries uniform in the unit disk"""
    return lambda *shape: unit_disk(rng, shape)


@pytest.fixture
def random_matrix(rng):
    def make(n, m=None):
        return ComplexMatrix.from_array(unit_disk(rng, (n, n if m is None else m)))
    return make


@pytest.fixture
def random_hermitian(rng):
    def make(n):
        a = unit_disk(rng, (n, n))
        return ComplexMatrix.from_array(0.5 * (a + a.conj().T))
    return make


@pytest.fixture
def jordan():
    return ComplexMatrix.from_rows([[0, 1], [0, 0]])


@pytest.fixture
def triangular_example():
    return ComplexMatrix.from_rows([[1, 1, 2], [0, -1, 1], [0, 0, 0]])


@pytest.fixture
def example_poly():
    """z^5 + z^4 - 2"""
    return Polynomial.from_descending([1, 1, 0, 0, 0, -2])


@pytest.fixture
def matrix_file(tmp_path):
    """Write a matrix to a JSON matrix file and return its path"""
    def write(matrix, name="matrix.json"):
        m = ComplexMatrix.from_array(np.asarray(matrix, dtype=complex))
        path = tmp_path / name
        path.write_text(json.dumps({
            "rows": m.rows,
            "cols": m.cols,
            "entries": [[z.real, z.imag] for z in m.entries],
        }))
        return str(path)
    return write
