"""
End-to-end checks on reference inputs and large randomized suites.

The randomized classes are marked slow; run them with plain `pytest`, skip them
with `pytest -m "not slow"`.
"""

import math
import time

import numpy as np
import pytest

from core.bounds import (
    BoundKind,
    competitor_bounds,
    lower_thm33,
    matrix_bound_report,
    upper_thm22,
    upper_thm27_spectral,
)
from core.linalg import ComplexMatrix, operator_norm, spectral_radius_estimate
from core.numrange import c_quantity, crawford_number, numerical_radius, range_boundary, rotated_spectra
from core.polyzero import Polynomial, classical_bounds, new_bound_thm41, new_bound_thm42, zero_bound_reports

CLASSICAL_TABLE = [2.449, 3.000, 2.484, 2.085, 2.407, 2.477, 2.367, 2.000]


def unit_disk(rng, shape):
    radius = np.sqrt(rng.uniform(0.0, 1.0, size=shape))
    return radius * np.exp(1j * rng.uniform(0.0, 2.0 * np.pi, size=shape))


def polygon_distance(points):
    """Distance from 0 to the convex polygon with the given vertices in order"""
    a = points
    b = np.roll(points, -1)
    cross = (a.conj() * b).imag
    if np.all(cross >= 0) or np.all(cross <= 0):
        return 0.0
    edge = b - a
    length = np.maximum(np.abs(edge) ** 2, 1e-300)
    t = np.clip(-(a.conj() * edge).real / length, 0.0, 1.0)
    return float(np.min(np.abs(a + t * edge)))


class TestReferenceValues:
    def test_classical_table(self, example_poly):
        start = time.perf_counter()
        values = [b.value for b in classical_bounds(example_poly)]
        for value, expected in zip(values, CLASSICAL_TABLE):
            assert abs(value - expected) <= 5e-3
        assert time.perf_counter() - start < 5.0

    def test_new_polynomial_bounds(self, example_poly):
        thm41 = new_bound_thm41(example_poly).value
        assert abs(thm41 - 1.90492) <= 5e-3
        assert abs(new_bound_thm42(example_poly).value - 1.77650) <= 5e-3
        assert thm41 < min(b.value for b in classical_bounds(example_poly))

    def test_triangular_example(self, triangular_example):
        thm22 = upper_thm22(triangular_example).value
        aok = next(b.value for b in competitor_bounds(triangular_example) if b.name == "aok_quadratic")
        assert thm22 <= 1.784 + 5e-3
        assert abs(aok - 1.83774) <= 5e-3
        assert thm22 < aok


@pytest.mark.slow
class TestNilpotentEquality:
    def test_square_zero(self, rng, fast_cfg):
        for _ in range(50):
            n = int(rng.integers(2, 7))
            x = unit_disk(rng, n)
            y = unit_disk(rng, n)
            y -= (np.vdot(x, y) / np.vdot(x, x)) * x
            t = np.outer(x, y.conj())
            expected = 0.5 * math.sqrt(operator_norm(t @ t.conj().T + t.conj().T @ t, fast_cfg))
            assert abs(numerical_radius(t, fast_cfg) - expected) <= 1e-5

    def test_cube_zero(self, rng, fast_cfg):
        for _ in range(50):
            t = np.triu(unit_disk(rng, (3, 3)), k=1)
            t_adj = t.conj().T
            s = t @ t @ t_adj + t_adj @ t @ t + t @ t_adj @ t
            w = numerical_radius(t, fast_cfg)
            assert abs(w ** 3 - 0.25 * numerical_radius(s, fast_cfg)) <= 1e-4


@pytest.fixture(scope="module")
def random_reports(fast_cfg):
    rng = np.random.default_rng(500)
    reports = []
    start = time.perf_counter()
    for _ in range(500):
        n = int(rng.integers(2, 9))
        reports.append(matrix_bound_report(unit_disk(rng, (n, n)), fast_cfg))
    return reports, time.perf_counter() - start


@pytest.mark.slow
class TestRandomMatrices:
    def test_sandwich(self, random_reports):
        reports, _ = random_reports
        for report in reports:
            w = report.numerical_radius
            for b in report.lower():
                assert b.value <= w + 5e-6, b.name
            for b in report.upper():
                assert w <= b.value + 1e-5, b.name
            assert report.warnings == []

    def test_improvement_orderings(self, random_reports):
        reports, _ = random_reports
        for report in reports:
            v = {b.name: b.value for b in report.bounds}
            assert v["thm21_upper"] <= v["aok_quartic"] + 5e-6
            for r in (1, 2, 3):
                assert v[f"thm23_upper_r{r}"] <= v[f"sattari_r{r}"] + 5e-6
            assert v["thm33_lower_re"] >= v["kmy_lower_re"] - 1e-9
            assert v["thm33_lower_im"] >= v["kmy_lower_im"] - 1e-9
            assert v["thm31_lower"] >= v["kittaneh_lower_quarter_p"] - 5e-6

    def test_runtime(self, random_reports):
        _, elapsed = random_reports
        assert elapsed < 60.0


@pytest.mark.slow
class TestRootValidity:
    def test_random_polynomials(self, fast_cfg):
        rng = np.random.default_rng(1000)
        polys = []
        for _ in range(1000):
            degree = int(rng.integers(2, 13))
            scale = rng.choice([0.1, 1.0, 10.0])
            polys.append(Polynomial.from_descending([1] + list(scale * unit_disk(rng, degree))))
        for report in zero_bound_reports(polys, fast_cfg):
            assert report.warnings == []
            for b in report.bounds:
                assert report.max_root_modulus <= b.value + 1e-6, b.name


@pytest.mark.slow
class TestSpectralBound:
    def test_random_pair_lists(self, rng, fast_cfg):
        for _ in range(100):
            count = int(rng.integers(1, 4))
            pairs = [tuple(ComplexMatrix.from_array(unit_disk(rng, (3, 3))) for _ in range(2))
                     for _ in range(count)]
            total = pairs[0][0] @ pairs[0][1]
            for a, b in pairs[1:]:
                total = total + a @ b
            bound = upper_thm27_spectral(pairs, fast_cfg)
            assert spectral_radius_estimate(total, fast_cfg) <= bound.value + 1e-4


@pytest.mark.slow
class TestOracles:
    def test_crawford_number(self, rng, fast_cfg):
        for k in range(100):
            n = 3 if k % 2 else 4
            t = unit_disk(rng, (n, n))
            if k % 4 < 2:
                t = t + 3.0 * np.exp(1j * rng.uniform(0, 2 * math.pi)) * np.eye(n)
            points = np.array([s.boundary_point for s in range_boundary(t, 100_000)])
            assert abs(crawford_number(t, fast_cfg) - polygon_distance(points)) <= 2e-3

    def test_c_quantity(self, rng, fast_cfg):
        phis = np.linspace(0.0, math.pi, 2000, endpoint=False)
        for k in range(100):
            n = 3 if k % 2 else 4
            t = unit_disk(rng, (n, n))
            brute = float(np.min(np.abs(rotated_spectra(t, phis))))
            value = c_quantity(t, fast_cfg)
            assert value <= brute + 1e-9
            assert brute - value <= 2e-3


@pytest.mark.slow
class TestScalarRealPart:
    def test_cartesian_equality(self, rng, fast_cfg):
        for _ in range(50):
            n = int(rng.integers(2, 7))
            a = unit_disk(rng, (n, n))
            k = 0.5 * (a + a.conj().T)
            c = rng.uniform(-2, 2)
            t = c * np.eye(n) + 1j * k
            expected = math.hypot(abs(c), operator_norm(k, fast_cfg))
            assert abs(numerical_radius(t, fast_cfg) - expected) <= 5e-5
            first, second = lower_thm33(t, fast_cfg)
            assert abs(max(first.value, second.value) - expected) <= 5e-5
            assert first.kind is BoundKind.LOWER
