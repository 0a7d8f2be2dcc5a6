import numpy as np
import pytest
from numpy.testing import assert_allclose

from errors import (
    DimensionMismatchError,
    InvalidDataError,
    InvalidParameterError,
    NotPositiveDefiniteError,
    NotSymmetricError,
)
from geometry.matrix import (
    SPDMatrix,
    SymmetricMatrix,
    congruence,
    spd_inv_sqrt,
    spd_log,
    spd_power,
    spd_sqrt,
    sym_eigendecompose,
)
from geometry.riemann import geodesic, geometric_mean, spd_distance

SQRT_2_1_1_2 = np.array([[np.sqrt(3) + 1, np.sqrt(3) - 1], [np.sqrt(3) - 1, np.sqrt(3) + 1]]) / 2


def _reconstruct(eigenvalues, eigenvectors):
    return (eigenvectors * eigenvalues) @ eigenvectors.T


class TestSymmetricMatrix:
    def test_small_asymmetry_is_averaged(self):
        m = SymmetricMatrix([[1.0, 0.5], [0.5 + 1e-14, 2.0]])
        assert np.array_equal(m.entries, m.entries.T)

    def test_large_asymmetry_is_rejected(self):
        with pytest.raises(NotSymmetricError):
            SymmetricMatrix([[1.0, 0.5], [0.4, 2.0]])

    def test_non_finite_is_rejected(self):
        with pytest.raises(InvalidDataError):
            SymmetricMatrix([[1.0, np.nan], [np.nan, 1.0]])

    def test_entries_are_read_only(self):
        m = SymmetricMatrix(np.eye(2))
        with pytest.raises(ValueError):
            m.entries[0, 0] = 5.0

    @pytest.mark.parametrize("entries", [[[1.0, 0.0], [0.0, 0.0]], [[1.0, 0.0], [0.0, -1.0]], [[1.0, 0.0], [0.0, 1e-18]]])
    def test_spd_rejects_singular_and_indefinite(self, entries):
        with pytest.raises(NotPositiveDefiniteError):
            SPDMatrix(entries)

    def test_spd_caches_lambda_min(self, make_spd):
        a = make_spd(4)
        assert_allclose(SPDMatrix(a).lambda_min, np.linalg.eigvalsh(a)[0], rtol=1e-10)


class TestEigendecompose:
    def test_diagonal(self):
        eigenvalues, eigenvectors = sym_eigendecompose(np.diag([0.1, 0.7, 0.2]))
        assert_allclose(eigenvalues, [0.7, 0.2, 0.1])
        assert_allclose(np.abs(eigenvectors), np.eye(3)[:, [1, 2, 0]], atol=1e-12)

    def test_two_by_two(self):
        a = np.array([[2.0, 1.0], [1.0, 2.0]])
        eigenvalues, eigenvectors = sym_eigendecompose(a)
        assert_allclose(eigenvalues, [3.0, 1.0])
        assert_allclose(np.abs(eigenvectors), np.full((2, 2), 1 / np.sqrt(2)), atol=1e-12)
        assert_allclose(_reconstruct(eigenvalues, eigenvectors), a, atol=1e-12)

    def test_identity_reconstructs(self):
        eigenvalues, eigenvectors = sym_eigendecompose(np.eye(4))
        assert_allclose(eigenvalues, np.ones(4))
        assert_allclose(eigenvectors.T @ eigenvectors, np.eye(4), atol=1e-12)
        assert_allclose(_reconstruct(eigenvalues, eigenvectors), np.eye(4), atol=1e-12)

    def test_random_reconstruction(self, make_spd):
        a = make_spd(5) - 3 * np.eye(5)
        eigenvalues, eigenvectors = sym_eigendecompose(a)
        assert np.all(np.diff(eigenvalues) <= 0)
        assert np.linalg.norm(_reconstruct(eigenvalues, eigenvectors) - a) <= 1e-12 * np.linalg.norm(a)


class TestMatrixFunctions:
    def test_sqrt_examples(self):
        assert_allclose(spd_sqrt(np.diag([4.0, 9.0])).entries, np.diag([2.0, 3.0]), atol=1e-12)
        assert_allclose(spd_sqrt([[2.0, 1.0], [1.0, 2.0]]).entries, SQRT_2_1_1_2, atol=1e-12)
        assert_allclose(spd_sqrt(np.eye(3)).entries, np.eye(3), atol=1e-12)

    def test_sqrt_squares_back(self, make_spd):
        a = make_spd(4)
        root = spd_sqrt(a).entries
        assert_allclose(root @ root, a, rtol=1e-10, atol=1e-10)

    def test_sqrt_rejects_non_spd(self):
        with pytest.raises(NotPositiveDefiniteError):
            spd_sqrt([[1.0, 2.0], [2.0, 1.0]])

    def test_inv_sqrt_and_power(self, make_spd):
        a = make_spd(3)
        inv_root = spd_inv_sqrt(a).entries
        assert_allclose(inv_root @ a @ inv_root, np.eye(3), atol=1e-10)
        assert_allclose(spd_power(a, 1.0).entries, a, rtol=1e-10, atol=1e-10)

    def test_log_of_diagonal(self):
        assert_allclose(spd_log(np.diag([np.e, np.e ** 2])).entries, np.diag([1.0, 2.0]), atol=1e-12)


class TestDistance:
    def test_identical_arguments(self, make_spd):
        s = make_spd(3)
        assert spd_distance(s, s) == pytest.approx(0.0, abs=1e-10)

    def test_diagonal(self):
        d = spd_distance(np.eye(2), np.diag([np.e ** 2, np.e ** -2]))
        assert d == pytest.approx(2 * np.sqrt(2), rel=1e-12)

    @pytest.mark.parametrize("seed", range(10))
    def test_congruence_invariance_and_symmetry(self, seed):
        rng = np.random.default_rng(seed)
        s1 = rng.standard_normal((4, 4))
        s1 = s1 @ s1.T + 0.5 * np.eye(4)
        s2 = rng.standard_normal((4, 4))
        s2 = s2 @ s2.T + 0.5 * np.eye(4)
        a = rng.standard_normal((4, 4)) + 2 * np.eye(4)
        d = spd_distance(s1, s2)
        assert spd_distance(s2, s1) == pytest.approx(d, abs=1e-10)
        assert spd_distance(a @ s1 @ a.T, a @ s2 @ a.T) == pytest.approx(d, abs=1e-8)

    @pytest.mark.parametrize("seed", range(10))
    def test_triangle_inequality(self, seed):
        rng = np.random.default_rng(100 + seed)
        dim = int(rng.integers(2, 6))
        s1, s2, s3 = (m @ m.T + 0.3 * np.eye(dim) for m in rng.standard_normal((3, dim, dim)))
        assert spd_distance(s1, s3) <= spd_distance(s1, s2) + spd_distance(s2, s3) + 1e-8

    @pytest.mark.parametrize("seed", range(10))
    def test_matches_log_of_relative_matrix(self, seed):
        rng = np.random.default_rng(200 + seed)
        s1, s2 = (m @ m.T + 0.2 * np.eye(4) for m in rng.standard_normal((2, 4, 4)))
        relative = congruence(spd_inv_sqrt(s1).entries, s2)
        expected = np.linalg.norm(spd_log(relative).entries, "fro")
        assert spd_distance(s1, s2) == pytest.approx(expected, rel=1e-9)

    def test_dimension_mismatch(self):
        with pytest.raises(DimensionMismatchError):
            spd_distance(np.eye(2), np.eye(3))


class TestGeodesic:
    def test_commuting_midpoint(self):
        assert_allclose(geodesic(np.eye(2), np.diag([4.0, 1.0]), 0.5).entries, np.diag([2.0, 1.0]), atol=1e-12)

    def test_toward_identity(self):
        assert_allclose(geodesic([[2.0, 1.0], [1.0, 2.0]], np.eye(2), 0.5).entries, SQRT_2_1_1_2, atol=1e-10)

    @pytest.mark.parametrize("t", [0.0, 0.25, 0.5, 0.75, 1.0])
    def test_endpoints_and_interior(self, make_spd, t):
        s1, s2 = make_spd(3), make_spd(3)
        gamma = geodesic(s1, s2, t)
        assert gamma.lambda_min > 0
        if t == 0.0:
            assert_allclose(gamma.entries, s1, rtol=1e-10, atol=1e-10)
        if t == 1.0:
            assert_allclose(gamma.entries, s2, rtol=1e-10, atol=1e-10)

    def test_commuting_diagonal_power_law(self):
        s1, s2 = np.diag([1.0, 3.0, 0.5]), np.diag([2.0, 0.25, 5.0])
        expected = np.diag(np.diag(s1) ** 0.7 * np.diag(s2) ** 0.3)
        assert_allclose(geodesic(s1, s2, 0.3).entries, expected, atol=1e-12)

    @pytest.mark.parametrize("t", [-0.1, 1.5])
    def test_rejects_t_outside_unit_interval(self, t):
        with pytest.raises(InvalidParameterError):
            geodesic(np.eye(2), np.eye(2), t)


class TestGeometricMean:
    def test_commuting_with_determinant(self):
        mean = geometric_mean(np.eye(2), np.diag([4.0, 1.0]))
        assert_allclose(mean.entries, np.diag([2.0, 1.0]), atol=1e-12)
        assert np.linalg.det(mean.entries) ** 2 == pytest.approx(4.0)

    def test_idempotent(self, make_spd):
        s = make_spd(3)
        assert_allclose(geometric_mean(s, s).entries, s, rtol=1e-10, atol=1e-10)

    def test_ill_conditioned_pair(self):
        s1, s2 = np.diag([1.0, 1e-8]), np.diag([1e-8, 1.0])
        assert spd_distance(s1, s2) == pytest.approx(np.sqrt(2) * np.log(1e8), rel=1e-12)
        assert_allclose(geometric_mean(s1, s2).entries, 1e-4 * np.eye(2), rtol=1e-10, atol=1e-18)
        assert_allclose(geodesic(s1, s2, 0.25).entries, np.diag([1e-2, 1e-6]), rtol=1e-10, atol=1e-18)

    @pytest.mark.parametrize("seed", range(100))
    def test_identities(self, seed):
        rng = np.random.default_rng(seed)
        s1, s2 = (m @ m.T + 0.5 * np.eye(3) for m in rng.standard_normal((2, 3, 3)))
        mean = geometric_mean(s1, s2)
        # ln det S1 + ln det S2 == 2 ln det(mean)
        assert SPDMatrix(s1).log_det() + SPDMatrix(s2).log_det() == pytest.approx(2 * mean.log_det(), abs=1e-10)
        assert_allclose(geometric_mean(s2, s1).entries, mean.entries, atol=1e-10)
        assert_allclose(mean.entries @ np.linalg.solve(s1, mean.entries), s2, rtol=1e-9, atol=1e-9)

    @pytest.mark.parametrize("seed", range(100))
    def test_midpoint_quadratic_form_inequality(self, seed):
        rng = np.random.default_rng(1000 + seed)
        s1, s2 = (m @ m.T + 0.1 * np.eye(4) for m in rng.standard_normal((2, 4, 4)))
        mean = geometric_mean(s1, s2).entries
        for x in rng.standard_normal((10, 4)):
            lhs = np.log(x @ s1 @ x) + np.log(x @ s2 @ x)
            assert lhs >= 2 * np.log(x @ mean @ x) - 1e-10
