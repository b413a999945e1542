"""
Conditioning tests: Gram matrices, the Jacobi eigensolver and 1/kappa.
"""
import logging
import math
import os
import sys

sys.path.insert(0, os.path.dirname(os.path.abspath(__file__)))

import numpy as np
import pytest

from src.channel.channel_matrix import ChannelMatrix, ChannelProvenance, h_fs
from src.conditioning.condition_number import gram, inv_kappa, inv_kappa_stack
from src.conditioning.jacobi import hermitian_eigenvalues, jacobi_eigenvalues
from src.config import SolverConfig
from src.errors import EigensolverError
from src.geometry.array_config import ArrayConfig
from src.geometry.path_lengths import path_matrix

LAMBDA0 = 5e-3
R = 10.0

# free-space 1/kappa at 0.8 d_Opt for N = M = 2..20
FREE_SPACE_ETA_08 = [0.302227299, 0.107721657, 0.031811777, 0.008045181, 0.001854766, 0.00040401,
                     8.49e-05, 1.74e-05, 3.51e-06, 6.99e-07, 1.37e-07, 2.68e-08, 5.18e-09, 9.97e-10,
                     1.91e-10, 3.63e-11, 6.88e-12, 1.3e-12, 2.45e-13]


def _channel(entries) -> ChannelMatrix:
    return ChannelMatrix(np.array(entries, dtype=complex), ChannelProvenance.COMBINED)


def _free_space(n, eta, m=None):
    cfg = ArrayConfig.from_factor(n, m or n, eta, range_R=R, lambda0=LAMBDA0)
    return h_fs(path_matrix(cfg), LAMBDA0)


def _two_by_two(eta):
    c = abs(math.cos(math.pi * eta ** 2 / 2))
    return (1 - c) / (1 + c)


def _random_unimodular(rng, m, n):
    return np.exp(1j * rng.uniform(0, 2 * np.pi, (m, n)))


def _random_hermitian(rng, n):
    a = rng.normal(size=(n, n)) + 1j * rng.normal(size=(n, n))
    return 0.5 * (a + a.conj().T)


class TestGram:
    def test_single_entry(self):
        assert np.allclose(gram(_channel([[np.exp(0.3j)]])), [[1.0]])

    def test_orthogonal_columns(self):
        g = gram(_free_space(2, 1.0))
        assert np.allclose(np.diag(g).real, 2.0)
        assert abs(g[0, 1]) <= 1e-9

    def test_smaller_side(self):
        rng = np.random.default_rng(1)
        wide = _channel(_random_unimodular(rng, 2, 5))
        tall = _channel(_random_unimodular(rng, 5, 3))
        assert gram(wide).shape == (2, 2)
        assert gram(tall).shape == (3, 3)
        assert np.allclose(np.diag(gram(wide)).real, 5.0)
        assert np.allclose(np.diag(gram(tall)).real, 5.0)

    def test_exactly_hermitian(self):
        rng = np.random.default_rng(2)
        g = gram(_channel(_random_unimodular(rng, 4, 4)))
        assert np.array_equal(g, g.conj().T)


class TestJacobi:
    def test_diagonal(self):
        assert np.allclose(hermitian_eigenvalues(np.diag([1.0, 3.0, 2.0])), [1.0, 2.0, 3.0])

    @pytest.mark.parametrize("rho", [0.0, 0.3, 0.7 * np.exp(0.4j), 0.99j])
    def test_correlated_pair(self, rho):
        m = 4.0
        g = np.array([[m, m * rho], [m * np.conj(rho), m]])
        expected = [m * (1 - abs(rho)), m * (1 + abs(rho))]
        assert np.allclose(hermitian_eigenvalues(g), expected, atol=1e-12)

    def test_three_by_three_characteristic_roots(self):
        rng = np.random.default_rng(3)
        for _ in range(20):
            g = _random_hermitian(rng, 3)
            roots = np.sort(np.roots(np.poly(g)).real)
            assert np.allclose(hermitian_eigenvalues(g), roots, atol=1e-8)

    def test_trace_and_reference_spectrum(self):
        rng = np.random.default_rng(4)
        for n in (2, 5, 9, 16):
            g = _random_hermitian(rng, n)
            values = hermitian_eigenvalues(g)
            assert np.all(np.diff(values) >= 0)
            assert values.sum() == pytest.approx(np.trace(g).real, rel=1e-10, abs=1e-10)
            assert np.allclose(values, np.linalg.eigvalsh(g), atol=1e-10)

    def test_stack_matches_single(self):
        rng = np.random.default_rng(5)
        stack = np.array([_random_hermitian(rng, 4) for _ in range(6)])
        batch = jacobi_eigenvalues(stack)
        for matrix, values in zip(stack, batch):
            assert np.allclose(values, hermitian_eigenvalues(matrix), atol=1e-12)

    def test_deterministic(self):
        g = _random_hermitian(np.random.default_rng(6), 6)
        assert np.array_equal(hermitian_eigenvalues(g), hermitian_eigenvalues(g))

    def test_non_hermitian_rejected(self):
        with pytest.raises(EigensolverError):
            hermitian_eigenvalues(np.array([[1.0, 2.0], [0.0, 1.0]]))

    def test_dimension_limit(self):
        with pytest.raises(EigensolverError):
            hermitian_eigenvalues(np.eye(65))

    def test_sweep_budget(self):
        g = np.array([[2.0, 1.0], [1.0, 3.0]])
        with pytest.raises(EigensolverError):
            hermitian_eigenvalues(g, SolverConfig(max_sweeps=0))


class TestInvKappa:
    def test_optimal_spacing_is_perfect(self):
        assert inv_kappa(_free_space(2, 1.0)).inv_kappa == pytest.approx(1.0, abs=1e-9)

    def test_reduced_spacing_reference(self):
        report = inv_kappa(_free_space(2, 0.8))
        assert report.inv_kappa == pytest.approx(0.302227299, abs=1e-4)
        assert report.inv_kappa == pytest.approx(_two_by_two(0.8), abs=1e-10)
        assert report.inv_kappa == pytest.approx((1 - math.cos(0.32 * math.pi)) / (1 + math.cos(0.32 * math.pi)),
                                                 abs=1e-10)

    def test_half_spacing(self):
        expected = (1 - math.cos(math.pi / 8)) / (1 + math.cos(math.pi / 8))
        assert inv_kappa(_free_space(2, 0.5)).inv_kappa == pytest.approx(expected, abs=1e-10)
        assert expected == pytest.approx(0.03957, abs=1e-5)

    @pytest.mark.parametrize("eta", [0.1, 0.2, 0.3, 0.4, 0.5, 0.6, 0.7, 0.8, 0.9, 1.0])
    def test_two_by_two_closed_form(self, eta):
        assert inv_kappa(_free_space(2, eta)).inv_kappa == pytest.approx(_two_by_two(eta), abs=1e-10)

    def test_three_antenna_reference(self):
        value = inv_kappa(_free_space(3, 0.5)).inv_kappa
        assert 5e-4 <= value <= 5e-3

    def test_spectrum_properties(self):
        report = inv_kappa(_free_space(4, 0.6, m=6))
        assert report.eigenvalues.shape == (4,)
        assert np.all(report.eigenvalues >= 0)
        assert np.all(np.diff(report.eigenvalues) >= 0)
        assert report.eigenvalues.sum() == pytest.approx(24.0, rel=1e-9)
        assert report.inv_kappa == pytest.approx(report.lambda_min / report.lambda_max)

    def test_rank_deficient_flagged(self, caplog):
        with caplog.at_level(logging.WARNING):
            report = inv_kappa(_channel(np.ones((2, 2))))
        assert report.inv_kappa <= 1e-14
        assert report.numerically_floor_limited
        assert any("floor" in record.message for record in caplog.records)

    def test_free_space_table(self):
        for n, reference in zip(range(2, 21), FREE_SPACE_ETA_08):
            report = inv_kappa(_free_space(n, 0.8))
            if reference >= 1e-12:
                assert report.inv_kappa == pytest.approx(reference, rel=0.01), f"N={n}"
                assert not report.below_reporting_floor
            else:
                assert 0.1 * reference <= report.inv_kappa <= 10 * reference, f"N={n}"
                assert report.below_reporting_floor

    def test_invariances(self):
        rng = np.random.default_rng(8)
        for _ in range(200):
            m, n = (int(x) for x in rng.integers(1, 6, size=2))
            h = _random_unimodular(rng, m, n)
            base = inv_kappa(_channel(h)).inv_kappa
            variants = [
                np.exp(1j * rng.uniform(0, 2 * np.pi)) * h,
                np.exp(1j * rng.uniform(0, 2 * np.pi, (m, 1))) * h,
                h * np.exp(1j * rng.uniform(0, 2 * np.pi, (1, n))),
                h[rng.permutation(m), :],
                h[:, rng.permutation(n)],
            ]
            values = inv_kappa_stack(np.array([h] + variants))
            assert values[0] == pytest.approx(base, abs=1e-12)
            assert np.all(np.abs(values - base) <= 1e-10)
