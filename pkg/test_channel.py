"""
Channel tests: free-space, phase-shift and combined matrices, inner products and closed forms.
"""
import logging
import math
import os
import sys

sys.path.insert(0, os.path.dirname(os.path.abspath(__file__)))

import numpy as np
import pytest

from src.channel.channel_matrix import h_fs, h_los_combined, h_ps
from src.channel.inner_product import approx_phase_step, closed_form_inner_product_magnitude, column_inner_product
from src.design.spacing import medium_optimal_spacing, optimal_spacing
from src.errors import ContractViolation
from src.geometry.array_config import ArrayConfig
from src.geometry.path_lengths import PathMatrix, PathModel, path_matrix, shortened
from src.media.base_medium import LengthMatrix
from src.media.rectangular import rectangular_lengths
from src.media.toeplitz import toeplitz_lengths

LAMBDA0 = 5e-3
R = 10.0


def _uniform_paths(value, shape=(3, 3)):
    entries = np.full(shape, value)
    return PathMatrix(entries=entries, excess=np.zeros(shape), range_R=value)


def _cfg(n=3, m=3, eta=1.0, **kwargs):
    return ArrayConfig.from_factor(n, m, eta, range_R=R, lambda0=LAMBDA0, **kwargs)


class TestFreeSpace:
    def test_full_wavelength_paths_give_ones(self):
        channel = h_fs(_uniform_paths(LAMBDA0), LAMBDA0)
        assert np.allclose(channel.entries, 1.0, atol=1e-12)

    def test_half_wave(self):
        channel = h_fs(_uniform_paths(LAMBDA0 / 2, (1, 1)), LAMBDA0)
        assert channel.entries[0, 0] == pytest.approx(-1.0, abs=1e-12)

    def test_unimodular(self):
        cfg = _cfg(n=6, m=4, eta=0.37, theta_t=0.2)
        channel = h_fs(path_matrix(cfg, PathModel.EXACT), LAMBDA0)
        assert np.allclose(np.abs(channel.entries), 1.0, atol=1e-12)

    def test_read_only(self):
        channel = h_fs(_uniform_paths(LAMBDA0), LAMBDA0)
        with pytest.raises(ValueError):
            channel.entries[0, 0] = 0.0


class TestPhaseShift:
    def test_no_medium_is_ones(self):
        channel = h_ps(LengthMatrix.zeros(2, 3), LAMBDA0, 2.0)
        assert np.allclose(channel.entries, 1.0)

    def test_quarter_wave_in_double_index(self):
        channel = h_ps(LengthMatrix(np.array([[LAMBDA0 / 4]])), LAMBDA0, 2.0)
        assert channel.entries[0, 0] == pytest.approx(-1.0, abs=1e-12)

    def test_unimodular(self):
        rng = np.random.default_rng(11)
        channel = h_ps(LengthMatrix(rng.uniform(0, 5 * LAMBDA0, (4, 4))), LAMBDA0, 3.3)
        assert np.allclose(np.abs(channel.entries), 1.0, atol=1e-12)


class TestCombined:
    def test_unit_permittivity_is_free_space(self):
        cfg = _cfg(eta=0.6)
        paths = path_matrix(cfg)
        lengths = toeplitz_lengths([LAMBDA0, 1.3 * LAMBDA0, 0.2 * LAMBDA0], 3, 3)
        assert np.allclose(h_los_combined(paths, lengths, LAMBDA0, 1.0).entries,
                           h_fs(paths, LAMBDA0).entries, atol=1e-12)

    def test_zero_lengths_are_free_space(self):
        cfg = _cfg(eta=0.6)
        paths = path_matrix(cfg)
        assert np.allclose(h_los_combined(paths, LengthMatrix.zeros(3, 3), LAMBDA0, 2.5).entries,
                           h_fs(paths, LAMBDA0).entries, atol=1e-12)

    def test_hadamard_decomposition(self):
        rng = np.random.default_rng(13)
        cfg = _cfg(n=4, m=4, eta=0.7)
        paths = path_matrix(cfg, PathModel.EXACT)
        lengths = LengthMatrix(rng.uniform(0, 3 * LAMBDA0, (4, 4)))
        combined = h_los_combined(paths, lengths, LAMBDA0, 2.2).entries
        free = h_fs(shortened(paths, lengths.entries), LAMBDA0).entries
        medium = h_ps(lengths, LAMBDA0, 2.2).entries
        assert np.allclose(combined, free * medium, atol=1e-12)

    def test_unimodular(self):
        cfg = _cfg(n=5, m=3, eta=0.5)
        paths = path_matrix(cfg)
        lengths = rectangular_lengths(cfg, paths, 6.0)
        assert np.allclose(np.abs(h_los_combined(paths, lengths, LAMBDA0, 3.0).entries), 1.0, atol=1e-12)

    def test_overlong_medium_warns(self, caplog):
        paths = _uniform_paths(LAMBDA0, (2, 2))
        lengths = LengthMatrix(np.full((2, 2), 2 * LAMBDA0))
        with caplog.at_level(logging.WARNING):
            channel = h_los_combined(paths, lengths, LAMBDA0, 2.0)
        assert channel.shape == (2, 2)
        assert any("unphysical" in record.message for record in caplog.records)

    def test_shape_mismatch(self):
        with pytest.raises(ContractViolation):
            h_los_combined(path_matrix(_cfg()), LengthMatrix.zeros(2, 3), LAMBDA0, 2.0)


class TestInnerProduct:
    def test_self_product_is_m(self):
        channel = h_fs(path_matrix(_cfg(n=3, m=5, eta=0.4)), LAMBDA0)
        assert column_inner_product(channel, 2, 2) == pytest.approx(5.0)

    def test_orthogonal_at_optimal_spacing(self):
        channel = h_fs(path_matrix(_cfg(n=2, m=2, eta=1.0)), LAMBDA0)
        assert abs(column_inner_product(channel, 1, 2)) <= 1e-9

    def test_bounded_by_m(self):
        rng = np.random.default_rng(17)
        excess = rng.uniform(0, 4 * LAMBDA0, (6, 4))
        channel = h_fs(PathMatrix(entries=R + excess, excess=excess, range_R=R), LAMBDA0)
        for k in range(1, 5):
            for l in range(1, 5):
                assert abs(column_inner_product(channel, k, l)) <= 6 + 1e-12

    def test_conjugate_symmetry(self):
        channel = h_fs(path_matrix(_cfg(n=3, m=3, eta=0.5)), LAMBDA0)
        assert column_inner_product(channel, 1, 3) == pytest.approx(np.conj(column_inner_product(channel, 3, 1)))

    def test_index_out_of_range(self):
        channel = h_fs(path_matrix(_cfg(n=2, m=2)), LAMBDA0)
        with pytest.raises(ContractViolation):
            column_inner_product(channel, 0, 1)
        with pytest.raises(ContractViolation):
            column_inner_product(channel, 1, 3)


class TestClosedForm:
    def test_zero_step(self):
        assert closed_form_inner_product_magnitude(7, 0.0) == 7.0

    def test_multiple_of_two_pi(self):
        assert closed_form_inner_product_magnitude(4, 6 * math.pi) == pytest.approx(4.0)

    def test_two_antennas_half_turn(self):
        assert closed_form_inner_product_magnitude(2, math.pi) == pytest.approx(0.0, abs=1e-12)

    def test_matches_geometric_sum(self):
        rng = np.random.default_rng(19)
        worst = 0.0
        for _ in range(1000):
            m = int(rng.integers(1, 33))
            x = float(rng.uniform(-20.0, 20.0))
            direct = abs(np.sum(np.exp(-1j * np.arange(m) * x)))
            worst = max(worst, abs(closed_form_inner_product_magnitude(m, x) - direct))
        assert worst <= 1e-10

    def test_rejects_empty_array(self):
        with pytest.raises(ContractViolation):
            closed_form_inner_product_magnitude(0, 1.0)

    def test_matches_rectangular_channel(self):
        cfg = _cfg(n=4, m=4, eta=0.7)
        t, s = 3.0, 2.0
        paths = path_matrix(cfg)
        channel = h_los_combined(paths, rectangular_lengths(cfg, paths, t), LAMBDA0, s)
        x = approx_phase_step(cfg, s, t / R)
        for k in range(1, 5):
            for l in range(1, 5):
                assert abs(column_inner_product(channel, k, l)) == pytest.approx(
                    closed_form_inner_product_magnitude(4, x * (k - l)), abs=1e-9)


class TestPhaseStep:
    @pytest.mark.parametrize("v", [2, 3, 5, 8])
    def test_free_space_optimum(self, v):
        cfg = optimal_spacing(_cfg(n=v, m=v)).apply(_cfg(n=v, m=v))
        assert approx_phase_step(cfg, 1.0, 0.0) == pytest.approx(2 * math.pi / v, rel=1e-12)

    def test_unit_permittivity_ignores_thickness(self):
        cfg = _cfg(n=3, m=3, eta=0.6)
        assert approx_phase_step(cfg, 1.0, 0.7) == approx_phase_step(cfg, 1.0, 0.0)

    def test_medium_optimum(self):
        rng = np.random.default_rng(23)
        for _ in range(20):
            v = int(rng.integers(2, 7))
            t = float(rng.uniform(0, 0.9 * R))
            s = float(rng.uniform(1, 4))
            template = _cfg(n=v, m=v, theta_t=float(rng.uniform(-0.3, 0.3)))
            cfg = medium_optimal_spacing(template, t, s).apply(template)
            assert approx_phase_step(cfg, s, t / R) == pytest.approx(2 * math.pi / v, rel=1e-12)
