"""
Medium Objective
1/kappa of the combined channel as a function of the Toeplitz first row,
evaluated for single rows through the full pipeline or for stacks in one batch.
"""
from typing import Optional, Sequence

import numpy as np

from src.channel.channel_matrix import combined_cycles, h_los_combined, phase_entries
from src.conditioning.condition_number import ConditioningReport, inv_kappa, inv_kappa_stack
from src.config import SolverConfig
from src.errors import InvalidMediumError
from src.geometry.array_config import ArrayConfig
from src.geometry.path_lengths import PathModel, path_matrix
from src.media.shape_function import shape_profile
from src.media.toeplitz import toeplitz_length_stack, toeplitz_lengths


class ToeplitzObjective:
    """1/kappa for Toeplitz media over a fixed array scenario."""

    def __init__(self, cfg: ArrayConfig, sqrt_eps_r: float, path_model=PathModel.APPROXIMATE,
                 config: Optional[SolverConfig] = None):
        if not sqrt_eps_r >= 1.0:
            raise InvalidMediumError(f"sqrt_eps_r must be >= 1, got {sqrt_eps_r}")
        self.cfg = cfg
        self.sqrt_eps_r = float(sqrt_eps_r)
        self.config = config or SolverConfig()
        self.paths = path_matrix(cfg, path_model)
        self.evaluations = 0

    @property
    def v(self) -> int:
        return self.cfg.v

    def evaluate_rows(self, first_rows: np.ndarray) -> np.ndarray:
        """1/kappa for each first row of a (K, V) array."""
        first_rows = np.atleast_2d(np.asarray(first_rows, dtype=float))
        if first_rows.shape[1] != self.v:
            raise InvalidMediumError(f"First rows must have {self.v} entries, got {first_rows.shape[1]}")
        lengths = toeplitz_length_stack(first_rows, self.cfg.m_rx, self.cfg.n_tx)
        cycles = combined_cycles(self.paths, lengths, self.cfg.lambda0, self.sqrt_eps_r)
        self.evaluations += first_rows.shape[0]
        return inv_kappa_stack(phase_entries(cycles), self.config)

    def evaluate_row(self, first_row: Sequence[float]) -> ConditioningReport:
        """Full pipeline: Toeplitz lengths, combined channel, conditioning report."""
        lengths = toeplitz_lengths(first_row, self.cfg.m_rx, self.cfg.n_tx)
        channel = h_los_combined(self.paths, lengths, self.cfg.lambda0, self.sqrt_eps_r)
        self.evaluations += 1
        return inv_kappa(channel, self.config)

    def evaluate_shape(self, kind, l_deltas: np.ndarray) -> np.ndarray:
        """1/kappa for shape-function media at each l_delta."""
        profile = shape_profile(kind, self.v)
        return self.evaluate_rows(np.outer(np.asarray(l_deltas, dtype=float), profile))
