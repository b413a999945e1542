"""
Column Orthogonality
Inner products between received column vectors and their geometric-series closed form.
"""
import math

import numpy as np

from src.errors import ContractViolation, InvalidMediumError
from src.channel.channel_matrix import ChannelMatrix
from src.geometry.array_config import ArrayConfig

SINGULARITY_TOLERANCE = 1e-12


def column_inner_product(channel: ChannelMatrix, k: int, l: int) -> complex:
    """<h_k, h_l> = sum over all M receive antennas of H(m,k) * conj(H(m,l)); 1-based columns."""
    for index in (k, l):
        if not 1 <= index <= channel.n_tx:
            raise ContractViolation(f"Column index {index} outside 1..{channel.n_tx}")
    return complex(np.vdot(channel.entries[:, l - 1], channel.entries[:, k - 1]))


def closed_form_inner_product_magnitude(m_rx: int, x: float) -> float:
    """|sin(M x / 2) / sin(x / 2)|, evaluated as M at x = 0 (mod 2*pi)."""
    if m_rx < 1:
        raise ContractViolation(f"M must be >= 1, got {m_rx}")
    # magnitude is 2*pi periodic in x
    x = math.remainder(x, 2.0 * math.pi)
    denominator = math.sin(x / 2.0)
    if abs(denominator) < SINGULARITY_TOLERANCE:
        return float(m_rx)
    return abs(math.sin(m_rx * x / 2.0) / denominator)


def approx_phase_step(cfg: ArrayConfig, sqrt_eps_r: float, t_over_R: float) -> float:
    """Per-(k-l), per-m phase increment of the rectangular-medium model [rad]."""
    if not sqrt_eps_r >= 1.0:
        raise InvalidMediumError(f"sqrt_eps_r must be >= 1, got {sqrt_eps_r}")
    scale = 1.0 + (sqrt_eps_r - 1.0) * t_over_R
    return 2.0 * math.pi / cfg.lambda0 * scale * cfg.d_t * cfg.d_r * cfg.cos_product / cfg.range_R
