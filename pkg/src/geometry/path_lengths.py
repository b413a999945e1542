"""
Path Lengths
Exact and second-order transmitter-to-receiver distances between tilted ULAs.

Indices m (receive) and n (transmit) are 1-based throughout; offsets use
(m-1) and (n-1). The azimuth rotation of the receive array is zero.
"""
import logging
from dataclasses import dataclass, field
from enum import Enum

import numpy as np

from src.errors import ContractViolation
from src.geometry.array_config import ArrayConfig

logger = logging.getLogger(__name__)


class PathModel(str, Enum):
    """Distance model tag."""
    EXACT = "exact"
    APPROXIMATE = "approximate"

    @classmethod
    def parse(cls, value) -> 'PathModel':
        if isinstance(value, cls):
            return value
        aliases = {'exact': cls.EXACT, 'approx': cls.APPROXIMATE, 'approximate': cls.APPROXIMATE}
        try:
            return aliases[str(value).strip().lower()]
        except KeyError:
            raise ContractViolation(f"Unknown path model '{value}' (expected exact or approx)")


@dataclass(frozen=True)
class PathMatrix:
    """M x N path lengths r_mn plus their excess over the boresight range.

    ``excess`` (r_mn - R) is carried separately so that phases can be reduced
    without losing the small path differences against a large R.
    """
    entries: np.ndarray
    excess: np.ndarray
    range_R: float
    mode: PathModel = field(default=PathModel.APPROXIMATE)

    def __post_init__(self):
        self.entries.flags.writeable = False
        self.excess.flags.writeable = False

    @property
    def shape(self):
        return self.entries.shape


def _offsets(cfg: ArrayConfig, m, n):
    """Axial (u) and transverse (w) offsets for 1-based indices m, n."""
    u = (m - 1) * cfg.d_r * np.sin(cfg.theta_r) - (n - 1) * cfg.d_t * np.sin(cfg.theta_t)
    w = (m - 1) * cfg.d_r * np.cos(cfg.theta_r) - (n - 1) * cfg.d_t * np.cos(cfg.theta_t)
    return u, w


def _check_indices(cfg: ArrayConfig, m: int, n: int):
    if not 1 <= m <= cfg.m_rx:
        raise ContractViolation(f"Receive index m={m} outside 1..{cfg.m_rx}")
    if not 1 <= n <= cfg.n_tx:
        raise ContractViolation(f"Transmit index n={n} outside 1..{cfg.n_tx}")


def warn_if_near_field(cfg: ArrayConfig):
    if not cfg.is_far_field():
        logger.warning(f"Array extent {cfg.extent:.4g} m exceeds R/10 = {cfg.range_R / 10:.4g} m; "
                       f"second-order distance expansion may be inaccurate")


def exact_distance(cfg: ArrayConfig, m: int, n: int) -> float:
    """Planar distance from transmit antenna n to receive antenna m."""
    _check_indices(cfg, m, n)
    u, w = _offsets(cfg, m, n)
    return float(np.sqrt((cfg.range_R + u) ** 2 + w ** 2))


def approx_distance(cfg: ArrayConfig, m: int, n: int) -> float:
    """Second-order expansion R + u + w^2 / (2R) of the exact distance."""
    _check_indices(cfg, m, n)
    warn_if_near_field(cfg)
    u, w = _offsets(cfg, m, n)
    return float(cfg.range_R + u + w ** 2 / (2.0 * cfg.range_R))


def path_matrix(cfg: ArrayConfig, mode=PathModel.APPROXIMATE) -> PathMatrix:
    """All r_mn for the scenario, evaluated in one vectorised pass."""
    mode = PathModel.parse(mode)
    m = np.arange(1, cfg.m_rx + 1, dtype=float)[:, None]
    n = np.arange(1, cfg.n_tx + 1, dtype=float)[None, :]
    u, w = _offsets(cfg, m, n)
    R = cfg.range_R

    if mode is PathModel.EXACT:
        entries = np.sqrt((R + u) ** 2 + w ** 2)
        # r - R without cancellation: ((R+u)^2 + w^2 - R^2) / (r + R)
        excess = (2.0 * R * u + u ** 2 + w ** 2) / (entries + R)
    else:
        warn_if_near_field(cfg)
        excess = u + w ** 2 / (2.0 * R)
        entries = R + excess

    logger.debug(f"Path matrix {cfg.m_rx}x{cfg.n_tx} ({mode.value}) built")
    return PathMatrix(entries=np.ascontiguousarray(entries, dtype=float),
                      excess=np.ascontiguousarray(excess, dtype=float),
                      range_R=R, mode=mode)


def shortened(paths: PathMatrix, lengths: np.ndarray) -> PathMatrix:
    """Free-space remainder r_mn - l_mn of each path."""
    return PathMatrix(entries=paths.entries - lengths, excess=paths.excess - lengths,
                      range_R=paths.range_R, mode=paths.mode)
