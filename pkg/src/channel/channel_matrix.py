"""
LOS Channel Matrices
Free-space, phase-shift and combined channel construction.

Phases are formed from path lengths in units of wavelengths, reduced modulo
one cycle before multiplication by 2*pi.
"""
import logging
from dataclasses import dataclass
from enum import Enum

import numpy as np

from src.errors import ContractViolation, InvalidMediumError
from src.geometry.path_lengths import PathMatrix
from src.media.base_medium import LengthMatrix

logger = logging.getLogger(__name__)


class ChannelProvenance(str, Enum):
    FREE_SPACE = "free_space"
    PHASE_SHIFT = "phase_shift"
    COMBINED = "combined"


@dataclass(frozen=True)
class ChannelMatrix:
    """M x N complex LOS channel with unit-magnitude entries."""
    entries: np.ndarray
    provenance: ChannelProvenance

    def __post_init__(self):
        if self.entries.ndim != 2 or self.entries.size == 0:
            raise ContractViolation(f"Channel must be a nonempty matrix, got shape {self.entries.shape}")
        self.entries.flags.writeable = False

    @property
    def shape(self):
        return self.entries.shape

    @property
    def m_rx(self) -> int:
        return self.entries.shape[0]

    @property
    def n_tx(self) -> int:
        return self.entries.shape[1]


def phase_entries(cycles: np.ndarray) -> np.ndarray:
    """exp(-j * 2*pi * cycles) with the cycle count reduced modulo one."""
    return np.exp(-2j * np.pi * np.mod(cycles, 1.0))


def free_space_cycles(paths: PathMatrix, lambda0: float) -> np.ndarray:
    """r_mn / lambda0 in cycles, computed as frac(R / lambda0) + (r_mn - R) / lambda0."""
    return np.mod(paths.range_R / lambda0, 1.0) + paths.excess / lambda0


def combined_cycles(paths: PathMatrix, lengths: np.ndarray, lambda0: float, sqrt_eps_r: float) -> np.ndarray:
    """(r_mn + (sqrt_eps_r - 1) * l_mn) / lambda0; ``lengths`` may be a (K, M, N) stack."""
    return free_space_cycles(paths, lambda0) + (sqrt_eps_r - 1.0) * np.asarray(lengths) / lambda0


def _check_wavelength(lambda0: float):
    if not lambda0 > 0:
        raise ContractViolation(f"lambda0 must be > 0, got {lambda0}")


def h_fs(paths: PathMatrix, lambda0: float) -> ChannelMatrix:
    """Free-space channel exp(-j 2 pi r_mn / lambda0)."""
    _check_wavelength(lambda0)
    return ChannelMatrix(phase_entries(free_space_cycles(paths, lambda0)), ChannelProvenance.FREE_SPACE)


def h_ps(lengths: LengthMatrix, lambda0: float, sqrt_eps_r: float) -> ChannelMatrix:
    """Phase-shift channel exp(-j 2 pi sqrt_eps_r l_mn / lambda0)."""
    _check_wavelength(lambda0)
    if not sqrt_eps_r >= 1.0:
        raise InvalidMediumError(f"sqrt_eps_r must be >= 1, got {sqrt_eps_r}")
    return ChannelMatrix(phase_entries(sqrt_eps_r * lengths.entries / lambda0), ChannelProvenance.PHASE_SHIFT)


def h_los_combined(paths: PathMatrix, lengths: LengthMatrix, lambda0: float, sqrt_eps_r: float) -> ChannelMatrix:
    """Combined channel: free space over r_mn - l_mn, medium over l_mn.

    Equals exp(-j 2 pi (r_mn + (sqrt_eps_r - 1) l_mn) / lambda0).
    """
    _check_wavelength(lambda0)
    if not sqrt_eps_r >= 1.0:
        raise InvalidMediumError(f"sqrt_eps_r must be >= 1, got {sqrt_eps_r}")
    if lengths.shape != paths.shape:
        raise ContractViolation(f"Length matrix shape {lengths.shape} does not match paths {paths.shape}")
    overshoot = lengths.entries - paths.entries
    if np.any(overshoot > 0):
        logger.warning(f"In-medium length exceeds total path for {int(np.sum(overshoot > 0))} entries "
                       f"(max excess {overshoot.max():.4g} m); geometry is unphysical")
    cycles = combined_cycles(paths, lengths.entries, lambda0, sqrt_eps_r)
    return ChannelMatrix(phase_entries(cycles), ChannelProvenance.COMBINED)
