"""
Channel Conditioning
Gram matrices, eigenvalue spectra and the inverse squared condition number 1/kappa.
"""
import logging
from dataclasses import dataclass
from typing import Optional

import numpy as np

from src.channel.channel_matrix import ChannelMatrix
from src.config import SolverConfig
from src.conditioning.jacobi import jacobi_eigenvalues
from src.errors import ContractViolation, EigensolverError

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class ConditioningReport:
    """Gram spectrum (ascending, clamped) and 1/kappa = lambda_min / lambda_max."""
    eigenvalues: np.ndarray
    inv_kappa: float
    numerically_floor_limited: bool
    below_reporting_floor: bool = False

    @property
    def lambda_min(self) -> float:
        return float(self.eigenvalues[0])

    @property
    def lambda_max(self) -> float:
        return float(self.eigenvalues[-1])


def gram_stack(entries: np.ndarray) -> np.ndarray:
    """H H^H (M <= N) or H^H H (M > N) for each channel in a (K, M, N) stack."""
    entries = np.asarray(entries)
    hermitian = np.conj(entries).transpose(0, 2, 1)
    if entries.shape[1] <= entries.shape[2]:
        product = entries @ hermitian
    else:
        product = hermitian @ entries
    return 0.5 * (product + np.conj(product).transpose(0, 2, 1))


def gram(channel: ChannelMatrix) -> np.ndarray:
    """Gram matrix of the smaller side; exactly Hermitian."""
    return gram_stack(channel.entries[None, :, :])[0]


def _clamp(eigenvalues: np.ndarray, config: SolverConfig) -> np.ndarray:
    """Zero out small negative eigenvalues; reject strongly negative ones."""
    lambda_max = eigenvalues[:, -1]
    if np.any(lambda_max <= 0.0):
        raise EigensolverError("Gram matrix has no positive eigenvalue")
    floor = -config.clamp_tolerance * lambda_max
    if np.any(eigenvalues[:, 0] < floor):
        raise EigensolverError(f"Gram eigenvalue {eigenvalues[:, 0].min():.3e} is negative beyond tolerance; "
                               f"Gram construction is broken")
    return np.maximum(eigenvalues, 0.0)


def spectrum_stack(entries: np.ndarray, config: Optional[SolverConfig] = None) -> np.ndarray:
    """Clamped ascending Gram spectra for a (K, M, N) channel stack, evaluated in batches."""
    config = config or SolverConfig()
    entries = np.asarray(entries)
    if entries.ndim != 3 or entries.shape[1] == 0 or entries.shape[2] == 0:
        raise ContractViolation(f"Expected a nonempty (K, M, N) channel stack, got {entries.shape}")
    spectra = []
    for start in range(0, entries.shape[0], config.batch_size):
        chunk = gram_stack(entries[start:start + config.batch_size])
        spectra.append(_clamp(jacobi_eigenvalues(chunk, config), config))
    return np.concatenate(spectra, axis=0)


def inv_kappa_stack(entries: np.ndarray, config: Optional[SolverConfig] = None) -> np.ndarray:
    """1/kappa for every channel in a (K, M, N) stack."""
    spectra = spectrum_stack(entries, config)
    return np.clip(spectra[:, 0] / spectra[:, -1], 0.0, 1.0)


def inv_kappa(channel: ChannelMatrix, config: Optional[SolverConfig] = None) -> ConditioningReport:
    """Conditioning report for one channel."""
    config = config or SolverConfig()
    eigenvalues = spectrum_stack(channel.entries[None, :, :], config)[0]
    value = float(np.clip(eigenvalues[0] / eigenvalues[-1], 0.0, 1.0))
    floor_limited = bool(eigenvalues[0] < config.floor_ratio * eigenvalues[-1])
    below_reporting = value < config.reporting_floor
    if floor_limited:
        logger.warning(f"1/kappa = {value:.3e} is below the double-precision floor "
                       f"{config.floor_ratio:.0e}; value is numerical noise")
    eigenvalues.flags.writeable = False
    return ConditioningReport(eigenvalues=eigenvalues, inv_kappa=value, numerically_floor_limited=floor_limited,
                              below_reporting_floor=below_reporting)
