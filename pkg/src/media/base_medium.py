"""
Base Medium Framework
Abstract base class for dielectric media and the in-medium length matrix.
"""
from abc import ABC, abstractmethod
from dataclasses import dataclass
from typing import Any, Dict

import numpy as np

from src.errors import ContractViolation, InvalidMediumError
from src.geometry.array_config import ArrayConfig
from src.geometry.path_lengths import PathMatrix


DEFAULT_SPAN_BOUND = 2.5


@dataclass(frozen=True)
class LengthMatrix:
    """M x N distances l_mn [m] travelled inside the medium."""
    entries: np.ndarray

    def __post_init__(self):
        if self.entries.size == 0:
            raise ContractViolation("Length matrix must be nonempty")
        if np.any(self.entries < 0):
            raise InvalidMediumError(f"In-medium lengths must be >= 0, min is {self.entries.min()}")
        self.entries.flags.writeable = False

    @property
    def shape(self):
        return self.entries.shape

    @property
    def span(self) -> float:
        return float(self.entries.max() - self.entries.min())

    @classmethod
    def zeros(cls, m_rx: int, n_tx: int) -> 'LengthMatrix':
        return cls(np.zeros((m_rx, n_tx)))


def check_span_constraint(lengths: LengthMatrix, lambda0: float, c: float = DEFAULT_SPAN_BOUND) -> bool:
    """True iff max(l_mn) - min(l_mn) <= c * lambda0."""
    return lengths.span <= c * lambda0


class BaseMedium(ABC):
    """A dielectric medium with refractive factor sqrt(eps_r)."""

    kind = "medium"

    def __init__(self, sqrt_eps_r: float = 1.0):
        if not sqrt_eps_r >= 1.0:
            raise InvalidMediumError(f"sqrt_eps_r must be >= 1, got {sqrt_eps_r}")
        self.sqrt_eps_r = float(sqrt_eps_r)

    @abstractmethod
    def length_matrix(self, cfg: ArrayConfig, paths: PathMatrix) -> LengthMatrix:
        """In-medium lengths for the scenario."""
        pass

    def parameters(self) -> Dict[str, Any]:
        """Variant-specific parameters for provenance records."""
        return {}

    def describe(self) -> Dict[str, Any]:
        description = {'variant': self.kind, 'sqrt_eps_r': self.sqrt_eps_r}
        description.update(self.parameters())
        return description

    def __repr__(self) -> str:
        params = ", ".join(f"{k}={v}" for k, v in self.describe().items())
        return f"{type(self).__name__}({params})"


class FreeSpace(BaseMedium):
    """No medium: all in-medium lengths are zero."""

    kind = "none"

    def __init__(self):
        super().__init__(1.0)

    def length_matrix(self, cfg: ArrayConfig, paths: PathMatrix) -> LengthMatrix:
        return LengthMatrix.zeros(cfg.m_rx, cfg.n_tx)
