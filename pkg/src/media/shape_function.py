"""
Shape-Function Medium
Toeplitz lengths generated by l_mn = l_delta * |g(|m - n|)| for a monotonic profile g.
"""
import logging
from enum import Enum
from typing import Any, Dict

import numpy as np

from src.errors import ContractViolation, InvalidMediumError
from src.geometry.array_config import ArrayConfig
from src.geometry.path_lengths import PathMatrix
from src.media.base_medium import BaseMedium, LengthMatrix
from src.media.toeplitz import toeplitz_lengths

logger = logging.getLogger(__name__)


class ShapeKind(str, Enum):
    LINEAR = "linear"             # z + 1/2
    QUADRATIC = "quadratic"       # z^2 + 1/2
    EXPONENTIAL = "exponential"   # e^-z + 1/4

    @classmethod
    def parse(cls, value) -> 'ShapeKind':
        if isinstance(value, cls):
            return value
        try:
            return cls(str(value).strip().lower())
        except ValueError:
            raise ContractViolation(f"Unknown shape function '{value}' "
                                    f"(expected one of {', '.join(k.value for k in cls)})")


def shape_profile(kind, v: int) -> np.ndarray:
    """|g(z)| for z = 0..V-1."""
    kind = ShapeKind.parse(kind)
    z = np.arange(v, dtype=float)
    if kind is ShapeKind.LINEAR:
        g = z + 0.5
    elif kind is ShapeKind.QUADRATIC:
        g = z ** 2 + 0.5
    else:
        g = np.exp(-z) + 0.25
    return np.abs(g)


def profile_span(kind, v: int) -> float:
    """max|g| - min|g| over z = 0..V-1; the span of the lengths is l_delta times this."""
    profile = shape_profile(kind, v)
    return float(profile.max() - profile.min())


def shape_first_row(kind, l_delta: float, v: int) -> np.ndarray:
    if not l_delta >= 0:
        raise InvalidMediumError(f"l_delta must be >= 0, got {l_delta}")
    return l_delta * shape_profile(kind, v)


def shape_lengths(kind, l_delta: float, lambda0: float, m_rx: int, n_tx: int) -> LengthMatrix:
    """Toeplitz length matrix with first row l_delta * |g(z)|, in meters."""
    if not lambda0 > 0:
        raise ContractViolation(f"lambda0 must be > 0, got {lambda0}")
    row = shape_first_row(kind, l_delta, max(m_rx, n_tx))
    logger.debug(f"Shape {ShapeKind.parse(kind).value}: l_delta={l_delta / lambda0:.6f} lambda0, "
                 f"span={row.max() / lambda0 - row.min() / lambda0:.4f} lambda0")
    return toeplitz_lengths(row, m_rx, n_tx)


class ShapeFunctionMedium(BaseMedium):
    """Medium whose profile follows a shape function scaled by l_delta."""

    kind = "shape"

    def __init__(self, kind, l_delta: float, unit_length: float, sqrt_eps_r: float = 1.0):
        super().__init__(sqrt_eps_r)
        if not l_delta >= 0:
            raise InvalidMediumError(f"l_delta must be >= 0, got {l_delta}")
        self.shape = ShapeKind.parse(kind)
        self.l_delta = float(l_delta)
        self.unit_length = float(unit_length)

    def length_matrix(self, cfg: ArrayConfig, paths: PathMatrix) -> LengthMatrix:
        return shape_lengths(self.shape, self.l_delta, self.unit_length, cfg.m_rx, cfg.n_tx)

    def parameters(self) -> Dict[str, Any]:
        return {'kind': self.shape.value, 'l_delta': self.l_delta, 'unit_length': self.unit_length}
