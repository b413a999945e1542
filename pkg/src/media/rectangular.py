"""
Rectangular Medium
Slab of constant thickness parallel to the arrays.
"""
from typing import Any, Dict

from src.errors import ContractViolation, InvalidMediumError
from src.geometry.array_config import ArrayConfig
from src.geometry.path_lengths import PathMatrix
from src.media.base_medium import BaseMedium, LengthMatrix


def rectangular_lengths(cfg: ArrayConfig, paths: PathMatrix, t: float) -> LengthMatrix:
    """l_mn = t * r_mn / R."""
    if not 0 <= t < cfg.range_R:
        raise InvalidMediumError(f"Slab thickness t={t} must satisfy 0 <= t < R={cfg.range_R}")
    if paths.shape != (cfg.m_rx, cfg.n_tx):
        raise ContractViolation(f"Path matrix shape {paths.shape} does not match {cfg.m_rx}x{cfg.n_tx}")
    return LengthMatrix(t * paths.entries / cfg.range_R)


class RectangularMedium(BaseMedium):
    """Rectangular dielectric slab."""

    kind = "rectangular"

    def __init__(self, thickness: float, sqrt_eps_r: float = 1.0):
        super().__init__(sqrt_eps_r)
        if not thickness >= 0:
            raise InvalidMediumError(f"Slab thickness must be >= 0, got {thickness}")
        self.thickness = float(thickness)

    def length_matrix(self, cfg: ArrayConfig, paths: PathMatrix) -> LengthMatrix:
        return rectangular_lengths(cfg, paths, self.thickness)

    def parameters(self) -> Dict[str, Any]:
        return {'thickness': self.thickness}
