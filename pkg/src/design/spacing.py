"""
Spacing Design
Closed-form optimal ULA spacing with and without a rectangular dielectric slab,
and the inverse problem of choosing the slab thickness.
"""
import logging
import math
from dataclasses import dataclass, field, replace
from typing import Any, Dict, Tuple

from src.errors import ContractViolation, InfeasibleDesignError, InvalidMediumError
from src.geometry.array_config import ArrayConfig

logger = logging.getLogger(__name__)

# |t| below this fraction of R is reported as exactly zero
ZERO_THICKNESS_TOLERANCE = 1e-12


@dataclass(frozen=True)
class SpacingSolution:
    """Optimal spacing product d_t*d_r and the assumptions it was derived under."""
    d_product: float
    assumptions: Dict[str, Any] = field(default_factory=dict)

    def __post_init__(self):
        if not self.d_product > 0:
            raise ContractViolation(f"Spacing product must be > 0, got {self.d_product}")

    @property
    def d_symmetric(self) -> float:
        return math.sqrt(self.d_product)

    def split(self, ratio: float = 1.0) -> Tuple[float, float]:
        """(d_t, d_r) with d_t / d_r = ratio and d_t * d_r = d_product."""
        if not ratio > 0:
            raise ContractViolation(f"Asymmetry ratio must be > 0, got {ratio}")
        return math.sqrt(self.d_product * ratio), math.sqrt(self.d_product / ratio)

    def apply(self, cfg: ArrayConfig, ratio: float = 1.0) -> ArrayConfig:
        d_t, d_r = self.split(ratio)
        return replace(cfg, d_t=d_t, d_r=d_r)


def _cos_product(cfg: ArrayConfig) -> float:
    cos_product = cfg.cos_product
    if not cos_product > 0:
        raise ContractViolation(f"Tilt angles ({cfg.theta_t}, {cfg.theta_r}) leave no positive cosine product")
    return cos_product


def _check_medium(cfg: ArrayConfig, t: float, sqrt_eps_r: float):
    if not 0 <= t < cfg.range_R:
        raise InvalidMediumError(f"Slab thickness t={t} must satisfy 0 <= t < R={cfg.range_R}")
    if not sqrt_eps_r >= 1.0:
        raise InvalidMediumError(f"sqrt_eps_r must be >= 1, got {sqrt_eps_r}")


def _assumptions(cfg: ArrayConfig, t: float, sqrt_eps_r: float) -> Dict[str, Any]:
    return {'V': cfg.v, 'theta_t': cfg.theta_t, 'theta_r': cfg.theta_r, 'R': cfg.range_R,
            'lambda0': cfg.lambda0, 't': t, 'sqrt_eps_r': sqrt_eps_r}


def optimal_spacing(cfg: ArrayConfig) -> SpacingSolution:
    """d_t*d_r = lambda0 R / (V cos(theta_t) cos(theta_r))."""
    d_product = cfg.lambda0 * cfg.range_R / (cfg.v * _cos_product(cfg))
    return SpacingSolution(d_product, _assumptions(cfg, 0.0, 1.0))


def medium_optimal_spacing(cfg: ArrayConfig, t: float, sqrt_eps_r: float) -> SpacingSolution:
    """d_t*d_r = lambda0 R^2 / (V (R + t (sqrt_eps_r - 1)) cos(theta_t) cos(theta_r))."""
    _check_medium(cfg, t, sqrt_eps_r)
    R = cfg.range_R
    d_product = cfg.lambda0 * R * R / (cfg.v * (R + t * (sqrt_eps_r - 1.0)) * _cos_product(cfg))
    return SpacingSolution(d_product, _assumptions(cfg, t, sqrt_eps_r))


def solve_thickness(cfg: ArrayConfig, target_d_product: float, sqrt_eps_r: float) -> float:
    """Slab thickness that makes ``target_d_product`` the optimal spacing product."""
    if not sqrt_eps_r > 1.0:
        raise InvalidMediumError(f"sqrt_eps_r must be > 1 for the slab to shift phases, got {sqrt_eps_r}")
    if not target_d_product > 0:
        raise ContractViolation(f"Target spacing product must be > 0, got {target_d_product}")

    R = cfg.range_R
    t = (cfg.lambda0 * R * R / (cfg.v * target_d_product * _cos_product(cfg)) - R) / (sqrt_eps_r - 1.0)
    if abs(t) <= ZERO_THICKNESS_TOLERANCE * R:
        t = 0.0
    if t < 0:
        raise InfeasibleDesignError(f"Target d_t*d_r={target_d_product:.6g} exceeds the free-space optimum; "
                                    f"no nonnegative thickness exists")
    if t >= R * (1.0 - ZERO_THICKNESS_TOLERANCE):
        raise InfeasibleDesignError(f"Required thickness {t:.6g} m is not below the link range R={R}")
    logger.debug(f"Thickness for d_t*d_r={target_d_product:.6g}: t={t:.6g} m")
    return t
