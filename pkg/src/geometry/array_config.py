"""
Array Configuration
Geometric scenario for a pair of uniform linear arrays facing each other.
"""
import math
from dataclasses import dataclass, replace, asdict
from typing import Any, Dict

from src.errors import ContractViolation


@dataclass(frozen=True)
class ArrayConfig:
    """Transmit/receive ULA pair, link range and free-space wavelength."""
    n_tx: int
    m_rx: int
    d_t: float          # transmit element spacing [m]
    d_r: float          # receive element spacing [m]
    theta_t: float      # transmit tilt [rad]
    theta_r: float      # receive tilt [rad]
    range_R: float      # link distance [m]
    lambda0: float      # free-space wavelength [m]

    def __post_init__(self):
        if self.n_tx < 1 or self.m_rx < 1:
            raise ContractViolation(f"Antenna counts must be >= 1, got N={self.n_tx}, M={self.m_rx}")
        for name in ('d_t', 'd_r', 'range_R', 'lambda0'):
            value = getattr(self, name)
            if not value > 0:
                raise ContractViolation(f"{name} must be > 0, got {value}")
        for name in ('theta_t', 'theta_r'):
            value = getattr(self, name)
            if not abs(value) < math.pi / 2:
                raise ContractViolation(f"|{name}| must be < pi/2, got {value}")

    @property
    def v(self) -> int:
        """V = max(N, M)."""
        return max(self.n_tx, self.m_rx)

    @property
    def cos_product(self) -> float:
        return math.cos(self.theta_t) * math.cos(self.theta_r)

    @property
    def extent(self) -> float:
        """Largest array aperture [m]."""
        return max((self.m_rx - 1) * self.d_r, (self.n_tx - 1) * self.d_t)

    def is_far_field(self) -> bool:
        """Far-field premise used by the second-order distance expansion."""
        return self.extent <= self.range_R / 10.0

    def symmetric_optimal_spacing(self) -> float:
        """d_Opt: symmetric solution of d_t*d_r = lambda0*R / (V cos(theta_t) cos(theta_r))."""
        return math.sqrt(self.lambda0 * self.range_R / (self.v * self.cos_product))

    def to_dict(self) -> Dict[str, Any]:
        return asdict(self)

    @classmethod
    def from_factor(cls, n_tx: int, m_rx: int, eta: float, theta_t: float = 0.0, theta_r: float = 0.0,
                    range_R: float = 10.0, lambda0: float = 5e-3) -> 'ArrayConfig':
        """Build a scenario at eta * d_Opt spacing."""
        template = cls(n_tx=n_tx, m_rx=m_rx, d_t=1.0, d_r=1.0, theta_t=theta_t, theta_r=theta_r,
                       range_R=range_R, lambda0=lambda0)
        return spacing_from_factor(template, eta)


def spacing_from_factor(template: ArrayConfig, eta: float) -> ArrayConfig:
    """Return the template with d_t = d_r = eta * d_Opt.

    Spacings already present on the template are ignored; only counts,
    tilts, range and wavelength are read from it.
    """
    if not eta > 0:
        raise ContractViolation(f"Spacing factor must be > 0, got {eta}")
    d = eta * template.symmetric_optimal_spacing()
    return replace(template, d_t=d, d_r=d)
