"""
System Configuration
Centralized configuration for the LOS MIMO conditioning toolkit.
"""
import os
from dataclasses import dataclass


@dataclass
class PhysicalDefaultsConfig:
    """Physical anchors used when a scenario does not give them."""
    lambda0: float = 5e-3    # 60 GHz free-space wavelength [m]
    range_R: float = 10.0    # link distance [m]


@dataclass
class SolverConfig:
    """Jacobi eigensolver and conditioning settings."""
    jacobi_tolerance: float = 1e-14      # off-diagonal Frobenius norm relative to ||G||_F
    max_sweeps: int = 100
    hermitian_tolerance: float = 1e-10
    max_dimension: int = 64
    clamp_tolerance: float = 1e-9        # negative eigenvalues above -tol*lambda_max are clamped
    floor_ratio: float = 1e-14           # double-precision floor for 1/kappa
    reporting_floor: float = 1e-12       # 1/kappa below this is flagged in results
    batch_size: int = 1024               # matrices per vectorised Jacobi run


@dataclass
class OptimizerConfig:
    """Medium search settings."""
    grid_points: int = 4000
    golden_tolerance: float = 1e-4       # relative to the refined bracket
    span_bound: float = 2.5              # max(l) - min(l) <= span_bound * lambda0
    first_row_resolution: int = 41
    first_row_refinements: int = 10
    first_row_shrink: float = 0.5
    max_first_row_size: int = 6


@dataclass
class OutputConfig:
    """Logging and result file settings."""
    log_level: str = "INFO"
    output_dir: str = "results"
    presets_dir: str = "presets"

    @classmethod
    def from_env(cls) -> 'OutputConfig':
        """Create config from environment variables."""
        defaults = cls()
        return cls(
            log_level=os.getenv('LOG_LEVEL', defaults.log_level),
            output_dir=os.getenv('OUTPUT_DIR', defaults.output_dir),
            presets_dir=os.getenv('PRESETS_DIR', defaults.presets_dir)
        )


@dataclass
class SystemConfig:
    """Complete system configuration."""
    physical: PhysicalDefaultsConfig
    solver: SolverConfig
    optimizer: OptimizerConfig
    output: OutputConfig

    @classmethod
    def default(cls) -> 'SystemConfig':
        """Create default system configuration."""
        return cls(
            physical=PhysicalDefaultsConfig(),
            solver=SolverConfig(),
            optimizer=OptimizerConfig(),
            output=OutputConfig()
        )

    @classmethod
    def from_env(cls) -> 'SystemConfig':
        """Create system configuration from environment variables."""
        solver_defaults = SolverConfig()
        optimizer_defaults = OptimizerConfig()
        return cls(
            physical=PhysicalDefaultsConfig(),
            solver=SolverConfig(
                max_sweeps=int(os.getenv('JACOBI_MAX_SWEEPS', solver_defaults.max_sweeps))
            ),
            optimizer=OptimizerConfig(
                grid_points=int(os.getenv('GRID_POINTS', optimizer_defaults.grid_points))
            ),
            output=OutputConfig.from_env()
        )
