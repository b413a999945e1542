"""
Parameter Sweeps
Grids of 1/kappa over Toeplitz lengths and shape-function scenarios, collected into
tabular SweepResult records.
"""
import logging
from dataclasses import dataclass, field
from typing import Any, Dict, List, Optional, Sequence

import numpy as np
import pandas as pd

from src.config import OptimizerConfig, SolverConfig
from src.errors import ContractViolation
from src.geometry.array_config import ArrayConfig
from src.geometry.path_lengths import PathModel
from src.media.shape_function import ShapeKind
from src.optimize.medium_optimizer import optimize_l_delta
from src.optimize.objective import ToeplitzObjective

logger = logging.getLogger(__name__)

# kind label of the no-medium baseline curve
FREE_SPACE = "none"


@dataclass(frozen=True)
class SweepAxis:
    name: str
    unit: str
    values: tuple

    def __len__(self) -> int:
        return len(self.values)


@dataclass
class SweepResult:
    """inv_kappa over the cartesian product of ``axes`` (first axis slowest)."""
    axes: List[SweepAxis]
    values: np.ndarray
    scenario: Dict[str, Any] = field(default_factory=dict)
    extras: Dict[str, np.ndarray] = field(default_factory=dict)

    def __post_init__(self):
        self.values = np.asarray(self.values, dtype=float)
        shape = tuple(len(axis) for axis in self.axes)
        if self.values.shape != shape:
            raise ContractViolation(f"Sweep values have shape {self.values.shape}, axes imply {shape}")
        if np.any(~np.isfinite(self.values)) or np.any(self.values < 0) or np.any(self.values > 1):
            raise ContractViolation("Sweep values must lie in [0, 1]")
        for name, extra in self.extras.items():
            if np.shape(extra) != shape:
                raise ContractViolation(f"Extra column '{name}' has shape {np.shape(extra)}, expected {shape}")

    @property
    def size(self) -> int:
        return int(self.values.size)

    def to_frame(self) -> pd.DataFrame:
        """Long format: one row per grid point, axis columns then inv_kappa then extras."""
        index = pd.MultiIndex.from_product([list(axis.values) for axis in self.axes],
                                           names=[axis.name for axis in self.axes])
        frame = index.to_frame(index=False)
        frame['inv_kappa'] = self.values.ravel()
        for name, extra in self.extras.items():
            frame[name] = np.asarray(extra).ravel()
        return frame

    def to_wide(self) -> pd.DataFrame:
        """One row per value of the last axis, one inv_kappa column per curve."""
        frame = self.to_frame()
        last = self.axes[-1].name
        if len(self.axes) == 1:
            return frame[[last, 'inv_kappa']]
        leading = [axis.name for axis in self.axes[:-1]]
        frame['curve'] = frame[leading].astype(str).apply(
            lambda row: '|'.join(f"{name}={row[name]}" for name in leading), axis=1)
        curves = list(dict.fromkeys(frame['curve']))
        wide = frame.pivot(index=last, columns='curve', values='inv_kappa')
        wide = wide.reindex(index=list(self.axes[-1].values), columns=curves)
        wide.columns.name = None
        return wide.reset_index()


def _check_size(cfg: ArrayConfig, size: int):
    if cfg.n_tx != size or cfg.m_rx != size:
        raise ContractViolation(f"Sweep needs N=M={size}, got N={cfg.n_tx}, M={cfg.m_rx}")


def _length_grid(start: float, stop: float, steps: int, cfg: ArrayConfig, name: str) -> np.ndarray:
    if steps < 2:
        raise ContractViolation(f"{name} sweep needs at least 2 steps, got {steps}")
    if not 0 <= start <= stop < cfg.range_R:
        raise ContractViolation(f"{name} range [{start}, {stop}] must satisfy 0 <= min <= max < R={cfg.range_R}")
    return np.linspace(start, stop, steps)


def _scenario(cfg: ArrayConfig, path_model, **medium) -> Dict[str, Any]:
    scenario = {f"geometry.{k}": v for k, v in cfg.to_dict().items()}
    scenario['geometry.path_model'] = PathModel.parse(path_model).value
    scenario.update({f"medium.{k}": v for k, v in medium.items()})
    return scenario


def sweep_l12(cfg: ArrayConfig, sqrt_eps_r_values: Sequence[float], l12_min: float, l12_max: float,
              steps: int, l11: Optional[float] = None, path_model=PathModel.APPROXIMATE,
              solver_config: Optional[SolverConfig] = None) -> SweepResult:
    """1/kappa of a 2x2 link with Toeplitz first row [l11, l12] over l12 for each sqrt_eps_r."""
    _check_size(cfg, 2)
    l11 = cfg.lambda0 if l11 is None else l11
    l12 = _length_grid(l12_min, l12_max, steps, cfg, "l12")
    rows = np.column_stack([np.full(steps, l11), l12])

    values = np.empty((len(sqrt_eps_r_values), steps))
    for i, s in enumerate(sqrt_eps_r_values):
        values[i] = ToeplitzObjective(cfg, s, path_model, solver_config).evaluate_rows(rows)
        logger.debug(f"l12 sweep sqrt_eps_r={s}: max 1/kappa={values[i].max():.9g}")

    axes = [SweepAxis('sqrt_eps_r', '1', tuple(float(s) for s in sqrt_eps_r_values)),
            SweepAxis('l12', 'lambda0', tuple(l12 / cfg.lambda0))]
    return SweepResult(axes, values, _scenario(cfg, path_model, kind='toeplitz', l11=l11))


def sweep_l12_l13(cfg: ArrayConfig, sqrt_eps_r: float, l12_min: float, l12_max: float,
                  l13_min: float, l13_max: float, steps: int, l11: Optional[float] = None,
                  path_model=PathModel.APPROXIMATE,
                  solver_config: Optional[SolverConfig] = None) -> SweepResult:
    """1/kappa of a 3x3 link over a (l12, l13) grid with l11 fixed."""
    _check_size(cfg, 3)
    l11 = cfg.lambda0 if l11 is None else l11
    l12 = _length_grid(l12_min, l12_max, steps, cfg, "l12")
    l13 = _length_grid(l13_min, l13_max, steps, cfg, "l13")
    grid12, grid13 = np.meshgrid(l12, l13, indexing='ij')
    rows = np.column_stack([np.full(grid12.size, l11), grid12.ravel(), grid13.ravel()])

    logger.info(f"Evaluating {steps}x{steps} (l12, l13) grid at sqrt_eps_r={sqrt_eps_r}")
    values = ToeplitzObjective(cfg, sqrt_eps_r, path_model, solver_config).evaluate_rows(rows)
    axes = [SweepAxis('l12', 'lambda0', tuple(l12 / cfg.lambda0)),
            SweepAxis('l13', 'lambda0', tuple(l13 / cfg.lambda0))]
    return SweepResult(axes, values.reshape(steps, steps),
                       _scenario(cfg, path_model, kind='toeplitz', l11=l11, sqrt_eps_r=sqrt_eps_r))


def sweep_shape_functions(template: ArrayConfig, sqrt_eps_r_values: Sequence[float],
                          eta_values: Sequence[float], kinds: Sequence[str], n_values: Sequence[int],
                          span_bound: Optional[float] = None, grid_points: Optional[int] = None,
                          path_model=PathModel.APPROXIMATE, config: Optional[OptimizerConfig] = None,
                          solver_config: Optional[SolverConfig] = None) -> SweepResult:
    """
    Best 1/kappa per (sqrt_eps_r, eta, kind, N) with l_delta re-optimised for every N.

    Arrays are square (N = M) at eta * d_Opt. Kind "none" is the free-space
    baseline; its l_delta column is NaN.
    """
    config = config or OptimizerConfig()
    solver_config = solver_config or SolverConfig()
    kinds = [FREE_SPACE if str(k).strip().lower() == FREE_SPACE else ShapeKind.parse(k).value for k in kinds]
    shape = (len(sqrt_eps_r_values), len(eta_values), len(kinds), len(n_values))
    values = np.empty(shape)
    l_delta = np.full(shape, np.nan)
    on_boundary = np.zeros(shape, dtype=bool)
    floor_limited = np.zeros(shape, dtype=bool)
    below_floor = np.zeros(shape, dtype=bool)

    logger.info(f"Shape sweep: {len(kinds)} kinds, N in {list(n_values)}, eta in {list(eta_values)}, "
                f"sqrt_eps_r in {list(sqrt_eps_r_values)}")
    for index in np.ndindex(*shape):
        s = sqrt_eps_r_values[index[0]]
        kind = kinds[index[2]]
        n = int(n_values[index[3]])
        cfg = ArrayConfig.from_factor(n, n, eta_values[index[1]], template.theta_t, template.theta_r,
                                      template.range_R, template.lambda0)
        if kind == FREE_SPACE:
            report = ToeplitzObjective(cfg, 1.0, path_model, solver_config).evaluate_row(np.zeros(n))
            values[index] = report.inv_kappa
            floor_limited[index] = report.numerically_floor_limited
        else:
            optimum = optimize_l_delta(cfg, kind, s, span_bound=span_bound, grid_points=grid_points,
                                       path_model=path_model, config=config, solver_config=solver_config)
            values[index] = optimum.best_inv_kappa
            l_delta[index] = optimum.best_params['l_delta'] / cfg.lambda0
            on_boundary[index] = optimum.on_boundary
            floor_limited[index] = optimum.best_inv_kappa < solver_config.floor_ratio
        below_floor[index] = values[index] < solver_config.reporting_floor
        logger.debug(f"sqrt_eps_r={s} eta={eta_values[index[1]]} {kind} N={n}: 1/kappa={values[index]:.9g}")

    axes = [SweepAxis('sqrt_eps_r', '1', tuple(float(s) for s in sqrt_eps_r_values)),
            SweepAxis('eta', '1', tuple(float(e) for e in eta_values)),
            SweepAxis('kind', '', tuple(kinds)),
            SweepAxis('n', '1', tuple(int(n) for n in n_values))]
    scenario = {'geometry.theta_t': template.theta_t, 'geometry.theta_r': template.theta_r,
                'geometry.range_R': template.range_R, 'geometry.lambda0': template.lambda0,
                'geometry.path_model': PathModel.parse(path_model).value,
                'experiment.span_bound': config.span_bound if span_bound is None else span_bound}
    return SweepResult(axes, values, scenario,
                       extras={'l_delta': l_delta, 'on_boundary': on_boundary, 'floor_limited': floor_limited,
                               'below_reporting_floor': below_floor})
