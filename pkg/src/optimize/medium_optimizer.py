"""
Medium Optimizer
Searches shape-function scales and general Toeplitz first rows that maximise 1/kappa
under the span constraint.
"""
import logging
from dataclasses import dataclass, field
from typing import Dict, List, Optional, Tuple

import numpy as np

from src.config import OptimizerConfig, SolverConfig
from src.errors import ContractViolation, InfeasibleDesignError
from src.geometry.array_config import ArrayConfig
from src.geometry.path_lengths import PathModel
from src.media.shape_function import ShapeKind, profile_span, shape_first_row
from src.optimize.line_search import golden_section_maximize
from src.optimize.objective import ToeplitzObjective

logger = logging.getLogger(__name__)

# keeps the upper end of a span-limited interval inside the constraint after rounding
SPAN_MARGIN = 1e-12


@dataclass(frozen=True)
class Optimum:
    """Best medium parameters found by a search and the 1/kappa they achieve."""
    best_params: Dict[str, float]
    best_inv_kappa: float
    first_row: np.ndarray
    constraint_active: bool = True
    on_boundary: bool = False
    evaluations: int = 0

    def first_row_in_wavelengths(self, lambda0: float) -> np.ndarray:
        return self.first_row / lambda0


@dataclass(frozen=True)
class RowBounds:
    """Search box for a Toeplitz first row: l11 is fixed at ``base``, the rest lie in [lower, upper]."""
    base: float
    lower: float
    upper: float

    @classmethod
    def default(cls, lambda0: float, span_bound: float) -> 'RowBounds':
        base = 0.5 * lambda0
        return cls(base=base, lower=0.0, upper=base + span_bound * lambda0)


def _span_ok(rows: np.ndarray, limit: float) -> np.ndarray:
    return rows.max(axis=1) - rows.min(axis=1) <= limit


def _resolve(config: Optional[OptimizerConfig], span_bound: Optional[float]) -> Tuple[OptimizerConfig, float]:
    config = config or OptimizerConfig()
    span_bound = config.span_bound if span_bound is None else float(span_bound)
    if not span_bound > 0:
        raise ContractViolation(f"Span bound must be > 0, got {span_bound}")
    return config, span_bound


def optimize_l_delta(cfg: ArrayConfig, kind, sqrt_eps_r: float, span_bound: Optional[float] = None,
                     grid_points: Optional[int] = None, path_model=PathModel.APPROXIMATE,
                     config: Optional[OptimizerConfig] = None,
                     solver_config: Optional[SolverConfig] = None) -> Optimum:
    """
    Maximise 1/kappa over the shape scale l_delta.

    The feasible interval is [0, c*lambda0/span(g)] so that every first row honours
    max(l) - min(l) <= c*lambda0. A coarse grid locates the best bracket and a
    golden-section search refines inside it; the first grid point wins ties.
    """
    kind = ShapeKind.parse(kind)
    config, span_bound = _resolve(config, span_bound)
    grid_points = grid_points or config.grid_points
    if grid_points < 2:
        raise ContractViolation(f"Need at least 2 grid points, got {grid_points}")

    objective = ToeplitzObjective(cfg, sqrt_eps_r, path_model, solver_config)
    v = cfg.v
    span = profile_span(kind, v)
    if span == 0.0:
        # single antenna pair: every l_delta is a global phase
        report = objective.evaluate_row(shape_first_row(kind, 0.0, v))
        return Optimum(best_params={'l_delta': 0.0}, best_inv_kappa=report.inv_kappa,
                       first_row=shape_first_row(kind, 0.0, v), evaluations=objective.evaluations)

    upper = span_bound * cfg.lambda0 / span * (1.0 - SPAN_MARGIN)
    if not upper > 0:
        raise InfeasibleDesignError(f"Empty l_delta interval for span bound {span_bound}")

    grid = np.linspace(0.0, upper, grid_points)
    values = objective.evaluate_shape(kind, grid)
    best = int(np.argmax(values))
    lo = grid[max(best - 1, 0)]
    hi = grid[min(best + 1, grid_points - 1)]

    x, fx = golden_section_maximize(lambda l: float(objective.evaluate_shape(kind, [l])[0]),
                                    lo, hi, tol=config.golden_tolerance * (hi - lo))
    l_delta = x if fx > values[best] else float(grid[best])

    first_row = shape_first_row(kind, l_delta, v)
    report = objective.evaluate_row(first_row)
    on_boundary = l_delta >= upper - (grid[1] - grid[0])
    logger.debug(f"{kind.value} V={v} sqrt_eps_r={sqrt_eps_r}: l_delta={l_delta / cfg.lambda0:.6f} lambda0, "
                 f"1/kappa={report.inv_kappa:.9g}")
    return Optimum(best_params={'l_delta': float(l_delta)}, best_inv_kappa=report.inv_kappa,
                   first_row=first_row, constraint_active=True, on_boundary=bool(on_boundary),
                   evaluations=objective.evaluations)


class FirstRowSearch:
    """Coordinate-wise grid search with shrinking windows over first_row[2..V]."""

    def __init__(self, objective: ToeplitzObjective, bounds: RowBounds, span_limit: float,
                 config: OptimizerConfig):
        self.objective = objective
        self.bounds = bounds
        self.span_limit = span_limit
        self.config = config
        self.logger = logging.getLogger(__name__)

    def _feasible(self, row: np.ndarray) -> bool:
        return bool(_span_ok(row[None, :], self.span_limit)[0])

    def descend(self, seed: np.ndarray) -> Tuple[np.ndarray, float]:
        current = np.array(seed, dtype=float)
        f_cur = float(self.objective.evaluate_rows(current)[0])
        lower, upper = self.bounds.lower, self.bounds.upper
        width = upper - lower
        resolution = self.config.first_row_resolution

        for round_index in range(self.config.first_row_refinements):
            half = 0.5 * width * self.config.first_row_shrink ** round_index
            for i in range(1, current.size):
                if round_index == 0:
                    candidates = np.linspace(lower, upper, resolution)
                else:
                    candidates = np.linspace(max(lower, current[i] - half), min(upper, current[i] + half), resolution)
                rows = np.tile(current, (resolution, 1))
                rows[:, i] = candidates
                values = self.objective.evaluate_rows(rows)
                values[~_span_ok(rows, self.span_limit)] = -1.0
                j = int(np.argmax(values))
                if values[j] > f_cur or (values[j] == f_cur and candidates[j] < current[i]):
                    current[i] = candidates[j]
                    f_cur = float(values[j])
            self.logger.debug(f"Refinement {round_index + 1}: 1/kappa={f_cur:.9g}")
        return current, f_cur

    def seeds(self, shape_row: Optional[np.ndarray]) -> List[np.ndarray]:
        v = self.objective.v
        flat = np.full(v, np.clip(self.bounds.base, self.bounds.lower, self.bounds.upper))
        flat[0] = self.bounds.base
        candidates = [flat]
        if shape_row is not None:
            shifted = shape_row - shape_row[0] + self.bounds.base
            shifted[1:] = np.clip(shifted[1:], self.bounds.lower, self.bounds.upper)
            if self._feasible(shifted):
                candidates.append(shifted)
        return [c for c in candidates if self._feasible(c)]


def optimize_first_row(cfg: ArrayConfig, sqrt_eps_r: float, bounds: Optional[RowBounds] = None,
                       span_bound: Optional[float] = None, path_model=PathModel.APPROXIMATE,
                       config: Optional[OptimizerConfig] = None,
                       solver_config: Optional[SolverConfig] = None) -> Optimum:
    """
    General Toeplitz search with l11 anchored at ``bounds.base``.

    Seeds from a flat row and from the quadratic shape optimum, runs coordinate
    descent from each and keeps the best; equal objectives resolve to the
    lexicographically smallest row.
    """
    config, span_bound = _resolve(config, span_bound)
    v = cfg.v
    if v > config.max_first_row_size:
        raise ContractViolation(f"First-row search supports V <= {config.max_first_row_size}, got V={v}")

    span_limit = span_bound * cfg.lambda0
    bounds = bounds or RowBounds.default(cfg.lambda0, span_bound)
    if bounds.base < 0 or bounds.lower < 0 or bounds.lower > bounds.upper:
        raise InfeasibleDesignError(f"Invalid first-row bounds {bounds}")
    if max(bounds.lower, bounds.base - span_limit) > min(bounds.upper, bounds.base + span_limit):
        raise InfeasibleDesignError(f"No row within {bounds} satisfies the span bound {span_bound} lambda0")

    objective = ToeplitzObjective(cfg, sqrt_eps_r, path_model, solver_config)
    if v == 1:
        row = np.array([bounds.base])
        report = objective.evaluate_row(row)
        return Optimum(best_params={'l11': bounds.base}, best_inv_kappa=report.inv_kappa, first_row=row,
                       evaluations=objective.evaluations)

    logger.info(f"First-row search: V={v}, sqrt_eps_r={sqrt_eps_r}, span bound {span_bound} lambda0")
    shape = optimize_l_delta(cfg, ShapeKind.QUADRATIC, sqrt_eps_r, span_bound=span_bound,
                             path_model=path_model, config=config, solver_config=solver_config)
    search = FirstRowSearch(objective, bounds, span_limit, config)

    best_row, best_value = None, -1.0
    for seed in search.seeds(shape.first_row):
        row, value = search.descend(seed)
        if best_row is None or value > best_value or (value == best_value and tuple(row) < tuple(best_row)):
            best_row, best_value = row, value

    report = objective.evaluate_row(best_row)
    params = {f"l1{k + 1}": float(x) for k, x in enumerate(best_row)}
    on_boundary = bool(best_row.max() - best_row.min() >= span_limit * (1.0 - 1e-6))
    logger.info(f"First-row search done: 1/kappa={report.inv_kappa:.9g} after "
                f"{objective.evaluations + shape.evaluations} evaluations")
    return Optimum(best_params=params, best_inv_kappa=report.inv_kappa, first_row=best_row,
                   constraint_active=True, on_boundary=on_boundary,
                   evaluations=objective.evaluations + shape.evaluations)
