"""
Experiment Runner
Dispatches parsed scenarios to the numerical modules and hands the tables to the result store.
"""
import logging
import time
from dataclasses import dataclass, field
from pathlib import Path
from typing import Any, List, Optional, Sequence

import pandas as pd

from src.channel.channel_matrix import h_los_combined
from src.conditioning.condition_number import inv_kappa
from src.config import SystemConfig
from src.errors import ConfigError
from src.geometry.path_lengths import path_matrix
from src.optimize.medium_optimizer import Optimum, RowBounds, optimize_first_row, optimize_l_delta
from src.optimize.sweeps import sweep_l12, sweep_l12_l13, sweep_shape_functions
from src.orchestration.result_store import ResultStore
from src.orchestration.scenario_parser import ScenarioConfig, parse_config

FIGURES = ('fig2a', 'fig2b', 'fig3', 'fig4a', 'fig4b')

DEFAULT_STEPS = 200


def _join(values: Sequence[float]) -> str:
    return ";".join(repr(float(v)) for v in values)


@dataclass
class RunOutcome:
    """What a scenario produced and where it was written."""
    command: str
    result: Any
    frame: pd.DataFrame
    paths: List[Path] = field(default_factory=list)
    elapsed: float = 0.0


class ExperimentRunner:
    """Runs scenario files and figure presets."""

    def __init__(self, config: SystemConfig = None):
        self.config = config or SystemConfig.default()
        self.store = ResultStore(self.config.output.output_dir)
        self.logger = logging.getLogger(__name__)

    # ------------------------------------------------------------------
    # commands
    # ------------------------------------------------------------------

    def _point(self, scenario: ScenarioConfig):
        cfg = scenario.array_config()
        medium = scenario.medium_model()
        paths = path_matrix(cfg, scenario.path_model)
        lengths = medium.length_matrix(cfg, paths)
        report = inv_kappa(h_los_combined(paths, lengths, cfg.lambda0, medium.sqrt_eps_r), self.config.solver)
        frame = pd.DataFrame([{
            'inv_kappa': report.inv_kappa,
            'numerically_floor_limited': report.numerically_floor_limited,
            'below_reporting_floor': report.below_reporting_floor,
            'lambda_min': report.lambda_min,
            'lambda_max': report.lambda_max,
            'eigenvalues': _join(report.eigenvalues),
        }])
        return report, frame, None

    def _sweep_l12(self, scenario: ScenarioConfig):
        cfg = scenario.array_config()
        exp = scenario.experiment
        lambda0 = cfg.lambda0
        result = sweep_l12(
            cfg,
            exp.sqrt_eps_r_values or (scenario.medium.sqrt_eps_r,),
            exp.l12_min if exp.l12_min is not None else lambda0,
            exp.l12_max if exp.l12_max is not None else 4 * lambda0,
            exp.steps or DEFAULT_STEPS,
            l11=exp.l11,
            path_model=scenario.path_model,
            solver_config=self.config.solver,
        )
        return result, result.to_frame(), result.to_wide()

    def _sweep_l12_l13(self, scenario: ScenarioConfig):
        cfg = scenario.array_config()
        exp = scenario.experiment
        lambda0 = cfg.lambda0
        result = sweep_l12_l13(
            cfg,
            scenario.medium.sqrt_eps_r,
            exp.l12_min if exp.l12_min is not None else 0.0,
            exp.l12_max if exp.l12_max is not None else 2 * lambda0,
            exp.l13_min if exp.l13_min is not None else 0.0,
            exp.l13_max if exp.l13_max is not None else 2 * lambda0,
            exp.steps or DEFAULT_STEPS,
            l11=exp.l11,
            path_model=scenario.path_model,
            solver_config=self.config.solver,
        )
        return result, result.to_frame(), result.to_wide()

    def _shape_sweep(self, scenario: ScenarioConfig):
        exp = scenario.experiment
        eta_values = exp.eta_values or ((scenario.geometry.eta,) if scenario.geometry.eta is not None else None)
        if eta_values is None:
            raise ConfigError("shape_sweep needs eta_values when the geometry uses explicit spacings", 'eta_values')
        n_min = exp.n_min or 2
        n_max = exp.n_max or scenario.geometry.n_tx
        if n_max < n_min:
            raise ConfigError(f"n_max={n_max} is below n_min={n_min}", 'n_max')
        result = sweep_shape_functions(
            scenario.array_config(),
            exp.sqrt_eps_r_values or (scenario.medium.sqrt_eps_r,),
            eta_values,
            exp.kinds or (scenario.medium.shape or 'quadratic',),
            list(range(n_min, n_max + 1)),
            span_bound=exp.span_bound,
            grid_points=exp.grid_points,
            path_model=scenario.path_model,
            config=self.config.optimizer,
            solver_config=self.config.solver,
        )
        return result, result.to_frame(), result.to_wide()

    def _optimum_frame(self, optimum: Optimum, lambda0: float, params: dict) -> pd.DataFrame:
        row = dict(params)
        row.update({
            'inv_kappa': optimum.best_inv_kappa,
            'on_boundary': optimum.on_boundary,
            'first_row': _join(optimum.first_row_in_wavelengths(lambda0)),
        })
        return pd.DataFrame([row])

    def _optimize_l_delta(self, scenario: ScenarioConfig):
        cfg = scenario.array_config()
        exp = scenario.experiment
        optimum = optimize_l_delta(cfg, scenario.medium.shape or 'quadratic', scenario.medium.sqrt_eps_r,
                                   span_bound=exp.span_bound, grid_points=exp.grid_points,
                                   path_model=scenario.path_model, config=self.config.optimizer,
                                   solver_config=self.config.solver)
        params = {'l_delta': optimum.best_params['l_delta'] / cfg.lambda0}
        return optimum, self._optimum_frame(optimum, cfg.lambda0, params), None

    def _optimize_first_row(self, scenario: ScenarioConfig):
        cfg = scenario.array_config()
        exp = scenario.experiment
        span_bound = exp.span_bound if exp.span_bound is not None else self.config.optimizer.span_bound
        bounds = RowBounds.default(cfg.lambda0, span_bound)
        if exp.l11 is not None:
            bounds = RowBounds(base=exp.l11, lower=0.0, upper=exp.l11 + span_bound * cfg.lambda0)
        optimum = optimize_first_row(cfg, scenario.medium.sqrt_eps_r, bounds=bounds, span_bound=span_bound,
                                     path_model=scenario.path_model, config=self.config.optimizer,
                                     solver_config=self.config.solver)
        params = {k: v / cfg.lambda0 for k, v in optimum.best_params.items()}
        return optimum, self._optimum_frame(optimum, cfg.lambda0, params), None

    # ------------------------------------------------------------------
    # entry points
    # ------------------------------------------------------------------

    def run_scenario(self, scenario: ScenarioConfig, out: Optional[str] = None,
                     wide: Optional[bool] = None, name: Optional[str] = None) -> RunOutcome:
        """Run the scenario's command and write its CSV (plus the wide layout when requested)."""
        command = scenario.experiment.command
        handler = getattr(self, f"_{command}")
        self.logger.info(f"Running {name or command} ({scenario.medium.kind} medium, "
                         f"{scenario.path_model.value} paths)")
        start = time.perf_counter()
        result, frame, wide_frame = handler(scenario)
        elapsed = time.perf_counter() - start

        want_wide = scenario.experiment.wide if wide is None else wide
        path = self.store.resolve(out or scenario.experiment.output, f"{name or command}.csv")
        paths = self.store.write_frame(frame, path, scenario.items(), wide_frame if want_wide else None)
        self.logger.info(f"{name or command} finished in {elapsed:.2f}s")
        return RunOutcome(command=command, result=result, frame=frame, paths=paths, elapsed=elapsed)

    def run_file(self, config_path: str, overrides: Optional[Sequence[str]] = None,
                 out: Optional[str] = None, wide: Optional[bool] = None) -> RunOutcome:
        text = Path(config_path).read_text(encoding="utf-8")
        return self.run_scenario(parse_config(text, overrides), out=out, wide=wide)

    def preset_path(self, name: str) -> Path:
        if name not in FIGURES:
            raise ConfigError(f"unknown figure '{name}' (expected one of {', '.join(FIGURES)})", 'figure')
        candidates = [Path(self.config.output.presets_dir) / f"{name}.ini",
                      Path(__file__).resolve().parents[2] / 'presets' / f"{name}.ini"]
        for candidate in candidates:
            if candidate.exists():
                return candidate
        raise FileNotFoundError(f"Preset for {name} not found in {self.config.output.presets_dir}")

    def run_figure(self, name: str, overrides: Optional[Sequence[str]] = None,
                   out: Optional[str] = None, wide: Optional[bool] = None) -> RunOutcome:
        """Run a shipped figure preset; the CSV defaults to <output_dir>/<name>.csv."""
        text = self.preset_path(name).read_text(encoding="utf-8")
        return self.run_scenario(parse_config(text, overrides), out=out, wide=wide, name=name)
