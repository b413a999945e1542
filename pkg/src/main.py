"""
Experiment CLI
Command-line surface for scenario runs, figure presets and closed-form spacing design.
"""
import argparse
import logging
import sys
from typing import List, Optional

from src.config import SystemConfig
from src.design.spacing import medium_optimal_spacing, optimal_spacing, solve_thickness
from src.errors import ConfigError, ContractViolation, EigensolverError, InfeasibleDesignError, InvalidMediumError
from src.geometry.array_config import ArrayConfig
from src.orchestration.experiment_runner import FIGURES, ExperimentRunner

EXIT_OK = 0
EXIT_RUNTIME = 1
EXIT_CONFIG = 2
EXIT_NUMERICAL = 3


def build_parser(config: SystemConfig) -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="run.py",
                                     description="LOS MIMO conditioning with dielectric phase-shifting media")
    parser.add_argument('--log-level', default=config.output.log_level,
                        choices=['DEBUG', 'INFO', 'WARNING', 'ERROR'])
    parser.add_argument('--seedless', action='store_true',
                        help="accepted for compatibility; every computation is deterministic")
    sub = parser.add_subparsers(dest='command', required=True)

    run = sub.add_parser('run', help="run a scenario config file")
    run.add_argument('config', help="path to a [geometry]/[medium]/[experiment] file")
    run.add_argument('--out', help="CSV path (default: output_dir/<command>.csv)")
    run.add_argument('--override', action='append', default=[], metavar='SECTION.KEY=VALUE')
    run.add_argument('--wide', action='store_true', default=None, help="also write the one-column-per-curve layout")

    figure = sub.add_parser('figure', help="reproduce a figure preset")
    figure.add_argument('name', choices=FIGURES)
    figure.add_argument('--out', help="CSV path (default: output_dir/<name>.csv)")
    figure.add_argument('--override', action='append', default=[], metavar='SECTION.KEY=VALUE')
    figure.add_argument('--wide', action='store_true', default=None, help="also write the one-column-per-curve layout")

    design = sub.add_parser('design', help="closed-form spacing design")
    design_sub = design.add_subparsers(dest='design_command', required=True)
    for name, help_text in (('spacing', "optimal d_t*d_r, optionally with a rectangular slab"),
                            ('thickness', "slab thickness that makes a target d_t*d_r optimal")):
        p = design_sub.add_parser(name, help=help_text)
        p.add_argument('--n-tx', type=int, required=True)
        p.add_argument('--m-rx', type=int)
        p.add_argument('--range', dest='range_R', type=float, default=config.physical.range_R)
        p.add_argument('--lambda0', type=float, default=config.physical.lambda0)
        p.add_argument('--theta-t', type=float, default=0.0)
        p.add_argument('--theta-r', type=float, default=0.0)
        p.add_argument('--sqrt-eps-r', type=float, default=1.0)
        if name == 'spacing':
            p.add_argument('--thickness', type=float, default=0.0)
            p.add_argument('--ratio', type=float, default=1.0, help="d_t / d_r split of the product")
        else:
            p.add_argument('--target-d-product', type=float, required=True)
    return parser


def _design(args) -> int:
    template = ArrayConfig(n_tx=args.n_tx, m_rx=args.m_rx or args.n_tx, d_t=1.0, d_r=1.0,
                           theta_t=args.theta_t, theta_r=args.theta_r, range_R=args.range_R,
                           lambda0=args.lambda0)
    if args.design_command == 'spacing':
        if args.thickness > 0 or args.sqrt_eps_r != 1.0:
            solution = medium_optimal_spacing(template, args.thickness, args.sqrt_eps_r)
        else:
            solution = optimal_spacing(template)
        d_t, d_r = solution.split(args.ratio)
        print(f"d_product = {solution.d_product!r}")
        print(f"d_symmetric = {solution.d_symmetric!r}")
        print(f"d_t = {d_t!r}")
        print(f"d_r = {d_r!r}")
    else:
        t = solve_thickness(template, args.target_d_product, args.sqrt_eps_r)
        print(f"thickness = {t!r}")
    return EXIT_OK


def main(argv: Optional[List[str]] = None) -> int:
    """Main entry point; returns the process exit code."""
    config = SystemConfig.from_env()
    parser = build_parser(config)
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        return EXIT_OK if e.code == 0 else EXIT_CONFIG

    logging.basicConfig(
        level=getattr(logging, args.log_level),
        format='%(asctime)s - %(name)s - %(levelname)s - %(message)s'
    )
    logger = logging.getLogger(__name__)

    try:
        if args.command == 'design':
            return _design(args)
        runner = ExperimentRunner(config)
        if args.command == 'run':
            outcome = runner.run_file(args.config, args.override, out=args.out, wide=args.wide)
        else:
            outcome = runner.run_figure(args.name, args.override, out=args.out, wide=args.wide)
        for path in outcome.paths:
            print(path)
        return EXIT_OK
    except (ConfigError, ContractViolation, InvalidMediumError, InfeasibleDesignError) as e:
        logger.error(f"Configuration error: {e}")
        return EXIT_CONFIG
    except EigensolverError as e:
        logger.error(f"Numerical failure: {e}")
        return EXIT_NUMERICAL
    except Exception as e:
        logger.error(f"Run failed: {e}")
        return EXIT_RUNTIME


if __name__ == "__main__":
    sys.exit(main())
