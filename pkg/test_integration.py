#!/usr/bin/env python3
"""
Integration Test for the Conditioning Pipeline
Tests configuration, scenario parsing, the numerical chain and CSV output end to end.
"""

import sys
import os
import tempfile
sys.path.insert(0, os.path.dirname(os.path.abspath(__file__)))


def run_integration() -> bool:
    """Run every stage once; returns False on the first failure."""
    print("=" * 50)
    print("INTEGRATION TEST - LOS MIMO Conditioning")
    print("=" * 50)

    # Test 1: Configuration Loading
    print("\n1. Testing Configuration Loading...")
    try:
        from src.config import SystemConfig

        config = SystemConfig.default()
        print(f"✓ SystemConfig loaded successfully")
        print(f"✓ Wavelength default: {config.physical.lambda0} m")
        print(f"✓ Jacobi sweep budget: {config.solver.max_sweeps}")
        print(f"✓ l_delta grid points: {config.optimizer.grid_points}")

    except Exception as e:
        print(f"✗ Configuration test failed: {e}")
        return False

    # Test 2: Scenario Parsing
    print("\n2. Testing Scenario Parsing...")
    try:
        from src.orchestration.scenario_parser import parse_config

        scenario = parse_config(
            "[geometry]\nn_tx = 4\neta = 0.8\n"
            "[medium]\nkind = shape\nshape = quadratic\nl_delta = 0.045 lambda0\nsqrt_eps_r = 2\n"
        )
        cfg = scenario.array_config()
        print(f"✓ Scenario parsed: N={cfg.n_tx}, M={cfg.m_rx}, d_t={cfg.d_t:.6f} m")
        print(f"✓ Medium: {scenario.medium_model().describe()}")

    except Exception as e:
        print(f"✗ Scenario parsing test failed: {e}")
        import traceback
        traceback.print_exc()
        return False

    # Test 3: Numerical Chain
    print("\n3. Testing Paths -> Channel -> Conditioning...")
    try:
        from src.channel.channel_matrix import h_fs, h_los_combined
        from src.conditioning.condition_number import inv_kappa
        from src.geometry.path_lengths import path_matrix

        paths = path_matrix(cfg, scenario.path_model)
        medium = scenario.medium_model()
        free = inv_kappa(h_fs(paths, cfg.lambda0)).inv_kappa
        combined = inv_kappa(h_los_combined(paths, medium.length_matrix(cfg, paths), cfg.lambda0,
                                            medium.sqrt_eps_r)).inv_kappa

        print(f"✓ Free-space 1/kappa: {free:.9f}")
        print(f"✓ With quadratic medium: {combined:.9f}")

        assert abs(free - 0.031811777) < 0.001, "free-space reference mismatch"
        assert combined > 0.999, "quadratic medium should restore orthogonality"
        print(f"✓ Medium restores the channel rank")

    except Exception as e:
        print(f"✗ Numerical chain test failed: {e}")
        import traceback
        traceback.print_exc()
        return False

    # Test 4: Experiment Runner Output
    print("\n4. Testing Experiment Runner Output...")
    try:
        from src.orchestration.experiment_runner import ExperimentRunner
        from src.orchestration.result_store import read_result

        with tempfile.TemporaryDirectory() as tmp:
            outcome = ExperimentRunner(config).run_scenario(scenario, out=os.path.join(tmp, "point.csv"))
            frame = read_result(str(outcome.paths[0]))
            print(f"✓ Wrote {outcome.paths[0].name} in {outcome.elapsed:.3f}s")
            print(f"✓ Columns: {list(frame.columns)}")
            assert abs(frame['inv_kappa'][0] - combined) < 1e-12, "CSV value differs from the pipeline"

        print(f"✓ CSV matches the in-memory result")

    except Exception as e:
        print(f"✗ Experiment runner test failed: {e}")
        return False

    print("\n" + "=" * 50)
    print("✓ ALL INTEGRATION TESTS PASSED!")
    print("=" * 50)
    return True


def test_basic_integration():
    assert run_integration()


if __name__ == "__main__":
    success = run_integration()
    sys.exit(0 if success else 1)
