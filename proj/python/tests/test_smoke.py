import json
import math

import pytest

import careers


def test_terminal_cutoffs():
    policy = careers.solve_finite(3, "naive", exact=True)
    assert policy.periods == 3
    cutoff, wage = policy.at(2, 1, 0)
    assert cutoff == pytest.approx(math.sqrt(2 / 3), abs=1e-9)
    assert wage == pytest.approx(2 / 3)
    soph = careers.solve_finite(3, "sophisticated")
    assert soph.at(2, 0, 0)[0] == pytest.approx(0.5, abs=1e-9)


def test_beta_helpers():
    assert careers.posterior_mean(2, 1) == pytest.approx(2 / 3)
    assert careers.truncated_mean(1, 1, 0.8) == pytest.approx(0.4)
    assert careers.regularized_incomplete_beta(1, 1, 0.3) == pytest.approx(0.3)
    assert careers.static_cutoff(1, 1, "sophisticated")[0] == pytest.approx(0.5, abs=1e-9)


def test_stationary_and_grid():
    sol = careers.solve_stationary(max_depth=8, theta_grid_size=257, delta=0.8)
    assert sol["converged"]
    assert (0, 0) in sol["cutoffs"]
    grid = careers.solve_grid(periods=2, points=201)
    assert len(grid["dates"]) == 2


def test_simulation_offer_gap():
    policy = careers.solve_finite(3, "sophisticated")
    summary = careers.simulate(policy, n_paths=2000, horizon=2, seed=42)
    gap = summary["offer_gap"][0]
    assert gap["date"] == 1
    assert gap["gap"] == pytest.approx(0.407 - 0.177, abs=1e-2)
    again = careers.simulate(policy, n_paths=2000, horizon=2, seed=42)
    assert again == summary


def test_errors_map_to_python():
    with pytest.raises(ValueError):
        careers.solve_finite(3, "clever")
    with pytest.raises(careers.UnreachableState):
        careers.solve_finite(3).at(1, 1, 1)
    with pytest.raises(careers.ConfigError):
        careers.config_hash(json.dumps({"schema_version": 1, "model": {"delta": 3}}))


def test_cli_in_process():
    code, out, _ = careers.run_cli(["reproduce"])
    rows = careers.reproduction_rows()
    assert len(rows) == 12
    assert code == (0 if all(r["pass"] for r in rows) else 3)
    assert out.count("computed") == 12
    assert len(careers.config_hash('{"schema_version": 1}')) == 16
