import math

import numpy as np
import pytest

import centralspin.sweep as sweep_mod
from centralspin import SweepGrid, qfi_matrix, sweep_grid, write_sweep_csv


def test_order_parameter_grid_center_is_doubling():
    grid = SweepGrid(
        lambdas=[2 * math.pi - 0.3, 2 * math.pi, 2 * math.pi + 0.3],
        gs=[math.pi - 0.3, math.pi, math.pi + 0.3],
        n_sat=5,
        quantity="O_bar",
        window=200,
    )
    sweep_grid(grid)
    assert grid.values.shape == (3, 3)
    assert grid.values[1, 1] == pytest.approx(0.5, abs=1e-6)
    assert not grid.errors


def test_freezing_point_cell():
    m_grid = SweepGrid([2 * math.pi], [2 * math.pi], 5, "M_bar", window=100)
    o_grid = SweepGrid([2 * math.pi], [2 * math.pi], 5, "O_bar", window=200)
    sweep_grid(m_grid)
    sweep_grid(o_grid)
    assert m_grid.values[0, 0] == pytest.approx(0.5, abs=1e-10)
    assert o_grid.values[0, 0] == pytest.approx(-0.5, abs=1e-10)


def test_g_quantity_delegates_to_metrology():
    grid = SweepGrid([math.pi], [math.pi / 2], 5, "G", n_periods=20, delta=1e-4)
    sweep_grid(grid)
    direct = qfi_matrix(math.pi, math.pi / 2, 20, 5, delta=1e-4)
    assert grid.values[0, 0] == pytest.approx(direct.g_value, rel=1e-12)


def test_z_quantity_plateau_cell():
    grid = SweepGrid([math.pi], [math.pi / 2], 6, "Z_bar")
    sweep_grid(grid)
    assert grid.values[0, 0] == pytest.approx(0.5, abs=1e-10)


def test_sweep_validation():
    with pytest.raises(ValueError):
        SweepGrid([], [1.0], 5, "M_bar")
    with pytest.raises(ValueError):
        SweepGrid([1.0], [1.0], 5, "bogus")


def test_sweep_csv_deterministic_across_schedules(tmp_path):
    def run(workers, name):
        grid = SweepGrid(
            lambdas=np.linspace(0, 2 * math.pi, 3),
            gs=np.linspace(0, math.pi, 2),
            n_sat=4,
            quantity="M_bar",
            window=30,
        )
        sweep_grid(grid, workers=workers)
        path = tmp_path / name
        write_sweep_csv(grid, str(path))
        return path.read_bytes()

    assert run(1, "serial.csv") == run(2, "parallel.csv")


def test_cell_failures_recorded_not_raised(monkeypatch):
    calls = {"n": 0}
    real = sweep_mod.time_avg_magnetization

    def flaky(params, n_sat, window, backend):
        calls["n"] += 1
        if calls["n"] == 2:
            raise RuntimeError("synthetic cell failure")
        return real(params, n_sat, window, backend)

    monkeypatch.setattr(sweep_mod, "time_avg_magnetization", flaky)
    grid = SweepGrid([0.5, 1.0], [0.5, 1.0], 3, "M_bar", window=10)
    sweep_grid(grid)
    assert np.isnan(grid.values).sum() == 1
    assert len(grid.errors) == 1
    assert "synthetic cell failure" in grid.errors[0]["error"]


def test_csv_round_trips_full_precision(tmp_path):
    grid = SweepGrid([1 / 3], [2 / 7], 3, "M_bar", window=10)
    sweep_grid(grid)
    path = tmp_path / "cells.csv"
    write_sweep_csv(grid, str(path))
    header, row = path.read_text().strip().split("\n")
    assert header == "lambda,g,n_sat,quantity,value"
    lam, g, n_sat, quantity, value = row.split(",")
    assert float(lam) == 1 / 3
    assert float(g) == 2 / 7
    assert float(value) == grid.values[0, 0]
