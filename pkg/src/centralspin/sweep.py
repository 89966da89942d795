"""Parameter-plane sweeps over (lam, g) with CSV output and JSON metadata.

Cells are independent; they are evaluated (serially or in a process pool)
and always assembled in row-major order (lam outer, g inner), so identical
grid specifications produce byte-identical CSV bodies regardless of the
worker schedule.  A failing cell records NaN plus an error message and never
aborts the sweep.
"""

from __future__ import annotations

import json
import multiprocessing
import os
import tempfile
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field

import numpy as np

from ._version import __version__ as _pkg_version
from .drive import uniform_drive
from .trajectory import order_parameter_O, order_parameter_Z, polarized_start, run_trajectory, time_avg_magnetization, choose_backend

QUANTITIES = ("M_bar", "O_bar", "Z_bar", "G")


@dataclass
class SweepGrid:
    """Rectangular (lam, g) grid and, after running, per-cell results."""

    lambdas: np.ndarray
    gs: np.ndarray
    n_sat: int
    quantity: str
    window: int = 0          # averaging window; 0 selects the quantity default
    n_periods: int = 100     # evolution time for the G quantity
    delta: float = 1e-4      # stencil step for the G quantity
    backend: str = "auto"
    values: np.ndarray | None = None
    errors: list = field(default_factory=list)

    def __post_init__(self):
        self.lambdas = np.atleast_1d(np.asarray(self.lambdas, dtype=float))
        self.gs = np.atleast_1d(np.asarray(self.gs, dtype=float))
        if self.lambdas.size == 0 or self.gs.size == 0:
            raise ValueError("sweep ranges must be non-empty")
        if self.quantity not in QUANTITIES:
            raise ValueError(f"quantity must be one of {QUANTITIES}")
        if self.window == 0:
            self.window = 500 if self.quantity == "M_bar" else 1000

    def cells(self):
        for i, lam in enumerate(self.lambdas):
            for j, g in enumerate(self.gs):
                yield i, j, float(lam), float(g)


def _eval_cell(args):
    quantity, lam, g, n_sat, window, n_periods, delta, backend = args
    try:
        params = uniform_drive(lam, g)
        if quantity == "M_bar":
            return time_avg_magnetization(params, n_sat, window, backend), ""
        if quantity == "O_bar":
            init = polarized_start(n_sat, choose_backend(n_sat, params, backend))
            traj = run_trajectory(params, init, window, initial_label="+x polarized")
            return order_parameter_O(traj, window).o_bar, ""
        if quantity == "Z_bar":
            return order_parameter_Z(params, n_sat, backend=backend), ""
        from .metrology import qfi_matrix  # local import keeps workers light

        return qfi_matrix(lam, g, n_periods, n_sat, delta, backend).g_value, ""
    except Exception as exc:  # per-cell failures are recorded, never raised
        return float("nan"), f"{type(exc).__name__}: {exc}"


def sweep_grid(grid: SweepGrid, workers: int = 1) -> SweepGrid:
    """Evaluate the selected quantity on every cell of the grid."""
    jobs = [
        (grid.quantity, lam, g, grid.n_sat, grid.window, grid.n_periods,
         grid.delta, grid.backend)
        for _, _, lam, g in grid.cells()
    ]
    if workers > 1:
        # spawn: the compiled-kernel threading layer does not survive fork()
        ctx = multiprocessing.get_context("spawn")
        with ProcessPoolExecutor(max_workers=workers, mp_context=ctx) as pool:
            results = list(pool.map(_eval_cell, jobs, chunksize=8))
    else:
        results = [_eval_cell(j) for j in jobs]
    values = np.full((grid.lambdas.size, grid.gs.size), np.nan)
    errors = []
    for (i, j, lam, g), (val, err) in zip(grid.cells(), results):
        values[i, j] = val
        if err:
            errors.append({"lambda": lam, "g": g, "error": err})
    grid.values = values
    grid.errors = errors
    return grid


def fmt(x) -> str:
    """Full-double-precision decimal rendering used in every CSV body."""
    return f"{float(x):.17g}"


def atomic_write_text(path: str, text: str) -> None:
    directory = os.path.dirname(os.path.abspath(path))
    os.makedirs(directory, exist_ok=True)
    fd, tmp = tempfile.mkstemp(dir=directory, suffix=".tmp")
    try:
        with os.fdopen(fd, "w", encoding="utf-8", newline="") as handle:
            handle.write(text)
        os.replace(tmp, path)
    except BaseException:
        if os.path.exists(tmp):
            os.unlink(tmp)
        raise


def write_sweep_csv(grid: SweepGrid, path: str) -> None:
    lines = ["lambda,g,n_sat,quantity,value"]
    for i, j, lam, g in grid.cells():
        val = grid.values[i, j] if grid.values is not None else float("nan")
        lines.append(f"{fmt(lam)},{fmt(g)},{grid.n_sat},{grid.quantity},{fmt(val)}")
    atomic_write_text(path, "\n".join(lines) + "\n")


def write_json_sidecar(path: str, config: dict, extra: dict | None = None) -> None:
    """Metadata sidecar with everything needed to reproduce the artifact."""
    payload = {"package_version": _pkg_version, "config": config}
    if extra:
        payload.update(extra)
    atomic_write_text(path, json.dumps(payload, indent=2, sort_keys=True, default=str) + "\n")
