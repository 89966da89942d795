"""Stroboscopic trajectories and the time-averaged order parameters."""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .drive import DriveParams, apply_interaction, apply_kick, floquet_step
from .observables import (
    entanglement_entropy_central,
    fidelity,
    magnetization_central,
    magnetization_sat,
)
from .states import Axis, Backend, SpinState, new_product_state

# the symmetric backend wins above this size whenever it is applicable
AUTO_SYMMETRIC_THRESHOLD = 14


def choose_backend(n_sat: int, params: DriveParams, requested="auto") -> Backend:
    """Resolve a backend request; 'auto' keeps full below the size threshold."""
    if isinstance(requested, Backend) or requested in ("full", "symmetric"):
        backend = Backend(requested)
        if backend is Backend.SYMMETRIC and not params.uniform:
            raise ValueError("symmetric backend requires uniform satellite fields")
        return backend
    if requested != "auto":
        raise ValueError(f"unknown backend request {requested!r}")
    if params.uniform and n_sat > AUTO_SYMMETRIC_THRESHOLD:
        return Backend.SYMMETRIC
    return Backend.FULL


@dataclass
class Observation:
    """Observables at one stroboscopic instant.

    after_kick=True marks the half-period sample taken between the kick and
    the interaction of period `period_index`, i.e. at t = (period_index-1/2)T.
    """

    period_index: int
    m_sat: float
    m_sat_per_spin: float
    m_central: float
    entropy: float
    fidelity_to_initial: float
    after_kick: bool = False

    @property
    def time(self) -> float:
        return self.period_index - 0.5 if self.after_kick else float(self.period_index)


@dataclass
class Trajectory:
    """Stroboscopic record of one run, sorted by time."""

    params: DriveParams
    n_sat: int
    initial_label: str
    records: list[Observation] = field(default_factory=list)
    states: dict | None = None

    def full_records(self) -> list[Observation]:
        return [r for r in self.records if not r.after_kick]

    def series(self, name: str) -> np.ndarray:
        return np.array([getattr(r, name) for r in self.full_records()])

    def times(self) -> np.ndarray:
        return np.array([r.time for r in self.records])


def observe(
    state: SpinState, period_index: int, initial: SpinState, after_kick: bool = False
) -> Observation:
    m = magnetization_sat(state)
    return Observation(
        period_index=period_index,
        m_sat=m,
        m_sat_per_spin=m / state.n_sat,
        m_central=magnetization_central(state),
        entropy=entanglement_entropy_central(state),
        fidelity_to_initial=fidelity(state, initial),
        after_kick=after_kick,
    )


def run_trajectory(
    params: DriveParams,
    init: SpinState,
    n_periods: int,
    sample_half_periods: bool = False,
    keep_states: bool = False,
    initial_label: str = "",
) -> Trajectory:
    """Evolve `init` for n_periods, recording observables after every period
    (and optionally after every kick)."""
    if n_periods < 1:
        raise ValueError("n_periods must be at least 1")
    traj = Trajectory(params, init.n_sat, initial_label or "custom", [],
                      {} if keep_states else None)
    traj.records.append(observe(init, 0, init))
    if keep_states:
        traj.states[(0, False)] = init
    state = init
    for n in range(1, n_periods + 1):
        kicked = apply_kick(state, params)
        if sample_half_periods:
            traj.records.append(observe(kicked, n, init, after_kick=True))
            if keep_states:
                traj.states[(n, True)] = kicked
        state = apply_interaction(kicked, params)
        traj.records.append(observe(state, n, init))
        if keep_states:
            traj.states[(n, False)] = state
    return traj


def polarized_start(n_sat: int, backend: Backend) -> SpinState:
    """The fully +x-polarized probe state used by all protocol figures."""
    return new_product_state(n_sat, Axis.PLUS_X, Axis.PLUS_X, backend)


def magnetization_series(
    params: DriveParams, n_sat: int, n_periods: int, backend="auto"
) -> np.ndarray:
    """Satellite magnetization M(nT) for n = 1..n_periods (lean, no entropy)."""
    b = choose_backend(n_sat, params, backend)
    state = polarized_start(n_sat, b)
    out = np.empty(n_periods)
    for n in range(n_periods):
        state = floquet_step(state, params)
        out[n] = magnetization_sat(state)
    return out


def time_avg_magnetization(
    params: DriveParams, n_sat: int, window: int = 500, backend="auto"
) -> float:
    """Per-spin satellite magnetization averaged over the even stroboscope,
    (1/window) * sum_n M(2nT) / n_sat for n = 1..window, from the +x start."""
    m = magnetization_series(params, n_sat, 2 * window, backend)
    return float(np.mean(m[1::2])) / n_sat


@dataclass
class OrderParams:
    """Time-averaged order parameters built from per-spin magnetization."""

    o_bar: float
    o_dtc_bar: float
    o_dmf_bar: float
    window: int
    z_bar: float | None = None
    alpha: int | None = None
    beta: int | None = None


def order_parameter_O(traj: Trajectory, window: int = 1000) -> OrderParams:
    """Average of O(nT) = (-1)^n m(nT) - m(nT) over n = 1..window (per spin)."""
    m = traj.series("m_sat_per_spin")
    if m.size < window + 1:
        raise ValueError(f"trajectory too short: {m.size - 1} periods < window {window}")
    m = m[1 : window + 1]
    signs = (-1.0) ** np.arange(1, window + 1)
    o_dtc = float(np.mean(signs * m))
    o_dmf = float(np.mean(m))
    return OrderParams(o_bar=o_dtc - o_dmf, o_dtc_bar=o_dtc, o_dmf_bar=o_dmf, window=window)


def z_stride_parity(n_sat: int) -> tuple[int, int]:
    """Stride alpha and sample count beta for the slow-cycle order parameter."""
    return (6, 200) if n_sat % 2 == 0 else (12, 100)


def order_parameter_Z(
    params: DriveParams,
    n_sat: int,
    alpha: int | None = None,
    beta: int | None = None,
    backend="auto",
) -> float:
    """Alternating average (1/beta) sum_n (-1)^n m(alpha n T) from the +x start."""
    a_def, b_def = z_stride_parity(n_sat)
    alpha = a_def if alpha is None else alpha
    beta = b_def if beta is None else beta
    m = magnetization_series(params, n_sat, alpha * beta, backend)
    samples = m[alpha - 1 :: alpha] / n_sat
    signs = (-1.0) ** np.arange(1, beta + 1)
    return float(np.mean(signs * samples))
