"""Two-parameter quantum Fisher information in (coupling, field) and its scaling.

The drive field g enters the satellite and central kicks simultaneously
(g_s = g_c = g) and the probe is always the fully +x-polarized product state.
Derivative states are formed by central differences of the evolved state;
the matrix elements follow the fidelity-susceptibility form

    F_ab = 4 Re[ <d_a psi | d_b psi> - <d_a psi | psi><psi | d_b psi> ].

The equally-weighted two-parameter uncertainty obeys
(d lam)^2 + (d g)^2 >= 1/G with G = det(F)/tr(F); a singular matrix gives
G = 0, flagged as such (only one combination of the parameters is then
resolvable and no joint bound exists).
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .drive import floquet_step, uniform_drive
from .trajectory import choose_backend, order_parameter_Z, polarized_start

SINGULAR_REL_TOL = 1e-12
HODTC_ZBAR_THRESHOLD = 0.25


def g_scalar(f_ll: float, f_gg: float, f_lg: float, f_gl: float) -> tuple[float, bool]:
    """Equally-weighted bound G = det(F)/tr(F) and a singularity flag."""
    tr = f_ll + f_gg
    det = f_ll * f_gg - f_lg * f_gl
    singular = det < SINGULAR_REL_TOL * tr * tr or tr <= 0.0
    return (det / tr if tr > 0.0 else 0.0), bool(singular)


@dataclass
class QfiMatrix:
    """2x2 Fisher matrix in (lam, g) with the scalar bound G."""

    f_ll: float
    f_gg: float
    f_lg: float
    f_gl: float
    g_value: float
    singular: bool
    lam: float
    g: float
    n_periods: int
    n_sat: int
    delta: float


def _stencil_params(lam: float, g: float, delta: float):
    return {
        "base": uniform_drive(lam, g),
        "l+": uniform_drive(lam + delta, g),
        "l-": uniform_drive(lam - delta, g),
        "g+": uniform_drive(lam, g + delta),
        "g-": uniform_drive(lam, g - delta),
    }


def _matrix_from_states(states: dict, lam, g, n, n_sat, delta) -> QfiMatrix:
    psi = states["base"]
    d_l = (states["l+"] - states["l-"]) / (2.0 * delta)
    d_g = (states["g+"] - states["g-"]) / (2.0 * delta)

    def f_ab(a, b):
        return 4.0 * float(
            np.real(np.vdot(a, b) - np.vdot(a, psi) * np.vdot(psi, b))
        )

    f_ll = f_ab(d_l, d_l)
    f_gg = f_ab(d_g, d_g)
    f_lg = f_ab(d_l, d_g)
    f_gl = f_ab(d_g, d_l)
    g_value, singular = g_scalar(f_ll, f_gg, f_lg, f_gl)
    return QfiMatrix(f_ll, f_gg, f_lg, f_gl, g_value, singular,
                     lam, g, n, n_sat, delta)


def qfi_over_periods(
    lam: float,
    g: float,
    periods,
    n_sat: int,
    delta: float = 1e-4,
    backend="auto",
) -> list[QfiMatrix]:
    """Fisher matrices at several period counts from one co-evolution of the
    five stencil states."""
    if delta <= 0.0:
        raise ValueError("delta must be positive")
    wanted = sorted(set(int(p) for p in periods))
    if not wanted or wanted[0] < 1:
        raise ValueError("period counts must be positive")
    stencil = _stencil_params(lam, g, delta)
    resolved = choose_backend(n_sat, stencil["base"], backend)
    current = {k: polarized_start(n_sat, resolved) for k in stencil}
    out = []
    mark = set(wanted)
    for n in range(1, wanted[-1] + 1):
        for k, p in stencil.items():
            current[k] = floquet_step(current[k], p)
        if n in mark:
            amps = {k: s.amps for k, s in current.items()}
            out.append(_matrix_from_states(amps, lam, g, n, n_sat, delta))
    return out


def qfi_matrix(
    lam: float,
    g: float,
    n_periods: int,
    n_sat: int,
    delta: float = 1e-4,
    backend="auto",
) -> QfiMatrix:
    """Fisher matrix after n_periods drive cycles from the +x probe state."""
    return qfi_over_periods(lam, g, [n_periods], n_sat, delta, backend)[0]


@dataclass
class ScalingFit:
    """Log-log power-law fit value ~ prefactor * size^exponent."""

    exponent: float
    prefactor: float
    r_squared: float
    points: tuple

    @property
    def reliable(self) -> bool:
        return self.r_squared >= 0.95


def scaling_fit(points) -> ScalingFit:
    """Least-squares fit of ln(value) against ln(size); needs >= 4 positive points."""
    pts = [(float(s), float(v)) for s, v in points]
    if len(pts) < 4:
        raise ValueError("need at least 4 points for a scaling fit")
    if any(s <= 0 or v <= 0 for s, v in pts):
        raise ValueError("scaling fit requires positive sizes and values")
    x = np.log([s for s, _ in pts])
    y = np.log([v for _, v in pts])
    slope, intercept = np.polyfit(x, y, 1)
    pred = slope * x + intercept
    ss_res = float(np.sum((y - pred) ** 2))
    ss_tot = float(np.sum((y - y.mean()) ** 2))
    r2 = 1.0 - ss_res / ss_tot if ss_tot > 0 else 1.0
    return ScalingFit(float(slope), float(np.exp(intercept)), r2, tuple(pts))


@dataclass
class ScanPoint:
    lam: float
    g_value: float
    f_ll: float
    f_gg: float
    f_lg: float
    singular: bool
    z_bar: float
    regime: str


def qfi_lambda_scan(
    lambdas,
    g: float,
    n_periods: int,
    n_sat: int,
    delta: float = 1e-4,
    backend="auto",
) -> list[ScanPoint]:
    """G across a coupling scan at fixed g, with each point classified by the
    slow-cycle order parameter."""
    out = []
    for lam in np.asarray(lambdas, dtype=float):
        q = qfi_matrix(lam, g, n_periods, n_sat, delta, backend)
        z = order_parameter_Z(uniform_drive(lam, g), n_sat, backend=backend)
        regime = "ho-dtc" if z >= HODTC_ZBAR_THRESHOLD else "other"
        out.append(ScanPoint(float(lam), q.g_value, q.f_ll, q.f_gg, q.f_lg,
                             q.singular, z, regime))
    return out


def count_local_extrema(values) -> int:
    """Strict interior extrema of a sampled curve (sign changes of the slope)."""
    v = np.asarray(values, dtype=float)
    d = np.diff(v)
    d = d[d != 0.0]
    if d.size < 2:
        return 0
    return int(np.sum(np.sign(d[1:]) != np.sign(d[:-1])))
