"""Measured quantities: magnetizations, central-spin entropy, fidelities,
reference cat states, and exact-revival period detection."""

from __future__ import annotations

import math

import numpy as np

from . import dicke
from .states import Axis, Backend, SpinState, new_product_state, project_full_raw, superpose

LN2 = math.log(2.0)


def magnetization_sat(state: SpinState) -> float:
    """Total satellite x-magnetization sum_i <S_i^x>."""
    n = state.n_sat
    if state.backend is Backend.FULL:
        total = 0.0
        shape_high = 2 ** (n + 1)
        for i in range(n):
            v = state.amps.reshape(shape_high >> (i + 1), 2, 1 << i)
            total += float(np.real(np.sum(v[:, 0, :].conj() * v[:, 1, :])))
        return total
    jx = dicke.jx_matrix(n)
    rows = state.central_split()
    return float(sum(np.real(np.vdot(rows[c], jx @ rows[c])) for c in (0, 1)))


def magnetization_central(state: SpinState) -> float:
    """Central spin x-magnetization <S_c^x>."""
    rows = state.central_split()
    return float(np.real(np.vdot(rows[0], rows[1])))


def _reduced_central_eigs(state: SpinState) -> np.ndarray:
    rows = state.central_split()
    p00 = float(np.real(np.vdot(rows[0], rows[0])))
    p11 = float(np.real(np.vdot(rows[1], rows[1])))
    off = complex(np.vdot(rows[0], rows[1]))
    det = p00 * p11 - abs(off) ** 2
    tr = p00 + p11
    disc = math.sqrt(max(0.25 * tr * tr - det, 0.0))
    return np.clip([0.5 * tr + disc, 0.5 * tr - disc], 0.0, 1.0)


def entanglement_entropy_central(state: SpinState) -> float:
    """Von Neumann entropy (nats) of the central spin's reduced density matrix."""
    eigs = _reduced_central_eigs(state)
    return float(-sum(v * math.log(v) for v in eigs if v > 0.0))


def overlap(a: SpinState, b: SpinState) -> complex:
    """Inner product <a|b>; mixed backends go through the symmetric projection."""
    if a.n_sat != b.n_sat:
        raise ValueError("states have different satellite counts")
    if a.backend == b.backend:
        return complex(np.vdot(a.amps, b.amps))
    sym, full = (a, b) if a.backend is Backend.SYMMETRIC else (b, a)
    proj = project_full_raw(full).ravel()
    val = complex(np.vdot(sym.amps, proj))
    return val if sym is a else val.conjugate()


def fidelity(a: SpinState, b: SpinState) -> float:
    """|<a|b>|^2, insensitive to global phases."""
    return abs(overlap(a, b)) ** 2


def bell_cat_state(
    n_sat: int,
    branch_sign: int = +1,
    alpha: complex = 1j,
    backend: Backend = Backend.FULL,
) -> SpinState:
    """Maximally entangled cat: (all +x)(central +-x) + alpha (all -x)(central -+x).

    branch_sign +1 puts the central spin along +x in the first branch, -1
    along -x; alpha must be +i or -i.
    """
    if branch_sign not in (+1, -1):
        raise ValueError("branch_sign must be +1 or -1")
    if abs(alpha - 1j) > 1e-12 and abs(alpha + 1j) > 1e-12:
        raise ValueError("alpha must be +1j or -1j")
    first_c = Axis.PLUS_X if branch_sign == +1 else Axis.MINUS_X
    second_c = Axis.MINUS_X if branch_sign == +1 else Axis.PLUS_X
    return superpose(
        [
            new_product_state(n_sat, Axis.PLUS_X, first_c, backend),
            new_product_state(n_sat, Axis.MINUS_X, second_c, backend),
        ],
        [1.0, alpha],
    )


def satellite_cat_state(
    n_sat: int,
    relative_sign: int = -1,
    backend: Backend = Backend.FULL,
) -> SpinState:
    """GHZ-type satellite cat [(all +z) +- (all -z)] (x) central -x."""
    if relative_sign not in (+1, -1):
        raise ValueError("relative_sign must be +1 or -1")
    return superpose(
        [
            new_product_state(n_sat, Axis.PLUS_Z, Axis.MINUS_X, backend),
            new_product_state(n_sat, Axis.MINUS_Z, Axis.MINUS_X, backend),
        ],
        [1.0, float(relative_sign)],
    )


def detect_period(series, tol: float):
    """Smallest p >= 1 with |x[n+p] - x[n]| <= tol for all n, or None.

    Only candidates up to len(series)//3 are considered so that every
    accepted period is confirmed over at least two further repetitions.
    """
    x = np.asarray(series, dtype=float)
    if x.size == 0:
        raise ValueError("empty series")
    for p in range(1, x.size // 3 + 1):
        if np.max(np.abs(x[p:] - x[:-p])) <= tol:
            return p
    return None
