"""State containers and constructors for one central spin-1/2 plus N satellites.

Two storage layouts are supported.  The full backend keeps all 2^(N+1)
amplitudes in the z product basis: satellite i lives on bit i of the basis
index, the central spin on the top bit, and bit value 0 (1) means +z (-z).
The symmetric backend is valid whenever every satellite sees the same field
and the satellites start permutation-symmetric; it keeps 2*(N+1) amplitudes
indexed by (central z-state, k) where k counts satellites pointing -z in the
collective spin-N/2 (Dicke) sector.

In both layouts ``amps.reshape(2, -1)`` puts the central spin on the leading
axis, which the observable routines rely on.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from enum import Enum

import numpy as np

NORM_TOL = 1e-12

FULL_CONVENTION = "z-product basis; satellite i = bit i, central = top bit; 0=+z"
SYMMETRIC_CONVENTION = "dicke basis; index = central_z * (n_sat+1) + k_down"


class Backend(str, Enum):
    FULL = "full"
    SYMMETRIC = "symmetric"


class Axis(str, Enum):
    PLUS_X = "+x"
    MINUS_X = "-x"
    PLUS_Y = "+y"
    MINUS_Y = "-y"
    PLUS_Z = "+z"
    MINUS_Z = "-z"


_SQ2 = 1.0 / math.sqrt(2.0)

# single-spin eigenstates of sigma_x/y/z with the named eigenvalue sign
AXIS_KET = {
    Axis.PLUS_Z: np.array([1.0, 0.0], dtype=complex),
    Axis.MINUS_Z: np.array([0.0, 1.0], dtype=complex),
    Axis.PLUS_X: np.array([_SQ2, _SQ2], dtype=complex),
    Axis.MINUS_X: np.array([_SQ2, -_SQ2], dtype=complex),
    Axis.PLUS_Y: np.array([_SQ2, 1j * _SQ2], dtype=complex),
    Axis.MINUS_Y: np.array([_SQ2, -1j * _SQ2], dtype=complex),
}


@dataclass
class SpinState:
    """Pure state of the central spin system in one of the two layouts."""

    n_sat: int
    backend: Backend
    amps: np.ndarray
    convention: str = field(default="")

    def __post_init__(self):
        if self.n_sat < 1:
            raise ValueError("need at least one satellite spin")
        self.backend = Backend(self.backend)
        if not self.convention:
            self.convention = (
                FULL_CONVENTION if self.backend is Backend.FULL else SYMMETRIC_CONVENTION
            )
        self.amps = np.ascontiguousarray(self.amps, dtype=np.complex128)
        expected = self.expected_dim(self.n_sat, self.backend)
        if self.amps.shape != (expected,):
            raise ValueError(
                f"amplitude vector has shape {self.amps.shape}, expected ({expected},)"
            )

    @staticmethod
    def expected_dim(n_sat: int, backend: Backend) -> int:
        return 2 ** (n_sat + 1) if Backend(backend) is Backend.FULL else 2 * (n_sat + 1)

    @property
    def dim(self) -> int:
        return self.amps.shape[0]

    def norm(self) -> float:
        return float(np.linalg.norm(self.amps))

    def check_normalized(self, tol: float = NORM_TOL) -> None:
        if abs(self.norm() - 1.0) > tol:
            raise ValueError(f"state norm {self.norm()} deviates from 1 by more than {tol}")

    def copy(self) -> "SpinState":
        return SpinState(self.n_sat, self.backend, self.amps.copy(), self.convention)

    def central_split(self) -> np.ndarray:
        """View with the central spin on the leading axis: shape (2, rest)."""
        return self.amps.reshape(2, -1)


def canonical_phase(amps: np.ndarray, tol: float = 1e-12) -> np.ndarray:
    """Rotate the global phase so the first non-negligible amplitude is real positive."""
    for a in amps:
        if abs(a) > tol:
            return amps * (abs(a) / a)
    return amps


def _binom_sqrt(n: int) -> np.ndarray:
    return np.sqrt([math.comb(n, k) for k in range(n + 1)])


def new_product_state(
    n_sat: int,
    sat_axis: Axis,
    central_axis: Axis,
    backend: Backend = Backend.FULL,
) -> SpinState:
    """Product state (sat_axis)^(x n_sat) (x) central_axis, normalized, phase-canonical."""
    if n_sat < 1:
        raise ValueError("need at least one satellite spin")
    backend = Backend(backend)
    sat = AXIS_KET[Axis(sat_axis)]
    cen = AXIS_KET[Axis(central_axis)]
    if backend is Backend.FULL:
        amps = cen
        for _ in range(n_sat):
            amps = np.kron(amps, sat)
    else:
        k = np.arange(n_sat + 1)
        dicke = _binom_sqrt(n_sat) * sat[0] ** (n_sat - k) * sat[1] ** k
        amps = np.concatenate([cen[0] * dicke, cen[1] * dicke])
    state = SpinState(n_sat, backend, canonical_phase(amps))
    state.check_normalized()
    return state


def superpose(states: list[SpinState], coeffs) -> SpinState:
    """Normalized superposition sum_i coeffs[i] |states[i]>, phase-canonical."""
    if not states:
        raise ValueError("empty superposition")
    first = states[0]
    if any(s.n_sat != first.n_sat or s.backend != first.backend for s in states):
        raise ValueError("superposition requires matching n_sat and backend")
    amps = sum(c * s.amps for c, s in zip(coeffs, states))
    nrm = np.linalg.norm(amps)
    if nrm < 1e-12:
        raise ValueError("superposition cancels to the zero vector")
    return SpinState(first.n_sat, first.backend, canonical_phase(amps / nrm))


_POPCOUNT_CACHE: dict[int, np.ndarray] = {}


def _popcounts(n_bits: int) -> np.ndarray:
    if n_bits not in _POPCOUNT_CACHE:
        p = np.zeros(1, dtype=np.int64)
        for _ in range(n_bits):
            p = np.concatenate([p, p + 1])
        _POPCOUNT_CACHE[n_bits] = p
    return _POPCOUNT_CACHE[n_bits]


def project_full_raw(state: SpinState) -> np.ndarray:
    """Dicke-sector overlaps <k,c|psi> of a full-backend state, shape (2, n_sat+1).

    The result is not renormalized; its squared norm is the weight the state
    carries in the permutation-symmetric sector.
    """
    if state.backend is not Backend.FULL:
        raise ValueError("expected a full-backend state")
    n = state.n_sat
    pop = _popcounts(n)
    halves = state.central_split()
    raw = np.empty((2, n + 1), dtype=np.complex128)
    for c in (0, 1):
        re = np.bincount(pop, weights=halves[c].real, minlength=n + 1)
        im = np.bincount(pop, weights=halves[c].imag, minlength=n + 1)
        raw[c] = re + 1j * im
    raw /= _binom_sqrt(n)[None, :]
    return raw


def project_full_to_symmetric(state: SpinState) -> tuple[SpinState, float]:
    """Project a full-backend state onto the symmetric sector.

    Returns the normalized symmetric-backend component together with the
    weight (norm squared) retained in that sector; 1 - weight was lost to
    non-symmetric irreps.
    """
    raw = project_full_raw(state)
    weight = float(np.sum(np.abs(raw) ** 2))
    if weight < 1e-14:
        raise ValueError("state has no weight in the symmetric sector")
    sym = SpinState(state.n_sat, Backend.SYMMETRIC, raw.ravel() / math.sqrt(weight))
    return sym, weight
