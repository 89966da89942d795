"""Shared test utilities: random states and global-phase alignment."""

import numpy as np

from centralspin import Backend, SpinState


def random_full_state(n_sat, rng):
    dim = 2 ** (n_sat + 1)
    amps = rng.normal(size=dim) + 1j * rng.normal(size=dim)
    amps /= np.linalg.norm(amps)
    return SpinState(n_sat, Backend.FULL, amps)


def random_symmetric_state(n_sat, rng):
    dim = 2 * (n_sat + 1)
    amps = rng.normal(size=dim) + 1j * rng.normal(size=dim)
    amps /= np.linalg.norm(amps)
    return SpinState(n_sat, Backend.SYMMETRIC, amps)


def random_product_full(n_sat, rng):
    """Product state with an independent random axis per spin (full backend)."""
    qubits = rng.normal(size=(n_sat + 1, 2)) + 1j * rng.normal(size=(n_sat + 1, 2))
    qubits /= np.linalg.norm(qubits, axis=1)[:, None]
    amps = qubits[n_sat]  # central spin on the top bit
    for i in reversed(range(n_sat)):
        amps = np.kron(amps, qubits[i])
    return SpinState(n_sat, Backend.FULL, amps)


def align_phase(reference, amps):
    """Rotate `amps` by a global phase to best match `reference`."""
    inner = np.vdot(reference, amps)
    if abs(inner) < 1e-300:
        return amps
    return amps * (inner.conjugate() / abs(inner))
