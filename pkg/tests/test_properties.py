import math

import numpy as np
from hypothesis import given, settings, strategies as st

from centralspin import (
    Backend,
    DriveParams,
    SpinState,
    apply_kick,
    detect_period,
    entanglement_entropy_central,
    fidelity,
    floquet_step,
    uniform_drive,
)

angles = st.floats(min_value=-10.0, max_value=10.0, allow_nan=False)


def _random_state(n_sat, backend, seed):
    rng = np.random.default_rng(seed)
    dim = SpinState.expected_dim(n_sat, backend)
    amps = rng.normal(size=dim) + 1j * rng.normal(size=dim)
    return SpinState(n_sat, backend, amps / np.linalg.norm(amps))


@settings(max_examples=40, deadline=None)
@given(
    n_sat=st.integers(1, 5),
    lam=angles,
    g=angles,
    steps=st.integers(1, 25),
    seed=st.integers(0, 2**32 - 1),
    backend=st.sampled_from([Backend.FULL, Backend.SYMMETRIC]),
)
def test_evolution_preserves_norm(n_sat, lam, g, steps, seed, backend):
    state = _random_state(n_sat, backend, seed)
    p = uniform_drive(lam, g)
    for _ in range(steps):
        state = floquet_step(state, p)
    assert abs(state.norm() - 1.0) < 1e-12


@settings(max_examples=40, deadline=None)
@given(
    n_sat=st.integers(1, 5),
    seed=st.integers(0, 2**32 - 1),
    backend=st.sampled_from([Backend.FULL, Backend.SYMMETRIC]),
)
def test_entropy_bounds_on_arbitrary_states(n_sat, seed, backend):
    state = _random_state(n_sat, backend, seed)
    s = entanglement_entropy_central(state)
    assert -1e-12 <= s <= math.log(2.0) + 1e-10


@settings(max_examples=30, deadline=None)
@given(
    n_sat=st.integers(1, 4),
    g_c=angles,
    seed=st.integers(0, 2**32 - 1),
    data=st.data(),
)
def test_kick_is_diagonal_in_z(n_sat, g_c, seed, data):
    g_sat = tuple(
        data.draw(angles, label=f"g_{i}") for i in range(n_sat)
    )
    state = _random_state(n_sat, Backend.FULL, seed)
    kicked = apply_kick(state, DriveParams(0.0, g_sat, g_c))
    assert np.allclose(np.abs(kicked.amps), np.abs(state.amps), atol=1e-12)


@settings(max_examples=40, deadline=None)
@given(
    n_sat=st.integers(1, 5),
    seed_a=st.integers(0, 2**32 - 1),
    seed_b=st.integers(0, 2**32 - 1),
)
def test_fidelity_bounds_and_self_fidelity(n_sat, seed_a, seed_b):
    a = _random_state(n_sat, Backend.FULL, seed_a)
    b = _random_state(n_sat, Backend.FULL, seed_b)
    f = fidelity(a, b)
    assert -1e-12 <= f <= 1.0 + 1e-12
    assert fidelity(a, a) == 1.0 or abs(fidelity(a, a) - 1.0) < 1e-12


@settings(max_examples=30, deadline=None)
@given(
    period=st.integers(1, 8),
    reps=st.integers(3, 6),
    seed=st.integers(0, 2**32 - 1),
)
def test_detect_period_divides_construction_period(period, reps, seed):
    rng = np.random.default_rng(seed)
    cell = rng.integers(0, 1000, size=period).astype(float)
    series = np.tile(cell, reps)
    found = detect_period(series, 1e-12)
    assert found is not None
    assert period % found == 0
