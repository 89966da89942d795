import math

import numpy as np
import pytest

from centralspin import (
    Axis,
    Backend,
    DriveParams,
    bell_cat_state,
    detect_period,
    echo_prediction,
    entanglement_entropy_central,
    fidelity,
    floquet_step,
    hodtc_state_at,
    new_product_state,
    oracle_check,
    polarized_start,
    predicted_periods,
    run_trajectory,
    satellite_cat_state,
    tabulated_times,
    uniform_drive,
)
from centralspin.observables import LN2

from helpers import random_full_state


def test_echo_prediction_kinds():
    assert echo_prediction(5, 1.3).kind == "identity"
    even = echo_prediction(6, 1.3)
    assert even.kind == "central-phase"
    assert even.angle == pytest.approx(2.6)


def test_echo_prediction_matches_two_periods(rng):
    for n_sat in range(1, 11):
        for _ in range(20):
            p = DriveParams(
                2 * math.pi,
                tuple(rng.uniform(0, 2 * np.pi, size=n_sat)),
                rng.uniform(0, 2 * np.pi),
            )
            state = random_full_state(n_sat, rng)
            evolved = floquet_step(floquet_step(state, p), p)
            expected = echo_prediction(n_sat, p.g_c).apply(state)
            assert fidelity(evolved, expected) == pytest.approx(1.0, abs=1e-10)


def test_tabulated_times_by_parity():
    assert 3.5 in tabulated_times(5)
    assert 4.0 in tabulated_times(9)
    assert 3.5 not in tabulated_times(6)
    assert 4.0 not in tabulated_times(8)


def test_untabulated_time_rejected():
    with pytest.raises(ValueError):
        hodtc_state_at(7, 5.0)
    with pytest.raises(ValueError):
        hodtc_state_at(6, 3.5)


def test_oracle_check_passes_for_all_classes():
    rows = oracle_check(range(4, 14), Backend.FULL, tol=1e-10)
    assert all(r.passed for r in rows), [
        (r.n_sat, r.time, r.fidelity) for r in rows if not r.passed
    ]
    # both parities and all four congruence classes are exercised
    assert {r.n_sat_class for r in rows} == {0, 1, 2, 3}


def test_oracle_check_symmetric_backend():
    rows = oracle_check([4, 5], Backend.SYMMETRIC, tol=1e-10)
    assert all(r.passed for r in rows)


def test_reference_states_by_class():
    assert fidelity(
        hodtc_state_at(20, 3.0), bell_cat_state(20, -1, -1j)
    ) == pytest.approx(1.0, abs=1e-12)
    assert fidelity(
        hodtc_state_at(18, 3.0), bell_cat_state(18, +1, -1j)
    ) == pytest.approx(1.0, abs=1e-12)
    assert fidelity(
        hodtc_state_at(19, 4.0), satellite_cat_state(19, -1)
    ) == pytest.approx(1.0, abs=1e-12)
    plus_x = new_product_state(20, Axis.PLUS_X, Axis.PLUS_X, Backend.FULL)
    assert fidelity(hodtc_state_at(20, 12.0), plus_x) == pytest.approx(1.0, abs=1e-12)
    minus_x = new_product_state(19, Axis.MINUS_X, Axis.MINUS_X, Backend.FULL)
    assert fidelity(hodtc_state_at(19, 12.0), minus_x) == pytest.approx(1.0, abs=1e-12)


def test_reference_states_are_normalized_with_expected_entropy():
    for n_sat in (4, 5, 6, 7):
        for t in tabulated_times(n_sat):
            state = hodtc_state_at(n_sat, t)
            assert state.norm() == pytest.approx(1.0, abs=1e-12)
    assert entanglement_entropy_central(hodtc_state_at(8, 3.0)) == pytest.approx(LN2, abs=1e-12)
    assert entanglement_entropy_central(hodtc_state_at(7, 6.0)) == pytest.approx(LN2, abs=1e-12)
    assert entanglement_entropy_central(hodtc_state_at(7, 4.0)) == pytest.approx(0.0, abs=1e-12)


def test_predicted_periods_parity():
    assert predicted_periods(19) == (24, 8, 4)
    assert predicted_periods(20) == (12, 12, 6)


@pytest.mark.parametrize("n_sat", range(4, 13))
def test_predicted_periods_match_simulation(n_sat):
    traj = run_trajectory(
        uniform_drive(math.pi, math.pi / 2),
        polarized_start(n_sat, Backend.SYMMETRIC),
        96,
    )
    expected = predicted_periods(n_sat)
    assert detect_period(traj.series("m_sat"), 1e-8) == expected[0]
    assert detect_period(traj.series("m_central"), 1e-8) == expected[1]
    assert detect_period(traj.series("entropy"), 1e-8) == expected[2]
