"""Simulator and analysis toolkit for the periodically driven central spin model.

One central spin-1/2 couples to N non-interacting satellite spins through an
Ising interaction switched on for the second half of every drive period;
magnetic-field kicks act during the first half.  The package provides exact
state-vector evolution in the full tensor-product basis and in the
permutation-symmetric (Dicke) sector, stroboscopic observables and
time-averaged order parameters, closed-form reference states for the special
drive points, and quantum Fisher information tools for joint
(coupling, field) estimation.
"""

from ._version import __version__
from .states import (
    Axis,
    Backend,
    SpinState,
    new_product_state,
    project_full_to_symmetric,
    superpose,
)
from .drive import (
    DriveParams,
    uniform_drive,
    apply_kick,
    apply_interaction,
    floquet_step,
    dense_floquet_matrix,
)
from .observables import (
    magnetization_sat,
    magnetization_central,
    entanglement_entropy_central,
    fidelity,
    overlap,
    bell_cat_state,
    satellite_cat_state,
    detect_period,
)
from .trajectory import (
    Observation,
    Trajectory,
    OrderParams,
    choose_backend,
    run_trajectory,
    polarized_start,
    time_avg_magnetization,
    order_parameter_O,
    order_parameter_Z,
    z_stride_parity,
)
from .sweep import SweepGrid, sweep_grid, write_sweep_csv, write_json_sidecar
from .metrology import (
    QfiMatrix,
    ScalingFit,
    ScanPoint,
    qfi_matrix,
    qfi_over_periods,
    scaling_fit,
    qfi_lambda_scan,
    count_local_extrema,
    g_scalar,
)
from .oracle import (
    EchoPrediction,
    echo_prediction,
    hodtc_state_at,
    predicted_periods,
    tabulated_times,
    oracle_check,
)
