"""Exact simulator for deterministic and sequence-randomized dynamical
decoupling, with sweep drivers that verify the protocols' error scaling."""

from .engine import (
    BathBlockMap,
    MixedUnitaryChannel,
    apply_channel,
    bath_block_decompose,
    cdd_bound_rhs,
    compile_unitary,
    decoupling_residual,
    deterministic_channel,
    ideal_unitary,
    phase_aligned,
    phase_distance,
    randomized_channel,
    state_error,
    subsystem_error,
)
from .experiments import (
    SlopeFit,
    SweepRecord,
    fit_loglog_slope,
    group_means,
    read_csv,
    run_fig1_sweep,
    run_fig2_sweep,
    run_hahn_sweep,
    write_csv,
)
from .linalg import (
    NumericalContractError,
    expm_hermitian,
    operator_norm,
    partial_trace,
    trace_distance,
)
from .model import (
    HamiltonianModel,
    PauliWord,
    build_dephasing_model,
    build_hahn_model,
    build_heisenberg,
    build_local_bath_model,
    interaction_norm_sum,
    pauli_matrix,
    pauli_mul,
    random_product_state,
)
from .sequences import (
    DecouplingGroup,
    PulseSequence,
    Segment,
    global_x_group,
    randomize,
    seq_cdd,
    seq_hahn,
    seq_hahn_reversed,
    seq_udd,
    seq_xy4,
    seq_xy8,
    udd_pulse_times,
    xy4_group,
)

__version__ = "0.1.0"
