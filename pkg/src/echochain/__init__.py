"""Exact spin-chain toolkit: Loschmidt-echo and perfect-state-transfer
tests of ferromagnetic Heisenberg dynamics realized with
antiferromagnetic pulses, plus a classical mean-field baseline and a
gate-noise robustness harness."""

from .chain import (
    ChainSpec,
    BondPartition,
    ResourceLimitError,
    dense_hamiltonian,
    exact_evolve,
    partition_odd_even,
    transfer_chain,
    uniform_echo_chain,
)
from .echo import EchoConfig, EchoResult, echo_fidelity_curve, run_echo
from .gates import (
    DELTA_EPS,
    EPS_SINGLET,
    EPS_TRIPLET,
    ExchangeGate,
    afm_duration_for_fm,
    exchange_unitary,
    exchange_unitary_reference,
    field_phase,
    reduce_to_wrap_period,
    wrap_period,
)
from .meanfield import (
    IntegratorConfig,
    MeanFieldState,
    mean_fields,
    rk4_step,
    run_meanfield_echo,
)
from .noise import (
    FitResult,
    NoiseModel,
    TrialStats,
    loglog_fit,
    run_trials,
    sample_eta,
    slope_vs_n,
)
from .statevec import (
    SINGLET,
    TRIPLET_ZERO,
    InvalidGateError,
    StateVector,
    apply_single_site_phase,
    apply_two_site,
    basis_state,
    overlap,
    pair_projection_fidelity,
    prepare_singlet_head,
    total_sz,
)
from .transfer import (
    TransferConfig,
    TransferResult,
    default_transfer_steps,
    run_transfer,
    transfer_fidelity_curve,
)
from .trotter import (
    MODE_DIRECT,
    MODE_SIMULATED_FM,
    ExchangeLayer,
    FieldLayer,
    TrotterPlan,
    execute_plan,
    second_order_plan,
    three_term_plan,
)

__version__ = "0.1.0"
