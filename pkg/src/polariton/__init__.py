"""Polariton-qubit toolkit.

Simulates a qubit-cavity system whose one-excitation dressed doublet
serves as a logical qubit: spectrum and transition frequencies, robustness
against quasi-static qubit noise, synthesis of two-tone pulses realizing
holonomic single-qubit gates, and open-system verification of gate
performance under cavity decay, qubit decay and dephasing.
"""

from .drive import (
    BrightDarkBasis,
    DriveConfig,
    VSystemParams,
    bright_dark_basis,
    drive_waveform,
    effective_v_hamiltonian,
    interaction_picture_hamiltonian,
    lab_frame_hamiltonian,
    product_space_hamiltonian,
    resonance_frequencies,
)
from .errors import (
    ConfigError,
    NonHermitianError,
    NumericalError,
    PhysicsGuardError,
    PolaritonError,
)
from .holonomy import (
    GateSimulation,
    GateSpec,
    PulseProgram,
    cyclic_check,
    gate_fidelity,
    gate_matrix,
    ideal_holonomic_propagator,
    parallel_transport_check,
    simulate_gate,
    synthesize_pulse,
)
from .jc import (
    Branch,
    DressedLevel,
    SystemParams,
    TransitionSet,
    build_jc_hamiltonian,
    dressed_levels,
    dressed_state,
    dressed_vector,
    eigen_energy,
    mixing_angle,
    transition_frequencies,
)
from .lindblad import (
    DecoherenceRates,
    DensityMatrix,
    FidelityCurve,
    evolve_master,
    hadamard_experiment,
    lindblad_rhs,
    projected_collapse_operators,
    state_fidelity,
)
from .noise import (
    NoiseSpec,
    ShiftReport,
    noise_scan,
    shift_approx,
    shift_closed_form,
    shift_oracle,
    shift_series,
)
from .numerics import (
    HarmonicHamiltonian,
    StepPolicy,
    Trajectory,
    hermitian_eig,
    integrate_propagator,
    integrate_schrodinger,
    matrix_exp_unitary,
)

__version__ = "0.1.0"
