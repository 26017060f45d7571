import math

import numpy as np
import pytest

from polariton.drive import interaction_picture_hamiltonian, lab_frame_hamiltonian
from polariton.holonomy import GateSpec, simulate_gate, synthesize_pulse
from polariton.jc import SystemParams
from polariton.lindblad import (
    DecoherenceRates,
    evolve_master,
    hadamard_experiment,
    projected_collapse_operators,
)
from polariton.numerics import TWO_PI, integrate_propagator, integrate_schrodinger

HADAMARD = GateSpec(theta=math.pi / 4.0, phi=0.0)


@pytest.fixture(scope="session")
def bench_params() -> SystemParams:
    """The benchmark system: resonant, omega_r = 2pi x 8 GHz, g = omega_r/20."""
    omega_r = TWO_PI * 8e9
    return SystemParams.resonant(omega_r=omega_r, g=omega_r / 20.0)


@pytest.fixture(scope="session")
def hadamard_pulse(bench_params):
    return synthesize_pulse(bench_params, HADAMARD, bench_params.g / 20.0)


@pytest.fixture(scope="session")
def hadamard_curves(bench_params):
    """(with decoherence, without) fidelity curves of the benchmark run."""
    return hadamard_experiment(params=bench_params)


@pytest.fixture(scope="session")
def fig2_runs(bench_params, hadamard_pulse):
    """Raw benchmark trajectories: master equation with and without rates,
    plus the matching pure-state integration."""
    h = lab_frame_hamiltonian(bench_params, hadamard_pulse.drive)
    ops = projected_collapse_operators(bench_params)
    rho0 = np.zeros((3, 3), dtype=complex)
    rho0[2, 2] = 1.0
    psi0 = np.array([0.0, 0.0, 1.0], dtype=complex)
    on = evolve_master(h, rho0, DecoherenceRates.common(), ops,
                       hadamard_pulse.tau, samples=201)
    off = evolve_master(h, rho0, DecoherenceRates.none(), ops,
                        hadamard_pulse.tau, samples=201)
    pure = integrate_schrodinger(h, psi0, hadamard_pulse.tau, samples=201)
    return {"on": on, "off": off, "pure": pure}


@pytest.fixture(scope="session")
def interaction_propagators(bench_params):
    """Exact 3-level rotating-frame cycle propagators for xi/g in {1/10, 1/20, 1/40}."""
    propagators = {}
    for ratio in (10, 20, 40):
        program = synthesize_pulse(bench_params, HADAMARD, bench_params.g / ratio)
        h = interaction_picture_hamiltonian(bench_params, program.drive)
        propagators[ratio] = integrate_propagator(h, program.tau)
    return propagators


@pytest.fixture(scope="session")
def lab_leakage_sim(bench_params, hadamard_pulse):
    """Full-product-space Hadamard run at xi = g/20, initial |+>."""
    return simulate_gate(bench_params, hadamard_pulse, "lab")
