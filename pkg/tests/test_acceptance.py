"""Acceptance suite: one test per release criterion, each printing a
PASS/FAIL line with the measured numbers (run with -s to see them all)."""

import math

import numpy as np

from polariton.cli import main
from polariton.holonomy import (
    GateSpec,
    gate_fidelity,
    gate_matrix,
    ideal_holonomic_propagator,
    ideal_three_level_propagator,
    parallel_transport_check,
)
from polariton.jc import SystemParams, diagonalized_spectrum, eigen_energy, transition_frequencies
from polariton.lindblad import DecoherenceRates, evolve_master, projected_collapse_operators
from polariton.noise import NoiseSpec, shift_approx, shift_closed_form, shift_oracle, shift_series
from polariton.numerics import TWO_PI, HarmonicHamiltonian

HADAMARD_GATE = (1.0 / math.sqrt(2.0)) * np.array([[1.0, 1.0], [1.0, -1.0]])


def report(number: int, name: str, ok: bool, details: str) -> None:
    print(f"ACCEPTANCE {number} ({name}): {'PASS' if ok else 'FAIL'} :: {details}")
    assert ok, f"criterion {number} ({name}): {details}"


def test_criterion_1_benchmark_fidelity(hadamard_curves):
    on, off = hadamard_curves
    ok = (0.992 <= on.endpoint() <= 0.998
          and off.endpoint() >= 0.995
          and on.fidelity[0] == 0.5
          and off.fidelity[0] == 0.5)
    report(1, "Hadamard fidelity benchmark", ok,
           f"F_on(1) = {on.endpoint():.6f} in [0.992, 0.998], "
           f"F_off(1) = {off.endpoint():.6f} >= 0.995, F(0) = {on.fidelity[0]} exactly")


def test_criterion_2_effective_gate_exactness():
    rng = np.random.default_rng(101)
    worst = 0.0
    for _ in range(50):
        spec = GateSpec(theta=rng.uniform(0.0, math.pi), phi=rng.uniform(0.0, TWO_PI))
        u3 = ideal_holonomic_propagator(spec, xi=1.0e6)
        block = np.array([[u3[2, 2], u3[2, 1]], [u3[1, 2], u3[1, 1]]])
        worst = max(worst, 1.0 - gate_fidelity(block, gate_matrix(spec)))
    hadamard3 = ideal_holonomic_propagator(GateSpec(theta=math.pi / 4.0), xi=1.0e6)
    hadamard_block = np.array([[hadamard3[2, 2], hadamard3[2, 1]],
                               [hadamard3[1, 2], hadamard3[1, 1]]])
    hadamard_dev = np.abs(hadamard_block - HADAMARD_GATE).max()
    ok = worst < 1e-10 and hadamard_dev < 1e-12
    report(2, "effective-level gate exactness", ok,
           f"max infidelity over 50 random specs = {worst:.2e} < 1e-10, "
           f"|U(pi/4, 0) - Hadamard| = {hadamard_dev:.2e}")


def test_criterion_3_spectrum_oracle_equivalence():
    rng = np.random.default_rng(102)
    worst_energy = 0.0
    worst_sum = 0.0
    for _ in range(100):
        omega_r = TWO_PI * rng.uniform(4e9, 12e9)
        g = omega_r * rng.uniform(0.01, 0.08)
        delta = rng.uniform(-2.0, 2.0) * g
        params = SystemParams(omega_a=omega_r - delta, omega_r=omega_r, g=g, n_max=5)
        values, _ = diagonalized_spectrum(params)
        for n in range(1, 5):
            for branch in ("minus", "plus"):
                closed = eigen_energy(params, n, branch)
                nearest = values[np.argmin(np.abs(values - closed))]
                worst_energy = max(worst_energy, abs(closed - nearest) / abs(nearest))
        for n in range(0, 5):
            ts = transition_frequencies(params, n)
            scale = 2.0 * params.omega_r
            worst_sum = max(worst_sum,
                            abs(ts.omega_plus + ts.omega_minus - scale) / scale,
                            abs(ts.omega_up + ts.omega_down - scale) / scale)
    ok = worst_energy <= 1e-10 and worst_sum <= 1e-12
    report(3, "spectrum closed form vs diagonalization", ok,
           f"max energy deviation {worst_energy:.2e} <= 1e-10 (100 draws, n <= 4), "
           f"max sum-rule deviation {worst_sum:.2e} <= 1e-12")


def test_criterion_4_noise_shift_triple_agreement():
    params = SystemParams.resonant(TWO_PI * 8e9, TWO_PI * 0.4e9)  # g/omega_r = 0.05
    rng = np.random.default_rng(103)
    worst_series = 0.0
    for _ in range(20):
        noise = NoiseSpec(TWO_PI * rng.uniform(1e6, 20e6))
        for branch in ("minus", "plus"):
            series = shift_series(params, noise, branch)
            closed = shift_closed_form(params, noise, branch)
            worst_series = max(worst_series, abs(series - closed) / abs(closed))
    noise = NoiseSpec(TWO_PI * 10e6)
    worst_approx = max(
        abs(shift_approx(params, noise, b) - shift_closed_form(params, noise, b))
        / abs(shift_closed_form(params, noise, b))
        for b in ("minus", "plus"))
    approx_bound = 3.0 * params.g / params.omega_r
    amplitudes = TWO_PI * np.array([2e6, 3e6, 5e6, 8e6, 12e6, 20e6])
    residuals = [abs(shift_oracle(params, NoiseSpec(a))[0]
                     - shift_series(params, NoiseSpec(a), "minus"))
                 for a in amplitudes]
    slope = np.polyfit(np.log(amplitudes), np.log(residuals), 1)[0]
    ok = worst_series <= 1e-12 and worst_approx <= approx_bound and abs(slope - 4.0) <= 0.1
    report(4, "noise-shift triple agreement", ok,
           f"series vs closed form {worst_series:.2e} <= 1e-12, "
           f"approx deviation {worst_approx:.3f} <= {approx_bound:.3f}, "
           f"oracle residual slope {slope:.3f} = 4 +/- 0.1")


def test_criterion_5_rwa_validity_trend(bench_params, interaction_propagators,
                                        lab_leakage_sim):
    plus = np.array([0.0, 0.0, 1.0], dtype=complex)
    ideal = ideal_three_level_propagator(GateSpec(theta=math.pi / 4.0)) @ plus
    fidelities = {ratio: float(abs(ideal.conj() @ (u @ plus)) ** 2)
                  for ratio, u in interaction_propagators.items()}
    monotone = fidelities[10] <= fidelities[20] <= fidelities[40]
    ok = monotone and lab_leakage_sim.leakage < 0.01
    report(5, "rotating-wave validity trend", ok,
           f"interaction fidelity {fidelities[10]:.6f} <= {fidelities[20]:.6f} "
           f"<= {fidelities[40]:.6f} across xi/g = 1/10, 1/20, 1/40; "
           f"full-space leakage {lab_leakage_sim.leakage:.2e} < 1e-2 at xi = g/20")


def test_criterion_6_open_system_sanity(bench_params, fig2_runs):
    worst_trace = 0.0
    worst_eig = 0.0
    for tag in ("on", "off"):
        states = fig2_runs[tag].states
        traces = np.einsum("kii->k", states).real
        worst_trace = max(worst_trace, float(np.abs(traces - 1.0).max()))
        worst_eig = min(worst_eig, min(float(np.linalg.eigvalsh(r).min())
                                       for r in states))
    pure = fig2_runs["pure"].states
    deviation = max(np.abs(fig2_runs["off"].states[k]
                           - np.outer(pure[k], pure[k].conj())).max()
                    for k in range(0, len(pure), 10))
    ops = projected_collapse_operators(bench_params)
    rate = TWO_PI * 8e3
    h0 = HarmonicHamiltonian(np.zeros((3, 3), dtype=complex))
    s2 = 1.0 / math.sqrt(2.0)
    symmetric = np.array([0.0, s2, s2], dtype=complex)
    antisymmetric = np.array([0.0, -s2, s2], dtype=complex)
    fits = {}
    for name, rates, state, observable, expected in (
            ("kappa", DecoherenceRates(rate, 0, 0), symmetric, symmetric, rate),
            ("gamma1", DecoherenceRates(0, rate, 0), antisymmetric, antisymmetric, rate),
            ("gamma2", DecoherenceRates(0, 0, rate),
             (symmetric + antisymmetric) / math.sqrt(2.0), None, 2.0 * rate)):
        rho0 = np.outer(state, state.conj())
        trajectory = evolve_master(h0, rho0, rates, ops, duration=1.0 / rate, samples=100)
        if observable is not None:
            values = np.einsum("i,kij,j->k", observable.conj(), trajectory.states,
                               observable).real
        else:
            values = np.abs(np.einsum("i,kij,j->k", symmetric.conj(),
                                      trajectory.states, antisymmetric))
        fitted = -np.polyfit(trajectory.times, np.log(values), 1)[0]
        fits[name] = abs(fitted / expected - 1.0)
    ok = (worst_trace < 1e-8 and worst_eig >= -1e-8 and deviation < 1e-8
          and all(err < 0.01 for err in fits.values()))
    report(6, "open-system sanity", ok,
           f"trace drift {worst_trace:.1e} < 1e-8, min eigenvalue {worst_eig:.1e} "
           f">= -1e-8, zero-rate deviation {deviation:.1e} < 1e-8, channel-rate "
           f"errors {max(fits.values()):.2e} < 1e-2")


def test_criterion_7_parallel_transport(bench_params):
    xi = bench_params.g / 20.0
    worst = parallel_transport_check(GateSpec(theta=math.pi / 4.0), xi, n_samples=100)
    ok = worst < 1e-10 * xi
    report(7, "parallel transport", ok,
           f"max |<psi_a|H_v|psi_b>| = {worst:.2e} rad/s < 1e-10 * xi "
           f"over the Hadamard cycle")


def test_criterion_8_determinism(tmp_path):
    first = tmp_path / "run1"
    second = tmp_path / "run2"
    assert main(["fig2", "--out", str(first)]) == 0
    assert main(["fig2", "--out", str(second)]) == 0
    bytes_first = (first / "fig2_fidelity.csv").read_bytes()
    bytes_second = (second / "fig2_fidelity.csv").read_bytes()
    ok = bytes_first == bytes_second
    report(8, "benchmark determinism", ok,
           f"two runs produced byte-identical CSVs ({len(bytes_first)} bytes)")
