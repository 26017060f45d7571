"""Sensitivity of the one-excitation doublet to quasi-static qubit noise.

A slow fluctuation of amplitude a on the bare qubit enters as a * sigma_x
(transverse) or a * sigma_z (longitudinal, sign convention
sigma_z = |1><1| - |0><0|).  Because it is far off-resonant from every
dressed transition it acts as a static perturbation; the observable is the
second-order shift of the doublet energies E(1, -/+) and of their
splitting.

Four routes to the same numbers, in decreasing generality:

* :func:`shift_series`      second-order sum over intermediate dressed
                            states (any detuning, either axis),
* :func:`shift_closed_form` the resonant-case closed expression
                            (transverse axis, delta = 0 only),
* :func:`shift_approx`      its leading order for g << omega_r,
                            -/+ a^2 g / omega_a^2,
* :func:`shift_oracle`      exact diagonalization of the perturbed matrix,
                            independent of perturbation theory.

For the transverse axis the first-order term and the intra-doublet matrix
element both vanish identically, which is the suppression mechanism: the
splitting correction scales as a^2 (and linearly in g), not as a.  The
series keeps the first-order term anyway because the longitudinal axis
needs it away from resonance.
"""

from __future__ import annotations

import warnings
from dataclasses import dataclass
from typing import Literal

import numpy as np

from .errors import PhysicsGuardError
from .jc import Branch, SystemParams, build_jc_hamiltonian, dressed_vector, eigen_energy, ground_vector
from .numerics import TWO_PI, hermitian_eig

NoiseAxis = Literal["x", "z"]

#: Default sweep of noise amplitudes, omega/2pi in Hz.
DEFAULT_AMPLITUDES_HZ = (1e6, 2e6, 5e6, 10e6, 20e6)


@dataclass(frozen=True)
class NoiseSpec:
    """Amplitude of the quasi-static qubit perturbation (rad/s)."""

    a_x: float

    def __post_init__(self):
        if self.a_x < 0.0:
            raise ValueError("noise amplitude must be non-negative")

    def perturbative_for(self, params: SystemParams) -> bool:
        """True when the amplitude sits safely inside the perturbative regime."""
        return self.a_x < params.g / 10.0


def qubit_noise_operator(params: SystemParams, axis: NoiseAxis = "x") -> np.ndarray:
    """sigma_x or sigma_z on the qubit, identity on the cavity."""
    dim = params.dim
    op = np.zeros((dim, dim), dtype=complex)
    for n in range(params.n_max + 1):
        i0 = params.product_index(0, n)
        i1 = params.product_index(1, n)
        if axis == "x":
            op[i0, i1] = op[i1, i0] = 1.0
        elif axis == "z":
            op[i0, i0] = -1.0
            op[i1, i1] = +1.0
        else:
            raise ValueError(f"axis must be 'x' or 'z', got {axis!r}")
    return op


def _intermediate_states(params: SystemParams, branch: Branch):
    """Ground state plus every dressed state of the n <= 2 sectors.

    Matrix elements of the qubit perturbation out of the one-excitation
    doublet vanish beyond the two-excitation sector, so the sum is exact.
    """
    other = "plus" if branch == "minus" else "minus"
    yield ground_vector(params), 0.0
    yield dressed_vector(params, 1, other), eigen_energy(params, 1, other)
    for b in ("minus", "plus"):
        yield dressed_vector(params, 2, b), eigen_energy(params, 2, b)


def shift_series(params: SystemParams, noise: NoiseSpec, branch: Branch,
                 axis: NoiseAxis = "x") -> float:
    """Energy shift of |branch, 1> from the second-order perturbative sum.

    First order is the diagonal element of the perturbation (zero for the
    transverse axis); second order sums |<m|H'|branch,1>|^2 over the
    intermediate states divided by the unperturbed energy gaps.
    """
    perturbation = noise.a_x * qubit_noise_operator(params, axis)
    state = dressed_vector(params, 1, branch)
    energy = eigen_energy(params, 1, branch)
    shift = float((state.conj() @ perturbation @ state).real)
    for inter, inter_energy in _intermediate_states(params, branch):
        element = inter.conj() @ perturbation @ state
        if element != 0.0:
            shift += abs(element) ** 2 / (energy - inter_energy)
    return shift


def shift_closed_form(params: SystemParams, noise: NoiseSpec, branch: Branch) -> float:
    """Resonant-case closed form of the transverse shift.

    delta E(1,-) = (a^2/2) [1/(omega_r - g) - 1/(omega_r + g - 2g^2/(omega_r + g))]
    and the plus branch is the same expression with g -> -g.
    """
    if params.delta != 0.0:
        raise PhysicsGuardError(
            "the closed-form shifts are derived at delta = 0; "
            "use shift_series for a detuned system")
    if branch not in ("minus", "plus"):
        raise ValueError(f"branch must be 'minus' or 'plus', got {branch!r}")
    g = params.g if branch == "minus" else -params.g
    wr = params.omega_r
    return 0.5 * noise.a_x ** 2 * (
        1.0 / (wr - g) - 1.0 / (wr + g - 2.0 * g ** 2 / (wr + g)))


def shift_approx(params: SystemParams, noise: NoiseSpec, branch: Branch) -> float:
    """Leading-order shift for g << omega_r:  -/+ a^2 g / omega_a^2."""
    if params.g / params.omega_r >= 0.1:
        warnings.warn(
            "g / omega_r >= 0.1: the leading-order shift degrades outside "
            "the weak-coupling regime", stacklevel=2)
    if branch not in ("minus", "plus"):
        raise ValueError(f"branch must be 'minus' or 'plus', got {branch!r}")
    sign = -1.0 if branch == "plus" else +1.0
    return sign * noise.a_x ** 2 * params.g / params.omega_a ** 2


def shift_oracle(params: SystemParams, noise: NoiseSpec,
                 axis: NoiseAxis = "x") -> tuple[float, float]:
    """Shifts from exact diagonalization of the perturbed Hamiltonian.

    Diagonalizes H + a * sigma_axis in the full product space, identifies
    the perturbed doublet by maximal overlap with the unperturbed dressed
    states, and returns the energy differences (minus, plus) against the
    closed-form energies.  Requires n_max >= 4 so the truncation error is
    negligible at fourth order.
    """
    if params.n_max < 4:
        raise PhysicsGuardError(
            "oracle needs n_max >= 4 to bound the truncation error")
    perturbed = build_jc_hamiltonian(params) + noise.a_x * qubit_noise_operator(params, axis)
    values, vectors = hermitian_eig(perturbed)
    shifts = []
    for branch in ("minus", "plus"):
        reference = dressed_vector(params, 1, branch)
        overlaps = np.abs(vectors.conj().T @ reference)
        k = int(np.argmax(overlaps))
        if overlaps[k] < 0.9:
            raise PhysicsGuardError(
                f"perturbed eigenstate overlap {overlaps[k]:.3f} < 0.9 with "
                f"|{branch},1>; amplitude is outside the perturbative regime")
        shifts.append(float(values[k] - eigen_energy(params, 1, branch)))
    return shifts[0], shifts[1]


ShiftMethod = Literal["series", "closed_form", "approx", "oracle"]


@dataclass(frozen=True)
class ShiftReport:
    """Doublet shifts and the splitting correction |dE(+) - dE(-)| (rad/s)."""

    shift_minus: float
    shift_plus: float
    splitting_correction: float
    method: ShiftMethod


def shift_report(params: SystemParams, noise: NoiseSpec, method: ShiftMethod,
                 axis: NoiseAxis = "x") -> ShiftReport:
    """Evaluate both branches with one method and package the result."""
    if method == "series":
        minus = shift_series(params, noise, "minus", axis)
        plus = shift_series(params, noise, "plus", axis)
    elif method == "closed_form":
        if axis != "x":
            raise PhysicsGuardError("no closed form is claimed for the longitudinal axis")
        minus = shift_closed_form(params, noise, "minus")
        plus = shift_closed_form(params, noise, "plus")
    elif method == "approx":
        if axis != "x":
            raise PhysicsGuardError("no closed form is claimed for the longitudinal axis")
        minus = shift_approx(params, noise, "minus")
        plus = shift_approx(params, noise, "plus")
    elif method == "oracle":
        minus, plus = shift_oracle(params, noise, axis)
    else:
        raise ValueError(f"unknown method {method!r}")
    return ShiftReport(minus, plus, abs(plus - minus), method)


def noise_scan(params: SystemParams, amplitudes: "np.ndarray | list[float]",
               methods: tuple[ShiftMethod, ...] = ("series", "closed_form", "approx", "oracle"),
               axis: NoiseAxis = "x") -> list[tuple[float, ShiftReport]]:
    """Sweep noise amplitudes (rad/s) over the chosen methods.

    Returns (amplitude, report) pairs in deterministic (amplitude, method)
    order, ready for CSV serialization.
    """
    rows = []
    for a in amplitudes:
        spec = NoiseSpec(float(a))
        for method in methods:
            rows.append((float(a), shift_report(params, spec, method, axis)))
    return rows


def default_amplitudes() -> np.ndarray:
    """The standard amplitude sweep, converted to rad/s."""
    return TWO_PI * np.asarray(DEFAULT_AMPLITUDES_HZ)
