"""Qubit-cavity Hamiltonian and its dressed-state (polariton) spectrum.

Model: a two-level qubit at omega_a exchange-coupled to a single cavity
mode at omega_r with strength g,

    H = omega_a |1><1| + omega_r a^dag a + g (a sigma^+ + a^dag sigma^-).

The product basis is |q> (x) |n>, q-major: index = q * (n_max + 1) + n.
The total excitation number q + n is conserved, so the matrix is
block-diagonal: the ground state |G> = |0,0> sits at zero energy and each
n >= 1 sector holds a doublet spanned by {|0,n>, |1,n-1>}.

Conventions (detuning delta = omega_r - omega_a throughout):

* energies     E(n, -/+) = n omega_r + (-delta -/+ sqrt(delta^2 + 4 n g^2)) / 2
* mixing angle alpha_n = atan2(2 g sqrt(n), -delta) / 2, in (0, pi/2)
* doublet      |-, n> = cos(alpha_n)|0,n> - sin(alpha_n)|1,n-1>
               |+, n> = sin(alpha_n)|0,n> + cos(alpha_n)|1,n-1>

With these signs the closed forms agree with numerical diagonalization of
the matrix above for every detuning ("+" is always the upper branch), and
at resonance alpha_n = pi/4 for all n.  Note the sign of delta inside the
energy and angle: writing the detuning term with the opposite sign is a
common slip that only cancels at delta = 0.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Literal

import numpy as np

from .errors import PhysicsGuardError
from .numerics import hermitian_eig

Branch = Literal["minus", "plus"]

BRANCH_SIGN = {"minus": -1.0, "plus": +1.0}


def _branch_sign(branch: Branch) -> float:
    try:
        return BRANCH_SIGN[branch]
    except KeyError:
        raise ValueError(f"branch must be 'minus' or 'plus', got {branch!r}") from None


@dataclass(frozen=True)
class SystemParams:
    """Physical constants of the qubit-cavity system (angular rad/s).

    ``n_max`` is the photon-number truncation of the cavity ladder; at least
    two excitation sectors are needed by the second-order noise sums.
    """

    omega_a: float
    omega_r: float
    g: float
    n_max: int = 5

    def __post_init__(self):
        for name in ("omega_a", "omega_r", "g"):
            if getattr(self, name) <= 0.0:
                raise ValueError(f"{name} must be positive")
        if self.g >= self.omega_r:
            raise PhysicsGuardError(
                "coupling must stay below the cavity frequency (g << omega_r "
                "underlies the dispersive closed forms); got g >= omega_r")
        if self.n_max < 2:
            raise PhysicsGuardError(
                "n_max >= 2 required: second-order noise sums reach the "
                "two-excitation sector")

    @classmethod
    def resonant(cls, omega_r: float, g: float, n_max: int = 5) -> "SystemParams":
        """Parameters with the qubit tuned to the cavity (delta = 0)."""
        return cls(omega_a=omega_r, omega_r=omega_r, g=g, n_max=n_max)

    @property
    def delta(self) -> float:
        """Cavity-qubit detuning omega_r - omega_a."""
        return self.omega_r - self.omega_a

    @property
    def dim(self) -> int:
        return 2 * (self.n_max + 1)

    def product_index(self, q: int, n: int) -> int:
        if q not in (0, 1) or not 0 <= n <= self.n_max:
            raise ValueError(f"no product state |{q},{n}> in this truncation")
        return q * (self.n_max + 1) + n


def build_jc_hamiltonian(params: SystemParams) -> np.ndarray:
    """Qubit-cavity Hamiltonian in the q-major product basis."""
    dim = params.dim
    h = np.zeros((dim, dim), dtype=complex)
    for q in (0, 1):
        for n in range(params.n_max + 1):
            i = params.product_index(q, n)
            h[i, i] = params.omega_a * q + params.omega_r * n
    for n in range(1, params.n_max + 1):
        i0 = params.product_index(0, n)
        i1 = params.product_index(1, n - 1)
        coupling = params.g * math.sqrt(n)
        h[i1, i0] += coupling
        h[i0, i1] += coupling
    return h


def mixing_angle(params: SystemParams, n: int) -> float:
    """Doublet rotation angle alpha_n in (0, pi/2); pi/4 at resonance."""
    if n < 1:
        raise ValueError("the n = 0 sector is the non-degenerate ground state")
    return 0.5 * math.atan2(2.0 * params.g * math.sqrt(n), -params.delta)


def eigen_energy(params: SystemParams, n: int, branch: Branch) -> float:
    """Closed-form doublet energy; matches diagonalization for all detunings."""
    if n < 1:
        raise ValueError("the n = 0 sector is the non-degenerate ground state")
    sign = _branch_sign(branch)
    root = math.sqrt(params.delta ** 2 + 4.0 * n * params.g ** 2)
    return n * params.omega_r + 0.5 * (-params.delta + sign * root)


def dressed_state(params: SystemParams, n: int, branch: Branch) -> tuple[float, float]:
    """Amplitudes (on |0,n>, on |1,n-1>) of the dressed state |branch, n>."""
    if n < 1:
        raise ValueError(
            "n = 0 has no dressed doublet; the ground state is |0,0>")
    if n > params.n_max:
        raise ValueError(f"n = {n} exceeds the truncation n_max = {params.n_max}")
    alpha = mixing_angle(params, n)
    if branch == "minus":
        return math.cos(alpha), -math.sin(alpha)
    if branch == "plus":
        return math.sin(alpha), math.cos(alpha)
    raise ValueError(f"branch must be 'minus' or 'plus', got {branch!r}")


def dressed_vector(params: SystemParams, n: int, branch: Branch) -> np.ndarray:
    """The dressed state embedded in the full product space."""
    c0, c1 = dressed_state(params, n, branch)
    v = np.zeros(params.dim, dtype=complex)
    v[params.product_index(0, n)] = c0
    v[params.product_index(1, n - 1)] = c1
    return v


def ground_vector(params: SystemParams) -> np.ndarray:
    v = np.zeros(params.dim, dtype=complex)
    v[params.product_index(0, 0)] = 1.0
    return v


def three_level_energies(params: SystemParams) -> np.ndarray:
    """Energies (E_G, E(1,-), E(1,+)) of the V-configuration levels."""
    return np.array([0.0,
                     eigen_energy(params, 1, "minus"),
                     eigen_energy(params, 1, "plus")])


@dataclass(frozen=True)
class DressedLevel:
    n: int
    branch: Branch
    energy: float
    mixing_angle: float


def dressed_levels(params: SystemParams) -> list[DressedLevel]:
    """All dressed levels up to the truncation, ordered by (n, branch)."""
    levels = []
    for n in range(1, params.n_max + 1):
        alpha = mixing_angle(params, n)
        for branch in ("minus", "plus"):
            levels.append(DressedLevel(n, branch, eigen_energy(params, n, branch), alpha))
    return levels


@dataclass(frozen=True)
class TransitionSet:
    """The four transition-frequency families out of ladder index n.

    ``omega_minus``/``omega_plus`` connect like branches of adjacent
    sectors; ``omega_up``/``omega_down`` connect opposite branches.  By
    construction omega_plus + omega_minus = omega_up + omega_down
    = 2 omega_r and omega_up >= omega_plus >= omega_minus >= omega_down.
    """

    n: int
    omega_minus: float
    omega_plus: float
    omega_up: float
    omega_down: float


def transition_frequencies(params: SystemParams, n: int) -> TransitionSet:
    """Transition frequencies between sectors n and n + 1.

    For n >= 1 the like-branch values equal the energy differences
    E(n+1, b) - E(n, b) exactly; the n = 0 row is the analytic
    continuation of the same formulas (sqrt(delta^2) in place of the
    doublet splitting), which preserves the 2 omega_r sum rules and
    coincides with E(1, b) - E_G at resonance.
    """
    if n < 0:
        raise ValueError("ladder index must be non-negative")
    if n + 1 > params.n_max:
        raise ValueError(
            f"transitions out of n = {n} need sector {n + 1} <= n_max = {params.n_max}")
    root_n = math.sqrt(params.delta ** 2 + 4.0 * n * params.g ** 2)
    root_n1 = math.sqrt(params.delta ** 2 + 4.0 * (n + 1) * params.g ** 2)
    half_diff = 0.5 * (root_n1 - root_n)
    half_sum = 0.5 * (root_n1 + root_n)
    return TransitionSet(
        n=n,
        omega_minus=params.omega_r - half_diff,
        omega_plus=params.omega_r + half_diff,
        omega_up=params.omega_r + half_sum,
        omega_down=params.omega_r - half_sum,
    )


def diagonalized_spectrum(params: SystemParams) -> tuple[np.ndarray, np.ndarray]:
    """Numerical (eigenvalues, eigenvectors) of the built Hamiltonian.

    Oracle counterpart of the closed forms above; the two agree to
    1e-10 relative (tested over random parameter draws).
    """
    return hermitian_eig(build_jc_hamiltonian(params))
