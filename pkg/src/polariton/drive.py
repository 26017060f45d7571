"""Two-tone microwave drive and the ladder of frame reductions.

The transmon is driven through sqrt(2) f(t) sigma_x with

    f(t) = Omega_1 cos(omega_1 t) + Omega_2 cos(omega_2 t + phi),

and the dynamics is followed at four levels of description, from exact to
fully reduced:

1. full product space:    H_jc + sqrt(2) f(t) sigma_x
2. lab frame, 3 levels:   the same, projected on {|G>, |->, |+>}; at
   resonance <-|sigma_x|G> = -1/sqrt(2) and <+|sigma_x|G> = +1/sqrt(2), so
   the drive row is (-f(t), +f(t))
3. interaction picture:   co-rotating with the undriven Hamiltonian, drive
   elements -f(t) e^{-i w_minus t} and +f(t) e^{-i w_plus t}, where
   w_minus/w_plus are the two |G> transition frequencies
4. effective V system:    both rotating-wave steps applied (fast carriers
   at ~2 omega, then the 2g beat terms for g >> Omega), leaving the
   constant matrix H_v built in :func:`v_hamiltonian_matrix`

Levels 1-3 are exact reparameterizations of each other inside the 3-level
subspace; level 4 is the approximation whose quality the simulators
measure.  Everything assumes the resonant system (delta = 0): the
+/- 1/sqrt(2) drive elements and the 2g beat structure hold only there.

Basis bookkeeping: 3-level vectors are ordered (|G>, |->, |+>); 2-level
qubit vectors and matrices are ordered (|+>, |->).  The helpers at the
bottom convert between the two.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import PhysicsGuardError
from .jc import SystemParams, build_jc_hamiltonian, three_level_energies
from .noise import qubit_noise_operator
from .numerics import HarmonicHamiltonian, complex_carrier

#: Drive coupling pattern in the (G, -, +) basis: <G|.|-> = -1, <G|.|+> = +1.
DRIVE_COUPLING = np.array([[0, -1, 1],
                           [-1, 0, 0],
                           [1, 0, 0]], dtype=complex)


@dataclass(frozen=True)
class DriveConfig:
    """Two-tone drive: carriers omega_1/omega_2, amplitudes Omega_1/Omega_2,
    relative phase phi (all angular)."""

    omega1: float
    omega2: float
    Omega1: float
    Omega2: float
    phi: float = 0.0

    def __post_init__(self):
        if self.Omega1 < 0.0 or self.Omega2 < 0.0:
            raise ValueError("tone amplitudes must be non-negative")
        if self.omega1 <= 0.0 or self.omega2 <= 0.0:
            raise ValueError("carrier frequencies must be positive")

    def rwa_valid(self, g: float) -> bool:
        """Whether both amplitudes respect the g >> (Omega1, Omega2) regime."""
        return max(self.Omega1, self.Omega2) <= g / 10.0


def drive_waveform(config: DriveConfig, t):
    """f(t); accepts scalars or arrays, bounded by Omega1 + Omega2."""
    t = np.asarray(t, dtype=float)
    value = (config.Omega1 * np.cos(config.omega1 * t)
             + config.Omega2 * np.cos(config.omega2 * t + config.phi))
    return float(value) if value.ndim == 0 else value


def _require_resonant(params: SystemParams, context: str) -> None:
    if params.delta != 0.0:
        raise PhysicsGuardError(
            f"{context} is derived for the resonant system (delta = 0); "
            f"got delta = {params.delta:.6e} rad/s")


def resonance_frequencies(params: SystemParams) -> tuple[float, float]:
    """Carriers addressing the two |G> transitions: (omega_r - g, omega_r + g)."""
    _require_resonant(params, "the two-tone resonance condition")
    return params.omega_r - params.g, params.omega_r + params.g


def lab_frame_hamiltonian(params: SystemParams, config: DriveConfig) -> HarmonicHamiltonian:
    """Driven 3-level Hamiltonian in the lab frame, basis (G, -, +)."""
    _require_resonant(params, "the 3-level drive projection")
    static = np.diag(three_level_energies(params)).astype(complex)
    return HarmonicHamiltonian(static, [
        (config.Omega1 * DRIVE_COUPLING, config.omega1, 0.0),
        (config.Omega2 * DRIVE_COUPLING, config.omega2, config.phi),
    ])


def product_space_hamiltonian(params: SystemParams, config: DriveConfig) -> HarmonicHamiltonian:
    """Driven Hamiltonian in the full product space (no projection)."""
    coupling = math.sqrt(2.0) * qubit_noise_operator(params, "x")
    return HarmonicHamiltonian(build_jc_hamiltonian(params), [
        (config.Omega1 * coupling, config.omega1, 0.0),
        (config.Omega2 * coupling, config.omega2, config.phi),
    ])


def interaction_picture_hamiltonian(params: SystemParams, config: DriveConfig) -> HarmonicHamiltonian:
    """Drive in the frame co-rotating with the undriven 3-level Hamiltonian.

    Element (G, c) is sign_c * f(t) e^{-i w_c t} for c in {-, +}; the
    cosine-series expansion keeps both the co-rotating (|omega_d - w_c|)
    and counter-rotating (omega_d + w_c) carriers, so no approximation is
    made relative to the lab frame.
    """
    _require_resonant(params, "the 3-level drive projection")
    energies = three_level_energies(params)
    w_minus, w_plus = energies[1], energies[2]
    terms = []
    for amplitude, omega_d, beta_d in ((config.Omega1, config.omega1, 0.0),
                                       (config.Omega2, config.omega2, config.phi)):
        for column, w_c, sign in ((1, w_minus, -1.0), (2, w_plus, +1.0)):
            ket_bra = np.zeros((3, 3), dtype=complex)
            ket_bra[0, column] = 1.0
            # f(t) e^{-i w_c t} = sum of e^{i((omega_d - w_c) t + beta_d)} / 2
            #                     and e^{-i((omega_d + w_c) t + beta_d)} / 2
            for nu, beta in ((omega_d - w_c, beta_d), (-(omega_d + w_c), -beta_d)):
                terms.extend(complex_carrier(sign * 0.5 * amplitude * ket_bra, nu, beta))
    return HarmonicHamiltonian(np.zeros((3, 3), dtype=complex), terms)


@dataclass(frozen=True)
class VSystemParams:
    """Normalized drive parameters: xi = sqrt(Omega1^2 + Omega2^2),
    tan(theta/2) = Omega2 / Omega1, phase phi."""

    xi: float
    theta: float
    phi: float

    def __post_init__(self):
        if self.xi <= 0.0:
            raise ValueError("effective coupling xi must be positive")
        if not 0.0 <= self.theta <= math.pi:
            raise ValueError("theta must lie in [0, pi]")

    @classmethod
    def from_amplitudes(cls, Omega1: float, Omega2: float, phi: float) -> "VSystemParams":
        return cls(xi=math.hypot(Omega1, Omega2),
                   theta=2.0 * math.atan2(Omega2, Omega1),
                   phi=phi)

    def amplitudes(self) -> tuple[float, float]:
        """Round-trips to the tone amplitudes (Omega1, Omega2)."""
        return self.xi * math.cos(self.theta / 2.0), self.xi * math.sin(self.theta / 2.0)


def v_hamiltonian_matrix(v: VSystemParams) -> np.ndarray:
    """The reduced constant V-system Hamiltonian in the (G, -, +) basis.

    H_v = (xi/2) (sin(theta/2) e^{i phi} |G><+| - cos(theta/2) |G><-| + h.c.);
    Hermitian, traceless, rank 2, eigenvalues (-xi/2, 0, +xi/2).
    """
    h = np.zeros((3, 3), dtype=complex)
    h[0, 2] = 0.5 * v.xi * math.sin(v.theta / 2.0) * np.exp(1j * v.phi)
    h[0, 1] = -0.5 * v.xi * math.cos(v.theta / 2.0)
    h[2, 0] = np.conj(h[0, 2])
    h[1, 0] = np.conj(h[0, 1])
    return h


def effective_v_hamiltonian(params: SystemParams, config: DriveConfig) -> tuple[np.ndarray, VSystemParams]:
    """Apply both rotating-wave steps to a resonant two-tone drive.

    Requires the carriers to sit on the two |G> transitions (within xi/10)
    and amplitudes small against g; the result is the constant matrix of
    :func:`v_hamiltonian_matrix` together with its (xi, theta, phi).
    """
    w1, w2 = resonance_frequencies(params)
    v = VSystemParams.from_amplitudes(config.Omega1, config.Omega2, config.phi)
    detune = max(abs(config.omega1 - w1), abs(config.omega2 - w2))
    if detune > v.xi / 10.0:
        raise PhysicsGuardError(
            "off-resonant carriers: the reduction assumes exact resonance "
            f"with the |G> transitions, but a tone is {detune:.3e} rad/s away "
            f"(limit xi/10 = {v.xi / 10.0:.3e})")
    if not config.rwa_valid(params.g):
        raise PhysicsGuardError(
            "dropping the 2g beat terms requires g >> (Omega1, Omega2); "
            f"got max amplitude {max(config.Omega1, config.Omega2):.3e} "
            f"against g/10 = {params.g / 10.0:.3e} rad/s")
    return v_hamiltonian_matrix(v), v


@dataclass(frozen=True)
class BrightDarkBasis:
    """Drive eigenmodes over the qubit pair, components ordered (|+>, |->).

    The bright state couples to |G> with strength xi; the dark state is
    annihilated by the V-system Hamiltonian.
    """

    bright: np.ndarray
    dark: np.ndarray


def bright_dark_basis(v: VSystemParams) -> BrightDarkBasis:
    """|b> = sin(theta/2) e^{-i phi} |+> - cos(theta/2) |->,
    |d> = cos(theta/2) |+> + sin(theta/2) e^{i phi} |->."""
    half = v.theta / 2.0
    bright = np.array([math.sin(half) * np.exp(-1j * v.phi), -math.cos(half)])
    dark = np.array([math.cos(half), math.sin(half) * np.exp(1j * v.phi)])
    return BrightDarkBasis(bright=bright, dark=dark)


def qubit_to_three_level(qubit: np.ndarray) -> np.ndarray:
    """Embed a (|+>, |->) pair into the (G, -, +) ordering."""
    return np.array([0.0, qubit[1], qubit[0]], dtype=complex)


def three_level_to_qubit(state: np.ndarray) -> np.ndarray:
    """Project a 3-level vector onto the qubit pair, (|+>, |->) order."""
    return np.array([state[2], state[1]], dtype=complex)
