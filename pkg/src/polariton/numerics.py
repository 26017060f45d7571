"""Dense complex-matrix algebra and fixed-step time integration.

Everything here is dimension-agnostic plumbing used by the physics modules:
Hermitian eigendecomposition with a deterministic eigenvector phase, the
unitary matrix exponential, and a classical fourth-order Runge-Kutta
integrator for the time-dependent Schrodinger equation.

Units: all frequencies and energies are angular (rad/s); times are seconds.
Conversion to and from Hz-family values happens at the I/O boundary only.

Time-dependent Hamiltonians are represented as a cosine series

    H(t) = H0 + sum_k cos(nu_k t + beta_k) * A_k

with Hermitian ``H0`` and ``A_k`` (see :class:`HarmonicHamiltonian`), which
is exact for every Hamiltonian appearing in this package and lets the
integration loops run compiled.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Iterable

import numpy as np

from . import _kernels
from .errors import NumericalError, NonHermitianError

TWO_PI = 2.0 * math.pi

HERMITIAN_RTOL = 1e-12


def hermiticity_defect(matrix: np.ndarray) -> float:
    """Max-abs entry of M - M^dag."""
    return float(np.abs(matrix - matrix.conj().T).max())


def require_hermitian(matrix: np.ndarray, *, rtol: float = HERMITIAN_RTOL,
                      name: str = "matrix") -> np.ndarray:
    """Return the matrix unchanged if Hermitian within a relative tolerance."""
    m = np.asarray(matrix, dtype=complex)
    if m.ndim != 2 or m.shape[0] != m.shape[1]:
        raise ValueError(f"{name} must be square, got shape {m.shape}")
    scale = max(float(np.abs(m).max()), 1.0)
    defect = hermiticity_defect(m)
    if defect > rtol * scale:
        raise NonHermitianError(name, defect, rtol * scale)
    return m


def hermitian_eig(matrix: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    """Eigendecomposition of a Hermitian matrix with a fixed phase convention.

    Returns eigenvalues in ascending order and orthonormal eigenvector
    columns.  Each column is rotated so that its first component larger than
    1e-12 of the column maximum is real and positive, which makes repeated
    runs (and dressed-state sign conventions) reproducible.
    """
    m = require_hermitian(matrix)
    values, vectors = np.linalg.eigh(m)
    vectors = vectors.copy()
    for k in range(vectors.shape[1]):
        col = vectors[:, k]
        magnitudes = np.abs(col)
        significant = np.nonzero(magnitudes > 1e-12 * magnitudes.max())[0]
        lead = col[significant[0]]
        vectors[:, k] = col * (lead.conjugate() / abs(lead))
    return values, vectors


def spectral_bound(matrix: np.ndarray) -> float:
    """Largest absolute eigenvalue of a Hermitian matrix."""
    m = np.asarray(matrix, dtype=complex)
    if not m.any():
        return 0.0
    return float(np.abs(np.linalg.eigvalsh(m)).max())


def matrix_exp_unitary(hamiltonian: np.ndarray, t: float) -> np.ndarray:
    """exp(-i H t) for Hermitian H, built from the eigendecomposition."""
    values, vectors = hermitian_eig(hamiltonian)
    phases = np.exp(-1j * values * t)
    return (vectors * phases) @ vectors.conj().T


def complex_carrier(op: np.ndarray, nu: float, beta: float) -> list[tuple[np.ndarray, float, float]]:
    """Cosine-series encoding of  e^{i(nu t + beta)} op + h.c.

    Splits the rotating term into two Hermitian cosine terms:
    cos(x)(op + op^dag) and sin(x) i(op - op^dag) with sin folded into a
    cosine through a -pi/2 phase offset.
    """
    op = np.asarray(op, dtype=complex)
    cos_part = op + op.conj().T
    sin_part = 1j * (op - op.conj().T)
    return [(cos_part, nu, beta), (sin_part, nu, beta - math.pi / 2)]


class HarmonicHamiltonian:
    """H(t) = static + sum_k cos(nu_k t + beta_k) A_k, all parts Hermitian.

    Instances are immutable after construction (backing arrays are marked
    read-only), so they may be shared freely across concurrent evaluations.
    """

    def __init__(self, static: np.ndarray,
                 cosine_terms: Iterable[tuple[np.ndarray, float, float]] = ()):
        # copy: the backing arrays get frozen below, never the caller's
        self.static = require_hermitian(static, name="static part").copy()
        dim = self.static.shape[0]
        terms, nus, betas = [], [], []
        for k, (a, nu, beta) in enumerate(cosine_terms):
            a = require_hermitian(a, name=f"cosine term {k}")
            if a.shape[0] != dim:
                raise ValueError("cosine term dimension mismatch")
            terms.append(a)
            nus.append(float(nu))
            betas.append(float(beta))
        self.terms = (np.stack(terms) if terms
                      else np.zeros((0, dim, dim), dtype=complex))
        self.nus = np.asarray(nus, dtype=float)
        self.betas = np.asarray(betas, dtype=float)
        for arr in (self.static, self.terms, self.nus, self.betas):
            arr.setflags(write=False)
        # frequency scales used by step planning
        self.carrier_scale = float(np.abs(self.nus).max()) if len(nus) else 0.0
        self.dynamic_scale = spectral_bound(self.static) + sum(
            spectral_bound(t) for t in self.terms)
        # phase-error density ~ omega_dyn^5 + sum_k |A_k| nu_k^4
        self.error_rate_density = self.dynamic_scale ** 5 + sum(
            spectral_bound(a) * abs(nu) ** 4
            for a, nu in zip(self.terms, self.nus))

    @classmethod
    def constant(cls, h0: np.ndarray) -> "HarmonicHamiltonian":
        return cls(h0)

    @property
    def dim(self) -> int:
        return self.static.shape[0]

    def at(self, t: float) -> np.ndarray:
        """Evaluate H(t)."""
        h = self.static.copy()
        for a, nu, beta in zip(self.terms, self.nus, self.betas):
            h += math.cos(nu * t + beta) * a
        return h


@dataclass(frozen=True)
class StepPolicy:
    """Fixed-step planning for the RK4 integrators.

    With ``dt`` unset, the step is chosen from two bounds: every frequency
    present in H(t) is resolved with at most ``max_phase_per_step`` radians
    of phase per step, and the accumulated fourth-order phase error over the
    whole span is kept below ``error_budget`` (estimated from the spectral
    scales of the Hamiltonian).  An explicit ``dt`` bypasses the accuracy
    bound but is still rejected when any carrier advances by more than 0.5
    rad per step, since the drive would be under-resolved.

    ``norm_tolerance`` is the allowed drift of the state norm (or density
    trace) over the run; set it to ``None`` for deliberately coarse
    convergence studies.
    """

    max_phase_per_step: float = 0.05
    error_budget: float = 1e-9
    dt: float | None = None
    norm_tolerance: float | None = 1e-8

    def plan(self, hamiltonian: HarmonicHamiltonian, duration: float,
             samples: int = 2) -> tuple[float, int, int]:
        """Return (dt, n_steps, store_every) for a run of length ``duration``.

        ``samples`` is the number of stored states including t = 0; the step
        count is rounded up so the samples fall exactly on step boundaries.
        """
        if duration <= 0.0:
            raise ValueError("duration must be positive")
        if samples < 2:
            raise ValueError("need at least two samples (initial and final)")
        omega_res = max(hamiltonian.carrier_scale, hamiltonian.dynamic_scale)
        if self.dt is not None:
            if self.dt <= 0.0:
                raise ValueError("dt must be positive")
            if omega_res * self.dt > 0.5:
                raise NumericalError(
                    "carrier under-resolution: omega_max * dt = "
                    f"{omega_res * self.dt:.3f} > 0.5; decrease dt below "
                    f"{0.5 / omega_res:.3e} s")
            dt = self.dt
        else:
            bounds = [duration / (samples - 1)]
            if omega_res > 0.0:
                bounds.append(self.max_phase_per_step / omega_res)
            density = hamiltonian.error_rate_density
            if density > 0.0:
                bounds.append((120.0 * self.error_budget / (duration * density)) ** 0.25)
            dt = min(bounds)
        chunks = samples - 1
        per_chunk = max(1, math.ceil(duration / (dt * chunks)))
        n_steps = per_chunk * chunks
        return duration / n_steps, n_steps, per_chunk


@dataclass(frozen=True, eq=False)
class Trajectory:
    """Time-ordered record of states from a single integration run.

    ``states`` has shape (n_times, dim) for state vectors or
    (n_times, dim, dim) for density matrices.
    """

    times: np.ndarray
    states: np.ndarray

    def __post_init__(self):
        times = np.asarray(self.times, dtype=float)
        states = np.asarray(self.states)
        if times.ndim != 1 or len(times) != len(states):
            raise ValueError("times and states must have matching leading length")
        if len(times) > 1 and not np.all(np.diff(times) > 0.0):
            raise ValueError("times must be strictly increasing")
        if states.ndim not in (2, 3):
            raise ValueError("states must be vectors or square matrices")
        if states.ndim == 3 and states.shape[1] != states.shape[2]:
            raise ValueError("matrix states must be square")
        object.__setattr__(self, "times", times)
        object.__setattr__(self, "states", states)

    def __len__(self) -> int:
        return len(self.times)

    @property
    def final(self) -> np.ndarray:
        return self.states[-1]


def integrate_schrodinger(hamiltonian: HarmonicHamiltonian, psi0: np.ndarray,
                          duration: float, policy: StepPolicy = StepPolicy(),
                          samples: int = 2) -> Trajectory:
    """Integrate i dpsi/dt = H(t) psi from t = 0 with the fixed-step RK4 rule.

    The initial state must be normalized.  After the run the stored norms
    are checked against ``policy.norm_tolerance``; a violation means the
    step was too coarse for the requested span and raises
    :class:`NumericalError`.
    """
    psi0 = np.asarray(psi0, dtype=complex)
    if psi0.ndim != 1 or psi0.shape[0] != hamiltonian.dim:
        raise ValueError("psi0 dimension does not match the Hamiltonian")
    norm = np.linalg.norm(psi0)
    if abs(norm - 1.0) > 1e-10:
        raise ValueError(f"psi0 must be normalized, |psi0| = {norm:.12f}")
    dt, n_steps, store_every = policy.plan(hamiltonian, duration, samples)
    times, states = _kernels.rk4_schrodinger(
        hamiltonian.static, hamiltonian.terms, hamiltonian.nus,
        hamiltonian.betas, psi0, dt, n_steps, store_every)
    if policy.norm_tolerance is not None:
        drift = float(np.abs(np.linalg.norm(states, axis=1) - 1.0).max())
        if drift > policy.norm_tolerance:
            raise NumericalError(
                f"norm drift {drift:.3e} exceeds {policy.norm_tolerance:.1e}; "
                f"step dt = {dt:.3e} s is too coarse for this span")
    return Trajectory(times, states)


def integrate_propagator(hamiltonian: HarmonicHamiltonian, duration: float,
                         policy: StepPolicy = StepPolicy()) -> np.ndarray:
    """Propagator U(duration) obtained by integrating the basis columns."""
    dim = hamiltonian.dim
    columns = []
    for k in range(dim):
        e = np.zeros(dim, dtype=complex)
        e[k] = 1.0
        columns.append(integrate_schrodinger(hamiltonian, e, duration, policy).final)
    return np.stack(columns, axis=1)
