"""Compiled fixed-step integration loops.

Both kernels propagate under a Hamiltonian of the form

    H(t) = H0 + sum_k cos(nu_k * t + beta_k) * A_k

with Hermitian ``H0`` and ``A_k``.  Every Hamiltonian in this package
(constant, lab frame, interaction picture, full product space) is expressed
in this shape, which keeps the hot loop free of Python callbacks.

The stepper is the classical explicit fourth-order Runge-Kutta rule with a
fixed step, so repeated runs of the same configuration are bit-identical.
States are written out every ``store_every`` steps (the step count must be
a multiple of it); index 0 holds the initial condition.
"""

import numpy as np
from numba import njit


@njit(cache=True)
def _eval_hamiltonian(h0, terms, nus, betas, t, out):
    n = h0.shape[0]
    for i in range(n):
        for j in range(n):
            out[i, j] = h0[i, j]
    for k in range(terms.shape[0]):
        c = np.cos(nus[k] * t + betas[k])
        for i in range(n):
            for j in range(n):
                out[i, j] += c * terms[k, i, j]


@njit(cache=True)
def _matmul(a, b, out):
    n = a.shape[0]
    for i in range(n):
        for j in range(n):
            acc = 0.0 + 0.0j
            for k in range(n):
                acc += a[i, k] * b[k, j]
            out[i, j] = acc


@njit(cache=True)
def _schrodinger_rhs(h0, terms, nus, betas, t, psi, h_buf, out):
    _eval_hamiltonian(h0, terms, nus, betas, t, h_buf)
    n = psi.shape[0]
    for i in range(n):
        acc = 0.0 + 0.0j
        for j in range(n):
            acc += h_buf[i, j] * psi[j]
        out[i] = -1j * acc


@njit(cache=True)
def rk4_schrodinger(h0, terms, nus, betas, psi0, dt, n_steps, store_every):
    """Propagate a state vector; returns (times, states)."""
    n = psi0.shape[0]
    n_stored = n_steps // store_every + 1
    times = np.empty(n_stored)
    states = np.empty((n_stored, n), dtype=np.complex128)
    psi = psi0.copy()
    h_buf = np.empty((n, n), dtype=np.complex128)
    k1 = np.empty(n, dtype=np.complex128)
    k2 = np.empty(n, dtype=np.complex128)
    k3 = np.empty(n, dtype=np.complex128)
    k4 = np.empty(n, dtype=np.complex128)
    tmp = np.empty(n, dtype=np.complex128)
    times[0] = 0.0
    states[0] = psi
    idx = 1
    for s in range(n_steps):
        t = s * dt
        _schrodinger_rhs(h0, terms, nus, betas, t, psi, h_buf, k1)
        for i in range(n):
            tmp[i] = psi[i] + 0.5 * dt * k1[i]
        _schrodinger_rhs(h0, terms, nus, betas, t + 0.5 * dt, tmp, h_buf, k2)
        for i in range(n):
            tmp[i] = psi[i] + 0.5 * dt * k2[i]
        _schrodinger_rhs(h0, terms, nus, betas, t + 0.5 * dt, tmp, h_buf, k3)
        for i in range(n):
            tmp[i] = psi[i] + dt * k3[i]
        _schrodinger_rhs(h0, terms, nus, betas, t + dt, tmp, h_buf, k4)
        for i in range(n):
            psi[i] += dt / 6.0 * (k1[i] + 2.0 * k2[i] + 2.0 * k3[i] + k4[i])
        if (s + 1) % store_every == 0:
            times[idx] = (s + 1) * dt
            states[idx] = psi
            idx += 1
    return times, states


@njit(cache=True)
def _master_rhs(h0, terms, nus, betas, c_ops, rates, msum, t, rho, h_buf, t1, t2, out):
    """Master-equation right-hand side.

    drho = i(rho H - H rho) + sum_k rate_k * C_k rho C_k^dag - {msum, rho}
    where msum = sum_k (rate_k / 2) C_k^dag C_k  (precomputed by the caller).
    """
    n = rho.shape[0]
    _eval_hamiltonian(h0, terms, nus, betas, t, h_buf)
    _matmul(rho, h_buf, t1)
    _matmul(h_buf, rho, t2)
    for i in range(n):
        for j in range(n):
            out[i, j] = 1j * (t1[i, j] - t2[i, j])
    for k in range(c_ops.shape[0]):
        if rates[k] == 0.0:
            continue
        _matmul(c_ops[k], rho, t1)
        for i in range(n):
            for j in range(n):
                acc = 0.0 + 0.0j
                for m in range(n):
                    acc += t1[i, m] * np.conj(c_ops[k, j, m])
                out[i, j] += rates[k] * acc
    _matmul(msum, rho, t1)
    _matmul(rho, msum, t2)
    for i in range(n):
        for j in range(n):
            out[i, j] -= t1[i, j] + t2[i, j]


@njit(cache=True)
def rk4_master(h0, terms, nus, betas, c_ops, rates, rho0, dt, n_steps, store_every):
    """Propagate a density matrix; returns (times, states)."""
    n = rho0.shape[0]
    msum = np.zeros((n, n), dtype=np.complex128)
    tbuf = np.empty((n, n), dtype=np.complex128)
    for k in range(c_ops.shape[0]):
        cdag = np.conj(c_ops[k]).T.copy()
        _matmul(cdag, c_ops[k], tbuf)
        for i in range(n):
            for j in range(n):
                msum[i, j] += 0.5 * rates[k] * tbuf[i, j]
    n_stored = n_steps // store_every + 1
    times = np.empty(n_stored)
    states = np.empty((n_stored, n, n), dtype=np.complex128)
    rho = rho0.copy()
    h_buf = np.empty((n, n), dtype=np.complex128)
    t1 = np.empty((n, n), dtype=np.complex128)
    t2 = np.empty((n, n), dtype=np.complex128)
    k1 = np.empty((n, n), dtype=np.complex128)
    k2 = np.empty((n, n), dtype=np.complex128)
    k3 = np.empty((n, n), dtype=np.complex128)
    k4 = np.empty((n, n), dtype=np.complex128)
    tmp = np.empty((n, n), dtype=np.complex128)
    times[0] = 0.0
    states[0] = rho
    idx = 1
    for s in range(n_steps):
        t = s * dt
        _master_rhs(h0, terms, nus, betas, c_ops, rates, msum, t, rho, h_buf, t1, t2, k1)
        for i in range(n):
            for j in range(n):
                tmp[i, j] = rho[i, j] + 0.5 * dt * k1[i, j]
        _master_rhs(h0, terms, nus, betas, c_ops, rates, msum, t + 0.5 * dt, tmp, h_buf, t1, t2, k2)
        for i in range(n):
            for j in range(n):
                tmp[i, j] = rho[i, j] + 0.5 * dt * k2[i, j]
        _master_rhs(h0, terms, nus, betas, c_ops, rates, msum, t + 0.5 * dt, tmp, h_buf, t1, t2, k3)
        for i in range(n):
            for j in range(n):
                tmp[i, j] = rho[i, j] + dt * k3[i, j]
        _master_rhs(h0, terms, nus, betas, c_ops, rates, msum, t + dt, tmp, h_buf, t1, t2, k4)
        for i in range(n):
            for j in range(n):
                rho[i, j] += dt / 6.0 * (k1[i, j] + 2.0 * k2[i, j] + 2.0 * k3[i, j] + k4[i, j])
        if (s + 1) % store_every == 0:
            times[idx] = (s + 1) * dt
            states[idx] = rho
            idx += 1
    return times, states
