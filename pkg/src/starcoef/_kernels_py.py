"""Pure-Python/numpy fallback for the hot kernels.

Mirrors the public names of the compiled ``_kernels`` extension one for one.
Kind codes: 0 a4-gamma, 1 a4-gamma-eta, 2 a5-mu, 3 a5-xi-zeta, 4 fekete-szego.
"""
import math

import numpy as np

BACKEND = "python"


def caratheodory_coeffs(weights, angles, order):
    """Return c_1..c_order of the atomic Herglotz measure (w_j, t_j)."""
    out = [0j] * order
    for w, t in zip(weights, angles):
        u = complex(math.cos(t), -math.sin(t))
        z = u
        for k in range(order):
            out[k] += 2.0 * w * z
            z *= u
    return np.array(out, dtype=complex)


def schlicht_coeffs(c, n):
    """Solve (m-1) a_m = sum_{k<m} c_{m-k} a_k; returns a_0..a_n with a_0=0, a_1=1."""
    c = list(c)
    if len(c) < n - 1:
        raise ValueError(f"need at least {n - 1} Caratheodory coefficients, got {len(c)}")
    a = [0j] * (n + 1)
    a[1] = 1 + 0j
    for m in range(2, n + 1):
        s = 0j
        for k in range(1, m):
            s += c[m - k - 1] * a[k]
        a[m] = s / (m - 1)
    return np.array(a, dtype=complex)


def combine(kind, p0, p1, a2, a3, a4, a5):
    if kind == 0:
        return a4 - p0 * a2 * a3
    if kind == 1:
        return a4 - p0 * a2 * a3 - p1 * a2 * a2 * a2
    if kind == 2:
        return a5 - p0 * a2 * a2 * a3
    if kind == 3:
        return a5 - p0 * a2 * a4 - p1 * a3 * a3
    if kind == 4:
        return a3 - p0 * a2 * a2
    raise ValueError(f"unknown functional kind code {kind}")


def functional_value(kind, p0, p1, weights, angles):
    c = caratheodory_coeffs(weights, angles, 4)
    a = schlicht_coeffs(c, 5)
    return abs(combine(kind, p0, p1, a[2], a[3], a[4], a[5]))


def objective(x, n_atoms, kind, p0, p1):
    """Negated functional value at unconstrained point x = (u_1..u_n, t_1..t_n).

    Weights are u_j**2 / sum(u**2).
    """
    u = x[:n_atoms]
    s = 0.0
    for v in u:
        s += v * v
    if s == 0.0:
        return 0.0
    w = [v * v / s for v in u]
    return -functional_value(kind, p0, p1, w, x[n_atoms:2 * n_atoms])


def batch_coeffs(weights, angles, order):
    """Vectorized c and a for a batch of measures (rows; zero-weight padding allowed).

    Returns (c, a): c has shape (m, order) holding c_1..c_order, a has shape
    (m, order + 2) holding a_0..a_{order+1}.
    """
    weights = np.asarray(weights, dtype=float)
    angles = np.asarray(angles, dtype=float)
    u = np.cos(angles) - 1j * np.sin(angles)
    m = weights.shape[0]
    c = np.empty((m, order), dtype=complex)
    z = u.copy()
    for k in range(order):
        c[:, k] = 2.0 * np.sum(weights * z, axis=1)
        z = z * u
    n = order + 1
    a = np.zeros((m, n + 1), dtype=complex)
    a[:, 1] = 1.0
    for mm in range(2, n + 1):
        s = np.zeros(m, dtype=complex)
        for k in range(1, mm):
            s = s + c[:, mm - k - 1] * a[:, k]
        a[:, mm] = s / (mm - 1)
    return c, a


def batch_functional(weights, angles, kind, p0, p1):
    _, a = batch_coeffs(weights, angles, 4)
    return np.abs(combine(kind, p0, p1, a[:, 2], a[:, 3], a[:, 4], a[:, 5]))
