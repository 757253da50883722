# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled hot kernels: measure -> c -> a -> functional value.

Same public names and semantics as ``_kernels_py``.
"""
import numpy as np
cimport numpy as cnp
from libc.math cimport cos, sin, sqrt

cnp.import_array()

BACKEND = "cython"

cdef enum:
    MAXN = 64


cdef inline double _cabs(double complex z) nogil:
    return sqrt(z.real * z.real + z.imag * z.imag)


cdef void _measure_c(const double* w, const double* t, Py_ssize_t n_atoms,
                     int order, double complex* out) nogil:
    cdef Py_ssize_t j
    cdef int k
    cdef double complex u, z
    for k in range(order):
        out[k] = 0
    for j in range(n_atoms):
        u = cos(t[j]) - 1j * sin(t[j])
        z = u
        for k in range(order):
            out[k] = out[k] + 2.0 * w[j] * z
            z = z * u


cdef void _recursion(const double complex* c, int n, double complex* a) nogil:
    cdef int m, k
    cdef double complex s
    a[0] = 0
    a[1] = 1
    for m in range(2, n + 1):
        s = 0
        for k in range(1, m):
            s = s + c[m - k - 1] * a[k]
        a[m] = s / (m - 1)


cdef double complex _combine(int kind, double p0, double p1, double complex a2,
                             double complex a3, double complex a4,
                             double complex a5) nogil:
    if kind == 0:
        return a4 - p0 * a2 * a3
    if kind == 1:
        return a4 - p0 * a2 * a3 - p1 * a2 * a2 * a2
    if kind == 2:
        return a5 - p0 * a2 * a2 * a3
    if kind == 3:
        return a5 - p0 * a2 * a4 - p1 * a3 * a3
    return a3 - p0 * a2 * a2


cdef double _value(int kind, double p0, double p1, const double* w,
                   const double* t, Py_ssize_t n_atoms) nogil:
    cdef double complex c[4]
    cdef double complex a[6]
    _measure_c(w, t, n_atoms, 4, c)
    _recursion(c, 5, a)
    return _cabs(_combine(kind, p0, p1, a[2], a[3], a[4], a[5]))


def _check_kind(int kind):
    if kind < 0 or kind > 4:
        raise ValueError(f"unknown functional kind code {kind}")


def caratheodory_coeffs(weights, angles, int order):
    """Return c_1..c_order of the atomic Herglotz measure (w_j, t_j)."""
    cdef const double[::1] w = np.ascontiguousarray(weights, dtype=np.float64)
    cdef const double[::1] t = np.ascontiguousarray(angles, dtype=np.float64)
    out = np.empty(order, dtype=np.complex128)
    cdef double complex[::1] o = out
    if order > 0:
        _measure_c(&w[0], &t[0], w.shape[0], order, &o[0])
    return out


def schlicht_coeffs(c, int n):
    """Solve (m-1) a_m = sum_{k<m} c_{m-k} a_k; returns a_0..a_n with a_0=0, a_1=1."""
    cdef const double complex[::1] cv = np.ascontiguousarray(c, dtype=np.complex128)
    if cv.shape[0] < n - 1:
        raise ValueError(
            f"need at least {n - 1} Caratheodory coefficients, got {cv.shape[0]}")
    out = np.empty(n + 1, dtype=np.complex128)
    cdef double complex[::1] o = out
    cdef double complex dummy = 0
    if cv.shape[0] == 0:
        _recursion(&dummy, n, &o[0])
    else:
        _recursion(&cv[0], n, &o[0])
    return out


def combine(int kind, double p0, double p1, a2, a3, a4, a5):
    _check_kind(kind)
    if kind == 0:
        return a4 - p0 * a2 * a3
    if kind == 1:
        return a4 - p0 * a2 * a3 - p1 * a2 * a2 * a2
    if kind == 2:
        return a5 - p0 * a2 * a2 * a3
    if kind == 3:
        return a5 - p0 * a2 * a4 - p1 * a3 * a3
    return a3 - p0 * a2 * a2


def functional_value(int kind, double p0, double p1, weights, angles):
    _check_kind(kind)
    cdef const double[::1] w = np.ascontiguousarray(weights, dtype=np.float64)
    cdef const double[::1] t = np.ascontiguousarray(angles, dtype=np.float64)
    return _value(kind, p0, p1, &w[0], &t[0], w.shape[0])


def objective(const double[::1] x, int n_atoms, int kind, double p0, double p1):
    """Negated functional value at unconstrained point x = (u_1..u_n, t_1..t_n).

    Weights are u_j**2 / sum(u**2).
    """
    cdef double w[MAXN]
    cdef double s = 0.0
    cdef int j
    if n_atoms > MAXN:
        raise ValueError(f"at most {MAXN} atoms supported by the compiled kernel")
    for j in range(n_atoms):
        s += x[j] * x[j]
    if s == 0.0:
        return 0.0
    for j in range(n_atoms):
        w[j] = x[j] * x[j] / s
    return -_value(kind, p0, p1, w, &x[n_atoms], n_atoms)


def batch_coeffs(weights, angles, int order):
    """Vectorized c and a for a batch of measures (rows; zero-weight padding allowed).

    Returns (c, a): c has shape (m, order) holding c_1..c_order, a has shape
    (m, order + 2) holding a_0..a_{order+1}.
    """
    cdef const double[:, ::1] W = np.ascontiguousarray(weights, dtype=np.float64)
    cdef const double[:, ::1] T = np.ascontiguousarray(angles, dtype=np.float64)
    cdef Py_ssize_t m = W.shape[0], n_atoms = W.shape[1], i
    c = np.empty((m, order), dtype=np.complex128)
    a = np.empty((m, order + 2), dtype=np.complex128)
    cdef double complex[:, ::1] cv = c
    cdef double complex[:, ::1] av = a
    with nogil:
        for i in range(m):
            _measure_c(&W[i, 0], &T[i, 0], n_atoms, order, &cv[i, 0])
            _recursion(&cv[i, 0], order + 1, &av[i, 0])
    return c, a


def batch_functional(weights, angles, int kind, double p0, double p1):
    _check_kind(kind)
    cdef const double[:, ::1] W = np.ascontiguousarray(weights, dtype=np.float64)
    cdef const double[:, ::1] T = np.ascontiguousarray(angles, dtype=np.float64)
    cdef Py_ssize_t m = W.shape[0], n_atoms = W.shape[1], i
    out = np.empty(m, dtype=np.float64)
    cdef double[::1] o = out
    with nogil:
        for i in range(m):
            o[i] = _value(kind, p0, p1, &W[i, 0], &T[i, 0], n_atoms)
    return out
