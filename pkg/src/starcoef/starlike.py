"""Starlike functions f(z) = z + a_2 z^2 + ... from their Caratheodory generator.

A starlike f satisfies z f'(z) = p(z) f(z) for some p in P. Matching the
coefficient of z^m gives

    (m - 1) a_m = sum_{k=1}^{m-1} c_{m-k} a_k,    a_1 = 1,

which determines every a_m from c_1..c_{m-1}.
"""
from __future__ import annotations

import cmath
from dataclasses import dataclass
from typing import Optional

import numpy as np

from . import kernels
from .caratheodory import CaratheodoryCoefficients, HerglotzMeasure, measure_coefficients
from .series import TruncatedSeries, mul, z_times_derivative


@dataclass(frozen=True, eq=False)
class SchlichtCoefficients:
    """Coefficients a_2..a_N of a normalized starlike function (a_1 = 1).

    ``generator`` records the Caratheodory coefficients the values came
    from. Use :func:`coefficients_from_caratheodory` or
    :func:`koebe_coefficients` rather than constructing directly.
    """

    a: np.ndarray
    generator: Optional[CaratheodoryCoefficients] = None

    def __post_init__(self):
        a = np.array(self.a, dtype=complex).reshape(-1)
        a.flags.writeable = False
        object.__setattr__(self, "a", a)

    @property
    def order(self) -> int:
        return self.a.size + 1

    def __getitem__(self, m: int) -> complex:
        """``self[m]`` is a_m for 1 <= m <= order (a_1 = 1)."""
        if m == 1:
            return 1 + 0j
        if m < 1 or m > self.order:
            raise IndexError(f"a_{m} not available (order {self.order})")
        return complex(self.a[m - 2])

    def f_series(self) -> TruncatedSeries:
        """f(z) truncated at ``order``."""
        return TruncatedSeries(np.concatenate([[0.0, 1.0], self.a]))

    def __repr__(self):
        return f"SchlichtCoefficients(a={self.a.tolist()})"


def coefficients_from_caratheodory(c: CaratheodoryCoefficients, n: int) -> SchlichtCoefficients:
    """a_2..a_n from c_1..c_{n-1} via the z f' = p f recursion."""
    if n < 2:
        raise ValueError("order must be at least 2")
    if c.order < n - 1:
        raise ValueError(f"need c_1..c_{n - 1}, generator has order {c.order}")
    a = kernels.schlicht_coeffs(c.c[: n - 1], n)
    return SchlichtCoefficients(a[2:], generator=c)


def from_measure(m: HerglotzMeasure, n: int) -> SchlichtCoefficients:
    return coefficients_from_caratheodory(measure_coefficients(m, n - 1), n)


def closed_form_coefficients(c: CaratheodoryCoefficients) -> tuple[complex, complex, complex, complex]:
    """Explicit a_2..a_5 polynomials in c_1..c_4.

    Note the a_4 relation uses c_1**3 (the recursion's value), which the
    Koebe check 6*4 = 4 + 12 + 8 confirms.
    """
    if c.order < 4:
        raise ValueError("closed forms need c_1..c_4")
    return closed_form_array(*(c[k] for k in range(1, 5)))


def closed_form_array(c1, c2, c3, c4):
    """Closed forms on scalars or equal-shape arrays."""
    a2 = c1
    a3 = (c2 + c1 ** 2) / 2
    a4 = (2 * c3 + 3 * c2 * c1 + c1 ** 3) / 6
    a5 = (6 * c4 + 8 * c3 * c1 + 6 * c2 * c1 ** 2 + 3 * c2 ** 2 + c1 ** 4) / 24
    return a2, a3, a4, a5


def koebe_coefficients(theta: float, n: int) -> SchlichtCoefficients:
    """Rotated Koebe function e^{-i theta} k(e^{i theta} z), a_m = m e^{i(m-1) theta}."""
    if n < 2:
        raise ValueError("order must be at least 2")
    m = np.arange(2, n + 1)
    a = m * np.exp(1j * (m - 1) * theta)
    gen = CaratheodoryCoefficients(2.0 * np.exp(1j * np.arange(1, n) * theta))
    return SchlichtCoefficients(a, generator=gen)


def identity_coefficients(n: int) -> SchlichtCoefficients:
    """f(z) = z, generated by p = 1."""
    return coefficients_from_caratheodory(CaratheodoryCoefficients(np.zeros(n - 1)), n)


def residual(a: SchlichtCoefficients) -> float:
    """Max-norm of z f' - p f truncated at the order of ``a``."""
    if a.generator is None:
        raise ValueError("coefficients carry no generator")
    n = a.order
    f = a.f_series()
    p = TruncatedSeries.from_coeffs(np.concatenate([[1.0], a.generator.c]), n)
    return float(np.max(np.abs((z_times_derivative(f) - mul(p, f)).coeffs)))


def rotation_factor(m: int, shift: float) -> complex:
    """Factor picked up by a_m when every measure angle moves by ``shift``."""
    return cmath.exp(-1j * (m - 1) * shift)


def residual_array(c: np.ndarray, a: np.ndarray) -> np.ndarray:
    """Row-wise max |z f' - p f| for batches of c_1..c_N and a_0..a_N.

    ``c`` has shape (m, N) and ``a`` shape (m, >= N+1); only powers up to
    N are compared.
    """
    n = c.shape[1]
    a = a[:, : n + 1]
    p = np.concatenate([np.ones((c.shape[0], 1), dtype=complex), c], axis=1)
    worst = np.zeros(c.shape[0])
    for k in range(n + 1):
        pf = np.zeros(c.shape[0], dtype=complex)
        for j in range(k + 1):
            pf = pf + p[:, k - j] * a[:, j]
        worst = np.maximum(worst, np.abs(k * a[:, k] - pf))
    return worst
