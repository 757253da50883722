"""Truncated complex power series.

A :class:`TruncatedSeries` holds the coefficients of ``z**0 .. z**order``.
All arithmetic is performed modulo ``z**(order+1)``; nothing above ``order``
is ever read or written.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

import numpy as np

DEFAULT_ORDER = 6
DIVISION_FLOOR = 1e-12
DIVISION_RESIDUAL_TOL = 1e-10


class OrderMismatchError(ValueError):
    """Two series of different truncation order were combined."""


class SingularDivisionError(ZeroDivisionError):
    """Denominator constant term is (numerically) zero."""


class DivisionResidualError(ArithmeticError):
    """Back-substitution check ``q * den == num`` failed."""


@dataclass(frozen=True, eq=False)
class TruncatedSeries:
    """Complex Taylor coefficients up to a truncation order.

    ``coeffs[k]`` is the coefficient of ``z**k``. The array is stored
    read-only so instances can be shared freely.
    """

    coeffs: np.ndarray

    def __post_init__(self):
        arr = np.array(self.coeffs, dtype=complex).reshape(-1)
        if arr.size == 0:
            raise ValueError("a truncated series needs at least the constant term")
        arr.flags.writeable = False
        object.__setattr__(self, "coeffs", arr)

    @property
    def order(self) -> int:
        return self.coeffs.size - 1

    @classmethod
    def from_coeffs(cls, coeffs: Sequence[complex], order: int | None = None) -> "TruncatedSeries":
        """Build from a coefficient list, zero-padding or truncating to ``order``."""
        arr = np.asarray(coeffs, dtype=complex).reshape(-1)
        if order is None:
            return cls(arr)
        out = np.zeros(order + 1, dtype=complex)
        n = min(order + 1, arr.size)
        out[:n] = arr[:n]
        return cls(out)

    @classmethod
    def zero(cls, order: int = DEFAULT_ORDER) -> "TruncatedSeries":
        return cls(np.zeros(order + 1, dtype=complex))

    @classmethod
    def one(cls, order: int = DEFAULT_ORDER) -> "TruncatedSeries":
        out = np.zeros(order + 1, dtype=complex)
        out[0] = 1.0
        return cls(out)

    def __getitem__(self, k):
        return self.coeffs[k]

    def __len__(self) -> int:
        return self.coeffs.size

    def __add__(self, other):
        return add(self, other)

    def __sub__(self, other):
        return add(self, scale(other, -1.0))

    def __mul__(self, other):
        if isinstance(other, TruncatedSeries):
            return mul(self, other)
        return scale(self, other)

    __rmul__ = __mul__

    def __truediv__(self, other):
        return divide(self, other)

    def __call__(self, z):
        return evaluate(self, z)

    def __eq__(self, other):
        if not isinstance(other, TruncatedSeries):
            return NotImplemented
        return self.order == other.order and bool(np.array_equal(self.coeffs, other.coeffs))

    def __hash__(self):
        return hash(self.coeffs.tobytes())

    def allclose(self, other: "TruncatedSeries", atol: float = 1e-12) -> bool:
        _check_orders(self, other)
        return bool(np.max(np.abs(self.coeffs - other.coeffs)) <= atol)

    def __repr__(self):
        return f"TruncatedSeries(order={self.order}, coeffs={self.coeffs.tolist()})"


def _check_orders(a: TruncatedSeries, b: TruncatedSeries) -> None:
    if a.order != b.order:
        raise OrderMismatchError(f"order mismatch: {a.order} vs {b.order}")


def add(a: TruncatedSeries, b: TruncatedSeries) -> TruncatedSeries:
    _check_orders(a, b)
    return TruncatedSeries(a.coeffs + b.coeffs)


def scale(a: TruncatedSeries, alpha: complex) -> TruncatedSeries:
    return TruncatedSeries(alpha * a.coeffs)


def mul(a: TruncatedSeries, b: TruncatedSeries) -> TruncatedSeries:
    """Cauchy product truncated at the common order."""
    _check_orders(a, b)
    n = a.order + 1
    return TruncatedSeries(np.convolve(a.coeffs, b.coeffs)[:n])


def divide_with_residual(num: TruncatedSeries, den: TruncatedSeries,
                         floor: float = DIVISION_FLOOR) -> tuple[TruncatedSeries, float]:
    """Forward substitution for ``q`` with ``q * den == num``.

    Returns the quotient together with the residual of ``mul(q, den) - num``:
    coefficient ``k`` is divided by ``max(1, sum_j |q_j| |den_{k-j}|)``, the
    size of the terms that produced it.
    """
    _check_orders(num, den)
    d = den.coeffs
    if abs(d[0]) <= floor:
        raise SingularDivisionError(
            f"denominator constant term {d[0]!r} is below the floor {floor:g}")
    n = num.order + 1
    q = np.zeros(n, dtype=complex)
    for k in range(n):
        s = num.coeffs[k]
        for j in range(1, k + 1):
            s -= d[j] * q[k - j]
        q[k] = s / d[0]
    quotient = TruncatedSeries(q)
    back = mul(quotient, den).coeffs
    size = np.maximum(1.0, np.convolve(np.abs(q), np.abs(d))[:n])
    residual = float(np.max(np.abs(back - num.coeffs) / size))
    return quotient, residual


def divide(num: TruncatedSeries, den: TruncatedSeries,
           floor: float = DIVISION_FLOOR) -> TruncatedSeries:
    q, residual = divide_with_residual(num, den, floor)
    if residual > DIVISION_RESIDUAL_TOL:
        raise DivisionResidualError(
            f"division residual {residual:.3e} exceeds {DIVISION_RESIDUAL_TOL:g}")
    return q


def z_times_derivative(a: TruncatedSeries) -> TruncatedSeries:
    """Series of ``z * a'(z)``: coefficient ``k`` becomes ``k * a_k``."""
    return TruncatedSeries(np.arange(a.order + 1) * a.coeffs)


def evaluate(a: TruncatedSeries, z: complex) -> complex:
    """Horner evaluation of the truncated polynomial at ``z``."""
    acc = 0j
    for ck in a.coeffs[::-1]:
        acc = acc * z + ck
    return complex(acc)
