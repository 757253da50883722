"""Caratheodory-class functions built from finite atomic Herglotz measures.

A probability measure with atoms ``(w_j, t_j)`` on the unit circle generates

    p(z) = sum_j w_j (1 + z e^{-i t_j}) / (1 - z e^{-i t_j}),

which has ``p(0) = 1`` and positive real part in the disk. Its Taylor
coefficients are ``c_k = 2 sum_j w_j e^{-i k t_j}``.
"""
from __future__ import annotations

import json
import math
from dataclasses import dataclass
from typing import Sequence

import numpy as np

from . import kernels
from .series import TruncatedSeries, divide

TWO_PI = 2.0 * math.pi
WEIGHT_SUM_TOL = 1e-12
LEMMA21_SLACK = 1e-12


@dataclass(frozen=True, eq=False)
class HerglotzMeasure:
    """Finite atomic probability measure on the circle.

    Angles are reduced mod 2*pi on construction. Weights must be
    nonnegative and sum to one within 1e-12.
    """

    weights: np.ndarray
    angles: np.ndarray

    def __post_init__(self):
        w = np.array(self.weights, dtype=float).reshape(-1)
        t = np.array(self.angles, dtype=float).reshape(-1)
        if w.size == 0:
            raise ValueError("a measure needs at least one atom")
        if w.shape != t.shape:
            raise ValueError(f"{w.size} weights but {t.size} angles")
        if not (np.all(np.isfinite(w)) and np.all(np.isfinite(t))):
            raise ValueError("weights and angles must be finite")
        if np.any(w < 0):
            raise ValueError("weights must be nonnegative")
        if abs(w.sum() - 1.0) > WEIGHT_SUM_TOL:
            raise ValueError(f"weights sum to {w.sum()!r}, not 1")
        t = np.mod(t, TWO_PI)
        # mod can round up to exactly 2*pi for tiny negative inputs
        t[t >= TWO_PI] = 0.0
        w.flags.writeable = False
        t.flags.writeable = False
        object.__setattr__(self, "weights", w)
        object.__setattr__(self, "angles", t)

    @property
    def n_atoms(self) -> int:
        return self.weights.size

    @classmethod
    def single(cls, angle: float = 0.0) -> "HerglotzMeasure":
        return cls([1.0], [angle])

    @classmethod
    def from_unnormalized(cls, weights, angles) -> "HerglotzMeasure":
        w = np.asarray(weights, dtype=float)
        return cls(w / w.sum(), angles)

    def rotated(self, shift: float) -> "HerglotzMeasure":
        """Shift every atom angle by ``shift``."""
        return HerglotzMeasure(self.weights, self.angles + shift)

    def canonical(self, merge_tol: float = 1e-6) -> "HerglotzMeasure":
        """Canonical form: coincident atoms merged, heaviest atom rotated to angle 0.

        Atoms whose angles agree within ``merge_tol`` (on the circle) are
        the same point mass. Atoms are listed by decreasing weight.
        """
        order = np.argsort(-self.weights, kind="stable")
        w = list(self.weights[order])
        t = list(self.angles[order])
        mw: list[float] = []
        mt: list[float] = []
        for wi, ti in zip(w, t):
            for k, tk in enumerate(mt):
                d = abs(math.remainder(ti - tk, TWO_PI))
                if d <= merge_tol:
                    mw[k] += wi
                    break
            else:
                mw.append(wi)
                mt.append(ti)
        mw_arr = np.array(mw)
        mt_arr = np.array(mt)
        order = np.argsort(-mw_arr, kind="stable")
        mw_arr, mt_arr = mw_arr[order], mt_arr[order]
        mw_arr = mw_arr / mw_arr.sum()
        return HerglotzMeasure(mw_arr, mt_arr - mt_arr[0])

    def max_atom_mass(self, merge_tol: float = 1e-6) -> float:
        return float(self.canonical(merge_tol).weights[0])

    def p(self, z: complex) -> complex:
        """Evaluate p(z) in closed form."""
        u = np.exp(-1j * self.angles) * z
        return complex(np.sum(self.weights * (1 + u) / (1 - u)))

    def p_series(self, order: int) -> TruncatedSeries:
        c = measure_coefficients(self, order).c
        return TruncatedSeries(np.concatenate([[1.0 + 0j], c]))

    def to_dict(self) -> dict:
        return {"atoms": [{"w": float(w), "t": float(t)}
                          for w, t in zip(self.weights, self.angles)]}

    @classmethod
    def from_dict(cls, data: dict) -> "HerglotzMeasure":
        atoms = data["atoms"]
        return cls([a["w"] for a in atoms], [a["t"] for a in atoms])

    def to_json(self) -> str:
        return json.dumps(self.to_dict())

    @classmethod
    def from_json(cls, text: str) -> "HerglotzMeasure":
        return cls.from_dict(json.loads(text))

    def __eq__(self, other):
        if not isinstance(other, HerglotzMeasure):
            return NotImplemented
        return (np.array_equal(self.weights, other.weights)
                and np.array_equal(self.angles, other.angles))

    def __hash__(self):
        return hash((self.weights.tobytes(), self.angles.tobytes()))

    def __repr__(self):
        return f"HerglotzMeasure(weights={self.weights.tolist()}, angles={self.angles.tolist()})"


@dataclass(frozen=True, eq=False)
class CaratheodoryCoefficients:
    """Coefficients c_1..c_N of some p in P (c_0 = 1 is implicit)."""

    c: np.ndarray

    def __post_init__(self):
        c = np.array(self.c, dtype=complex).reshape(-1)
        if c.size and np.max(np.abs(c)) > 2.0 + LEMMA21_SLACK:
            raise ValueError(f"|c_k| <= 2 violated: max |c_k| = {np.max(np.abs(c))!r}")
        c.flags.writeable = False
        object.__setattr__(self, "c", c)

    @property
    def order(self) -> int:
        return self.c.size

    def __getitem__(self, k: int) -> complex:
        """1-based access: ``self[k]`` is c_k, ``self[0]`` is 1."""
        if k == 0:
            return 1 + 0j
        if k < 0 or k > self.order:
            raise IndexError(f"c_{k} not available (order {self.order})")
        return complex(self.c[k - 1])

    def __repr__(self):
        return f"CaratheodoryCoefficients(c={self.c.tolist()})"


def measure_coefficients(m: HerglotzMeasure, n: int) -> CaratheodoryCoefficients:
    if n < 1:
        raise ValueError("order must be at least 1")
    return CaratheodoryCoefficients(kernels.caratheodory_coeffs(m.weights, m.angles, n))


def moebius_coefficients(n: int) -> CaratheodoryCoefficients:
    """Coefficients of (1+z)/(1-z): all equal to 2."""
    if n < 1:
        raise ValueError("order must be at least 1")
    return CaratheodoryCoefficients(np.full(n, 2.0 + 0j))


def lemma22_extremal(c1: complex, eps: complex, n: int) -> TruncatedSeries:
    """Expand the rational function attaining |c2 - c1^2/2| = 2 - |c1|^2/2.

    p(z) = (1 + (c1 + eps conj(c1))/2 z + eps z^2) / (1 - (c1 - eps conj(c1))/2 z - eps z^2)
    with |eps| = 1 and |c1| <= 2, truncated at order ``n``.
    """
    c1 = complex(c1)
    eps = complex(eps)
    if n < 2:
        raise ValueError("order must be at least 2")
    if abs(abs(eps) - 1.0) > 1e-12:
        raise ValueError(f"|eps| must be 1, got {abs(eps)!r}")
    if abs(c1) > 2.0 + LEMMA21_SLACK:
        raise ValueError(f"|c1| must be at most 2, got {abs(c1)!r}")
    cb = c1.conjugate()
    num = TruncatedSeries.from_coeffs([1.0, 0.5 * (c1 + eps * cb), eps], n)
    den = TruncatedSeries.from_coeffs([1.0, -0.5 * (c1 - eps * cb), -eps], n)
    p = divide(num, den)
    if abs(p[1] - c1) > 1e-10:
        raise ArithmeticError(f"linear coefficient {p[1]!r} does not reproduce c1={c1!r}")
    return p


def sample_measure(seed: int, n_atoms: int) -> HerglotzMeasure:
    """Flat-Dirichlet weights and uniform angles, deterministic in ``seed``."""
    if n_atoms < 1:
        raise ValueError("n_atoms must be positive")
    rng = np.random.default_rng(seed)
    w = rng.dirichlet(np.ones(n_atoms))
    t = rng.uniform(0.0, TWO_PI, n_atoms)
    return HerglotzMeasure.from_unnormalized(w, t)


def sample_measure_batch(seed: int, count: int, max_atoms: int,
                         vary_atoms: bool = True) -> tuple[np.ndarray, np.ndarray]:
    """Batch of random measures as zero-padded ``(count, max_atoms)`` arrays.

    With ``vary_atoms`` each row draws its atom count uniformly from
    ``1..max_atoms``; padding atoms carry zero weight.
    """
    if max_atoms < 1:
        raise ValueError("max_atoms must be positive")
    rng = np.random.default_rng(seed)
    e = rng.exponential(size=(count, max_atoms))
    t = rng.uniform(0.0, TWO_PI, size=(count, max_atoms))
    if vary_atoms:
        k = rng.integers(1, max_atoms + 1, size=count)
        e[np.arange(max_atoms)[None, :] >= k[:, None]] = 0.0
    w = e / e.sum(axis=1, keepdims=True)
    return w, t


def measure_from_row(weights: Sequence[float], angles: Sequence[float]) -> HerglotzMeasure:
    """Drop zero-weight padding atoms from a batch row."""
    w = np.asarray(weights, dtype=float)
    t = np.asarray(angles, dtype=float)
    keep = w > 0
    return HerglotzMeasure.from_unnormalized(w[keep], t[keep])


def check_positive_real_part(m: HerglotzMeasure, radius: float,
                             grid: int = 360) -> tuple[bool, float]:
    """Minimum of Re p on ``grid`` equally spaced points of |z| = radius.

    ``radius = 0`` is accepted and returns Re p(0) = 1.
    """
    if not 0.0 <= radius < 1.0:
        raise ValueError("radius must lie in [0, 1)")
    if grid < 1:
        raise ValueError("grid must be positive")
    theta = np.arange(grid) * (TWO_PI / grid)
    z = radius * np.exp(1j * theta)
    u = np.exp(-1j * m.angles)[None, :] * z[:, None]
    vals = np.sum(m.weights[None, :] * (1 + u) / (1 - u), axis=1)
    min_re = float(np.min(vals.real))
    return min_re > 0.0, min_re
