"""Coefficient functionals of starlike functions and their sharp bounds.

Five functionals are supported::

    A4_GAMMA      |a4 - gamma a2 a3|
    A4_GAMMA_ETA  |a4 - gamma a2 a3 - eta a2^3|
    A5_MU         |a5 - mu a2^2 a3|
    A5_XI_ZETA    |a5 - xi a2 a4 - zeta a3^2|
    FEKETE_SZEGO  |a3 - lambda a2^2|

For the first four, ``theorem_bound`` gives the Koebe value as an upper
bound under sign conditions on the parameters. Each functional can also be
written in terms of c_1..c_4 as ``lead + factor * pre * c1^k * {c2 + A c1^2/2}``;
``decomposition_rhs`` evaluates that form and ``elimination_bound_step``
the worst case of the curly bracket after eliminating c2.
"""
from __future__ import annotations

import enum
import json
import math
from dataclasses import dataclass, field
from typing import Callable, Mapping

import numpy as np

from . import kernels
from .caratheodory import CaratheodoryCoefficients
from .starlike import SchlichtCoefficients


class UnsupportedBoundError(ValueError):
    """No closed-form bound is known for this functional."""


class DegenerateFactorError(ValueError):
    """The leading factor of the bracket decomposition vanishes."""


class FunctionalKind(enum.Enum):
    A4_GAMMA = "a4-gamma"
    A4_GAMMA_ETA = "a4-gamma-eta"
    A5_MU = "a5-mu"
    A5_XI_ZETA = "a5-xi-zeta"
    FEKETE_SZEGO = "fekete-szego"

    @property
    def param_names(self) -> tuple[str, ...]:
        return _PARAMS[self]

    @property
    def code(self) -> int:
        return _CODES[self]

    @property
    def min_order(self) -> int:
        """Highest coefficient index the functional reads."""
        return 3 if self is FunctionalKind.FEKETE_SZEGO else int(self.value[1])

    @classmethod
    def parse(cls, text: str) -> "FunctionalKind":
        """Accept either the enum name or the dashed slug."""
        try:
            return cls[text]
        except KeyError:
            return cls(text)


_PARAMS = {
    FunctionalKind.A4_GAMMA: ("gamma",),
    FunctionalKind.A4_GAMMA_ETA: ("gamma", "eta"),
    FunctionalKind.A5_MU: ("mu",),
    FunctionalKind.A5_XI_ZETA: ("xi", "zeta"),
    FunctionalKind.FEKETE_SZEGO: ("lambda",),
}
_CODES = {k: i for i, k in enumerate(FunctionalKind)}

THEOREM_KINDS = (
    FunctionalKind.A4_GAMMA,
    FunctionalKind.A4_GAMMA_ETA,
    FunctionalKind.A5_MU,
    FunctionalKind.A5_XI_ZETA,
)


@dataclass(frozen=True)
class FunctionalSpec:
    kind: FunctionalKind
    params: Mapping[str, float] = field(default_factory=dict)

    def __post_init__(self):
        kind = self.kind if isinstance(self.kind, FunctionalKind) else FunctionalKind.parse(self.kind)
        names = kind.param_names
        params = dict(self.params)
        missing = [n for n in names if n not in params]
        extra = [n for n in params if n not in names]
        if missing or extra:
            raise ValueError(f"{kind.name} takes parameters {names}; "
                             f"missing {missing}, unexpected {extra}")
        clean = {}
        for n in names:
            v = float(params[n])
            if not math.isfinite(v):
                raise ValueError(f"parameter {n} must be finite, got {v!r}")
            clean[n] = v
        object.__setattr__(self, "kind", kind)
        object.__setattr__(self, "params", clean)

    @classmethod
    def a4_gamma(cls, gamma):
        return cls(FunctionalKind.A4_GAMMA, {"gamma": gamma})

    @classmethod
    def a4_gamma_eta(cls, gamma, eta):
        return cls(FunctionalKind.A4_GAMMA_ETA, {"gamma": gamma, "eta": eta})

    @classmethod
    def a5_mu(cls, mu):
        return cls(FunctionalKind.A5_MU, {"mu": mu})

    @classmethod
    def a5_xi_zeta(cls, xi, zeta):
        return cls(FunctionalKind.A5_XI_ZETA, {"xi": xi, "zeta": zeta})

    @classmethod
    def fekete_szego(cls, lam):
        return cls(FunctionalKind.FEKETE_SZEGO, {"lambda": lam})

    @property
    def values(self) -> tuple[float, float]:
        """Parameters as the (p0, p1) pair used by the kernels."""
        v = [self.params[n] for n in self.kind.param_names]
        return (v[0], v[1] if len(v) > 1 else 0.0)

    def __hash__(self):
        return hash((self.kind, tuple(sorted(self.params.items()))))

    def to_dict(self) -> dict:
        return {"kind": self.kind.name, "params": dict(self.params)}

    @classmethod
    def from_dict(cls, data: Mapping) -> "FunctionalSpec":
        return cls(FunctionalKind.parse(data["kind"]), data.get("params", {}))

    def to_json(self) -> str:
        return json.dumps(self.to_dict())

    def label(self) -> str:
        inner = ", ".join(f"{k}={v!r}" for k, v in self.params.items())
        return f"{self.kind.value}({inner})"


@dataclass(frozen=True)
class BoundReport:
    spec: FunctionalSpec
    bound: float | None
    conditions_met: list[tuple[str, bool]]
    notes: str = ""

    def __post_init__(self):
        ok = all(flag for _, flag in self.conditions_met)
        if ok != (self.bound is not None):
            raise ValueError("bound must be present exactly when every condition holds")
        if self.bound is not None and self.bound < 0:
            raise ValueError(f"negative bound {self.bound!r}")

    @property
    def holds(self) -> bool:
        return self.bound is not None

    def failing(self) -> list[str]:
        return [name for name, flag in self.conditions_met if not flag]

    def to_dict(self) -> dict:
        return {
            "spec": self.spec.to_dict(),
            "bound": self.bound,
            "conditions_met": {name: flag for name, flag in self.conditions_met},
            "notes": self.notes,
        }


# ---------------------------------------------------------------------------
# evaluation

def evaluate(a: SchlichtCoefficients, spec: FunctionalSpec) -> float:
    need = spec.kind.min_order
    if a.order < need:
        raise ValueError(f"{spec.kind.name} needs a_2..a_{need}, got order {a.order}")
    coef = [a[m] if m <= a.order else 0j for m in range(2, 6)]
    p0, p1 = spec.values
    return float(abs(kernels.combine(spec.kind.code, p0, p1, *coef)))


def evaluate_array(a: np.ndarray, spec: FunctionalSpec) -> np.ndarray:
    """Vectorized :func:`evaluate` over rows of a_0..a_n (n >= 5)."""
    p0, p1 = spec.values
    return np.abs(kernels.combine(spec.kind.code, p0, p1, a[:, 2], a[:, 3], a[:, 4], a[:, 5]))


def evaluate_koebe(spec: FunctionalSpec) -> float:
    """Functional value at k(z) = z/(1-z)^2, a_m = m (exact float arithmetic)."""
    p0, p1 = spec.values
    return float(abs(kernels.combine(spec.kind.code, p0, p1, 2.0, 3.0, 4.0, 5.0)))


# ---------------------------------------------------------------------------
# conditions and bounds

def _conditions(spec: FunctionalSpec) -> list[tuple[str, Callable[[], bool]]]:
    p = spec.params
    k = spec.kind
    if k is FunctionalKind.A4_GAMMA:
        g = p["gamma"]
        return [("1-gamma>=0", lambda: 1 - g >= 0), ("gamma<=5/9", lambda: g <= 5 / 9)]
    if k is FunctionalKind.A4_GAMMA_ETA:
        g, e = p["gamma"], p["eta"]
        return [("1-gamma>=0", lambda: 1 - g >= 0),
                ("3gamma+4eta<=5/3", lambda: 3 * g + 4 * e <= 5 / 3)]
    if k is FunctionalKind.A5_MU:
        m = p["mu"]
        return [("1-2mu>=0", lambda: 1 - 2 * m >= 0), ("mu<=2/9", lambda: m <= 2 / 9)]
    if k is FunctionalKind.A5_XI_ZETA:
        x, z = p["xi"], p["zeta"]
        return [("1-xi>=0", lambda: 1 - x >= 0),
                ("1-2zeta>=0", lambda: 1 - 2 * z >= 0),
                ("1-2xi-2zeta>=0", lambda: 1 - 2 * x - 2 * z >= 0),
                ("derived-xi-zeta", lambda: 5 * x + 6 * z <= 2)]
    raise UnsupportedBoundError(f"no closed-form bound for {k.name}")


def _koebe_bound(spec: FunctionalSpec) -> float:
    p = spec.params
    k = spec.kind
    if k is FunctionalKind.A4_GAMMA:
        return 4 - 6 * p["gamma"]
    if k is FunctionalKind.A4_GAMMA_ETA:
        return 4 - 6 * p["gamma"] - 8 * p["eta"]
    if k is FunctionalKind.A5_MU:
        return 5 - 12 * p["mu"]
    return 5 - 8 * p["xi"] - 9 * p["zeta"]


def theorem_bound(spec: FunctionalSpec) -> BoundReport:
    """Closed-form upper bound with its per-condition verdicts.

    The A5_XI_ZETA condition ``derived-xi-zeta`` is 5 xi + 6 zeta <= 2,
    obtained by requiring 1 + A >= 0 in the bracket of its decomposition.
    """
    conds = [(name, bool(pred())) for name, pred in _conditions(spec)]
    if all(ok for _, ok in conds):
        return BoundReport(spec, _koebe_bound(spec), conds)
    failing = ", ".join(name for name, ok in conds if not ok)
    return BoundReport(spec, None, conds, notes=f"conditions fail: {failing}")


# ---------------------------------------------------------------------------
# c-space decompositions

def _bracket_parts(spec: FunctionalSpec):
    """Return (lead_fn, factor, power_of_c1, prefactor, A_num, A_den).

    The functional equals ``lead(c) + factor * prefactor * c1**power *
    {c2 + (A_num / A_den) c1^2 / 2}``; the expanded form replaces the
    bracket by ``c2 + A_num/A_den * c1^2/2`` multiplied through, which
    stays finite when ``A_den`` (a multiple of ``factor``) vanishes.
    """
    p = spec.params
    k = spec.kind
    if k is FunctionalKind.A4_GAMMA:
        g = p["gamma"]
        return (lambda c1, c2, c3, c4: c3 / 3, 1 - g, 1, 0.5, 2 * (1 - 3 * g), 3 * (1 - g))
    if k is FunctionalKind.A4_GAMMA_ETA:
        g, e = p["gamma"], p["eta"]
        return (lambda c1, c2, c3, c4: c3 / 3, 1 - g, 1, 0.5,
                2 * (1 - 3 * g - 6 * e), 3 * (1 - g))
    if k is FunctionalKind.A5_MU:
        m = p["mu"]
        return (lambda c1, c2, c3, c4: c4 / 4 + c3 * c1 / 3 + c2 * c2 / 8,
                1 - 2 * m, 2, 0.25, 1 - 12 * m, 3 * (1 - 2 * m))
    if k is FunctionalKind.A5_XI_ZETA:
        x, z = p["xi"], p["zeta"]
        return (lambda c1, c2, c3, c4: c4 / 4 + (1 - x) * c3 * c1 / 3 + (1 - 2 * z) * c2 * c2 / 8,
                1 - 2 * x - 2 * z, 2, 0.25, 1 - 4 * x - 6 * z, 3 * (1 - 2 * x - 2 * z))
    lam = p["lambda"]
    return (lambda c1, c2, c3, c4: 0 * c1, 1.0, 0, 0.5, 2 * (1 - 2 * lam), 1.0)


def decomposition_parts(c1, c2, c3, c4, spec: FunctionalSpec):
    """Complex right-hand side in c_1..c_4 (scalars or arrays)."""
    lead, factor, power, pre, a_num, a_den = _bracket_parts(spec)
    c1p = c1 ** power
    if factor != 0:
        bracket = c2 + (a_num / a_den) * c1 * c1 / 2
        return lead(c1, c2, c3, c4) + factor * pre * c1p * bracket
    # expanded: factor*A = a_num * factor / a_den = a_num / 3
    return lead(c1, c2, c3, c4) + pre * c1p * (factor * c2 + (a_num / 3) * c1 * c1 / 2)


def decomposition_rhs(c: CaratheodoryCoefficients, spec: FunctionalSpec) -> complex:
    need = 2 if spec.kind is FunctionalKind.FEKETE_SZEGO else 4
    if c.order < need:
        raise ValueError(f"decomposition needs c_1..c_{need}, got order {c.order}")
    cs = [c[k] if k <= c.order else 0j for k in range(1, 5)]
    return complex(decomposition_parts(*cs, spec))


def elimination_factor(spec: FunctionalSpec) -> float:
    """The fraction A in the bracket {c2 + A c1^2/2}."""
    _, factor, _, _, a_num, a_den = _bracket_parts(spec)
    if factor == 0:
        raise DegenerateFactorError(f"leading factor vanishes for {spec.label()}")
    return a_num / a_den


def _check_nonnegativity(spec: FunctionalSpec) -> None:
    if spec.kind is FunctionalKind.FEKETE_SZEGO:
        return
    per_functional = {"gamma<=5/9", "3gamma+4eta<=5/3", "mu<=2/9", "derived-xi-zeta"}
    bad = [n for n, pred in _conditions(spec) if n not in per_functional and not pred()]
    if bad:
        raise ValueError(f"nonnegativity conditions fail for {spec.label()}: {bad}")


def elimination_bound_step(c1_modulus: float, spec: FunctionalSpec) -> float:
    """Worst case of |c2 + A c1^2/2| once c2 = c1^2/2 + eps (2 - |c1|^2/2) is substituted.

    Equals |1 + A| |c1|^2/2 + 2 - |c1|^2/2.
    """
    x = float(c1_modulus)
    if not 0.0 <= x <= 2.0:
        raise ValueError(f"|c1| must lie in [0, 2], got {x!r}")
    _check_nonnegativity(spec)
    A = elimination_factor(spec)
    return abs(1 + A) * x * x / 2 + (2 - x * x / 2)


def chained_majorant(spec: FunctionalSpec) -> float:
    """Triangle-inequality bound: |c_k| <= 2 on the lead terms plus the bracket step at |c1| = 2."""
    _check_nonnegativity(spec)
    step = elimination_bound_step(2.0, spec)
    k = spec.kind
    p = spec.params
    if k in (FunctionalKind.A4_GAMMA, FunctionalKind.A4_GAMMA_ETA):
        return 2 / 3 + (1 - p["gamma"]) * 1.0 * step
    if k is FunctionalKind.A5_MU:
        return 0.5 + 4 / 3 + 0.5 + (1 - 2 * p["mu"]) * 1.0 * step
    if k is FunctionalKind.A5_XI_ZETA:
        x, z = p["xi"], p["zeta"]
        return 0.5 + (1 - x) * 4 / 3 + (1 - 2 * z) * 0.5 + (1 - 2 * x - 2 * z) * step
    return 0.5 * step
