"""Multistart Nelder-Mead search for the supremum of a functional over S*.

A point of the search space is ``x = (u_1..u_n, t_1..t_n)``: weights
``u_j**2 / sum(u**2)`` and raw angles. Restart ``r`` draws its start from
``default_rng([seed, r])``, so results for the first ``R`` restarts do not
depend on how many restarts are run in total.
"""
from __future__ import annotations

import csv
import io
import itertools
import json
import math
from dataclasses import dataclass, field
from typing import Iterable, Mapping, Sequence

import numpy as np
from scipy.optimize import minimize

from . import kernels
from .caratheodory import TWO_PI, HerglotzMeasure
from .functionals import (
    FunctionalKind,
    FunctionalSpec,
    UnsupportedBoundError,
    evaluate,
    theorem_bound,
)
from .starlike import from_measure

VALUE_CONSISTENCY_TOL = 1e-12


@dataclass(frozen=True)
class SearchConfig:
    n_atoms: int = 4
    restarts: int = 50
    max_iters: int = 2000
    tol: float = 1e-10
    seed: int = 0

    def __post_init__(self):
        if self.n_atoms < 1:
            raise ValueError("n_atoms must be at least 1")
        if self.restarts < 1:
            raise ValueError("restarts must be at least 1")
        if self.max_iters < 1:
            raise ValueError("max_iters must be at least 1")
        if not self.tol > 0:
            raise ValueError("tol must be positive")
        if self.seed < 0:
            raise ValueError("seed must be nonnegative")


@dataclass(frozen=True)
class SearchResult:
    spec: FunctionalSpec
    best_value: float
    best_measure: HerglotzMeasure
    bound: float | None
    gap: float | None
    iterations_used: int
    converged: bool
    best_restart: int = 0

    def __post_init__(self):
        check = evaluate(from_measure(self.best_measure, 5), self.spec)
        if abs(check - self.best_value) > VALUE_CONSISTENCY_TOL:
            raise ValueError(
                f"best_value {self.best_value!r} disagrees with its measure ({check!r})")
        if (self.bound is None) != (self.gap is None):
            raise ValueError("gap must be present exactly when bound is")

    def to_dict(self) -> dict:
        return {
            "spec": self.spec.to_dict(),
            "best_value": self.best_value,
            "best_measure": self.best_measure.to_dict(),
            "bound": self.bound,
            "gap": self.gap,
            "iterations_used": self.iterations_used,
            "converged": self.converged,
            "best_restart": self.best_restart,
        }


def _bound_or_none(spec: FunctionalSpec) -> float | None:
    try:
        return theorem_bound(spec).bound
    except UnsupportedBoundError:
        return None


def measure_from_point(x: np.ndarray, n_atoms: int) -> HerglotzMeasure:
    u = np.asarray(x[:n_atoms], dtype=float)
    w = u * u
    if w.sum() == 0:
        w = np.ones(n_atoms)
    return HerglotzMeasure.from_unnormalized(w, x[n_atoms:2 * n_atoms])


def start_point(seed: int, restart: int, n_atoms: int) -> np.ndarray:
    rng = np.random.default_rng([seed, restart])
    u = rng.uniform(0.1, 1.0, n_atoms)
    t = rng.uniform(0.0, TWO_PI, n_atoms)
    return np.concatenate([u, t])


def local_search(spec: FunctionalSpec, x0: np.ndarray, n_atoms: int,
                 max_iters: int, tol: float):
    """One Nelder-Mead run from ``x0``; returns scipy's OptimizeResult."""
    p0, p1 = spec.values
    return minimize(
        kernels.objective,
        np.ascontiguousarray(x0, dtype=float),
        args=(n_atoms, spec.kind.code, p0, p1),
        method="Nelder-Mead",
        options={"maxiter": max_iters, "maxfev": 4 * max_iters,
                 "xatol": tol, "fatol": tol, "adaptive": False},
    )


def search(spec: FunctionalSpec, cfg: SearchConfig = SearchConfig()) -> SearchResult:
    """Best functional value over ``cfg.restarts`` local searches.

    The reported measure is canonicalized (coincident atoms merged,
    heaviest atom at angle 0) and ``best_value`` is recomputed from it.
    Ties keep the earliest restart.
    """
    best = None
    iterations = 0
    for r in range(cfg.restarts):
        x0 = start_point(cfg.seed, r, cfg.n_atoms)
        res = local_search(spec, x0, cfg.n_atoms, cfg.max_iters, cfg.tol)
        iterations += int(res.nit)
        measure = measure_from_point(res.x, cfg.n_atoms).canonical()
        value = evaluate(from_measure(measure, 5), spec)
        if best is None or value > best[0]:
            best = (value, measure, bool(res.success), r)
    value, measure, converged, r = best
    bound = _bound_or_none(spec)
    gap = None if bound is None else bound - value
    return SearchResult(spec, value, measure, bound, gap, iterations, converged, r)


# ---------------------------------------------------------------------------
# parameter tables

@dataclass(frozen=True)
class TableRow:
    params: Mapping[str, float]
    conditions_met: bool
    bound: float | None
    search_max: float
    gap: float | None
    converged: bool
    failing: tuple[str, ...] = field(default_factory=tuple)

    def to_dict(self) -> dict:
        return {**dict(self.params), "conditions_met": self.conditions_met,
                "bound": self.bound, "search_max": self.search_max,
                "gap": self.gap, "converged": self.converged}


def grid_points(kind: FunctionalKind,
                grid: Mapping[str, Sequence[float]] | Iterable[Mapping[str, float]]):
    """Expand a grid into parameter dicts.

    A mapping ``name -> values`` gives the cartesian product in the kind's
    parameter order; an iterable of dicts is taken as a point list.
    """
    if isinstance(grid, Mapping):
        names = kind.param_names
        missing = [n for n in names if n not in grid]
        if missing:
            raise ValueError(f"grid lacks values for {missing}")
        return [dict(zip(names, combo))
                for combo in itertools.product(*(list(grid[n]) for n in names))]
    return [dict(p) for p in grid]


def parameter_table(kind: FunctionalKind, grid, cfg: SearchConfig = SearchConfig()) -> list[TableRow]:
    points = grid_points(kind, grid)
    if not points:
        raise ValueError("empty parameter grid")
    rows = []
    for params in points:
        spec = FunctionalSpec(kind, params)
        result = search(spec, cfg)
        if kind is FunctionalKind.FEKETE_SZEGO:
            met, bound, failing = False, None, ("no-closed-form-bound",)
        else:
            report = theorem_bound(spec)
            met, bound, failing = report.holds, report.bound, tuple(report.failing())
        gap = None if bound is None else bound - result.best_value
        rows.append(TableRow(spec.params, met, bound, result.best_value, gap,
                             result.converged, failing))
    return rows


def _fmt(v) -> str:
    if v is None:
        return ""
    if isinstance(v, bool):
        return "true" if v else "false"
    if isinstance(v, float):
        return repr(v) if math.isfinite(v) else str(v)
    return str(v)


def table_columns(kind: FunctionalKind) -> list[str]:
    return [*kind.param_names, "conditions_met", "bound", "search_max", "gap", "converged"]


def table_to_csv(kind: FunctionalKind, rows: Sequence[TableRow]) -> str:
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    cols = table_columns(kind)
    writer.writerow(cols)
    for row in rows:
        d = row.to_dict()
        writer.writerow([_fmt(d[c]) for c in cols])
    return buf.getvalue()


def table_to_jsonl(kind: FunctionalKind, rows: Sequence[TableRow]) -> str:
    cols = table_columns(kind)
    lines = []
    for row in rows:
        d = row.to_dict()
        lines.append(json.dumps({c: d[c] for c in cols}))
    return "".join(line + "\n" for line in lines)
