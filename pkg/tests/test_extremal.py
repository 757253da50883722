import csv
import io
import json
import math

import numpy as np
import pytest

from starcoef.caratheodory import HerglotzMeasure
from starcoef.extremal import (
    SearchConfig,
    SearchResult,
    grid_points,
    measure_from_point,
    parameter_table,
    search,
    table_columns,
    table_to_csv,
    table_to_jsonl,
)
from starcoef.functionals import FunctionalKind, FunctionalSpec

FAST = SearchConfig(restarts=8)


def test_config_validation():
    for bad in (dict(n_atoms=0), dict(restarts=0), dict(max_iters=0), dict(tol=0), dict(seed=-1)):
        with pytest.raises(ValueError):
            SearchConfig(**bad)


def test_search_rediscovers_koebe():
    r = search(FunctionalSpec.a4_gamma(0), SearchConfig())
    assert 4 - 1e-4 <= r.best_value <= 4 + 1e-9
    assert r.best_measure.weights[0] >= 0.999
    assert r.best_measure.angles[0] == 0
    assert r.bound == 4 and abs(r.gap) <= 1e-4


def test_search_mu_boundary():
    r = search(FunctionalSpec.a5_mu(2 / 9), SearchConfig())
    assert abs(r.best_value - 7 / 3) <= 1e-4


def test_search_fekete_szego_no_bound():
    r = search(FunctionalSpec.fekete_szego(0), SearchConfig())
    assert abs(r.best_value - 3) <= 1e-4
    assert r.bound is None and r.gap is None


def test_search_deterministic():
    spec = FunctionalSpec.a5_xi_zeta(0.1, 0.1)
    r1, r2 = search(spec, FAST), search(spec, FAST)
    assert r1.best_value == r2.best_value
    assert r1.best_measure == r2.best_measure
    assert r1.iterations_used == r2.iterations_used
    assert r1.to_dict() == r2.to_dict()


def test_restarts_monotone():
    spec = FunctionalSpec.a4_gamma(0.5)
    values = [search(spec, SearchConfig(restarts=r, max_iters=300)).best_value
              for r in (1, 2, 4, 8)]
    assert values == sorted(values)


def test_non_convergence_reported():
    r = search(FunctionalSpec.a4_gamma(0.1), SearchConfig(restarts=1, max_iters=3))
    assert r.converged is False
    assert r.best_value > 0


def test_result_consistency_enforced():
    spec = FunctionalSpec.a4_gamma(0)
    m = HerglotzMeasure.single(0.0)
    with pytest.raises(ValueError):
        SearchResult(spec, 3.9, m, 4.0, 0.1, 1, True)
    with pytest.raises(ValueError):
        SearchResult(spec, 4.0, m, 4.0, None, 1, True)
    SearchResult(spec, 4.0, m, 4.0, 0.0, 1, True)


def test_measure_from_point():
    m = measure_from_point(np.array([1.0, 1.0, 0.0, math.pi]), 2)
    assert np.allclose(m.weights, 0.5)
    m = measure_from_point(np.array([0.0, 0.0, 0.0, 1.0]), 2)
    assert np.allclose(m.weights, 0.5)


def test_grid_points():
    pts = grid_points(FunctionalKind.A4_GAMMA_ETA, {"eta": [0, 1], "gamma": [2, 3, 4]})
    assert pts[0] == {"gamma": 2, "eta": 0} and len(pts) == 6
    with pytest.raises(ValueError):
        grid_points(FunctionalKind.A4_GAMMA_ETA, {"gamma": [1]})
    assert grid_points(FunctionalKind.A5_MU, [{"mu": 0.1}]) == [{"mu": 0.1}]


def test_table_a4_gamma():
    grid = {"gamma": [0, 0.1, 0.2, 0.3, 0.4, 0.5, 5 / 9]}
    rows = parameter_table(FunctionalKind.A4_GAMMA, grid, SearchConfig(restarts=20))
    assert len(rows) == 7 and all(r.conditions_met for r in rows)
    for r in rows[:5]:
        assert -1e-6 <= r.gap <= 1e-3


def test_table_conditions_fail_path():
    rows = parameter_table(FunctionalKind.A4_GAMMA, {"gamma": [0.9]}, FAST)
    assert not rows[0].conditions_met and rows[0].bound is None and rows[0].gap is None
    assert rows[0].search_max > 0
    rows = parameter_table(FunctionalKind.A5_MU, {"mu": [0.3, 0.4]}, FAST)
    assert all(r.bound is None for r in rows)
    with pytest.raises(ValueError):
        parameter_table(FunctionalKind.A5_MU, [], FAST)


def test_table_serialization():
    rows = parameter_table(FunctionalKind.A5_MU, {"mu": [0.0, 0.4]}, SearchConfig(restarts=3))
    text = table_to_csv(FunctionalKind.A5_MU, rows)
    parsed = list(csv.DictReader(io.StringIO(text)))
    assert list(parsed[0]) == table_columns(FunctionalKind.A5_MU)
    assert parsed[0]["conditions_met"] == "true" and parsed[1]["bound"] == ""
    assert float(parsed[0]["search_max"]) == rows[0].search_max
    lines = table_to_jsonl(FunctionalKind.A5_MU, rows).splitlines()
    assert len(lines) == 2
    rec = json.loads(lines[1])
    assert rec["bound"] is None and rec["conditions_met"] is False
    assert rec["search_max"] == rows[1].search_max
