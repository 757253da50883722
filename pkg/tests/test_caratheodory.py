import json
import math

import numpy as np
import pytest
from hypothesis import given, strategies as st

from starcoef.caratheodory import (
    CaratheodoryCoefficients,
    HerglotzMeasure,
    check_positive_real_part,
    lemma22_extremal,
    measure_coefficients,
    moebius_coefficients,
    sample_measure,
    sample_measure_batch,
)


def measures(max_atoms=6):
    atom = st.tuples(st.floats(0.01, 1.0), st.floats(0.0, 2 * math.pi, exclude_max=True))
    return st.lists(atom, min_size=1, max_size=max_atoms).map(
        lambda atoms: HerglotzMeasure.from_unnormalized([w for w, _ in atoms],
                                                        [t for _, t in atoms]))


def test_measure_validation():
    with pytest.raises(ValueError):
        HerglotzMeasure([], [])
    with pytest.raises(ValueError):
        HerglotzMeasure([0.5, 0.4], [0, 1])
    with pytest.raises(ValueError):
        HerglotzMeasure([1.5, -0.5], [0, 1])
    with pytest.raises(ValueError):
        HerglotzMeasure([1.0], [0, 1])
    m = HerglotzMeasure([1.0], [-0.5])
    assert 0 <= m.angles[0] < 2 * math.pi


def test_measure_coefficients_examples():
    c = measure_coefficients(HerglotzMeasure.single(0.0), 4).c
    assert np.allclose(c, [2, 2, 2, 2], atol=1e-15)
    c = measure_coefficients(HerglotzMeasure.single(math.pi), 3).c
    assert np.allclose(c, [-2, 2, -2], atol=1e-14)
    c = measure_coefficients(HerglotzMeasure([0.5, 0.5], [0.0, math.pi]), 2).c
    assert np.allclose(c, [0, 2], atol=1e-15)


def test_moebius():
    assert np.array_equal(moebius_coefficients(1).c, [2])
    assert np.array_equal(moebius_coefficients(5).c, [2] * 5)
    assert np.array_equal(moebius_coefficients(6).c,
                          measure_coefficients(HerglotzMeasure.single(0.0), 6).c)


def test_measure_series_matches_closed_form_p():
    m = HerglotzMeasure([0.3, 0.7], [0.4, 2.5])
    p = m.p_series(40)
    z = 0.3 - 0.2j
    assert abs(p(z) - m.p(z)) < 1e-14


def test_caratheodory_bound_enforced():
    with pytest.raises(ValueError):
        CaratheodoryCoefficients([2.1])
    CaratheodoryCoefficients([2 + 1e-13])
    c = CaratheodoryCoefficients([1, 2j])
    assert c[0] == 1 and c[2] == 2j
    with pytest.raises(IndexError):
        c[3]


def test_lemma22_extremal_examples():
    p = lemma22_extremal(2, 1, 6)
    assert p.allclose(type(p).from_coeffs([1] + [2] * 6), atol=1e-12)
    p = lemma22_extremal(0, 1, 4)
    # (1 + z^2)/(1 - z^2)
    assert p.allclose(type(p).from_coeffs([1, 0, 2, 0, 2]), atol=1e-15)
    assert abs(abs(p[2] - p[1] ** 2 / 2) - (2 - abs(p[1]) ** 2 / 2)) < 1e-15
    p = lemma22_extremal(1, 1, 3)
    # (1 + z + z^2)/(1 - z^2): c2 = 2 by hand
    assert abs(p[2] - 2) < 1e-15
    assert abs(abs(p[2] - 0.5) - 1.5) < 1e-10


def test_lemma22_rejects_bad_eps():
    with pytest.raises(ValueError):
        lemma22_extremal(1, 0.5, 3)
    with pytest.raises(ValueError):
        lemma22_extremal(3, 1, 3)


@given(st.floats(0, 2), st.floats(0, 2 * math.pi), st.floats(0, 2 * math.pi))
def test_lemma22_equality_family(r, arg, phi):
    c1 = r * complex(math.cos(arg), math.sin(arg))
    eps = complex(math.cos(phi), math.sin(phi))
    p = lemma22_extremal(c1, eps, 4)
    assert abs(p[1] - c1) <= 1e-10
    assert abs(abs(p[2] - c1 ** 2 / 2) - (2 - abs(c1) ** 2 / 2)) <= 1e-10


def test_sample_measure_contract():
    m = sample_measure(3, 1)
    assert m.n_atoms == 1
    assert np.allclose(np.abs(measure_coefficients(m, 6).c), 2, atol=1e-14)
    assert sample_measure(11, 4) == sample_measure(11, 4)
    assert sample_measure(11, 4) != sample_measure(12, 4)
    assert abs(sample_measure(5, 4).weights.sum() - 1) <= 1e-12
    with pytest.raises(ValueError):
        sample_measure(0, 0)


def test_sample_batch_padding():
    W, T = sample_measure_batch(0, 500, 6)
    assert W.shape == (500, 6)
    assert np.allclose(W.sum(axis=1), 1, atol=1e-12)
    counts = np.count_nonzero(W, axis=1)
    assert counts.min() == 1 and counts.max() == 6
    W2, T2 = sample_measure_batch(0, 500, 6)
    assert np.array_equal(W, W2) and np.array_equal(T, T2)


def test_json_round_trip():
    m = sample_measure(2, 3)
    data = json.loads(m.to_json())
    assert set(data) == {"atoms"} and set(data["atoms"][0]) == {"w", "t"}
    assert HerglotzMeasure.from_json(m.to_json()) == m


def test_positive_real_part_moebius():
    ok, min_re = check_positive_real_part(HerglotzMeasure.single(0.0), 0.9, 360)
    theta = np.arange(360) * (2 * math.pi / 360)
    oracle = np.min((1 - 0.81) / np.abs(1 - 0.9 * np.exp(1j * theta)) ** 2)
    assert ok
    assert abs(min_re - oracle) < 1e-12
    assert abs(min_re - 0.19 / 3.61) < 1e-12


def test_positive_real_part_at_origin():
    ok, min_re = check_positive_real_part(sample_measure(1, 5), 0.0, 8)
    assert ok and abs(min_re - 1) < 1e-15
    with pytest.raises(ValueError):
        check_positive_real_part(sample_measure(1, 5), 1.0, 8)


@given(measures(), st.floats(0.05, 0.99))
def test_positive_real_part_any_measure(m, radius):
    ok, min_re = check_positive_real_part(m, radius, 64)
    assert ok and min_re > 0


@given(measures())
def test_coefficient_bound(m):
    c = measure_coefficients(m, 8).c
    assert np.max(np.abs(c)) <= 2 + 1e-12


@given(measures())
def test_c2_inequality(m):
    c = measure_coefficients(m, 2)
    c1, c2 = c[1], c[2]
    assert abs(c2 - c1 ** 2 / 2) <= 2 - abs(c1) ** 2 / 2 + 1e-10


@given(measures(), st.floats(-10, 10))
def test_rotation_covariance(m, s):
    c = measure_coefficients(m, 6).c
    cr = measure_coefficients(m.rotated(s), 6).c
    n = np.arange(1, 7)
    assert np.max(np.abs(cr - c * np.exp(-1j * n * s))) <= 1e-12


def test_canonical_merges_and_rotates():
    m = HerglotzMeasure([0.2, 0.5, 0.3], [1.0, 2.0, 1.0 + 1e-9])
    k = m.canonical()
    assert k.n_atoms == 2
    assert np.allclose(k.weights, [0.5, 0.5])
    assert k.angles[0] == 0
    assert abs(k.angles[1] - (2 * math.pi - 1.0)) < 1e-8
    assert HerglotzMeasure([0.5, 0.5], [1e-9, 2 * math.pi - 1e-8]).max_atom_mass() == 1.0
