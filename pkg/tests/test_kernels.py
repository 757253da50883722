import os
import subprocess
import sys

import numpy as np
import pytest

from starcoef import kernels
from starcoef.caratheodory import sample_measure_batch

KINDS = range(5)
PARAMS = (0.37, -0.21)


def test_selected_backend_is_known():
    assert kernels.BACKEND in ("cython", "python")


def test_pure_python_override():
    env = dict(os.environ, STARCOEF_PURE_PYTHON="1")
    out = subprocess.run([sys.executable, "-c", "import starcoef; print(starcoef.BACKEND)"],
                         env=env, capture_output=True, text=True, check=True)
    assert out.stdout.strip() == "python"


def test_unknown_backend():
    with pytest.raises(ValueError):
        kernels.load_backend("fortran")


def test_single_atom_koebe(backend):
    c = backend.caratheodory_coeffs(np.array([1.0]), np.array([0.0]), 5)
    assert np.allclose(c, 2, atol=1e-15)
    a = backend.schlicht_coeffs(c, 6)
    assert np.allclose(a, [0, 1, 2, 3, 4, 5, 6], atol=1e-13)
    assert abs(backend.functional_value(0, 0.0, 0.0, [1.0], [0.0]) - 4) < 1e-13


def test_schlicht_rejects_short_generator(backend):
    with pytest.raises(ValueError):
        backend.schlicht_coeffs(np.array([1.0 + 0j]), 5)


def test_unknown_kind(backend):
    with pytest.raises(ValueError):
        backend.functional_value(7, 0.0, 0.0, [1.0], [0.0])


def test_objective_weight_map(backend):
    x = np.array([3.0, 0.0, 0.2, 1.4])
    assert abs(backend.objective(x, 2, 0, 0.0, 0.0) + 4) < 1e-13
    assert backend.objective(np.zeros(4), 2, 0, 0.0, 0.0) == 0.0


def test_batch_matches_scalar(backend):
    W, T = sample_measure_batch(3, 200, 5)
    c, a = backend.batch_coeffs(W, T, 6)
    assert c.shape == (200, 6) and a.shape == (200, 8)
    for i in range(0, 200, 37):
        ci = backend.caratheodory_coeffs(W[i], T[i], 6)
        assert np.max(np.abs(ci - c[i])) < 1e-14
        assert np.max(np.abs(backend.schlicht_coeffs(ci, 7) - a[i])) < 1e-13
    for kind in KINDS:
        vals = backend.batch_functional(W, T, kind, *PARAMS)
        ref = [backend.functional_value(kind, *PARAMS, W[i], T[i]) for i in range(200)]
        assert np.max(np.abs(vals - ref)) < 1e-13


@pytest.mark.skipif(kernels.BACKEND != "cython", reason="compiled kernel not built")
def test_backends_agree():
    py = kernels.load_backend("python")
    cy = kernels.load_backend("cython")
    W, T = sample_measure_batch(8, 500, 6)
    c1, a1 = py.batch_coeffs(W, T, 6)
    c2, a2 = cy.batch_coeffs(W, T, 6)
    assert np.max(np.abs(c1 - c2)) < 1e-13
    assert np.max(np.abs(a1 - a2)) < 1e-12
    for kind in KINDS:
        assert np.max(np.abs(py.batch_functional(W, T, kind, *PARAMS)
                             - cy.batch_functional(W, T, kind, *PARAMS))) < 1e-12
    x = np.concatenate([W[0, :4] ** 0.5, T[0, :4]])
    for kind in KINDS:
        assert abs(py.objective(x, 4, kind, *PARAMS) - cy.objective(x, 4, kind, *PARAMS)) < 1e-13
