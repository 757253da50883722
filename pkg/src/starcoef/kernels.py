"""Backend selection for the hot kernels.

The compiled extension is used when importable; set ``STARCOEF_PURE_PYTHON=1``
to force the numpy fallback.
"""
import os

if os.environ.get("STARCOEF_PURE_PYTHON", "") not in ("", "0"):
    from . import _kernels_py as _impl
else:
    try:
        from . import _kernels as _impl
    except ImportError:  # extension not built
        from . import _kernels_py as _impl

BACKEND = _impl.BACKEND

caratheodory_coeffs = _impl.caratheodory_coeffs
schlicht_coeffs = _impl.schlicht_coeffs
combine = _impl.combine
functional_value = _impl.functional_value
objective = _impl.objective
batch_coeffs = _impl.batch_coeffs
batch_functional = _impl.batch_functional


def load_backend(name):
    """Return the kernel module for ``name`` ("cython" or "python")."""
    if name == "python":
        from . import _kernels_py
        return _kernels_py
    if name == "cython":
        from . import _kernels
        return _kernels
    raise ValueError(f"unknown kernel backend {name!r}")
