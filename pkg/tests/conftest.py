import numpy as np
import pytest
from hypothesis import settings

from starcoef import kernels

settings.register_profile("default", max_examples=60, deadline=None)
settings.load_profile("default")

_ACCEPTANCE: dict[str, list[tuple[bool, str]]] = {}


def _backends():
    names = ["python"]
    try:
        kernels.load_backend("cython")
        names.append("cython")
    except ImportError:
        pass
    return names


@pytest.fixture(params=_backends())
def backend(request):
    return kernels.load_backend(request.param)


@pytest.fixture
def rng():
    return np.random.default_rng(12345)


@pytest.fixture(scope="session")
def criterion():
    """Record one acceptance sub-result: criterion(id, passed, detail)."""
    def record(cid, passed, detail=""):
        _ACCEPTANCE.setdefault(cid, []).append((bool(passed), detail))
    return record


def pytest_terminal_summary(terminalreporter):
    if not _ACCEPTANCE:
        return
    tr = terminalreporter
    tr.section("acceptance criteria")
    for cid in sorted(_ACCEPTANCE, key=lambda s: int(s.split()[0])):
        results = _ACCEPTANCE[cid]
        ok = all(p for p, _ in results)
        failed = [d for p, d in results if not p]
        line = f"{'PASS' if ok else 'FAIL'}  criterion {cid} ({len(results) - len(failed)}/{len(results)} checks)"
        tr.write_line(line)
        for d in failed[:12]:
            tr.write_line(f"        failed: {d}")
        if len(failed) > 12:
            tr.write_line(f"        ... {len(failed) - 12} more")
