import functools
import sys
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).parent))

from kirchhoff_radial import GroundStateSpec, solve_base_profile  # noqa: E402


@functools.lru_cache(maxsize=None)
def base_profile(N, p, ode_rel_tol=1e-10):
    return solve_base_profile(GroundStateSpec(N=N, p=p, ode_rel_tol=ode_rel_tol))


@pytest.fixture(scope="session")
def base():
    """Callable ``base(N, p)`` returning the cached ``λ = 1`` ground state."""
    return base_profile


# acceptance criteria outcomes, filled in by test_acceptance.py
ACCEPTANCE: dict[int, tuple[bool, str]] = {}


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for k in sorted(ACCEPTANCE):
        ok, text = ACCEPTANCE[k]
        terminalreporter.write_line(f"criterion {k}: {'PASS' if ok else 'FAIL'}  {text}")
