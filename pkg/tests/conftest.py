"""Shared fixtures: warm the compiled kernels once per session.

The first call into a numba kernel pays the JIT (or cache-load) cost;
warming here keeps the runtime-bounded acceptance checks honest about
steady-state speed.
"""

import numpy as np
import pytest

from pgcodes import kernels


@pytest.fixture(scope="session", autouse=True)
def warm_kernels():
    rows2 = np.array([[1, 0, 1, 0], [0, 1, 1, 0]], dtype=np.uint8)
    kernels.spectrum(rows2, 2, 4, 16)
    rows3 = np.array([[1, 0, 2, 0], [0, 1, 1, 2]], dtype=np.uint8)
    kernels.spectrum(rows3, 3, 4, 16)
    inv3 = np.array([0, 1, 2], dtype=np.uint8)
    kernels.isd_round(rows3, 3, 4, inv3)
    yield
