import pytest

from qsteer import batch
from qsteer._accel import NUMBA_AVAILABLE

LANES = ("numba", "numpy") if NUMBA_AVAILABLE else ("numpy",)


@pytest.fixture(scope="session", autouse=True)
def _warm_kernels():
    # compile/caches the kernels once so per-test timings stay honest
    for lane in LANES:
        batch.warmup(lane=lane)
