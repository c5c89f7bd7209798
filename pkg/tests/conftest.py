import numpy as np
import pytest
from hypothesis import HealthCheck, settings

# JIT compilation makes first calls slow; deadlines would flake on them.
settings.register_profile(
    "suite",
    deadline=None,
    max_examples=50,
    suppress_health_check=[HealthCheck.too_slow],
)
settings.load_profile("suite")


@pytest.fixture(scope="session", autouse=True)
def _warm_kernels():
    from topoperiod._reduction import warmup

    warmup()


@pytest.fixture(scope="session")
def circle20():
    """20 evenly spaced points on the unit circle."""
    theta = 2.0 * np.pi * np.arange(20) / 20.0
    return np.column_stack([np.cos(theta), np.sin(theta)])
