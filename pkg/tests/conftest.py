import numpy as np
import pytest
from hypothesis import HealthCheck, settings

from zakharov_radial.radial_spectral import make_grid, spectral

settings.register_profile(
    "default", deadline=None, max_examples=25, suppress_health_check=[HealthCheck.too_slow]
)
settings.load_profile("default")


def band_limited(grid, rng, rho_max=None, complex_=True):
    """Random smooth field built on the frequency side inside ``rho <= rho_max``."""
    rho_max = rho_max or grid.rho[-1] / 4
    x = grid.rho / rho_max
    env = np.where(x < 1, np.exp(-1.0 / np.maximum(1e-300, 1 - x**2)) * np.e, 0.0) * np.exp(-0.5 * x**2)
    c = rng.standard_normal(4) + (1j * rng.standard_normal(4) if complex_ else 0)
    poly = sum(ci * np.cos(np.pi * i * x) for i, ci in enumerate(c))
    return spectral(grid, env * poly)


@pytest.fixture
def rng():
    return np.random.default_rng(12345)


@pytest.fixture(scope="session")
def grid_small():
    return make_grid(40.0, 256)
