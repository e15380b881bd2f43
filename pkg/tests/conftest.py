import numpy as np
import pytest
from hypothesis import HealthCheck, settings

from pairfield import FieldState, GridSpec, make_grid, normalize

settings.register_profile(
    "repro",
    max_examples=20,
    deadline=None,
    derandomize=True,
    suppress_health_check=[HealthCheck.too_slow],
)
settings.load_profile("repro")


def make_gaussian(grid: GridSpec, x0: float = 0.0, sigma: float = 1.0, k: float = 0.0) -> FieldState:
    """Normalized packet: envelope times the (cos, sin) carrier pair."""
    phi = (np.pi * sigma**2) ** (-0.25) * np.exp(-((grid.x - x0) ** 2) / (2.0 * sigma**2))
    return normalize(FieldState(grid, phi * np.cos(k * grid.x), phi * np.sin(k * grid.x), 0.0))


def random_confined_state(grid: GridSpec, seed: int, n_modes: int = 8) -> FieldState:
    """Normalized band-limited packet with a strongly decaying envelope."""
    rng = np.random.default_rng(seed)
    sigma_env = grid.length / 16.0
    envelope = np.exp(-((grid.x - 0.1 * sigma_env) ** 2) / (2.0 * sigma_env**2))
    base = 2.0 * np.pi / grid.length
    a = np.zeros(grid.n_points)
    b = np.zeros(grid.n_points)
    for j in range(1, n_modes + 1):
        ca, sa, cb, sb = rng.normal(size=4) / (1.0 + j)
        a += ca * np.cos(j * base * grid.x) + sa * np.sin(j * base * grid.x)
        b += cb * np.cos(j * base * grid.x) + sb * np.sin(j * base * grid.x)
    a = envelope * (a + 0.3)
    b = envelope * b
    return normalize(FieldState(grid, a, b, 0.0))


@pytest.fixture(scope="session")
def grid_small() -> GridSpec:
    return make_grid(-20.0, 20.0, 256)


@pytest.fixture(scope="session")
def grid_medium() -> GridSpec:
    return make_grid(-40.0, 40.0, 512)


@pytest.fixture(scope="session")
def grid_wide() -> GridSpec:
    return make_grid(-40.0, 40.0, 1024)


@pytest.fixture(scope="session")
def grid_ring() -> GridSpec:
    return make_grid(0.0, 2.0 * np.pi, 256)
