"""Grids, the real field pair, and its densities, currents, and invariants.

The object of study is a pair of real fields A(x, t), B(x, t) on a uniform
periodic 1D grid, coupled by

    dA/dt = -d2B/dx2,        dB/dt = +d2A/dx2

(potential terms live in :mod:`pairfield.dynamics`).  For every derivative
order n the pair carries a nonnegative density and a current,

    M_n(x) = (dnA)^2 + (dnB)^2
    P_n(x) = dnA * d(n+1)B - dnB * d(n+1)A

whose space integrals are conserved by the free dynamics.  This module
provides the containers, periodic spatial derivatives (spectral and
finite-difference), the density/current profiles, quadrature of the
integrated invariants, the localization center, and normalization.

Everything is dimensionless; the complex-field correspondence fixes
hbar = 1 and mass 1/2.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property

import numpy as np

__all__ = [
    "DEFAULT_N_MAX",
    "DEFAULT_CONFINEMENT_THRESHOLD",
    "EDGE_BAND_FRACTION",
    "GridSpec",
    "FieldState",
    "DensityProfile",
    "DiagnosticsRecord",
    "make_grid",
    "spatial_derivative",
    "density",
    "current",
    "integrate_invariants",
    "integrate_invariants_by_parts",
    "continuity_residual",
    "center",
    "first_moment",
    "density_variance",
    "normalize",
    "confinement_check",
]

#: Default highest derivative order carried by diagnostics records.
DEFAULT_N_MAX = 3

#: Fraction of samples per edge inspected by the confinement check.
EDGE_BAND_FRACTION = 0.02

#: Default amplitude below which the edge band counts as vanishing.
DEFAULT_CONFINEMENT_THRESHOLD = 1e-12

_ZERO_FIELD_FLOOR = 1e-30


@dataclass(frozen=True)
class GridSpec:
    """Uniform periodic 1D grid; x_max is identified with x_min."""

    x_min: float
    x_max: float
    n_points: int

    @property
    def length(self) -> float:
        return self.x_max - self.x_min

    @property
    def dx(self) -> float:
        return (self.x_max - self.x_min) / self.n_points

    @cached_property
    def x(self) -> np.ndarray:
        """Sample positions x_min + i*dx for i in [0, n_points)."""
        return self.x_min + self.dx * np.arange(self.n_points)

    @cached_property
    def wavenumbers(self) -> np.ndarray:
        """Angular wavenumbers 2*pi*j/length for j in [-n/2, n/2), FFT order."""
        return 2.0 * np.pi * np.fft.fftfreq(self.n_points, d=self.dx)


def make_grid(x_min: float, x_max: float, n_points: int) -> GridSpec:
    """Build a validated uniform periodic grid."""
    if not np.isfinite(x_min) or not np.isfinite(x_max):
        raise ValueError("grid bounds must be finite")
    if x_max <= x_min:
        raise ValueError(f"grid span is empty: x_max={x_max} must exceed x_min={x_min}")
    n_points = int(n_points)
    if n_points < 8:
        raise ValueError(f"grid needs at least 8 points, got {n_points}")
    return GridSpec(float(x_min), float(x_max), n_points)


@dataclass
class FieldState:
    """Sampled field pair (A, B) on a grid at a fixed time."""

    grid: GridSpec
    a: np.ndarray
    b: np.ndarray
    time: float = 0.0

    def __post_init__(self) -> None:
        self.a = np.asarray(self.a, dtype=float)
        self.b = np.asarray(self.b, dtype=float)
        n = self.grid.n_points
        if self.a.shape != (n,) or self.b.shape != (n,):
            raise ValueError(
                f"field arrays must have shape ({n},), got {self.a.shape} and {self.b.shape}"
            )
        if not (np.all(np.isfinite(self.a)) and np.all(np.isfinite(self.b))):
            raise ValueError("field samples must be finite")

    def copy(self) -> "FieldState":
        return FieldState(self.grid, self.a.copy(), self.b.copy(), self.time)


@dataclass
class DensityProfile:
    """One density/current/residual profile at fixed time.

    ``kind`` is "density" for M_n (nonnegative pointwise), "current" for
    P_n, or "residual" for continuity residuals.
    """

    grid: GridSpec
    values: np.ndarray
    order: int
    kind: str

    def integral(self) -> float:
        return float(np.sum(self.values) * self.grid.dx)


@dataclass
class DiagnosticsRecord:
    """Integrated invariants of one time slice.

    ``m[n]`` and ``p[n]`` hold the integrated densities and currents for
    n = 0..n_max, ``center`` the normalized first moment of M_0, ``energy``
    the Hamiltonian integral (equal to m[1] for the free system), and
    ``boundary_max`` the largest field amplitude in the grid's edge bands.
    ``confined`` flags whether boundary_max stayed below the threshold in
    effect when the record was taken.
    """

    time: float
    m: np.ndarray
    p: np.ndarray
    center: float
    energy: float
    boundary_max: float
    confined: bool = True

    @property
    def n_max(self) -> int:
        return len(self.m) - 1


def _validated_arrays(values: np.ndarray, grid: GridSpec) -> np.ndarray:
    values = np.asarray(values, dtype=float)
    if values.shape != (grid.n_points,):
        raise ValueError(f"expected array of shape ({grid.n_points},), got {values.shape}")
    return values


def _spectral_derivative(values: np.ndarray, grid: GridSpec, order: int) -> np.ndarray:
    coef = np.fft.fft(values)
    coef *= (1j * grid.wavenumbers) ** order
    # .real drops the antisymmetric Nyquist remnant of odd orders.
    return np.fft.ifft(coef).real


def _fd_derivative(values: np.ndarray, dx: float, order: int) -> np.ndarray:
    v = values
    if order == 1:
        return (np.roll(v, -1) - np.roll(v, 1)) / (2.0 * dx)
    if order == 2:
        return (np.roll(v, -1) - 2.0 * v + np.roll(v, 1)) / dx**2
    if order == 3:
        return (
            np.roll(v, -2) - 2.0 * np.roll(v, -1) + 2.0 * np.roll(v, 1) - np.roll(v, 2)
        ) / (2.0 * dx**3)
    if order == 4:
        return (
            np.roll(v, -2)
            - 4.0 * np.roll(v, -1)
            + 6.0 * v
            - 4.0 * np.roll(v, 1)
            + np.roll(v, 2)
        ) / dx**4
    raise ValueError(f"finite-difference stencils cover orders 1..4, got {order}")


def spatial_derivative(
    values: np.ndarray, grid: GridSpec, order: int, method: str = "spectral"
) -> np.ndarray:
    """n-th periodic spatial derivative of a sampled profile.

    The spectral method multiplies Fourier coefficients by (i*k)^order with
    k = 2*pi*j/length, exact for band-limited input.  The finite-difference
    method uses second-order centered stencils (orders 1 through 4).
    """
    values = _validated_arrays(values, grid)
    if order < 1:
        raise ValueError(f"derivative order must be >= 1, got {order}")
    if method == "spectral":
        return _spectral_derivative(values, grid, order)
    if method == "finite_difference":
        return _fd_derivative(values, grid.dx, order)
    raise ValueError(f"unknown derivative method {method!r}")


def _nth_derivative(values: np.ndarray, grid: GridSpec, order: int, method: str) -> np.ndarray:
    if order == 0:
        return np.asarray(values, dtype=float)
    return spatial_derivative(values, grid, order, method)


def density(state: FieldState, n: int, method: str = "spectral") -> DensityProfile:
    """Order-n density M_n = (dnA)^2 + (dnB)^2, nonnegative pointwise."""
    if n < 0:
        raise ValueError(f"density order must be >= 0, got {n}")
    da = _nth_derivative(state.a, state.grid, n, method)
    db = _nth_derivative(state.b, state.grid, n, method)
    return DensityProfile(state.grid, da**2 + db**2, n, "density")


def current(state: FieldState, n: int, method: str = "spectral") -> DensityProfile:
    """Order-n current P_n = dnA*d(n+1)B - dnB*d(n+1)A."""
    if n < 0:
        raise ValueError(f"current order must be >= 0, got {n}")
    grid = state.grid
    da = _nth_derivative(state.a, grid, n, method)
    db = _nth_derivative(state.b, grid, n, method)
    da1 = _nth_derivative(state.a, grid, n + 1, method)
    db1 = _nth_derivative(state.b, grid, n + 1, method)
    return DensityProfile(grid, da * db1 - db * da1, n, "current")


def _edge_band_max(state: FieldState) -> float:
    n = state.grid.n_points
    band = max(1, int(round(EDGE_BAND_FRACTION * n)))
    edges = np.concatenate([state.a[:band], state.a[-band:], state.b[:band], state.b[-band:]])
    return float(np.max(np.abs(edges)))


def confinement_check(
    state: FieldState, threshold: float = DEFAULT_CONFINEMENT_THRESHOLD
) -> bool:
    """True iff both fields stay below ``threshold`` in the edge bands.

    Numerical surrogate for decay at infinity on a periodic box: inspects
    the outermost 2% of samples at each edge.
    """
    if threshold <= 0:
        raise ValueError("confinement threshold must be positive")
    return _edge_band_max(state) < threshold


def integrate_invariants(
    state: FieldState,
    n_max: int = DEFAULT_N_MAX,
    threshold: float = DEFAULT_CONFINEMENT_THRESHOLD,
) -> DiagnosticsRecord:
    """Integrated invariants M_n, P_n for n <= n_max by rectangle rule.

    Also fills the localization center, the boundary amplitude, and the
    free-system energy (equal to M_1; potential runs overwrite it via
    :func:`pairfield.dynamics.energy`).
    """
    if n_max < 1:
        raise ValueError(f"n_max must be >= 1, got {n_max}")
    grid = state.grid
    dx = grid.dx
    derivs_a = [state.a]
    derivs_b = [state.b]
    for order in range(1, n_max + 2):
        derivs_a.append(spatial_derivative(state.a, grid, order))
        derivs_b.append(spatial_derivative(state.b, grid, order))

    m = np.empty(n_max + 1)
    p = np.empty(n_max + 1)
    for n in range(n_max + 1):
        m[n] = np.sum(derivs_a[n] ** 2 + derivs_b[n] ** 2) * dx
        p[n] = np.sum(derivs_a[n] * derivs_b[n + 1] - derivs_b[n] * derivs_a[n + 1]) * dx

    boundary_max = _edge_band_max(state)
    confined = boundary_max < threshold
    m0 = m[0]
    if m0 < _ZERO_FIELD_FLOOR:
        x_center = 0.0
    elif not confined:
        x_center = float("nan")
    else:
        m0_profile = derivs_a[0] ** 2 + derivs_b[0] ** 2
        x_center = float(np.sum(grid.x * m0_profile) * dx / m0)
    return DiagnosticsRecord(
        time=state.time,
        m=m,
        p=p,
        center=x_center,
        energy=float(m[1]),
        boundary_max=boundary_max,
        confined=confined,
    )


def integrate_invariants_by_parts(
    state: FieldState,
    n_max: int = DEFAULT_N_MAX,
    threshold: float = DEFAULT_CONFINEMENT_THRESHOLD,
) -> DiagnosticsRecord:
    """Same invariants via the integrated-by-parts forms.

    M_n = (-1)^n Int(A d(2n)A + B d(2n)B),
    P_n = (-1)^n Int(A d(2n+1)B - B d(2n+1)A).

    Exists purely as a cross-check of :func:`integrate_invariants`.
    """
    if n_max < 1:
        raise ValueError(f"n_max must be >= 1, got {n_max}")
    grid = state.grid
    dx = grid.dx
    m = np.empty(n_max + 1)
    p = np.empty(n_max + 1)
    m[0] = np.sum(state.a**2 + state.b**2) * dx
    for n in range(n_max + 1):
        sign = -1.0 if n % 2 else 1.0
        if n > 0:
            d2n_a = spatial_derivative(state.a, grid, 2 * n)
            d2n_b = spatial_derivative(state.b, grid, 2 * n)
            m[n] = sign * np.sum(state.a * d2n_a + state.b * d2n_b) * dx
        d2n1_a = spatial_derivative(state.a, grid, 2 * n + 1)
        d2n1_b = spatial_derivative(state.b, grid, 2 * n + 1)
        p[n] = sign * np.sum(state.a * d2n1_b - state.b * d2n1_a) * dx

    reference = integrate_invariants(state, n_max=n_max, threshold=threshold)
    return DiagnosticsRecord(
        time=state.time,
        m=m,
        p=p,
        center=reference.center,
        energy=float(m[1]),
        boundary_max=reference.boundary_max,
        confined=reference.confined,
    )


def continuity_residual(
    state: FieldState,
    n: int,
    method: str = "spectral",
    potential=None,
) -> DensityProfile:
    """Residual of dM_n/dt + 2 dP_n/dx at the state's instant.

    The time derivative is expanded analytically through the equations of
    motion (dA/dt = -d2B + V*B, dB/dt = d2A - V*A; V = 0 when no potential
    is given), so the residual contains no time-differencing error and
    isolates the spatial discretization.
    """
    if n < 0:
        raise ValueError(f"residual order must be >= 0, got {n}")
    grid = state.grid
    if potential is None:
        v = np.zeros(grid.n_points)
    else:
        v = potential.sample(grid)
    dt_a = -_nth_derivative(state.b, grid, 2, method) + v * state.b
    dt_b = _nth_derivative(state.a, grid, 2, method) - v * state.a

    dn_a = _nth_derivative(state.a, grid, n, method)
    dn_b = _nth_derivative(state.b, grid, n, method)
    dn_dt_a = _nth_derivative(dt_a, grid, n, method)
    dn_dt_b = _nth_derivative(dt_b, grid, n, method)
    dm_dt = 2.0 * (dn_a * dn_dt_a + dn_b * dn_dt_b)

    p_profile = current(state, n, method).values
    residual = dm_dt + 2.0 * _nth_derivative(p_profile, grid, 1, method)
    return DensityProfile(grid, residual, n, "residual")


def first_moment(state: FieldState, n: int = 0, method: str = "spectral") -> float:
    """Unnormalized first moment Int(x * M_n(x)) dx."""
    profile = density(state, n, method)
    return float(np.sum(state.grid.x * profile.values) * state.grid.dx)


def center(state: FieldState, threshold: float = DEFAULT_CONFINEMENT_THRESHOLD) -> float:
    """Localization center X = Int(x*M_0)/M_0.

    Requires a confined state: the first moment is meaningless when the
    density wraps around the periodic box.
    """
    m0 = density(state, 0).integral()
    if m0 < _ZERO_FIELD_FLOOR:
        raise ValueError("center is undefined for the zero field")
    if not confinement_check(state, threshold):
        raise ValueError(
            "center requires a confined state; edge amplitude "
            f"{_edge_band_max(state):.3e} exceeds threshold {threshold:.3e}"
        )
    return first_moment(state, 0) / m0


def density_variance(
    state: FieldState, threshold: float = DEFAULT_CONFINEMENT_THRESHOLD
) -> float:
    """Variance of the localization density M_0 about its center."""
    x_center = center(state, threshold)
    m0_profile = density(state, 0)
    m0 = m0_profile.integral()
    spread = np.sum((state.grid.x - x_center) ** 2 * m0_profile.values) * state.grid.dx
    return float(spread / m0)


def normalize(state: FieldState) -> FieldState:
    """Scale both fields so the integrated 0-density is exactly 1."""
    m0 = density(state, 0).integral()
    if m0 < _ZERO_FIELD_FLOOR:
        raise ValueError("cannot normalize the zero field")
    scale = 1.0 / np.sqrt(m0)
    return FieldState(state.grid, state.a * scale, state.b * scale, state.time)
