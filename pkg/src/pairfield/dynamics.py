"""Time evolution of the field pair.

Free evolution diagonalizes in Fourier space: each wavenumber k rotates the
(A, B) coefficient pair by the angle -t*k^2, which is applied exactly in a
single jump of arbitrary size.  A truncated Taylor propagator built from the
closure of time derivatives onto space derivatives provides an order-by-order
cross-check.  With an external potential V(x) two stepping schemes are
offered: a Strang split step (exact kinetic rotation in Fourier space, exact
pointwise potential rotation, second order in dt, conserves the integrated
0-density to roundoff) and a staggered leapfrog over the canonical pair with
a second-order finite-difference Laplacian, kept deliberately FFT-free so
that no single discretization validates itself.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable, Sequence

import numpy as np

from .core import (
    DEFAULT_CONFINEMENT_THRESHOLD,
    DEFAULT_N_MAX,
    DiagnosticsRecord,
    FieldState,
    GridSpec,
    density,
    integrate_invariants,
    spatial_derivative,
)

__all__ = [
    "PotentialSpec",
    "EvolveConfig",
    "SCHEMES",
    "propagate_free_spectral",
    "propagate_taylor",
    "time_derivative",
    "spectral_tail_fraction",
    "step_split",
    "step_leapfrog",
    "leapfrog_stability_limit",
    "evolve",
    "energy",
]

SCHEMES = ("spectral_free", "split_step", "leapfrog")

POTENTIAL_KINDS = ("free", "harmonic", "barrier", "well", "tabulated")


@dataclass(frozen=True)
class PotentialSpec:
    """External potential V(x): preset shapes or a tabulated profile.

    Presets are generated deterministically on any grid: harmonic
    V = kappa * x^2, a rectangular barrier of the given height and width
    centered at x = 0, and a rectangular well of the given depth.
    """

    kind: str = "free"
    kappa: float = 1.0
    height: float = 1.0
    width: float = 1.0
    depth: float = 1.0
    table: np.ndarray | None = None

    def __post_init__(self) -> None:
        if self.kind not in POTENTIAL_KINDS:
            raise ValueError(f"unknown potential kind {self.kind!r}")
        if self.kind == "tabulated":
            if self.table is None:
                raise ValueError("tabulated potential requires a table of samples")
            table = np.asarray(self.table, dtype=float)
            if not np.all(np.isfinite(table)):
                raise ValueError("tabulated potential samples must be finite")
            object.__setattr__(self, "table", table)
        if self.kind in ("barrier", "well") and self.width <= 0:
            raise ValueError("barrier/well width must be positive")

    @classmethod
    def free(cls) -> "PotentialSpec":
        return cls(kind="free")

    @classmethod
    def harmonic(cls, kappa: float = 1.0) -> "PotentialSpec":
        return cls(kind="harmonic", kappa=kappa)

    @classmethod
    def barrier(cls, height: float, width: float) -> "PotentialSpec":
        return cls(kind="barrier", height=height, width=width)

    @classmethod
    def well(cls, depth: float, width: float) -> "PotentialSpec":
        return cls(kind="well", depth=depth, width=width)

    @classmethod
    def tabulated(cls, values: Sequence[float]) -> "PotentialSpec":
        return cls(kind="tabulated", table=np.asarray(values, dtype=float))

    def sample(self, grid: GridSpec) -> np.ndarray:
        x = grid.x
        if self.kind == "free":
            return np.zeros(grid.n_points)
        if self.kind == "harmonic":
            return self.kappa * x**2
        if self.kind == "barrier":
            return np.where(np.abs(x) < 0.5 * self.width, self.height, 0.0)
        if self.kind == "well":
            return np.where(np.abs(x) < 0.5 * self.width, -self.depth, 0.0)
        assert self.table is not None
        if len(self.table) != grid.n_points:
            raise ValueError(
                f"tabulated potential has {len(self.table)} samples, grid has {grid.n_points}"
            )
        return self.table.copy()


@dataclass(frozen=True)
class EvolveConfig:
    """Stepping plan: total time, step size, scheme, and record cadence."""

    t_final: float
    dt: float
    scheme: str = "split_step"
    record_every: int = 1

    def __post_init__(self) -> None:
        if self.t_final <= 0:
            raise ValueError(f"t_final must be positive, got {self.t_final}")
        if self.dt <= 0:
            raise ValueError(f"dt must be positive, got {self.dt}")
        if self.scheme not in SCHEMES:
            raise ValueError(f"unknown scheme {self.scheme!r}; choose from {SCHEMES}")
        if int(self.record_every) != self.record_every or self.record_every < 1:
            raise ValueError(f"record_every must be a positive integer, got {self.record_every}")

    @property
    def n_steps(self) -> int:
        steps = self.t_final / self.dt
        n = round(steps)
        if n < 1 or abs(steps - n) > 1e-9 * max(1.0, abs(steps)):
            raise ValueError(
                f"t_final = {self.t_final} must be an integer multiple of dt = {self.dt}"
            )
        return n


def propagate_free_spectral(state: FieldState, t: float) -> FieldState:
    """Exact free propagation by time t (positive or negative).

    One application regardless of t: every Fourier pair (A_k, B_k) is
    rotated by the angle -t*k^2, so there is no accumulation error in time.
    """
    if t == 0.0:
        return state.copy()
    grid = state.grid
    k = 2.0 * np.pi * np.fft.rfftfreq(grid.n_points, d=grid.dx)
    ang = t * k**2
    cos_a, sin_a = np.cos(ang), np.sin(ang)
    fa = np.fft.rfft(state.a)
    fb = np.fft.rfft(state.b)
    new_a = np.fft.irfft(cos_a * fa + sin_a * fb, n=grid.n_points)
    new_b = np.fft.irfft(-sin_a * fa + cos_a * fb, n=grid.n_points)
    return FieldState(grid, new_a, new_b, state.time + t)


def spectral_tail_fraction(state: FieldState, band: float = 2.0 / 3.0) -> float:
    """Fraction of spectral energy above ``band`` of the Nyquist wavenumber."""
    k = np.abs(state.grid.wavenumbers)
    fa = np.fft.fft(state.a)
    fb = np.fft.fft(state.b)
    power = np.abs(fa) ** 2 + np.abs(fb) ** 2
    total = float(np.sum(power))
    if total == 0.0:
        return 0.0
    tail = float(np.sum(power[k > band * np.max(k)]))
    return tail / total


def time_derivative(state: FieldState, m: int) -> tuple[np.ndarray, np.ndarray]:
    """m-th time derivatives of (A, B), closed onto space derivatives.

    Even m:  dtm A = (-1)^(m/2) d(2m)A  and the same for B.
    Odd  m:  dtm A = -(-1)^((m-1)/2) d(2m)B,  dtm B = +(-1)^((m-1)/2) d(2m)A.
    """
    if m < 1:
        raise ValueError(f"time-derivative order must be >= 1, got {m}")
    grid = state.grid
    d2m_a = spatial_derivative(state.a, grid, 2 * m)
    d2m_b = spatial_derivative(state.b, grid, 2 * m)
    if m % 2 == 0:
        sign = (-1.0) ** (m // 2)
        return sign * d2m_a, sign * d2m_b
    sign = (-1.0) ** ((m - 1) // 2)
    return -sign * d2m_b, sign * d2m_a


def propagate_taylor(
    state: FieldState, t: float, order: int, tail_tol: float = 1e-8
) -> FieldState:
    """Truncated Taylor propagation around the state's time.

    Sums t^n/n! times the closed-form time derivatives up to the given
    order.  High space derivatives amplify grid noise, so states carrying
    more than ``tail_tol`` of their spectral energy in the top third of
    wavenumbers are rejected.
    """
    if order < 1:
        raise ValueError(f"Taylor order must be >= 1, got {order}")
    tail = spectral_tail_fraction(state)
    if tail > tail_tol:
        raise ValueError(
            f"state has significant spectral tail ({tail:.3e} > {tail_tol:.3e}); "
            "high derivatives would amplify grid noise"
        )
    if t == 0.0:
        return state.copy()
    grid = state.grid
    minus_k2 = -(grid.wavenumbers**2)
    fa = np.fft.fft(state.a)
    fb = np.fft.fft(state.b)
    sum_a = state.a.astype(float).copy()
    sum_b = state.b.astype(float).copy()
    coef = 1.0
    for n in range(1, order + 1):
        coef *= t / n
        fa = fa * minus_k2
        fb = fb * minus_k2
        d2n_a = np.fft.ifft(fa).real
        d2n_b = np.fft.ifft(fb).real
        if n % 2 == 0:
            sign = (-1.0) ** (n // 2)
            sum_a += sign * coef * d2n_a
            sum_b += sign * coef * d2n_b
        else:
            sign = (-1.0) ** ((n - 1) // 2)
            sum_a -= sign * coef * d2n_b
            sum_b += sign * coef * d2n_a
    return FieldState(grid, sum_a, sum_b, state.time + t)


def _potential_rotation(
    a: np.ndarray, b: np.ndarray, v: np.ndarray, tau: float
) -> tuple[np.ndarray, np.ndarray]:
    # Exact flow of dA/dt = V*B, dB/dt = -V*A over a time tau.
    ang = v * tau
    cos_a, sin_a = np.cos(ang), np.sin(ang)
    return cos_a * a + sin_a * b, -sin_a * a + cos_a * b


def step_split(state: FieldState, potential: PotentialSpec, dt: float) -> FieldState:
    """One Strang step: half potential rotation, free spectral step, half rotation.

    Both sub-flows are exact rotations (pointwise and per-wavenumber), so
    the integrated 0-density is conserved to roundoff at every step.
    """
    if dt <= 0:
        raise ValueError(f"dt must be positive, got {dt}")
    v = potential.sample(state.grid)
    a, b = _potential_rotation(state.a, state.b, v, 0.5 * dt)
    mid = propagate_free_spectral(FieldState(state.grid, a, b, state.time), dt)
    a, b = _potential_rotation(mid.a, mid.b, v, 0.5 * dt)
    return FieldState(state.grid, a, b, state.time + dt)


def leapfrog_stability_limit(grid: GridSpec) -> float:
    """Largest dt accepted by the leapfrog scheme on this grid (dx^2/pi)."""
    return grid.dx**2 / math.pi


def step_leapfrog(state: FieldState, potential: PotentialSpec, dt: float) -> FieldState:
    """One staggered leapfrog step over the canonical pair.

    B is advanced a half step with dB/dt = Lap(A) - V*A, A a full step,
    then B the second half step, with the second-order centered Laplacian.
    Deliberately FFT-free: an independent cross-check of the spectral path.
    """
    if dt <= 0:
        raise ValueError(f"dt must be positive, got {dt}")
    limit = leapfrog_stability_limit(state.grid)
    if dt > limit:
        raise ValueError(
            f"dt = {dt} exceeds the leapfrog stability bound dx^2/pi = {limit:.6e}"
        )
    grid = state.grid
    v = potential.sample(grid)

    def lap(values: np.ndarray) -> np.ndarray:
        return spatial_derivative(values, grid, 2, "finite_difference")

    b_half = state.b + 0.5 * dt * (lap(state.a) - v * state.a)
    a_new = state.a + dt * (-lap(b_half) + v * b_half)
    b_new = b_half + 0.5 * dt * (lap(a_new) - v * a_new)
    return FieldState(grid, a_new, b_new, state.time + dt)


def energy(state: FieldState, potential: PotentialSpec) -> float:
    """Hamiltonian integral Int((dA)^2 + (dB)^2 + V*(A^2 + B^2)) dx.

    Equals the integrated 1-density M_1 when the potential vanishes.
    """
    m1 = density(state, 1).values
    m0 = density(state, 0).values
    v = potential.sample(state.grid)
    return float(np.sum(m1 + v * m0) * state.grid.dx)


def _take_record(
    state: FieldState,
    potential: PotentialSpec,
    n_max: int,
    threshold: float,
) -> DiagnosticsRecord:
    record = integrate_invariants(state, n_max=n_max, threshold=threshold)
    record.energy = energy(state, potential)
    return record


def evolve(
    state: FieldState,
    potential: PotentialSpec,
    config: EvolveConfig,
    n_max: int = DEFAULT_N_MAX,
    confinement_threshold: float = DEFAULT_CONFINEMENT_THRESHOLD,
    on_record: Callable[[FieldState, DiagnosticsRecord], None] | None = None,
) -> tuple[FieldState, list[DiagnosticsRecord]]:
    """Advance the state to t_final, recording diagnostics along the way.

    Emits a record at the start, every ``record_every`` steps, and at the
    final step.  The ``spectral_free`` scheme takes one exact jump per
    record point and requires a free potential.  Records whose state fails
    the confinement check carry ``confined=False``.
    """
    n_steps = config.n_steps
    cadence = config.record_every

    def record_point(current_state: FieldState) -> DiagnosticsRecord:
        record = _take_record(current_state, potential, n_max, confinement_threshold)
        if on_record is not None:
            on_record(current_state, record)
        return record

    records = [record_point(state)]
    if config.scheme == "spectral_free":
        if potential.kind != "free":
            raise ValueError("scheme 'spectral_free' requires a free potential")
        step = 0
        while step < n_steps:
            jump = min(cadence, n_steps - step)
            state = propagate_free_spectral(state, jump * config.dt)
            step += jump
            records.append(record_point(state))
        return state, records

    stepper = step_split if config.scheme == "split_step" else step_leapfrog
    for step in range(1, n_steps + 1):
        state = stepper(state, potential, config.dt)
        if step % cadence == 0 or step == n_steps:
            records.append(record_point(state))
    return state, records
