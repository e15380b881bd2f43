"""Stationary solutions: plane waves, potential eigenmodes, and their checks.

A stationary solution keeps every density and current frozen while the
fields rotate rigidly in the (A, B) plane at an angular frequency E.  The
free family consists of the sine/cosine pairs with E = k^2; with a
potential the profiles solve the symmetric eigenproblem
(-d2/dx2 + V) phi = E phi.  :func:`verify_stationary` evolves a candidate
state and measures the whole ladder of stationary identities: the rotation
frequency, the spatial flatness of the currents, P_n = E^n P_0, the density
ladder M_2 = E^2 M_0 and M_3 = E^2 M_1, and the affine relation
M_1 = E (C - M_0).
"""

from __future__ import annotations

import warnings
from dataclasses import dataclass

import numpy as np
import scipy.linalg

from .core import (
    DEFAULT_CONFINEMENT_THRESHOLD,
    FieldState,
    GridSpec,
    confinement_check,
    current,
    density,
    spatial_derivative,
)
from .dynamics import PotentialSpec, propagate_free_spectral, step_split

__all__ = [
    "Mode",
    "StationaryReport",
    "plane_wave_state",
    "eigenmodes",
    "mode_residual",
    "stationary_state_from_mode",
    "verify_stationary",
]

LAPLACIANS = ("spectral", "fd2")


@dataclass
class Mode:
    """One eigenpair: energy E and a normalized real profile phi(x)."""

    energy: float
    profile: np.ndarray
    grid: GridSpec


@dataclass
class StationaryReport:
    """Measured stationarity diagnostics for one candidate state.

    ``e_fit`` is the rotation frequency extracted from the time records.
    ``current_ratio_errors[n-1]`` measures |P_n / P_(n-1) - E| for
    n = 1..n_max (absolute form |P_n - E*P_(n-1)| when the denominator is
    negligible, as for zero-current modes).  ``density_ladder_errors``
    holds the relative profile errors of M_2 vs E^2 M_0 and M_3 vs E^2 M_1.
    ``current_flatness[n]`` is the spatial spread of the P_n profile
    relative to its mean.  ``density_drift`` is the max-norm time variation
    of the localization density over the horizon, the signature by which
    non-stationary states (e.g. superpositions) are detected.
    """

    e_fit: float
    current_ratio_errors: np.ndarray
    density_ladder_errors: np.ndarray
    c_fit: float
    c_fit_residual: float
    current_flatness: np.ndarray
    density_drift: float


def plane_wave_state(k: float, grid: GridSpec) -> FieldState:
    """Free stationary pair A = cos(kx), B = sin(kx) with E = k^2.

    The wavenumber must be grid-commensurate (an integer multiple of
    2*pi/length); the stored fields use the snapped exact value.  k = 0 is
    constructible but flagged: it falls outside the E > 0 family.
    """
    ratio = k * grid.length / (2.0 * np.pi)
    j = round(ratio)
    if abs(ratio - j) > 1e-9 * max(1.0, abs(ratio)):
        raise ValueError(
            f"wavenumber {k} is not commensurate with the box "
            f"(needs an integer multiple of {2.0 * np.pi / grid.length:.6e})"
        )
    if abs(j) > grid.n_points // 2:
        raise ValueError(f"wavenumber {k} lies beyond the grid Nyquist limit")
    if j == 0:
        warnings.warn(
            "k = 0 gives the constant pair with E = 0, outside the E > 0 stationary family",
            stacklevel=2,
        )
    k_exact = 2.0 * np.pi * j / grid.length
    return FieldState(grid, np.cos(k_exact * grid.x), np.sin(k_exact * grid.x), 0.0)


def _kinetic_matrix(grid: GridSpec, laplacian: str) -> np.ndarray:
    n = grid.n_points
    if laplacian == "spectral":
        # Symmetric circulant applying k^2 in Fourier space.
        col = np.fft.ifft(grid.wavenumbers**2).real
        return scipy.linalg.circulant(col)
    if laplacian == "fd2":
        main = np.full(n, 2.0)
        matrix = np.diag(main)
        off = -np.ones(n - 1)
        matrix += np.diag(off, 1) + np.diag(off, -1)
        matrix[0, -1] = matrix[-1, 0] = -1.0
        return matrix / grid.dx**2
    raise ValueError(f"unknown laplacian {laplacian!r}; choose from {LAPLACIANS}")


def eigenmodes(
    potential: PotentialSpec,
    grid: GridSpec,
    count: int,
    laplacian: str = "spectral",
    confinement_threshold: float = DEFAULT_CONFINEMENT_THRESHOLD,
) -> list[Mode]:
    """Lowest eigenpairs of (-d2/dx2 + V) phi = E phi on the periodic grid.

    Dense symmetric solve, deterministic ascending order, sign fixed so the
    first significant sample of each profile is positive, profiles
    normalized to Int(phi^2) dx = 1.  Modes whose profile fails the
    confinement check are flagged with a warning (the requested potential
    is then not confining enough for the box, or the spectrum is free-like).
    """
    if count < 1:
        raise ValueError(f"count must be >= 1, got {count}")
    if count > grid.n_points:
        raise ValueError(f"count = {count} exceeds the grid size {grid.n_points}")
    v = potential.sample(grid)
    hamiltonian = _kinetic_matrix(grid, laplacian) + np.diag(v)
    hamiltonian = 0.5 * (hamiltonian + hamiltonian.T)
    energies, vectors = scipy.linalg.eigh(hamiltonian, subset_by_index=(0, count - 1))

    modes: list[Mode] = []
    unconfined: list[int] = []
    for index in range(count):
        profile = vectors[:, index].copy()
        profile /= np.sqrt(np.sum(profile**2) * grid.dx)
        significant = np.nonzero(np.abs(profile) > 1e-8 * np.max(np.abs(profile)))[0]
        if len(significant) and profile[significant[0]] < 0:
            profile = -profile
        if not confinement_check(
            FieldState(grid, profile, np.zeros_like(profile)), confinement_threshold
        ):
            unconfined.append(index)
        modes.append(Mode(float(energies[index]), profile, grid))
    if unconfined:
        warnings.warn(
            f"modes {unconfined} fail the confinement check at threshold "
            f"{confinement_threshold:.1e}",
            stacklevel=2,
        )
    return modes


def mode_residual(
    mode: Mode, potential: PotentialSpec, laplacian: str = "spectral"
) -> float:
    """L2 residual of (-d2/dx2 + V) phi = E phi for one mode."""
    grid = mode.grid
    v = potential.sample(grid)
    if laplacian == "spectral":
        kinetic = -spatial_derivative(mode.profile, grid, 2)
    elif laplacian == "fd2":
        kinetic = -spatial_derivative(mode.profile, grid, 2, "finite_difference")
    else:
        raise ValueError(f"unknown laplacian {laplacian!r}; choose from {LAPLACIANS}")
    residual = kinetic + v * mode.profile - mode.energy * mode.profile
    return float(np.sqrt(np.sum(residual**2) * grid.dx))


def stationary_state_from_mode(mode: Mode, phase: float) -> FieldState:
    """Field pair (cos(phase)*phi, -sin(phase)*phi) at time 0.

    One valid initial pair for the mode's energy; evolving by t advances
    the phase by E*t.
    """
    return FieldState(
        mode.grid,
        np.cos(phase) * mode.profile,
        -np.sin(phase) * mode.profile,
        0.0,
    )


def _fit_rotation_frequency(
    times: np.ndarray, a_probes: np.ndarray, b_probes: np.ndarray
) -> float:
    # Phase of (A - iB) at each probe advances linearly with slope E.
    phases = np.unwrap(np.arctan2(-b_probes, a_probes), axis=0)
    slopes = np.polyfit(times, phases, 1)[0]
    return float(np.mean(slopes))


def verify_stationary(
    state: FieldState,
    potential: PotentialSpec,
    horizon: float,
    n_max: int = 3,
    n_records: int = 128,
    dt_max: float = 1e-3,
    n_probes: int = 5,
) -> StationaryReport:
    """Evolve a candidate state and measure every stationary identity.

    Superpositions of modes legitimately fail: their densities drift in
    time, which shows up in ``density_drift``.
    """
    if horizon <= 0:
        raise ValueError(f"horizon must be positive, got {horizon}")
    grid = state.grid
    dx = grid.dx

    m_profiles = [density(state, n).values for n in range(n_max + 1)]
    p_profiles = [current(state, n).values for n in range(n_max + 1)]
    p_integrated = np.array([np.sum(prof) * dx for prof in p_profiles])

    probe_indices = np.argsort(m_profiles[0])[-n_probes:]
    record_dt = horizon / n_records
    free_run = potential.kind == "free"
    substeps = 1 if free_run else max(1, int(np.ceil(record_dt / dt_max)))
    dt = record_dt / substeps

    times = np.empty(n_records + 1)
    a_probes = np.empty((n_records + 1, n_probes))
    b_probes = np.empty((n_records + 1, n_probes))
    m0_start = m_profiles[0]
    density_drift = 0.0
    running = state.copy()
    for i in range(n_records + 1):
        times[i] = running.time - state.time
        a_probes[i] = running.a[probe_indices]
        b_probes[i] = running.b[probe_indices]
        m0_now = running.a**2 + running.b**2
        drift = np.max(np.abs(m0_now - m0_start)) / max(np.max(m0_start), 1e-300)
        density_drift = max(density_drift, float(drift))
        if i == n_records:
            break
        if free_run:
            running = propagate_free_spectral(running, record_dt)
        else:
            for _ in range(substeps):
                running = step_split(running, potential, dt)

    e_fit = _fit_rotation_frequency(times, a_probes, b_probes)

    ratio_errors = np.empty(n_max)
    for n in range(1, n_max + 1):
        denom = p_integrated[n - 1]
        if abs(denom) > 1e-12:
            ratio_errors[n - 1] = abs(p_integrated[n] / denom - e_fit)
        else:
            ratio_errors[n - 1] = abs(p_integrated[n] - e_fit * denom)

    ladder_errors = []
    for n, base in ((2, 0), (3, 1)):
        if n > n_max:
            break
        predicted = e_fit**2 * m_profiles[base]
        scale = max(np.max(np.abs(m_profiles[n])), 1e-300)
        ladder_errors.append(float(np.max(np.abs(m_profiles[n] - predicted)) / scale))

    if abs(e_fit) > 1e-12:
        c_samples = m_profiles[1] / e_fit + m_profiles[0]
        c_fit = float(np.mean(c_samples))
        c_residual = m_profiles[1] - e_fit * (c_fit - m_profiles[0])
        c_fit_residual = float(
            np.max(np.abs(c_residual)) / max(np.max(np.abs(m_profiles[1])), 1e-300)
        )
    else:
        c_fit = float("nan")
        c_fit_residual = float("nan")

    flatness = np.empty(n_max + 1)
    for n in range(n_max + 1):
        spread = float(np.max(p_profiles[n]) - np.min(p_profiles[n]))
        mean = float(np.mean(p_profiles[n]))
        flatness[n] = spread / abs(mean) if abs(mean) > 1e-12 else spread

    return StationaryReport(
        e_fit=e_fit,
        current_ratio_errors=ratio_errors,
        density_ladder_errors=np.array(ladder_errors),
        c_fit=c_fit,
        c_fit_residual=c_fit_residual,
        current_flatness=flatness,
        density_drift=density_drift,
    )
