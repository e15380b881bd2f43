"""Symmetry operations on the field pair.

Three maps send solutions of the coupled equations to solutions: a global
internal rotation of the (A, B) plane, a periodic space translation, and a
Galilean boost that composes a translation with a position-dependent
internal rotation.  The boost shifts the integrated momentum P_0 by v/2
and the kinetic term M_1 by v*P_0 + (v/2)^2 on normalized states;
:func:`predict_boosted_invariants` encodes exactly those laws.
"""

from __future__ import annotations

from dataclasses import dataclass, replace

import numpy as np

from .core import (
    DEFAULT_CONFINEMENT_THRESHOLD,
    DiagnosticsRecord,
    FieldState,
    GridSpec,
    _edge_band_max,
    confinement_check,
)

__all__ = [
    "RotationParams",
    "BoostParams",
    "phase_rotate",
    "translate",
    "spectral_shift",
    "boost",
    "predict_boosted_invariants",
]


@dataclass(frozen=True)
class RotationParams:
    """Coefficients of the internal rotation A' = cA - sB, B' = sA + cB."""

    c: float
    s: float

    def __post_init__(self) -> None:
        if not (np.isfinite(self.c) and np.isfinite(self.s)):
            raise ValueError("rotation coefficients must be finite")

    @property
    def modulus_squared(self) -> float:
        return self.c**2 + self.s**2

    @property
    def unit_modulus(self) -> bool:
        return abs(self.modulus_squared - 1.0) < 1e-12


@dataclass(frozen=True)
class BoostParams:
    """Boost velocity."""

    v: float

    def __post_init__(self) -> None:
        if not np.isfinite(self.v):
            raise ValueError("boost velocity must be finite")


def phase_rotate(state: FieldState, params: RotationParams) -> FieldState:
    """Internal rotation; scales every density and current by c^2 + s^2."""
    c, s = params.c, params.s
    return FieldState(
        state.grid,
        c * state.a - s * state.b,
        s * state.a + c * state.b,
        state.time,
    )


def spectral_shift(values: np.ndarray, grid: GridSpec, shift: float) -> np.ndarray:
    """Sample f(x - shift) from samples of f, by Fourier interpolation.

    Exact for band-limited periodic profiles; valid for arbitrary
    non-grid-multiple shifts.
    """
    if shift == 0.0:
        return np.asarray(values, dtype=float).copy()
    coef = np.fft.fft(values)
    coef *= np.exp(-1j * grid.wavenumbers * shift)
    return np.fft.ifft(coef).real


def translate(state: FieldState, shift: float) -> FieldState:
    """Shift both fields by the same displacement; all M_n, P_n unchanged."""
    return FieldState(
        state.grid,
        spectral_shift(state.a, state.grid, shift),
        spectral_shift(state.b, state.grid, shift),
        state.time,
    )


def boost(
    state: FieldState,
    params: BoostParams,
    threshold: float = DEFAULT_CONFINEMENT_THRESHOLD,
) -> FieldState:
    """Galilean boost of the field pair by velocity v, at the state's own time.

    Applies the spatial shift x -> x - v*t by spectral interpolation, then
    the position-dependent internal rotation with angle (v/2)(x - (v/2)t).
    Requires a confined state: both pieces assume negligible edge amplitude.
    """
    if not confinement_check(state, threshold):
        raise ValueError(
            "boost requires a confined state; edge amplitude "
            f"{_edge_band_max(state):.3e} exceeds threshold {threshold:.3e}"
        )
    v = params.v
    t = state.time
    displacement = v * t
    if displacement != 0.0:
        a = spectral_shift(state.a, state.grid, displacement)
        b = spectral_shift(state.b, state.grid, displacement)
    else:
        a, b = state.a, state.b
    theta = 0.5 * v * (state.grid.x - 0.5 * v * t)
    cos_t, sin_t = np.cos(theta), np.sin(theta)
    return FieldState(
        state.grid,
        cos_t * a - sin_t * b,
        sin_t * a + cos_t * b,
        t,
    )


def predict_boosted_invariants(record: DiagnosticsRecord, v: float) -> DiagnosticsRecord:
    """Post-boost invariants predicted from a pre-boost record.

    Valid for normalized records (m[0] = 1):  P_0' = P_0 + v/2 and
    M_1' = M_1 + v*P_0 + (v/2)^2, with M_0 unchanged.  Orders n >= 2 have
    no particle observable attached and are marked NaN (unpredicted).
    """
    if abs(record.m[0] - 1.0) > 1e-9:
        raise ValueError(
            f"prediction assumes the normalization M_0 = 1, got M_0 = {record.m[0]!r}"
        )
    if v == 0.0:
        return replace(record, m=record.m.copy(), p=record.p.copy())
    m = np.full_like(record.m, np.nan)
    p = np.full_like(record.p, np.nan)
    m[0] = record.m[0]
    p[0] = record.p[0] + 0.5 * v
    energy = float("nan")
    if len(m) > 1:
        m[1] = record.m[1] + v * record.p[0] + (0.5 * v) ** 2
        energy = float(m[1])
    return DiagnosticsRecord(
        time=record.time,
        m=m,
        p=p,
        center=record.center,
        energy=energy,
        boundary_max=record.boundary_max,
        confined=record.confined,
    )
