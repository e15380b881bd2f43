"""Numerical laboratory for a coupled pair of real fields.

The pair (A, B) evolves under dA/dt = -d2B/dx2 + V*B, dB/dt = d2A/dx2 - V*A,
which is the 1D Schrodinger equation in disguise (psi = A + iB, hbar = 1,
mass 1/2).  The package integrates the pair with spectral and
finite-difference schemes, computes its conserved densities and currents,
applies its symmetry transformations, solves for stationary modes, and
cross-validates everything against an independent complex-field oracle.
"""

from .core import (
    DensityProfile,
    DiagnosticsRecord,
    FieldState,
    GridSpec,
    center,
    confinement_check,
    continuity_residual,
    current,
    density,
    density_variance,
    first_moment,
    integrate_invariants,
    integrate_invariants_by_parts,
    make_grid,
    normalize,
    spatial_derivative,
)
from .dynamics import (
    EvolveConfig,
    PotentialSpec,
    energy,
    evolve,
    leapfrog_stability_limit,
    propagate_free_spectral,
    propagate_taylor,
    step_leapfrog,
    step_split,
    time_derivative,
)
from .oracle import (
    ComplexState,
    GaussianParams,
    from_complex,
    gaussian_analytic,
    gaussian_width,
    moment_expectation,
    schrodinger_evolve,
    to_complex,
)
from .stationary import (
    Mode,
    StationaryReport,
    eigenmodes,
    mode_residual,
    plane_wave_state,
    stationary_state_from_mode,
    verify_stationary,
)
from .transforms import (
    BoostParams,
    RotationParams,
    boost,
    phase_rotate,
    predict_boosted_invariants,
    spectral_shift,
    translate,
)

__version__ = "0.1.0"

__all__ = [
    "BoostParams",
    "ComplexState",
    "DensityProfile",
    "DiagnosticsRecord",
    "EvolveConfig",
    "FieldState",
    "GaussianParams",
    "GridSpec",
    "Mode",
    "PotentialSpec",
    "RotationParams",
    "StationaryReport",
    "boost",
    "center",
    "confinement_check",
    "continuity_residual",
    "current",
    "density",
    "density_variance",
    "eigenmodes",
    "energy",
    "evolve",
    "first_moment",
    "from_complex",
    "gaussian_analytic",
    "gaussian_width",
    "integrate_invariants",
    "integrate_invariants_by_parts",
    "leapfrog_stability_limit",
    "make_grid",
    "mode_residual",
    "moment_expectation",
    "normalize",
    "phase_rotate",
    "plane_wave_state",
    "predict_boosted_invariants",
    "propagate_free_spectral",
    "propagate_taylor",
    "schrodinger_evolve",
    "spatial_derivative",
    "spectral_shift",
    "stationary_state_from_mode",
    "step_leapfrog",
    "step_split",
    "time_derivative",
    "to_complex",
    "translate",
    "verify_stationary",
]
