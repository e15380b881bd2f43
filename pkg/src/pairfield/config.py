"""Run configuration: flat key-value documents with dotted section keys.

One ``section.key = value`` pair per line, ``#`` comments, every key
optional with documented defaults.  The format is deliberately trivial so
that errors are line-addressable and a run is reproducible from the config
file alone.

    grid.n = 1024            # samples
    init.kind = gaussian     # gaussian | planewave | mode_superposition
    potential.kind = free    # free | harmonic | barrier | well | tabulated
    evolve.dt = 1e-3
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .core import FieldState, GridSpec, make_grid, normalize
from .dynamics import SCHEMES, EvolveConfig, PotentialSpec
from .stationary import eigenmodes, plane_wave_state

__all__ = [
    "ConfigError",
    "SimulationConfig",
    "GridSection",
    "InitSection",
    "PotentialSection",
    "EvolveSection",
    "DiagnosticsSection",
    "parse_config",
    "format_config",
    "default_config",
    "build_initial_state",
]

INIT_KINDS = ("gaussian", "planewave", "mode_superposition")
POTENTIAL_KINDS = ("free", "harmonic", "barrier", "well", "tabulated")


class ConfigError(ValueError):
    """Configuration problem, carrying a line number when one applies."""

    def __init__(self, message: str, line: int | None = None):
        self.line = line
        if line is not None:
            message = f"line {line}: {message}"
        super().__init__(message)


@dataclass(frozen=True)
class GridSection:
    xmin: float = -40.0
    xmax: float = 40.0
    n: int = 1024


@dataclass(frozen=True)
class InitSection:
    kind: str = "gaussian"
    x0: float = 0.0
    sigma: float = 1.0
    k: float = 0.0
    modes: tuple[int, ...] = (0,)
    weights: tuple[float, ...] = (1.0,)


@dataclass(frozen=True)
class PotentialSection:
    kind: str = "free"
    kappa: float = 1.0
    height: float = 1.0
    width: float = 1.0
    depth: float = 1.0
    table: tuple[float, ...] | None = None


@dataclass(frozen=True)
class EvolveSection:
    t_final: float = 1.0
    dt: float = 1e-3
    scheme: str = "split_step"
    record_every: int = 100


@dataclass(frozen=True)
class DiagnosticsSection:
    nmax: int = 3
    confinement_threshold: float = 1e-12


@dataclass(frozen=True)
class SimulationConfig:
    grid: GridSection = field(default_factory=GridSection)
    init: InitSection = field(default_factory=InitSection)
    potential: PotentialSection = field(default_factory=PotentialSection)
    evolve: EvolveSection = field(default_factory=EvolveSection)
    diagnostics: DiagnosticsSection = field(default_factory=DiagnosticsSection)

    def make_grid(self) -> GridSpec:
        return make_grid(self.grid.xmin, self.grid.xmax, self.grid.n)

    def make_potential(self) -> PotentialSpec:
        p = self.potential
        if p.kind == "free":
            return PotentialSpec.free()
        if p.kind == "harmonic":
            return PotentialSpec.harmonic(p.kappa)
        if p.kind == "barrier":
            return PotentialSpec.barrier(p.height, p.width)
        if p.kind == "well":
            return PotentialSpec.well(p.depth, p.width)
        assert p.table is not None
        return PotentialSpec.tabulated(p.table)

    def make_evolve_config(self) -> EvolveConfig:
        e = self.evolve
        return EvolveConfig(e.t_final, e.dt, e.scheme, e.record_every)


def _parse_float(text: str) -> float:
    value = float(text)
    if not np.isfinite(value):
        raise ValueError("value must be finite")
    return value


def _parse_positive_float(text: str) -> float:
    value = _parse_float(text)
    if value <= 0:
        raise ValueError("value must be positive")
    return value


def _parse_int(text: str) -> int:
    try:
        return int(text, 10)
    except ValueError:
        raise ValueError("value must be an integer") from None


def _parse_positive_int(text: str) -> int:
    value = _parse_int(text)
    if value <= 0:
        raise ValueError("value must be a positive integer")
    return value


def _parse_word(allowed: tuple[str, ...]):
    def parse(text: str) -> str:
        if text not in allowed:
            raise ValueError(f"must be one of {', '.join(allowed)}")
        return text

    return parse


def _parse_int_list(text: str) -> tuple[int, ...]:
    items = [item.strip() for item in text.split(",") if item.strip()]
    if not items:
        raise ValueError("expected a comma-separated list of integers")
    values = tuple(_parse_int(item) for item in items)
    if any(v < 0 for v in values):
        raise ValueError("mode indices must be nonnegative")
    return values


def _parse_float_list(text: str) -> tuple[float, ...]:
    items = [item.strip() for item in text.split(",") if item.strip()]
    if not items:
        raise ValueError("expected a comma-separated list of numbers")
    return tuple(_parse_float(item) for item in items)


def _parse_grid_n(text: str) -> int:
    value = _parse_positive_int(text)
    if value < 8:
        raise ValueError("grid needs at least 8 points")
    return value


# key -> (section, field, parser); also fixes the canonical serialization order.
_SCHEMA = {
    "grid.xmin": ("grid", "xmin", _parse_float),
    "grid.xmax": ("grid", "xmax", _parse_float),
    "grid.n": ("grid", "n", _parse_grid_n),
    "init.kind": ("init", "kind", _parse_word(INIT_KINDS)),
    "init.x0": ("init", "x0", _parse_float),
    "init.sigma": ("init", "sigma", _parse_positive_float),
    "init.k": ("init", "k", _parse_float),
    "init.modes": ("init", "modes", _parse_int_list),
    "init.weights": ("init", "weights", _parse_float_list),
    "potential.kind": ("potential", "kind", _parse_word(POTENTIAL_KINDS)),
    "potential.kappa": ("potential", "kappa", _parse_float),
    "potential.height": ("potential", "height", _parse_float),
    "potential.width": ("potential", "width", _parse_positive_float),
    "potential.depth": ("potential", "depth", _parse_float),
    "potential.table": ("potential", "table", _parse_float_list),
    "evolve.t_final": ("evolve", "t_final", _parse_positive_float),
    "evolve.dt": ("evolve", "dt", _parse_positive_float),
    "evolve.scheme": ("evolve", "scheme", _parse_word(SCHEMES)),
    "evolve.record_every": ("evolve", "record_every", _parse_positive_int),
    "diagnostics.nmax": ("diagnostics", "nmax", _parse_positive_int),
    "diagnostics.confinement_threshold": (
        "diagnostics",
        "confinement_threshold",
        _parse_positive_float,
    ),
}

_SECTIONS = {
    "grid": GridSection,
    "init": InitSection,
    "potential": PotentialSection,
    "evolve": EvolveSection,
    "diagnostics": DiagnosticsSection,
}


def parse_config(text: str) -> SimulationConfig:
    """Parse and fully validate a config document; defaults fill the gaps."""
    values: dict[str, dict[str, object]] = {name: {} for name in _SECTIONS}
    seen: dict[str, int] = {}
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if "=" not in line:
            raise ConfigError(f"expected 'key = value', got {line!r}", lineno)
        key, _, value_text = line.partition("=")
        key = key.strip()
        value_text = value_text.strip()
        if key not in _SCHEMA:
            raise ConfigError(f"unknown key {key!r}", lineno)
        if key in seen:
            raise ConfigError(f"duplicate key {key!r} (first set on line {seen[key]})", lineno)
        seen[key] = lineno
        section, field_name, parser = _SCHEMA[key]
        try:
            values[section][field_name] = parser(value_text)
        except ValueError as exc:
            raise ConfigError(f"invalid value for {key!r}: {exc}", lineno) from None

    config = SimulationConfig(
        **{name: cls(**values[name]) for name, cls in _SECTIONS.items()}
    )
    _cross_validate(config)
    return config


def _cross_validate(config: SimulationConfig) -> None:
    if config.grid.xmax <= config.grid.xmin:
        raise ConfigError(
            f"grid.xmax = {config.grid.xmax} must exceed grid.xmin = {config.grid.xmin}"
        )
    if len(config.init.modes) != len(config.init.weights):
        raise ConfigError(
            f"init.modes has {len(config.init.modes)} entries but init.weights has "
            f"{len(config.init.weights)}"
        )
    if config.potential.kind == "tabulated":
        if config.potential.table is None:
            raise ConfigError("missing required key 'potential.table' for the tabulated potential")
        if len(config.potential.table) != config.grid.n:
            raise ConfigError(
                f"potential.table has {len(config.potential.table)} samples, "
                f"grid.n is {config.grid.n}"
            )
    steps = config.evolve.t_final / config.evolve.dt
    if abs(steps - round(steps)) > 1e-9 * max(1.0, steps) or round(steps) < 1:
        raise ConfigError(
            f"evolve.t_final = {config.evolve.t_final} must be an integer multiple of "
            f"evolve.dt = {config.evolve.dt}"
        )


def default_config() -> SimulationConfig:
    return SimulationConfig()


def _format_value(value: object) -> str:
    if isinstance(value, str):
        return value
    if isinstance(value, tuple):
        return ", ".join(_format_value(item) for item in value)
    if isinstance(value, float):
        return repr(value)
    return str(value)


def format_config(config: SimulationConfig) -> str:
    """Canonical serialization: parse(format_config(c)) == c for valid c."""
    lines = []
    for key, (section, field_name, _) in _SCHEMA.items():
        value = getattr(getattr(config, section), field_name)
        if value is None:
            continue
        lines.append(f"{key} = {_format_value(value)}")
    return "\n".join(lines) + "\n"


def build_initial_state(config: SimulationConfig) -> FieldState:
    """Realize the configured initial condition on the configured grid.

    gaussian: normalized packet with A = phi*cos(kx), B = phi*sin(kx);
    planewave: the commensurate stationary pair; mode_superposition: a
    normalized weighted sum of potential eigenmode profiles (with B = 0).
    """
    grid = config.make_grid()
    init = config.init
    if init.kind == "gaussian":
        if init.sigma > grid.length / 10.0:
            raise ConfigError(
                f"init.sigma = {init.sigma} exceeds a tenth of the box length "
                f"{grid.length}; the packet would not be confined"
            )
        x = grid.x
        envelope = (np.pi * init.sigma**2) ** (-0.25) * np.exp(
            -((x - init.x0) ** 2) / (2.0 * init.sigma**2)
        )
        state = FieldState(
            grid, envelope * np.cos(init.k * x), envelope * np.sin(init.k * x), 0.0
        )
        return normalize(state)
    if init.kind == "planewave":
        return plane_wave_state(init.k, grid)
    modes = eigenmodes(config.make_potential(), grid, count=max(init.modes) + 1)
    profile = np.zeros(grid.n_points)
    for index, weight in zip(init.modes, init.weights):
        profile += weight * modes[index].profile
    return normalize(FieldState(grid, profile, np.zeros_like(profile), 0.0))
