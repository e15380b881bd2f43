import numpy as np
import pytest

from pairfield import density, integrate_invariants, verify_stationary
from pairfield.config import (
    ConfigError,
    build_initial_state,
    default_config,
    format_config,
    parse_config,
)


class TestParseConfig:
    def test_empty_document_gives_defaults(self):
        assert parse_config("") == default_config()

    def test_defaults_values(self):
        config = parse_config("")
        assert config.grid.n == 1024
        assert (config.grid.xmin, config.grid.xmax) == (-40.0, 40.0)
        assert config.init.kind == "gaussian"
        assert (config.init.x0, config.init.sigma, config.init.k) == (0.0, 1.0, 0.0)
        assert config.potential.kind == "free"
        assert config.evolve.dt == 1e-3
        assert config.diagnostics.nmax == 3

    def test_single_override(self):
        config = parse_config("init.k = 3\n")
        assert config.init.k == 3.0
        assert config.init.kind == "gaussian"

    def test_comments_and_blanks(self):
        text = "# a comment\n\ngrid.n = 256  # trailing comment\n   \n"
        assert parse_config(text).grid.n == 256

    def test_negative_grid_n_names_key_and_line(self):
        with pytest.raises(ConfigError, match="line 2.*grid.n"):
            parse_config("# header\ngrid.n = -4\n")

    def test_unknown_key(self):
        with pytest.raises(ConfigError, match="line 1.*unknown key"):
            parse_config("grid.dx = 0.1\n")

    def test_non_numeric_value(self):
        with pytest.raises(ConfigError, match="line 1.*evolve.dt"):
            parse_config("evolve.dt = fast\n")

    def test_duplicate_key(self):
        with pytest.raises(ConfigError, match="duplicate"):
            parse_config("grid.n = 256\ngrid.n = 512\n")

    def test_missing_equals(self):
        with pytest.raises(ConfigError, match="key = value"):
            parse_config("grid.n 256\n")

    def test_reversed_span_rejected(self):
        with pytest.raises(ConfigError, match="xmax"):
            parse_config("grid.xmin = 10\ngrid.xmax = -10\n")

    def test_tabulated_requires_table(self):
        with pytest.raises(ConfigError, match="potential.table"):
            parse_config("potential.kind = tabulated\n")

    def test_table_length_must_match_grid(self):
        with pytest.raises(ConfigError, match="samples"):
            parse_config("grid.n = 16\npotential.kind = tabulated\npotential.table = 1, 2, 3\n")

    def test_weights_modes_length_mismatch(self):
        with pytest.raises(ConfigError, match="weights"):
            parse_config("init.modes = 0, 1\ninit.weights = 1\n")

    def test_t_final_must_divide(self):
        with pytest.raises(ConfigError, match="integer multiple"):
            parse_config("evolve.t_final = 0.0505\nevolve.dt = 0.01\n")

    def test_bad_scheme(self):
        with pytest.raises(ConfigError, match="one of"):
            parse_config("evolve.scheme = rk4\n")


class TestFormatConfig:
    def test_round_trip_is_fixed_point(self):
        text = "init.kind = planewave\ninit.k = 0.5\ngrid.xmin = 0\ngrid.xmax = 12.566370614359172\ngrid.n = 128\n"
        config = parse_config(text)
        assert parse_config(format_config(config)) == config

    def test_round_trip_with_table(self):
        table = ", ".join(str(v) for v in np.linspace(0, 1, 16))
        text = f"grid.n = 16\npotential.kind = tabulated\npotential.table = {table}\n"
        config = parse_config(text)
        assert parse_config(format_config(config)) == config

    def test_default_round_trip(self):
        assert parse_config(format_config(default_config())) == default_config()


class TestBuildInitialState:
    def test_default_gaussian(self):
        config = default_config()
        state = build_initial_state(config)
        record = integrate_invariants(state)
        assert record.m[0] == pytest.approx(1.0, abs=1e-12)
        assert abs(record.p[0]) < 1e-12

    def test_gaussian_carrier_momentum(self):
        config = parse_config("init.k = 3\n")
        record = integrate_invariants(build_initial_state(config))
        assert record.p[0] == pytest.approx(3.0, abs=1e-10)

    def test_too_wide_gaussian_rejected(self):
        with pytest.raises(ConfigError, match="tenth"):
            build_initial_state(parse_config("init.sigma = 9\n"))

    def test_planewave(self):
        text = "grid.xmin = 0\ngrid.xmax = 6.283185307179586\ngrid.n = 64\ninit.kind = planewave\ninit.k = 2\n"
        state = build_initial_state(parse_config(text))
        assert np.max(np.abs(state.a - np.cos(2 * state.grid.x))) < 1e-12

    def test_incommensurate_planewave_rejected(self):
        text = "init.kind = planewave\ninit.k = 2\n"
        with pytest.raises(ValueError, match="commensurate"):
            build_initial_state(parse_config(text))

    def test_mode_superposition_is_normalized_but_not_stationary(self):
        text = (
            "grid.xmin = -20\ngrid.xmax = 20\ngrid.n = 256\n"
            "potential.kind = harmonic\n"
            "init.kind = mode_superposition\ninit.modes = 0, 1\ninit.weights = 1, 1\n"
        )
        config = parse_config(text)
        state = build_initial_state(config)
        assert density(state, 0).integral() == pytest.approx(1.0, abs=1e-12)
        report = verify_stationary(state, config.make_potential(), horizon=1.0, n_records=64)
        assert report.density_drift > 0.1


class TestSectionBuilders:
    def test_make_grid(self):
        grid = default_config().make_grid()
        assert grid.n_points == 1024
        assert grid.length == 80.0

    def test_make_potential_presets(self):
        for kind in ("free", "harmonic", "barrier", "well"):
            config = parse_config(f"potential.kind = {kind}\n")
            assert config.make_potential().kind == kind

    def test_make_evolve_config(self):
        config = parse_config("evolve.t_final = 2\nevolve.record_every = 50\n")
        evolve_config = config.make_evolve_config()
        assert evolve_config.n_steps == 2000
        assert evolve_config.record_every == 50
