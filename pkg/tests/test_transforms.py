import numpy as np
import pytest

from pairfield import (
    BoostParams,
    FieldState,
    GaussianParams,
    RotationParams,
    boost,
    center,
    current,
    density,
    from_complex,
    gaussian_analytic,
    integrate_invariants,
    make_grid,
    phase_rotate,
    predict_boosted_invariants,
    propagate_free_spectral,
    spatial_derivative,
    spectral_shift,
    translate,
)

from .conftest import make_gaussian


class TestPhaseRotate:
    def test_identity(self, grid_small):
        state = make_gaussian(grid_small, k=1.0)
        rotated = phase_rotate(state, RotationParams(1.0, 0.0))
        assert np.array_equal(rotated.a, state.a)
        assert np.array_equal(rotated.b, state.b)

    def test_quarter_turn_twice_negates(self, grid_small):
        state = make_gaussian(grid_small, k=1.0)
        quarter = RotationParams(0.0, 1.0)
        twice = phase_rotate(phase_rotate(state, quarter), quarter)
        assert np.max(np.abs(twice.a + state.a)) < 1e-15
        assert np.max(np.abs(twice.b + state.b)) < 1e-15

    def test_three_four_scales_by_25(self):
        # well-resolved grid: high-order derivative roundoff stays below the
        # 1e-12 relative budget
        grid = make_grid(-20, 20, 128)
        state = make_gaussian(grid, sigma=1.5, k=0.5)
        rotated = phase_rotate(state, RotationParams(3.0, 4.0))
        for n in range(4):
            before_m = density(state, n).values
            after_m = density(rotated, n).values
            assert np.max(np.abs(after_m - 25.0 * before_m)) < 1e-12 * np.max(np.abs(after_m))
            before_p = current(state, n).values
            after_p = current(rotated, n).values
            assert np.max(np.abs(after_p - 25.0 * before_p)) < 1e-12 * np.max(np.abs(after_p))

    def test_unit_modulus_leaves_profiles(self):
        grid = make_grid(-20, 20, 128)
        state = make_gaussian(grid, sigma=1.5, k=0.5)
        params = RotationParams(0.6, 0.8)
        assert params.unit_modulus
        rotated = phase_rotate(state, params)
        for n in range(4):
            assert np.max(np.abs(density(rotated, n).values - density(state, n).values)) < 1e-12
            assert np.max(np.abs(current(rotated, n).values - current(state, n).values)) < 1e-12

    def test_nonfinite_params_rejected(self):
        with pytest.raises(ValueError):
            RotationParams(np.inf, 0.0)


class TestTranslate:
    def test_zero_shift_identity(self, grid_small):
        state = make_gaussian(grid_small)
        shifted = translate(state, 0.0)
        assert np.array_equal(shifted.a, state.a)

    def test_full_box_identity(self, grid_small):
        state = make_gaussian(grid_small, k=1.0)
        shifted = translate(state, grid_small.length)
        assert np.max(np.abs(shifted.a - state.a)) < 1e-12
        assert np.max(np.abs(shifted.b - state.b)) < 1e-12

    def test_moves_center(self, grid_wide):
        state = make_gaussian(grid_wide)
        assert center(translate(state, 3.0)) == pytest.approx(3.0, abs=1e-10)

    def test_invariants_unchanged(self, grid_medium):
        state = make_gaussian(grid_medium, k=2.0)
        before = integrate_invariants(state)
        after = integrate_invariants(translate(state, 1.2345))
        assert np.max(np.abs(after.m - before.m) / np.abs(before.m)) < 1e-12
        assert np.max(np.abs(after.p - before.p) / np.abs(before.p)) < 1e-12

    def test_commutes_with_free_evolution(self, grid_medium):
        state = make_gaussian(grid_medium, k=1.0)
        path1 = translate(propagate_free_spectral(state, 0.4), 2.0)
        path2 = propagate_free_spectral(translate(state, 2.0), 0.4)
        assert np.max(np.abs(path1.a - path2.a)) < 1e-9
        assert np.max(np.abs(path1.b - path2.b)) < 1e-9


class TestBoost:
    def test_zero_velocity_identity(self, grid_small):
        state = make_gaussian(grid_small)
        boosted = boost(state, BoostParams(0.0))
        assert np.array_equal(boosted.a, state.a)
        assert np.array_equal(boosted.b, state.b)

    def test_rest_packet_gains_half_v(self, grid_wide):
        state = make_gaussian(grid_wide)
        boosted = boost(state, BoostParams(1.0))
        record = integrate_invariants(boosted)
        assert record.p[0] == pytest.approx(0.5, abs=1e-10)

    def test_momentum_and_energy_laws(self, grid_wide):
        # for any normalized confined state: P0 += v/2, M1 += v*P0 + (v/2)^2
        state = make_gaussian(grid_wide, k=1.0)
        before = integrate_invariants(state)
        v = 0.75
        after = integrate_invariants(boost(state, BoostParams(v)))
        assert after.p[0] == pytest.approx(before.p[0] + v / 2, abs=1e-10)
        assert after.m[1] == pytest.approx(
            before.m[1] + v * before.p[0] + (v / 2) ** 2, abs=1e-10
        )

    def test_density_profile_unchanged_at_t0(self, grid_wide):
        state = make_gaussian(grid_wide)
        boosted = boost(state, BoostParams(2.0))
        diff = density(boosted, 0).values - density(state, 0).values
        assert np.max(np.abs(diff)) < 1e-14

    def test_density_shifted_by_vt(self, grid_wide):
        # at time t the boost carries the localization density along by v*t
        state = propagate_free_spectral(make_gaussian(grid_wide), 0.7)
        v = 1.3
        boosted = boost(state, BoostParams(v))
        shifted = spectral_shift(density(state, 0).values, grid_wide, v * 0.7)
        assert np.max(np.abs(density(boosted, 0).values - shifted)) < 1e-8

    def test_boosted_state_satisfies_field_equations(self, grid_wide):
        # five-point stencil in t of the boosted analytic family vs the
        # equations of motion evaluated on the boosted state
        v, h = 1.0, 1e-3

        def boosted_at(t):
            packet = gaussian_analytic(GaussianParams(0.0, 1.0, 0.5, t), grid_wide)
            return boost(from_complex(packet), BoostParams(v))

        sm2, sm1, sp1, sp2 = (boosted_at(t) for t in (-2 * h, -h, h, 2 * h))
        middle = boosted_at(0.0)
        dt_a = (-sp2.a + 8 * sp1.a - 8 * sm1.a + sm2.a) / (12 * h)
        dt_b = (-sp2.b + 8 * sp1.b - 8 * sm1.b + sm2.b) / (12 * h)
        rhs_a = -spatial_derivative(middle.b, grid_wide, 2)
        rhs_b = spatial_derivative(middle.a, grid_wide, 2)
        assert np.max(np.abs(dt_a - rhs_a)) < 1e-8
        assert np.max(np.abs(dt_b - rhs_b)) < 1e-8

    def test_rejects_plane_wave(self, grid_ring):
        state = FieldState(grid_ring, np.cos(grid_ring.x), np.sin(grid_ring.x))
        with pytest.raises(ValueError, match="confined"):
            boost(state, BoostParams(1.0))


class TestPredictBoostedInvariants:
    def test_rest_case(self, grid_wide):
        record = integrate_invariants(make_gaussian(grid_wide))
        predicted = predict_boosted_invariants(record, 2.0)
        assert predicted.p[0] == pytest.approx(record.p[0] + 1.0, abs=1e-12)
        assert predicted.m[1] == pytest.approx(record.m[1] + 1.0, abs=1e-12)

    def test_kinematic_pattern(self, grid_wide):
        # u/2 momentum and u^2/4 kinetic map to (u+v)/2 and (u+v)^2/4
        record = integrate_invariants(make_gaussian(grid_wide))
        record.p[0], record.m[1] = 0.5, 0.25
        predicted = predict_boosted_invariants(record, 1.0)
        assert predicted.p[0] == pytest.approx(1.0, abs=1e-14)
        assert predicted.m[1] == pytest.approx(1.0, abs=1e-14)

    def test_zero_velocity_unchanged(self, grid_wide):
        record = integrate_invariants(make_gaussian(grid_wide, k=1.0))
        predicted = predict_boosted_invariants(record, 0.0)
        assert np.array_equal(predicted.m, record.m)
        assert np.array_equal(predicted.p, record.p)

    def test_higher_orders_unpredicted(self, grid_wide):
        record = integrate_invariants(make_gaussian(grid_wide), n_max=3)
        predicted = predict_boosted_invariants(record, 1.0)
        assert np.all(np.isnan(predicted.m[2:]))
        assert np.all(np.isnan(predicted.p[1:]))

    def test_rejects_unnormalized(self, grid_wide):
        state = make_gaussian(grid_wide)
        record = integrate_invariants(FieldState(grid_wide, 2 * state.a, 2 * state.b))
        with pytest.raises(ValueError, match="M_0 = 1"):
            predict_boosted_invariants(record, 1.0)

    def test_matches_measured_boost(self, grid_wide):
        state = make_gaussian(grid_wide, k=1.0)
        record = integrate_invariants(state)
        predicted = predict_boosted_invariants(record, 1.5)
        measured = integrate_invariants(boost(state, BoostParams(1.5)))
        assert measured.p[0] == pytest.approx(predicted.p[0], abs=1e-8)
        assert measured.m[1] == pytest.approx(predicted.m[1], abs=1e-8)
