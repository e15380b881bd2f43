import io

import numpy as np
import pytest

from pairfield import DiagnosticsRecord, EvolveConfig, PotentialSpec, evolve
from pairfield.csvio import csv_header, read_diagnostics_csv, write_diagnostics_csv
from pairfield.snapshots import (
    SNAPSHOT_MAGIC,
    read_snapshot,
    state_from_bytes,
    state_to_bytes,
    write_snapshot,
)

from .conftest import make_gaussian, random_confined_state


class TestSnapshots:
    def test_round_trip_bit_exact(self, grid_small):
        state = random_confined_state(grid_small, seed=21)
        state.time = 0.375
        back = state_from_bytes(state_to_bytes(state))
        assert np.array_equal(back.a, state.a)
        assert np.array_equal(back.b, state.b)
        assert back.time == state.time
        assert back.grid == state.grid

    def test_file_round_trip(self, grid_small, tmp_path):
        state = make_gaussian(grid_small, k=1.0)
        path = tmp_path / "state.qfld"
        write_snapshot(state, path)
        back = read_snapshot(path)
        assert np.array_equal(back.a, state.a)
        assert np.array_equal(back.b, state.b)

    def test_corrupted_magic(self, grid_small):
        data = bytearray(state_to_bytes(make_gaussian(grid_small)))
        data[0] = ord("X")
        with pytest.raises(ValueError, match="magic"):
            state_from_bytes(bytes(data))

    def test_unsupported_version(self, grid_small):
        data = bytearray(state_to_bytes(make_gaussian(grid_small)))
        data[len(SNAPSHOT_MAGIC)] = 9
        with pytest.raises(ValueError, match="version 9"):
            state_from_bytes(bytes(data))

    def test_truncated_payload_names_lengths(self, grid_small):
        data = state_to_bytes(make_gaussian(grid_small))
        expected = 2 * grid_small.n_points * 8
        with pytest.raises(ValueError, match=f"expected {expected}.*got {expected - 16}"):
            state_from_bytes(data[:-16])

    def test_truncated_header(self):
        with pytest.raises(ValueError, match="too short"):
            state_from_bytes(SNAPSHOT_MAGIC + bytes([1, 0, 0]))


class TestDiagnosticsCsv:
    def test_header_matches_contract(self):
        assert csv_header(3) == "t,M0,P0,M1,P1,M2,P2,M3,P3,X,H,boundary_max"

    def test_empty_sequence_header_only(self):
        sink = io.BytesIO()
        write_diagnostics_csv([], sink)
        assert sink.getvalue() == b"t,M0,P0,M1,P1,M2,P2,M3,P3,X,H,boundary_max\n"

    def test_zero_record_row_of_zeros(self):
        record = DiagnosticsRecord(
            time=0.0, m=np.zeros(4), p=np.zeros(4), center=0.0, energy=0.0, boundary_max=0.0
        )
        sink = io.BytesIO()
        write_diagnostics_csv([record], sink)
        row = sink.getvalue().decode().splitlines()[1]
        assert row == ",".join(["0.0"] * 12)

    def test_round_trip_exact(self, grid_small):
        state = random_confined_state(grid_small, seed=2)
        from pairfield import integrate_invariants

        records = [integrate_invariants(state, n_max=3)]
        sink = io.BytesIO()
        write_diagnostics_csv(records, sink)
        back = read_diagnostics_csv(sink.getvalue())
        assert len(back) == 1
        assert np.array_equal(back[0].m, records[0].m)
        assert np.array_equal(back[0].p, records[0].p)
        assert back[0].time == records[0].time
        assert back[0].center == records[0].center

    def test_conservation_run_survives_round_trip(self, grid_small):
        state = make_gaussian(grid_small, k=1.0)
        config = EvolveConfig(t_final=0.5, dt=1e-2, scheme="spectral_free", record_every=5)
        _, records = evolve(state, PotentialSpec.free(), config)
        sink = io.BytesIO()
        write_diagnostics_csv(records, sink)
        back = read_diagnostics_csv(sink.getvalue())
        m0_column = np.array([r.m[0] for r in back])
        assert np.max(np.abs(m0_column - m0_column[0])) < 1e-10

    def test_record_with_too_few_orders_rejected(self):
        record = DiagnosticsRecord(
            time=0.0, m=np.zeros(2), p=np.zeros(2), center=0.0, energy=0.0, boundary_max=0.0
        )
        sink = io.BytesIO()
        with pytest.raises(ValueError, match="orders"):
            write_diagnostics_csv([record], sink, n_max=3)

    def test_reader_rejects_garbage(self):
        with pytest.raises(ValueError, match="header"):
            read_diagnostics_csv(b"a,b,c\n1,2,3\n")
