"""Binary snapshot format for field states.

Layout (all little-endian):

    bytes 0..4    magic "QFLD1"
    byte  5       format version (currently 1)
    bytes 6..37   header: xmin f64, xmax f64, n int64, time f64
    then          n A samples as f64, then n B samples as f64

Round-trips are bit-exact.
"""

from __future__ import annotations

import struct
from pathlib import Path

import numpy as np

from .core import FieldState, make_grid

__all__ = [
    "SNAPSHOT_MAGIC",
    "SNAPSHOT_VERSION",
    "state_to_bytes",
    "state_from_bytes",
    "write_snapshot",
    "read_snapshot",
]

SNAPSHOT_MAGIC = b"QFLD1"
SNAPSHOT_VERSION = 1

_HEADER = struct.Struct("<ddqd")


def state_to_bytes(state: FieldState) -> bytes:
    grid = state.grid
    header = _HEADER.pack(grid.x_min, grid.x_max, grid.n_points, state.time)
    a = np.ascontiguousarray(state.a, dtype="<f8")
    b = np.ascontiguousarray(state.b, dtype="<f8")
    return SNAPSHOT_MAGIC + bytes([SNAPSHOT_VERSION]) + header + a.tobytes() + b.tobytes()


def state_from_bytes(data: bytes) -> FieldState:
    prefix = len(SNAPSHOT_MAGIC) + 1
    if len(data) < prefix + _HEADER.size:
        raise ValueError(
            f"snapshot too short: {len(data)} bytes, need at least {prefix + _HEADER.size}"
        )
    if data[: len(SNAPSHOT_MAGIC)] != SNAPSHOT_MAGIC:
        raise ValueError("bad snapshot magic")
    version = data[len(SNAPSHOT_MAGIC)]
    if version != SNAPSHOT_VERSION:
        raise ValueError(f"unsupported snapshot version {version}, expected {SNAPSHOT_VERSION}")
    xmin, xmax, n, time = _HEADER.unpack(data[prefix : prefix + _HEADER.size])
    payload = data[prefix + _HEADER.size :]
    expected = 2 * n * 8
    if len(payload) != expected:
        raise ValueError(
            f"snapshot payload length mismatch: expected {expected} bytes "
            f"for n = {n}, got {len(payload)}"
        )
    a = np.frombuffer(payload[: n * 8], dtype="<f8").astype(float)
    b = np.frombuffer(payload[n * 8 :], dtype="<f8").astype(float)
    return FieldState(make_grid(xmin, xmax, n), a, b, time)


def write_snapshot(state: FieldState, path: str | Path) -> None:
    Path(path).write_bytes(state_to_bytes(state))


def read_snapshot(path: str | Path) -> FieldState:
    return state_from_bytes(Path(path).read_bytes())
