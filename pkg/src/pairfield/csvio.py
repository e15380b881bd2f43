"""Delimited serialization of diagnostics records.

Columns are ``t,M0,P0,...,Mn,Pn,X,H,boundary_max`` through the configured
highest order.  Values are written with full round-trip precision (repr of
the float), so parsing a file back reproduces the numbers exactly.
"""

from __future__ import annotations

from typing import IO, Iterable

import numpy as np

from .core import DEFAULT_N_MAX, DiagnosticsRecord

__all__ = ["csv_header", "write_diagnostics_csv", "read_diagnostics_csv"]


def csv_header(n_max: int) -> str:
    columns = ["t"]
    for n in range(n_max + 1):
        columns += [f"M{n}", f"P{n}"]
    columns += ["X", "H", "boundary_max"]
    return ",".join(columns)


def _format(value: float) -> str:
    return repr(float(value))


def write_diagnostics_csv(
    records: Iterable[DiagnosticsRecord], sink: IO[bytes], n_max: int | None = None
) -> None:
    """Write records to a byte stream; header only when the sequence is empty."""
    records = list(records)
    if n_max is None:
        n_max = records[0].n_max if records else DEFAULT_N_MAX
    lines = [csv_header(n_max)]
    for record in records:
        if record.n_max < n_max:
            raise ValueError(
                f"record at t = {record.time} carries orders up to {record.n_max}, "
                f"need {n_max}"
            )
        fields = [_format(record.time)]
        for n in range(n_max + 1):
            fields += [_format(record.m[n]), _format(record.p[n])]
        fields += [
            _format(record.center),
            _format(record.energy),
            _format(record.boundary_max),
        ]
        lines.append(",".join(fields))
    sink.write(("\n".join(lines) + "\n").encode("utf-8"))


def read_diagnostics_csv(source: IO[bytes] | bytes) -> list[DiagnosticsRecord]:
    """Parse diagnostics written by :func:`write_diagnostics_csv`."""
    data = source if isinstance(source, bytes) else source.read()
    lines = data.decode("utf-8").splitlines()
    if not lines:
        raise ValueError("empty diagnostics file")
    header = lines[0].split(",")
    if header[0] != "t" or header[-3:] != ["X", "H", "boundary_max"]:
        raise ValueError(f"unrecognized diagnostics header {lines[0]!r}")
    n_max = (len(header) - 4) // 2 - 1
    records = []
    for line in lines[1:]:
        if not line:
            continue
        parts = [float(item) for item in line.split(",")]
        if len(parts) != len(header):
            raise ValueError(f"row has {len(parts)} fields, header has {len(header)}")
        m = np.array(parts[1 : 2 * (n_max + 1) + 1 : 2])
        p = np.array(parts[2 : 2 * (n_max + 1) + 2 : 2])
        records.append(
            DiagnosticsRecord(
                time=parts[0],
                m=m,
                p=p,
                center=parts[-3],
                energy=parts[-2],
                boundary_max=parts[-1],
            )
        )
    return records
