"""Figure rendering for diagnostics files.

Consumes the diagnostics CSV (the library's delimited boundary) and writes
matplotlib figures next to it: invariant traces, the localization-center
trajectory, and the energy/boundary history.  PNG output carries no
timestamps, so renders are reproducible byte for byte.
"""

from __future__ import annotations

from pathlib import Path
from typing import Sequence

import numpy as np

from .core import DiagnosticsRecord

__all__ = ["render_report"]


def _pyplot():
    import matplotlib

    matplotlib.use("Agg")
    import matplotlib.pyplot as plt

    return plt


def render_report(
    records: Sequence[DiagnosticsRecord], out_dir: str | Path, dpi: int = 150
) -> list[Path]:
    """Render the standard report figures; returns the written paths."""
    if not records:
        raise ValueError("cannot render a report from zero records")
    plt = _pyplot()
    out = Path(out_dir)
    out.mkdir(parents=True, exist_ok=True)

    times = np.array([r.time for r in records])
    n_max = min(r.n_max for r in records)
    m = np.array([r.m[: n_max + 1] for r in records])
    p = np.array([r.p[: n_max + 1] for r in records])
    centers = np.array([r.center for r in records])
    energies = np.array([r.energy for r in records])
    boundary = np.array([r.boundary_max for r in records])

    paths = []

    fig, (ax_m, ax_p) = plt.subplots(2, 1, sharex=True, figsize=(7, 6))
    for n in range(n_max + 1):
        ax_m.plot(times, m[:, n], label=f"M{n}")
        ax_p.plot(times, p[:, n], label=f"P{n}")
    ax_m.set_ylabel("integrated densities")
    ax_p.set_ylabel("integrated currents")
    ax_p.set_xlabel("t")
    ax_m.legend(fontsize=8, ncol=2)
    ax_p.legend(fontsize=8, ncol=2)
    fig.tight_layout()
    path = out / "invariants.png"
    fig.savefig(path, dpi=dpi)
    plt.close(fig)
    paths.append(path)

    fig, ax = plt.subplots(figsize=(7, 4))
    ax.plot(times, centers)
    ax.set_xlabel("t")
    ax.set_ylabel("localization center X")
    fig.tight_layout()
    path = out / "center.png"
    fig.savefig(path, dpi=dpi)
    plt.close(fig)
    paths.append(path)

    fig, (ax_h, ax_b) = plt.subplots(2, 1, sharex=True, figsize=(7, 6))
    ax_h.plot(times, energies)
    ax_h.set_ylabel("energy H")
    positive = boundary[boundary > 0]
    if positive.size:
        ax_b.set_yscale("log")
    ax_b.plot(times, boundary)
    ax_b.set_ylabel("edge amplitude")
    ax_b.set_xlabel("t")
    fig.tight_layout()
    path = out / "energy.png"
    fig.savefig(path, dpi=dpi)
    plt.close(fig)
    paths.append(path)

    return paths
