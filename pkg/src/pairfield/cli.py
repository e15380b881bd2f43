"""Command-line surface tying the modules into reproducible runs.

Subcommands:

    evolve          run a configured evolution, write diagnostics CSV
    diagnose        print the invariants of a snapshot as key=value lines
    boost           apply a Galilean boost to a snapshot
    stationary      solve eigenmodes, write (index, E, residual) CSV + snapshots
    compare-oracle  real-pair vs complex integration, per-record max differences
    report          render figures from a diagnostics CSV

Exit codes: 0 success, 1 validation/usage error, 2 runtime failure.
"""

from __future__ import annotations

import argparse
import sys
from pathlib import Path

import numpy as np

from .config import ConfigError, SimulationConfig, build_initial_state, parse_config
from .core import integrate_invariants
from .csvio import read_diagnostics_csv, write_diagnostics_csv
from .dynamics import evolve, step_split
from .oracle import schrodinger_evolve, to_complex
from .snapshots import read_snapshot, write_snapshot
from .stationary import eigenmodes, mode_residual, stationary_state_from_mode
from .transforms import BoostParams, boost

__all__ = ["build_parser", "cli_dispatch", "main"]


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="pairfield",
        description="Coupled real-field quantum dynamics laboratory",
    )
    sub = parser.add_subparsers(dest="command", metavar="command")

    p = sub.add_parser("evolve", help="run an evolution and write diagnostics CSV")
    p.add_argument("--config", required=True, help="config file path")
    p.add_argument("--out", required=True, help="diagnostics CSV output path")
    p.add_argument("--snapshots", help="directory for state snapshots at record points")
    p.add_argument("--every", type=int, default=1, help="snapshot every N records")

    p = sub.add_parser("diagnose", help="print invariants of a snapshot")
    p.add_argument("--in", dest="infile", required=True, help="snapshot path")
    p.add_argument("--nmax", type=int, default=3, help="highest order to report")

    p = sub.add_parser("boost", help="apply a Galilean boost to a snapshot")
    p.add_argument("--in", dest="infile", required=True, help="input snapshot path")
    p.add_argument("--v", type=float, required=True, help="boost velocity")
    p.add_argument("--out", required=True, help="output snapshot path")

    p = sub.add_parser("stationary", help="solve and export potential eigenmodes")
    p.add_argument("--config", required=True, help="config file path (grid + potential)")
    p.add_argument("--count", type=int, required=True, help="number of modes")
    p.add_argument("--out", required=True, help="CSV output path")

    p = sub.add_parser(
        "compare-oracle", help="real-pair vs complex split-step at matched discretization"
    )
    p.add_argument("--config", required=True, help="config file path")
    p.add_argument("--out", required=True, help="CSV output path")

    p = sub.add_parser("report", help="render figures from a diagnostics CSV")
    p.add_argument("--in", dest="infile", required=True, help="diagnostics CSV path")
    p.add_argument("--out-dir", required=True, help="directory for the figures")

    return parser


def _load_config(path: str) -> SimulationConfig:
    return parse_config(Path(path).read_text(encoding="utf-8"))


def _cmd_evolve(args: argparse.Namespace) -> int:
    config = _load_config(args.config)
    state = build_initial_state(config)
    potential = config.make_potential()
    evolve_config = config.make_evolve_config()

    snapshot_dir = Path(args.snapshots) if args.snapshots else None
    if snapshot_dir is not None:
        if args.every < 1:
            raise ValueError(f"--every must be >= 1, got {args.every}")
        snapshot_dir.mkdir(parents=True, exist_ok=True)

    record_index = 0

    def on_record(current_state, record) -> None:
        nonlocal record_index
        if snapshot_dir is not None and record_index % args.every == 0:
            write_snapshot(current_state, snapshot_dir / f"state_{record_index:05d}.qfld")
        record_index += 1

    _, records = evolve(
        state,
        potential,
        evolve_config,
        n_max=config.diagnostics.nmax,
        confinement_threshold=config.diagnostics.confinement_threshold,
        on_record=on_record,
    )
    with open(args.out, "wb") as sink:
        write_diagnostics_csv(records, sink, n_max=config.diagnostics.nmax)
    return 0


def _cmd_diagnose(args: argparse.Namespace) -> int:
    if args.nmax < 1:
        raise ValueError(f"--nmax must be >= 1, got {args.nmax}")
    state = read_snapshot(args.infile)
    record = integrate_invariants(state, n_max=args.nmax)
    pairs = [("t", record.time)]
    for n in range(args.nmax + 1):
        pairs += [(f"M{n}", record.m[n]), (f"P{n}", record.p[n])]
    pairs += [
        ("X", record.center),
        ("H", record.energy),
        ("boundary_max", record.boundary_max),
    ]
    for key, value in pairs:
        print(f"{key}={float(value)!r}")
    print(f"confined={str(record.confined).lower()}")
    return 0


def _cmd_boost(args: argparse.Namespace) -> int:
    state = read_snapshot(args.infile)
    boosted = boost(state, BoostParams(args.v))
    write_snapshot(boosted, args.out)
    return 0


def _cmd_stationary(args: argparse.Namespace) -> int:
    config = _load_config(args.config)
    grid = config.make_grid()
    potential = config.make_potential()
    modes = eigenmodes(potential, grid, args.count)
    out_path = Path(args.out)
    lines = ["index,E,residual"]
    for index, mode in enumerate(modes):
        residual = mode_residual(mode, potential)
        lines.append(f"{index},{mode.energy!r},{residual!r}")
        snapshot_path = out_path.with_name(f"{out_path.stem}_mode{index:03d}.qfld")
        write_snapshot(stationary_state_from_mode(mode, 0.0), snapshot_path)
    out_path.write_bytes(("\n".join(lines) + "\n").encode("utf-8"))
    return 0


def _cmd_compare_oracle(args: argparse.Namespace) -> int:
    config = _load_config(args.config)
    state = build_initial_state(config)
    potential = config.make_potential()
    evolve_config = config.make_evolve_config()
    n_steps = evolve_config.n_steps
    cadence = evolve_config.record_every
    dt = evolve_config.dt

    cstate = to_complex(state)
    lines = ["t,max_abs_diff"]

    def emit() -> None:
        diff = float(np.max(np.abs((state.a + 1j * state.b) - cstate.psi)))
        lines.append(f"{state.time!r},{diff!r}")

    emit()
    step = 0
    while step < n_steps:
        chunk = min(cadence, n_steps - step)
        for _ in range(chunk):
            state = step_split(state, potential, dt)
        cstate = schrodinger_evolve(cstate, potential, chunk * dt, dt)
        step += chunk
        emit()
    Path(args.out).write_bytes(("\n".join(lines) + "\n").encode("utf-8"))
    return 0


def _cmd_report(args: argparse.Namespace) -> int:
    from .plots import render_report

    records = read_diagnostics_csv(Path(args.infile).read_bytes())
    for path in render_report(records, args.out_dir):
        print(path)
    return 0


_HANDLERS = {
    "evolve": _cmd_evolve,
    "diagnose": _cmd_diagnose,
    "boost": _cmd_boost,
    "stationary": _cmd_stationary,
    "compare-oracle": _cmd_compare_oracle,
    "report": _cmd_report,
}


def cli_dispatch(argv: list[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        # argparse has already printed usage/help; fold its exit codes
        # into the documented 0 (help) / 1 (usage error) contract.
        return 0 if exc.code in (0, None) else 1
    if args.command is None:
        parser.print_usage(sys.stderr)
        return 1
    try:
        return _HANDLERS[args.command](args)
    except (ConfigError, FileNotFoundError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    except Exception as exc:  # pragma: no cover - defensive
        print(f"runtime failure: {exc}", file=sys.stderr)
        return 2


def main() -> None:
    sys.exit(cli_dispatch())
