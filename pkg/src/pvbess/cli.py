"""Command-line front end: simulate | sweep | compare.

Reads a scenario file, runs the Monte Carlo engine, and emits JSON (simulate)
or CSV (sweep, compare) suitable for plotting cost/CCP curves. Exit codes:
0 success, 1 runtime error, 2 configuration error.
"""

from __future__ import annotations

import argparse
import csv
import json
import sys
from dataclasses import replace
from pathlib import Path

import numpy as np

from .config import ConfigError, RunSpec, load_scenario_file
from .data_ingest import IngestError
from .economics import expected_annual_penalty, total_system_cost
from .outage_engine import ccp_from_lolps, draw_outage_samples, simulate_outage_batch
from .sweep import BATTERY_CATALOG, capacity_grid, compare_batteries, select_optimal, sweep

CSV_COLUMNS = (
    "battery",
    "capacity_kwh",
    "ccp",
    "ccp_se",
    "mean_lolp",
    "mean_lost_energy_kwh",
    "capital",
    "npv_penalty",
    "tsc",
    "feasible",
)


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="pvbess",
        description="Battery sizing for grid-outage resilient PV systems.",
    )
    sub = parser.add_subparsers(dest="command", required=True)
    specs = {
        "simulate": "evaluate a single battery capacity and report cost and reliability",
        "sweep": "evaluate a capacity grid for one chemistry and write CSV rows",
        "compare": "sweep all four catalog chemistries over the same grid and seed",
    }
    for name, help_text in specs.items():
        cmd = sub.add_parser(name, help=help_text)
        cmd.add_argument("--config", required=True, help="scenario file path")
        cmd.add_argument(
            "--out",
            default=None,
            help="output path (JSON for simulate, CSV otherwise); stdout if omitted",
        )
        cmd.add_argument("--seed", type=int, default=None, help="override simulation.seed")
        cmd.add_argument("--samples", type=int, default=None, help="override simulation.n_samples")
        cmd.add_argument("--workers", type=int, default=None, help="override simulation.workers")
    return parser


def _apply_overrides(run: RunSpec, args) -> RunSpec:
    if args.seed is not None:
        if args.seed < 0:
            raise ConfigError(f"simulation.seed (--seed): must be >= 0, got {args.seed}")
        run = replace(run, seed=args.seed)
    if args.samples is not None:
        if args.samples < 1:
            raise ConfigError(f"simulation.n_samples (--samples): must be >= 1, got {args.samples}")
        run = replace(run, n_samples=args.samples)
    if args.workers is not None:
        if args.workers < 1:
            raise ConfigError(f"simulation.workers (--workers): must be >= 1, got {args.workers}")
        run = replace(run, workers=args.workers)
    return run


def _write_csv(out_path, items) -> None:
    """items: iterable of (battery name, SweepRow)."""

    def emit(fh):
        writer = csv.writer(fh, lineterminator="\n")
        writer.writerow(CSV_COLUMNS)
        for name, row in items:
            writer.writerow(
                [
                    name,
                    row.capacity_br,
                    row.ccp,
                    row.ccp_std_error,
                    row.mean_lolp,
                    row.mean_lost_energy,
                    row.cost.capital,
                    row.cost.npv_penalty,
                    row.cost.tsc,
                    row.feasible,
                ]
            )

    if out_path is None:
        emit(sys.stdout)
    else:
        with open(out_path, "w", encoding="utf-8", newline="") as fh:
            emit(fh)


def _summarize(name: str, rows, alpha: float) -> str:
    pick = select_optimal(rows, alpha)
    r = pick.row
    if pick.feasible:
        return (
            f"{name}: optimal capacity {r.capacity_br:g} kWh, "
            f"tsc {r.cost.tsc:.2f}, ccp {r.ccp:.4f}"
        )
    return (
        f"{name}: no feasible capacity (need ccp >= {1.0 - alpha:g}); "
        f"best ccp {r.ccp:.4f} at {r.capacity_br:g} kWh"
    )


def _cmd_simulate(run: RunSpec, out_path) -> int:
    if run.capacity_kwh is None:
        raise ConfigError("battery.capacity_kwh: required for the simulate command")
    year = run.data.load()
    s = run.scenario
    samples = draw_outage_samples(
        s.outage, year.demand.hours_per_year, run.n_samples, run.seed, s.duration_model
    )
    batch = simulate_outage_batch(
        samples, year, run.battery, run.capacity_kwh, s.pv, s.dt_hours, s.mode, run.workers
    )
    estimate = ccp_from_lolps(batch.lolp, s.beta)
    mean_lolp = float(np.mean(batch.lolp))
    mean_lost = float(np.mean(batch.lost_energy))
    annual_penalty = expected_annual_penalty(mean_lost, s.outage, s.econ)
    cost = total_system_cost(run.capacity_kwh, run.battery, annual_penalty, s.econ)

    lines = [
        f"battery                {run.battery.name}",
        f"capacity_kwh           {run.capacity_kwh}",
        f"samples                {run.n_samples}",
        f"ccp                    {estimate.ccp}",
        f"ccp_se                 {estimate.std_error}",
        f"mean_lolp              {mean_lolp}",
        f"mean_lost_energy_kwh   {mean_lost}",
        f"capital                {cost.capital}",
        f"npv_penalty            {cost.npv_penalty}",
        f"tsc                    {cost.tsc}",
        f"feasible               {estimate.ccp >= 1.0 - s.alpha}",
    ]
    print("\n".join(lines))

    if out_path is not None:
        payload = {
            "ccp": estimate.ccp,
            "mean_lolp": mean_lolp,
            "mean_lost_energy_kwh": mean_lost,
            "capital": cost.capital,
            "npv_penalty": cost.npv_penalty,
            "tsc": cost.tsc,
        }
        Path(out_path).write_text(json.dumps(payload, indent=2) + "\n", encoding="utf-8")
    return 0


def _cmd_sweep(run: RunSpec, out_path) -> int:
    if run.grid is None:
        raise ConfigError("sweep.min_kwh: [sweep] section required for the sweep command")
    year = run.data.load()
    grid = capacity_grid(run.grid.min_kwh, run.grid.max_kwh, run.grid.step_kwh)
    rows = sweep(year, run.battery, run.scenario, grid, run.n_samples, run.seed, run.workers)
    _write_csv(out_path, [(run.battery.name, r) for r in rows])
    print(_summarize(run.battery.name, rows, run.scenario.alpha), file=sys.stderr)
    return 0


def _cmd_compare(run: RunSpec, out_path) -> int:
    if run.grid is None:
        raise ConfigError("sweep.min_kwh: [sweep] section required for the compare command")
    year = run.data.load()
    grid = capacity_grid(run.grid.min_kwh, run.grid.max_kwh, run.grid.step_kwh)
    tables = compare_batteries(
        year, BATTERY_CATALOG, run.scenario, grid, run.n_samples, run.seed, run.workers
    )
    _write_csv(out_path, [(name, r) for name, rows in tables.items() for r in rows])
    for name, rows in tables.items():
        print(_summarize(name, rows, run.scenario.alpha), file=sys.stderr)
    return 0


def main(argv=None) -> int:
    args = _build_parser().parse_args(argv)
    try:
        run = _apply_overrides(load_scenario_file(args.config, BATTERY_CATALOG), args)
        if args.command == "simulate":
            return _cmd_simulate(run, args.out)
        if args.command == "sweep":
            return _cmd_sweep(run, args.out)
        return _cmd_compare(run, args.out)
    except ConfigError as exc:
        print(f"config error: {exc}", file=sys.stderr)
        return 2
    except (IngestError, OSError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


def console_main() -> None:
    sys.exit(main())


if __name__ == "__main__":
    console_main()
