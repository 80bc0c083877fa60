"""Capacity-grid evaluation, chance-constraint filtering and chemistry comparison.

Every capacity (and every chemistry in a comparison) is evaluated against
the same outage draws - common random numbers - so curves are smooth,
deterministic and directly comparable.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .config import ScenarioConfig
from .core_model import BatterySpec
from .data_ingest import AlignedYear
from .economics import CostBreakdown, expected_annual_penalty, total_system_cost
from .outage_engine import ccp_from_lolps, draw_outage_samples, simulate_outage_batch

# Approximate central estimates for 2030: $/kWh, round-trip efficiency, DoD.
BATTERY_CATALOG = {
    "lead-acid": BatterySpec("lead-acid", 75.0, 0.86, 0.55),
    "sodium-sulphur": BatterySpec("sodium-sulphur", 165.0, 0.86, 1.00),
    "vanadium-redox": BatterySpec("vanadium-redox", 120.0, 0.78, 1.00),
    "lithium-ion": BatterySpec("lithium-ion", 224.0, 0.97, 0.90),
}


class EmptySweep(Exception):
    pass


@dataclass
class SweepRow:
    """Reliability and cost figures for one battery capacity."""

    capacity_br: float
    ccp: float
    ccp_std_error: float
    mean_lolp: float
    mean_lost_energy: float
    cost: CostBreakdown
    feasible: bool


@dataclass
class SweepSelection:
    """Outcome of the chance-constrained pick: the optimum, or the best
    available CCP when nothing is feasible."""

    feasible: bool
    row: SweepRow


def capacity_grid(min_kwh: float, max_kwh: float, step_kwh: float) -> list[float]:
    """Inclusive arithmetic grid from min to max in steps of step_kwh."""
    if min_kwh <= 0.0 or step_kwh <= 0.0 or max_kwh < min_kwh:
        raise ValueError(
            f"need 0 < min_kwh <= max_kwh and step_kwh > 0, "
            f"got min={min_kwh}, max={max_kwh}, step={step_kwh}"
        )
    grid = []
    k = 0
    while True:
        value = min_kwh + k * step_kwh
        if value > max_kwh * (1.0 + 1e-12):
            break
        grid.append(value)
        k += 1
    return grid


def sweep(
    year: AlignedYear,
    spec: BatterySpec,
    scenario: ScenarioConfig,
    capacities: list[float],
    n_samples: int,
    seed: int,
    workers: int = 1,
) -> list[SweepRow]:
    """Evaluate CCP, mean LOLP, lost energy and cost for each capacity.

    All capacities share one set of outage draws (common random numbers),
    so rerunning with the same seed reproduces the rows exactly.
    """
    if not capacities:
        raise EmptySweep("capacity grid is empty")
    if any(b <= a for a, b in zip(capacities, capacities[1:])):
        raise ValueError("capacity grid must be strictly increasing")

    samples = draw_outage_samples(
        scenario.outage, year.demand.hours_per_year, n_samples, seed, scenario.duration_model
    )
    rows = []
    for capacity in capacities:
        batch = simulate_outage_batch(
            samples, year, spec, capacity, scenario.pv, scenario.dt_hours, scenario.mode, workers
        )
        estimate = ccp_from_lolps(batch.lolp, scenario.beta)
        mean_lost = float(np.mean(batch.lost_energy))
        annual_penalty = expected_annual_penalty(mean_lost, scenario.outage, scenario.econ)
        rows.append(
            SweepRow(
                capacity_br=capacity,
                ccp=estimate.ccp,
                ccp_std_error=estimate.std_error,
                mean_lolp=float(np.mean(batch.lolp)),
                mean_lost_energy=mean_lost,
                cost=total_system_cost(capacity, spec, annual_penalty, scenario.econ),
                feasible=estimate.ccp >= 1.0 - scenario.alpha,
            )
        )
    return rows


def select_optimal(rows: list[SweepRow], alpha: float) -> SweepSelection:
    """Minimum-TSC row among those meeting ccp >= 1 - alpha.

    Ties break toward the smaller capacity. If no row is feasible, returns
    the highest-CCP row flagged infeasible. Row order does not matter.
    """
    if not rows:
        raise EmptySweep("no sweep rows to select from")
    feasible = [r for r in rows if r.ccp >= 1.0 - alpha]
    if feasible:
        best = min(feasible, key=lambda r: (r.cost.tsc, r.capacity_br))
        return SweepSelection(feasible=True, row=best)
    best = min(rows, key=lambda r: (-r.ccp, r.capacity_br))
    return SweepSelection(feasible=False, row=best)


def compare_batteries(
    year: AlignedYear,
    catalog: dict[str, BatterySpec],
    scenario: ScenarioConfig,
    capacities: list[float],
    n_samples: int,
    seed: int,
    workers: int = 1,
) -> dict[str, list[SweepRow]]:
    """Sweep every chemistry over the same grid, seed and outage draws."""
    return {
        name: sweep(year, spec, scenario, capacities, n_samples, seed, workers)
        for name, spec in catalog.items()
    }
