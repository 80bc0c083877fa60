"""Grid-outage sampling and Monte Carlo reliability estimation.

Outage durations are exponential with mean CAIDI (ceiled to whole steps,
minimum one); start hours are uniform over the year and windows wrap past
year end; the initial state of charge is uniform on [B_min, B_r]. Each
Monte Carlo sample draws from its own random substream derived from
(seed, sample index), so results are identical for any worker count.

`simulate_outage` is the per-step reference simulator built on
`core_model.step_battery`; `simulate_outage_batch` evaluates many samples
with vectorized arithmetic that reproduces the reference bit for bit.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from multiprocessing import Pool

import numpy as np

from .core_model import (
    EFFICIENCY_MODES,
    BatterySpec,
    BatteryState,
    PvConfig,
    StepOutcome,
    pv_power,
    step_battery,
    usable_floor,
)
from .data_ingest import AlignedYear

DURATION_MODELS = ("exponential", "fixed")


class EmptyResults(Exception):
    pass


@dataclass
class OutageStats:
    """Grid reliability indices: mean outage length and outage frequency."""

    caidi_hours: float      # hours per interruption
    saifi_per_year: float   # interruptions per year

    def __post_init__(self):
        if self.caidi_hours <= 0.0:
            raise ValueError(f"caidi_hours must be > 0, got {self.caidi_hours}")
        if self.saifi_per_year <= 0.0:
            raise ValueError(f"saifi_per_year must be > 0, got {self.saifi_per_year}")


@dataclass
class OutageSample:
    """One sampled outage: start hour, whole-step duration, initial-SoC fraction."""

    start_hour: int
    duration_steps: int
    initial_soc_fraction_u: float

    def __post_init__(self):
        if self.start_hour < 0:
            raise ValueError(f"start_hour must be >= 0, got {self.start_hour}")
        if self.duration_steps < 1:
            raise ValueError(f"duration_steps must be >= 1, got {self.duration_steps}")
        if not 0.0 <= self.initial_soc_fraction_u <= 1.0:
            raise ValueError(
                f"initial_soc_fraction_u must be in [0, 1], got {self.initial_soc_fraction_u}"
            )


@dataclass
class OutageResult:
    """Loss-of-load outcome of one simulated outage window."""

    lolp: float
    lost_energy: float
    served_steps: int
    duration_steps: int
    trace: list[StepOutcome] | None = None


@dataclass
class CcpEstimate:
    """Share of outages whose LOLP stayed within the beta constraint."""

    ccp: float
    samples: int
    std_error: float


@dataclass
class OutageBatch:
    """Per-sample results of a batch evaluation, index-aligned with the samples."""

    lolp: np.ndarray
    lost_energy: np.ndarray
    served_steps: np.ndarray
    duration_steps: np.ndarray


def sample_initial_soc(u: float, capacity_br: float, floor_bmin: float) -> float:
    """Stored energy uniform on [B_min, B_r] by inverse CDF of the fraction u."""
    if not 0.0 <= u <= 1.0:
        raise ValueError(f"u must be in [0, 1], got {u}")
    if not 0.0 <= floor_bmin <= capacity_br:
        raise ValueError(
            f"floor_bmin must lie in [0, capacity_br], got {floor_bmin} vs {capacity_br}"
        )
    return floor_bmin + u * (capacity_br - floor_bmin)


def sample_outage(
    rng_draws,
    stats: OutageStats,
    year_hours: int,
    duration_model: str = "exponential",
) -> OutageSample:
    """Build one outage sample from three uniform draws (u_start, u_dur, u_soc).

    Start hour is floor(u_start * year_hours). Duration is exponential with
    mean CAIDI via inverse CDF, ceiled to whole steps with a one-step
    minimum; the "fixed" model uses ceil(CAIDI) steps for every outage.
    """
    if year_hours < 1:
        raise ValueError(f"year_hours must be >= 1, got {year_hours}")
    if duration_model not in DURATION_MODELS:
        raise ValueError(
            f"unknown duration model {duration_model!r}, expected one of {DURATION_MODELS}"
        )
    u_start, u_dur, u_soc = rng_draws
    if not 0.0 <= u_start < 1.0 or not 0.0 <= u_dur < 1.0:
        raise ValueError("u_start and u_dur must be in [0, 1)")

    start_hour = int(math.floor(u_start * year_hours))
    if duration_model == "fixed":
        duration = max(1, math.ceil(stats.caidi_hours))
    else:
        duration = max(1, math.ceil(-stats.caidi_hours * math.log1p(-u_dur)))
    return OutageSample(
        start_hour=start_hour,
        duration_steps=duration,
        initial_soc_fraction_u=float(u_soc),
    )


def simulate_outage(
    sample: OutageSample,
    year: AlignedYear,
    spec: BatterySpec,
    capacity_br: float,
    pv: PvConfig,
    dt_h: float = 1.0,
    mode: str = "asymmetric",
    keep_trace: bool = False,
) -> OutageResult:
    """Step the battery through one outage window and report its LOLP.

    The window starts from the sampled initial state of charge and wraps
    circularly past the end of the year. LOLP is the shed-step count divided
    by the window length.
    """
    year_hours = year.demand.hours_per_year
    if not 0 <= sample.start_hour < year_hours:
        raise ValueError(
            f"start_hour {sample.start_hour} outside year of {year_hours} hours"
        )
    floor = usable_floor(capacity_br, spec.dod)
    q0 = sample_initial_soc(sample.initial_soc_fraction_u, capacity_br, floor)
    state = BatteryState(capacity_br, floor, q0)

    served = 0
    lost = 0.0
    trace: list[StepOutcome] | None = [] if keep_trace else None
    for k in range(sample.duration_steps):
        idx = (sample.start_hour + k) % year_hours
        p_kw = pv_power(float(year.irradiance.values[idx]), pv)
        d_kw = float(year.demand.values[idx])
        outcome = step_battery(state, p_kw, d_kw, spec, dt_h, mode)
        state = outcome.new_state
        if outcome.served:
            served += 1
        lost += outcome.energy_lost_ael
        if trace is not None:
            trace.append(outcome)

    return OutageResult(
        lolp=(sample.duration_steps - served) / sample.duration_steps,
        lost_energy=lost,
        served_steps=served,
        duration_steps=sample.duration_steps,
        trace=trace,
    )


def _simulate_windows(starts, durations, socs, demand, pv_kw, capacity, floor, e, dt_h, mode):
    """Vectorized core: evaluate all windows in lockstep over time steps.

    Expressions mirror core_model.step_battery exactly so that each lane is
    bit-identical to the scalar reference.
    """
    n = starts.size
    served = np.zeros(n, dtype=np.int64)
    lost = np.zeros(n, dtype=np.float64)
    if n == 0:
        return served, lost

    year_hours = demand.size
    q = floor + socs * (capacity - floor)
    asymmetric = mode == "asymmetric"

    for t in range(int(durations.max())):
        active = t < durations
        idx = (starts + t) % year_hours
        p = pv_kw[idx]
        d = demand[idx]

        surplus = p >= d
        q_up = q + (p - d) * e * dt_h
        if asymmetric:
            withdrawal = (d - p) * dt_h / e
        else:
            withdrawal = (d - p) * e * dt_h
        deficit_ok = (q - withdrawal) >= floor
        q_chg = q + p * e * dt_h

        q_next = np.where(
            surplus,
            np.minimum(q_up, capacity),
            np.where(deficit_ok, q - withdrawal, np.minimum(q_chg, capacity)),
        )
        step_served = surplus | deficit_ok

        q = np.where(active, q_next, q)
        served += active & step_served
        lost = lost + np.where(active & ~step_served, d * dt_h, 0.0)

    return served, lost


def _windows_chunk(args):
    return _simulate_windows(*args)


def simulate_outage_batch(
    samples: list[OutageSample],
    year: AlignedYear,
    spec: BatterySpec,
    capacity_br: float,
    pv: PvConfig,
    dt_h: float = 1.0,
    mode: str = "asymmetric",
    workers: int = 1,
) -> OutageBatch:
    """Evaluate many outage samples at once; equal to per-sample simulate_outage.

    With workers > 1 the samples are split across a process pool; the
    per-sample arithmetic is independent of the split, so output does not
    depend on the worker count.
    """
    if mode not in EFFICIENCY_MODES:
        raise ValueError(f"unknown efficiency mode {mode!r}, expected one of {EFFICIENCY_MODES}")
    if dt_h <= 0.0:
        raise ValueError(f"dt_h must be > 0, got {dt_h}")
    year_hours = year.demand.hours_per_year
    starts = np.array([s.start_hour for s in samples], dtype=np.int64)
    durations = np.array([s.duration_steps for s in samples], dtype=np.int64)
    socs = np.array([s.initial_soc_fraction_u for s in samples], dtype=np.float64)
    if starts.size and (starts.min() < 0 or starts.max() >= year_hours):
        raise ValueError("sample start_hour outside the year")

    floor = usable_floor(capacity_br, spec.dod)
    demand = year.demand.values
    pv_kw = pv.conversion_efficiency_eta * year.irradiance.values * pv.array_area_a / 1000.0
    e = spec.efficiency_e

    if workers > 1 and starts.size > 1:
        pieces = np.array_split(np.arange(starts.size), workers)
        tasks = [
            (starts[ix], durations[ix], socs[ix], demand, pv_kw, capacity_br, floor, e, dt_h, mode)
            for ix in pieces
        ]
        with Pool(processes=workers) as pool:
            parts = pool.map(_windows_chunk, tasks)
        served = np.concatenate([p[0] for p in parts])
        lost = np.concatenate([p[1] for p in parts])
    else:
        served, lost = _simulate_windows(
            starts, durations, socs, demand, pv_kw, capacity_br, floor, e, dt_h, mode
        )

    return OutageBatch(
        lolp=(durations - served) / durations,
        lost_energy=lost,
        served_steps=served,
        duration_steps=durations,
    )


def ccp_from_lolps(lolps: np.ndarray, beta: float) -> CcpEstimate:
    """Binomial CCP estimate from per-sample LOLP values."""
    if not 0.0 <= beta <= 1.0:
        raise ValueError(f"beta must be in [0, 1], got {beta}")
    n = int(np.asarray(lolps).size)
    if n == 0:
        raise EmptyResults("no outage results to estimate CCP from")
    hits = int(np.count_nonzero(np.asarray(lolps) <= beta))
    ccp = hits / n
    return CcpEstimate(ccp=ccp, samples=n, std_error=math.sqrt(ccp * (1.0 - ccp) / n))


def estimate_ccp(results: list[OutageResult], beta: float) -> CcpEstimate:
    """CCP over a list of outage results: share with LOLP <= beta."""
    if not results:
        raise EmptyResults("no outage results to estimate CCP from")
    return ccp_from_lolps(np.array([r.lolp for r in results]), beta)


def _substream(seed: int, index: int) -> np.random.Generator:
    return np.random.default_rng(np.random.SeedSequence(seed, spawn_key=(index,)))


def draw_outage_samples(
    stats: OutageStats,
    year_hours: int,
    n_samples: int,
    seed: int,
    duration_model: str = "exponential",
) -> list[OutageSample]:
    """Draw outage samples, one independent substream per sample index."""
    if n_samples < 1:
        raise ValueError(f"n_samples must be >= 1, got {n_samples}")
    samples = []
    for i in range(n_samples):
        u = _substream(seed, i).random(3)
        samples.append(sample_outage((u[0], u[1], u[2]), stats, year_hours, duration_model))
    return samples


def run_monte_carlo(
    year: AlignedYear,
    spec: BatterySpec,
    capacity_br: float,
    pv: PvConfig,
    stats: OutageStats,
    n_samples: int,
    seed: int,
    mode: str = "asymmetric",
    *,
    beta: float,
    dt_h: float = 1.0,
    workers: int = 1,
    duration_model: str = "exponential",
) -> tuple[CcpEstimate, float]:
    """Monte Carlo CCP estimate plus mean lost energy per outage (kWh).

    Identical arguments give identical output, independent of worker count.
    """
    samples = draw_outage_samples(stats, year.demand.hours_per_year, n_samples, seed, duration_model)
    batch = simulate_outage_batch(samples, year, spec, capacity_br, pv, dt_h, mode, workers)
    return ccp_from_lolps(batch.lolp, beta), float(np.mean(batch.lost_energy))
