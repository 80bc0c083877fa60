"""Scenario files: a flat INI of key = value pairs, one section per concern.

Sections and keys (see docs/scenario.example.ini for a commented template):

  [pv]          eta, area_m2
  [battery]     name  -or-  cost_per_kwh, efficiency, dod   (+ capacity_kwh)
  [outage]      caidi_hours, saifi_per_year, duration_model?
  [reliability] alpha, beta
  [economics]   voll, horizon_years, discount_rate
  [simulation]  dt_hours?, n_samples?, seed?, efficiency_mode?, workers?
  [data]        demand_csv, irradiance_csv  -or-  synthetic_peak_demand_kw,
                synthetic_peak_irradiance_wm2, synthetic_hours?, synthetic_seed?
  [sweep]       min_kwh, max_kwh, step_kwh

There are deliberately no defaults for reliability.alpha or economics.voll.
Validation failures raise ConfigError with the dotted field path.
"""

from __future__ import annotations

import configparser
from dataclasses import dataclass
from pathlib import Path

from .core_model import EFFICIENCY_MODES, BatterySpec, PvConfig
from .data_ingest import HOURS_PER_YEAR, AlignedYear, align, load_series, synthetic_year
from .economics import EconConfig
from .outage_engine import DURATION_MODELS, OutageStats


class ConfigError(Exception):
    """Invalid or missing scenario configuration; message names the field path."""


@dataclass
class ScenarioConfig:
    """Everything a simulation needs besides the year data and the battery."""

    pv: PvConfig
    outage: OutageStats
    econ: EconConfig
    alpha: float
    beta: float
    dt_hours: float = 1.0
    mode: str = "asymmetric"
    duration_model: str = "exponential"

    def __post_init__(self):
        if not 0.0 <= self.alpha <= 1.0:
            raise ValueError(f"alpha must be in [0, 1], got {self.alpha}")
        if not 0.0 <= self.beta <= 1.0:
            raise ValueError(f"beta must be in [0, 1], got {self.beta}")
        if self.dt_hours <= 0.0:
            raise ValueError(f"dt_hours must be > 0, got {self.dt_hours}")
        if self.mode not in EFFICIENCY_MODES:
            raise ValueError(f"mode must be one of {EFFICIENCY_MODES}, got {self.mode!r}")
        if self.duration_model not in DURATION_MODELS:
            raise ValueError(
                f"duration_model must be one of {DURATION_MODELS}, got {self.duration_model!r}"
            )


@dataclass
class DataSpec:
    """Where the year comes from: a CSV pair or the synthetic generator."""

    demand_csv: str | None = None
    irradiance_csv: str | None = None
    synthetic_peak_demand_kw: float | None = None
    synthetic_peak_irradiance_wm2: float | None = None
    synthetic_hours: int = HOURS_PER_YEAR
    synthetic_seed: int = 0

    def load(self) -> AlignedYear:
        if self.demand_csv is not None:
            return align(
                load_series(self.demand_csv, "demand"),
                load_series(self.irradiance_csv, "irradiance"),
            )
        return synthetic_year(
            self.synthetic_peak_demand_kw,
            self.synthetic_peak_irradiance_wm2,
            self.synthetic_hours,
            self.synthetic_seed,
        )


@dataclass
class SweepGrid:
    min_kwh: float
    max_kwh: float
    step_kwh: float


@dataclass
class RunSpec:
    """A fully validated scenario file, ready to run."""

    scenario: ScenarioConfig
    battery: BatterySpec
    capacity_kwh: float | None
    data: DataSpec
    grid: SweepGrid | None
    n_samples: int
    seed: int
    workers: int


_SECTIONS = {
    "pv": {"eta", "area_m2"},
    "battery": {"name", "cost_per_kwh", "efficiency", "dod", "capacity_kwh"},
    "outage": {"caidi_hours", "saifi_per_year", "duration_model"},
    "reliability": {"alpha", "beta"},
    "economics": {"voll", "horizon_years", "discount_rate"},
    "simulation": {"dt_hours", "n_samples", "seed", "efficiency_mode", "workers"},
    "data": {
        "demand_csv",
        "irradiance_csv",
        "synthetic_peak_demand_kw",
        "synthetic_peak_irradiance_wm2",
        "synthetic_hours",
        "synthetic_seed",
    },
    "sweep": {"min_kwh", "max_kwh", "step_kwh"},
}

_MISSING = object()


class _Reader:
    """Typed option access with dotted-path error messages."""

    def __init__(self, cp: configparser.ConfigParser):
        self.cp = cp

    def raw(self, section, option, default=_MISSING):
        if self.cp.has_option(section, option):
            return self.cp.get(section, option).strip()
        if default is _MISSING:
            raise ConfigError(f"{section}.{option}: required value is missing")
        return default

    def number(self, section, option, default=_MISSING, *, gt=None, ge=None, le=None):
        raw = self.raw(section, option, default)
        if raw is default and not isinstance(raw, str):
            return raw
        try:
            value = float(raw)
        except (TypeError, ValueError):
            raise ConfigError(f"{section}.{option}: not a number: {raw!r}") from None
        if gt is not None and not value > gt:
            raise ConfigError(f"{section}.{option}: must be > {gt}, got {value}")
        if ge is not None and not value >= ge:
            raise ConfigError(f"{section}.{option}: must be >= {ge}, got {value}")
        if le is not None and not value <= le:
            raise ConfigError(f"{section}.{option}: must be <= {le}, got {value}")
        return value

    def integer(self, section, option, default=_MISSING, *, ge=None):
        raw = self.raw(section, option, default)
        if raw is default and not isinstance(raw, str):
            return raw
        try:
            value = int(raw)
        except (TypeError, ValueError):
            raise ConfigError(f"{section}.{option}: not an integer: {raw!r}") from None
        if ge is not None and value < ge:
            raise ConfigError(f"{section}.{option}: must be >= {ge}, got {value}")
        return value

    def choice(self, section, option, choices, default=_MISSING):
        raw = self.raw(section, option, default)
        if raw not in choices:
            raise ConfigError(
                f"{section}.{option}: must be one of {', '.join(choices)}, got {raw!r}"
            )
        return raw


def load_scenario_file(path, catalog: dict[str, BatterySpec]) -> RunSpec:
    """Parse and fully validate a scenario file against the schema above."""
    p = Path(path)
    if not p.is_file():
        raise ConfigError(f"no such config file: {p}")
    cp = configparser.ConfigParser(interpolation=None, inline_comment_prefixes=("#", ";"))
    try:
        with open(p, encoding="utf-8") as fh:
            cp.read_file(fh, source=str(p))
    except configparser.Error as exc:
        raise ConfigError(f"{p}: cannot parse: {exc}") from None

    for section in cp.sections():
        if section not in _SECTIONS:
            raise ConfigError(f"unknown section [{section}]")
        for option in cp.options(section):
            if option not in _SECTIONS[section]:
                raise ConfigError(f"unknown key {section}.{option}")
    for section in ("pv", "battery", "outage", "reliability", "economics", "data"):
        if not cp.has_section(section):
            raise ConfigError(f"missing required section [{section}]")

    r = _Reader(cp)

    pv = PvConfig(
        conversion_efficiency_eta=r.number("pv", "eta", gt=0.0, le=1.0),
        array_area_a=r.number("pv", "area_m2", gt=0.0),
    )
    outage = OutageStats(
        caidi_hours=r.number("outage", "caidi_hours", gt=0.0),
        saifi_per_year=r.number("outage", "saifi_per_year", gt=0.0),
    )
    duration_model = r.choice("outage", "duration_model", DURATION_MODELS, "exponential")
    econ = EconConfig(
        voll=r.number("economics", "voll", ge=0.0),
        horizon_years=r.integer("economics", "horizon_years", ge=1),
        discount_rate=r.number("economics", "discount_rate", ge=0.0),
    )
    scenario = ScenarioConfig(
        pv=pv,
        outage=outage,
        econ=econ,
        alpha=r.number("reliability", "alpha", ge=0.0, le=1.0),
        beta=r.number("reliability", "beta", ge=0.0, le=1.0),
        dt_hours=r.number("simulation", "dt_hours", 1.0, gt=0.0),
        mode=r.choice("simulation", "efficiency_mode", EFFICIENCY_MODES, "asymmetric"),
        duration_model=duration_model,
    )

    battery = _read_battery(r, catalog)
    capacity_kwh = r.number("battery", "capacity_kwh", None, gt=0.0)
    data = _read_data(r, cp)

    grid = None
    if cp.has_section("sweep"):
        grid = SweepGrid(
            min_kwh=r.number("sweep", "min_kwh", gt=0.0),
            max_kwh=r.number("sweep", "max_kwh", gt=0.0),
            step_kwh=r.number("sweep", "step_kwh", gt=0.0),
        )
        if grid.max_kwh < grid.min_kwh:
            raise ConfigError(
                f"sweep.max_kwh: must be >= sweep.min_kwh, got {grid.max_kwh} < {grid.min_kwh}"
            )

    return RunSpec(
        scenario=scenario,
        battery=battery,
        capacity_kwh=capacity_kwh,
        data=data,
        grid=grid,
        n_samples=r.integer("simulation", "n_samples", 5000, ge=1),
        seed=r.integer("simulation", "seed", 0, ge=0),
        workers=r.integer("simulation", "workers", 1, ge=1),
    )


def _read_battery(r: _Reader, catalog: dict[str, BatterySpec]) -> BatterySpec:
    name = r.raw("battery", "name", None)
    explicit = [
        r.number("battery", "cost_per_kwh", None, ge=0.0),
        r.number("battery", "efficiency", None, gt=0.0, le=1.0),
        r.number("battery", "dod", None, gt=0.0, le=1.0),
    ]
    given = [v for v in explicit if v is not None]
    if name is not None and given:
        raise ConfigError(
            "battery.name: conflicts with explicit cost_per_kwh/efficiency/dod keys"
        )
    if name is not None:
        if name not in catalog:
            raise ConfigError(
                f"battery.name: unknown chemistry {name!r}; known: {', '.join(catalog)}"
            )
        return catalog[name]
    if len(given) != 3:
        raise ConfigError(
            "battery: set name, or all of cost_per_kwh, efficiency and dod"
        )
    cost, efficiency, dod = explicit
    return BatterySpec(name="custom", unit_cost_b=cost, efficiency_e=efficiency, dod=dod)


def _read_data(r: _Reader, cp: configparser.ConfigParser) -> DataSpec:
    demand_csv = r.raw("data", "demand_csv", None)
    irradiance_csv = r.raw("data", "irradiance_csv", None)
    synth_keys = [o for o in cp.options("data") if o.startswith("synthetic_")]
    if demand_csv is not None or irradiance_csv is not None:
        if demand_csv is None or irradiance_csv is None:
            raise ConfigError("data: demand_csv and irradiance_csv must be set together")
        if synth_keys:
            raise ConfigError(f"data.{synth_keys[0]}: conflicts with CSV inputs")
        return DataSpec(demand_csv=demand_csv, irradiance_csv=irradiance_csv)
    peak_demand = r.number("data", "synthetic_peak_demand_kw", gt=0.0)
    peak_irr = r.number("data", "synthetic_peak_irradiance_wm2", gt=0.0)
    hours = r.integer("data", "synthetic_hours", HOURS_PER_YEAR, ge=24)
    if hours % 24 != 0:
        raise ConfigError(f"data.synthetic_hours: must be a multiple of 24, got {hours}")
    return DataSpec(
        synthetic_peak_demand_kw=peak_demand,
        synthetic_peak_irradiance_wm2=peak_irr,
        synthetic_hours=hours,
        synthetic_seed=r.integer("data", "synthetic_seed", 0),
    )
