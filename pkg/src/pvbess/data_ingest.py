"""Hourly demand and irradiance series: loading, validation, synthesis.

CSV schema: optional leading comment lines starting with '#' (one of which
records the units, e.g. ``# units: kW``), then the header ``timestamp,value``.
Timestamps are ISO-8601 at hour resolution and must be contiguous; values are
non-negative decimals. Demand files are in kW, irradiance files in W/m^2.
Any length that is a whole number of days is accepted; 8760 hours is the
normal representative year.
"""

from __future__ import annotations

import csv
from dataclasses import dataclass
from datetime import datetime, timedelta
from pathlib import Path

import numpy as np

HOURS_PER_YEAR = 8760
SERIES_UNITS = {"demand": "kW", "irradiance": "W/m2"}


class IngestError(Exception):
    """Base class for data ingestion failures."""


class MissingFile(IngestError):
    pass


class SchemaError(IngestError):
    pass


class GapError(IngestError):
    pass


class NegativeValue(IngestError):
    pass


class LengthMismatch(IngestError):
    pass


@dataclass
class HourlySeries:
    """One contiguous per-hour series covering a whole number of days."""

    values: np.ndarray
    hours_per_year: int

    def __post_init__(self):
        self.values = np.asarray(self.values, dtype=np.float64)
        if self.hours_per_year <= 0 or self.hours_per_year % 24 != 0:
            raise ValueError(
                f"hours_per_year must be a positive multiple of 24, got {self.hours_per_year}"
            )
        if self.values.ndim != 1 or self.values.size != self.hours_per_year:
            raise ValueError(
                f"expected {self.hours_per_year} values, got {self.values.size}"
            )
        if not np.all(np.isfinite(self.values)):
            raise ValueError("series contains non-finite values")
        if np.any(self.values < 0.0):
            raise ValueError("series contains negative values")


@dataclass
class AlignedYear:
    """Demand (kW) and irradiance (W/m^2) on the same hourly clock."""

    demand: HourlySeries
    irradiance: HourlySeries

    def __post_init__(self):
        if self.demand.hours_per_year != self.irradiance.hours_per_year:
            raise LengthMismatch(
                f"demand has {self.demand.hours_per_year} hours, "
                f"irradiance has {self.irradiance.hours_per_year}"
            )


def load_series(path, kind: str) -> HourlySeries:
    """Load and validate one CSV series of the given kind (demand|irradiance)."""
    if kind not in SERIES_UNITS:
        raise ValueError(f"kind must be one of {sorted(SERIES_UNITS)}, got {kind!r}")
    p = Path(path)
    if not p.is_file():
        raise MissingFile(f"no such file: {p}")

    with open(p, encoding="utf-8", newline="") as fh:
        lines = fh.read().splitlines()

    # Leading comment block; a "# units:" line must match the series kind.
    row_no = 0
    for line in lines:
        if not line.startswith("#"):
            break
        row_no += 1
        comment = line.lstrip("#").strip()
        if comment.lower().startswith("units:"):
            declared = comment.split(":", 1)[1].strip()
            if declared != SERIES_UNITS[kind]:
                raise SchemaError(
                    f"{p}: units comment says {declared!r}, expected "
                    f"{SERIES_UNITS[kind]!r} for {kind}"
                )

    body = lines[row_no:]
    if not body or body[0].strip() != "timestamp,value":
        raise SchemaError(f"{p}: expected header 'timestamp,value'")

    values = []
    prev_ts = None
    for offset, record in enumerate(csv.reader(body[1:])):
        line_no = row_no + 2 + offset  # 1-based line in the file
        if len(record) != 2:
            raise SchemaError(f"{p}: line {line_no}: expected 2 columns, got {len(record)}")
        try:
            ts = datetime.fromisoformat(record[0])
        except ValueError:
            raise SchemaError(f"{p}: line {line_no}: bad timestamp {record[0]!r}") from None
        if ts.minute or ts.second or ts.microsecond:
            raise SchemaError(f"{p}: line {line_no}: timestamp {record[0]!r} not on the hour")
        if prev_ts is not None and ts - prev_ts != timedelta(hours=1):
            raise GapError(f"{p}: line {line_no}: non-contiguous hour {record[0]!r}")
        prev_ts = ts
        try:
            value = float(record[1])
        except ValueError:
            raise SchemaError(f"{p}: line {line_no}: bad value {record[1]!r}") from None
        if not np.isfinite(value):
            raise SchemaError(f"{p}: line {line_no}: non-finite value {record[1]!r}")
        if value < 0.0:
            raise NegativeValue(f"{p}: line {line_no}: negative value {value}")
        values.append(value)

    if not values or len(values) % 24 != 0:
        raise GapError(
            f"{p}: {len(values)} rows is not a whole number of days; "
            f"incomplete year (expected e.g. {HOURS_PER_YEAR})"
        )
    return HourlySeries(np.array(values), len(values))


def write_series(series: HourlySeries, path, kind: str, start: datetime | None = None) -> None:
    """Write a series in the load_series CSV schema (values round-trip exactly)."""
    if kind not in SERIES_UNITS:
        raise ValueError(f"kind must be one of {sorted(SERIES_UNITS)}, got {kind!r}")
    ts = start if start is not None else datetime(2001, 1, 1)
    with open(path, "w", encoding="utf-8", newline="") as fh:
        fh.write(f"# units: {SERIES_UNITS[kind]}\n")
        fh.write("timestamp,value\n")
        for v in series.values:
            fh.write(f"{ts.isoformat(timespec='minutes')},{float(v)!r}\n")
            ts += timedelta(hours=1)


def align(demand: HourlySeries, irradiance: HourlySeries) -> AlignedYear:
    """Pair demand and irradiance series; lengths must agree."""
    return AlignedYear(demand=demand, irradiance=irradiance)


def synthetic_year(
    peak_demand_kw: float,
    peak_irradiance_wm2: float,
    hours: int = HOURS_PER_YEAR,
    seed: int = 0,
) -> AlignedYear:
    """Deterministic stand-in year: diurnal sinusoid sun, hospital-like demand.

    Irradiance is zero at night, follows a sine arc between 06:00 and 18:00,
    and is modulated by a seasonal factor plus a per-day clearness draw.
    Demand is a high around-the-clock base with a daytime hump and small
    hourly jitter. Identical arguments give identical output.
    """
    if peak_demand_kw <= 0.0 or peak_irradiance_wm2 <= 0.0:
        raise ValueError("peaks must be > 0")
    if hours <= 0 or hours % 24 != 0:
        raise ValueError(f"hours must be a positive multiple of 24, got {hours}")

    rng = np.random.default_rng(seed)
    days = hours // 24
    clearness = rng.uniform(0.55, 1.0, days)
    jitter = rng.normal(0.0, 0.02, hours)

    hour = np.arange(hours)
    hod = hour % 24
    day = hour // 24

    elevation = np.maximum(np.sin(np.pi * (hod - 6) / 12.0), 0.0)
    season = 0.75 + 0.25 * np.cos(2.0 * np.pi * (day - 172) / 365.0)
    irradiance = peak_irradiance_wm2 * season * clearness[day] * elevation

    hump = np.maximum(np.sin(np.pi * (hod - 6) / 14.0), 0.0)
    demand = peak_demand_kw * (0.60 + 0.40 * hump) * (1.0 + jitter)
    demand = np.maximum(demand, 0.0)

    return AlignedYear(
        demand=HourlySeries(demand, hours),
        irradiance=HourlySeries(irradiance, hours),
    )
