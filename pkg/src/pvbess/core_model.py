"""Physical model types and the single-step battery state transition.

Units are kW for power, kWh for energy, hours for time. The step function
supports two efficiency conventions: "asymmetric" (default) charges at
efficiency e and withdraws stored energy at 1/e per kWh delivered;
"literal" multiplies the net flow by e in both directions.
"""

from __future__ import annotations

from dataclasses import dataclass

EFFICIENCY_MODES = ("asymmetric", "literal")


@dataclass
class BatterySpec:
    """One battery chemistry: price, round-trip efficiency and depth of discharge."""

    name: str
    unit_cost_b: float   # $/kWh of nameplate capacity
    efficiency_e: float  # fraction in (0, 1]
    dod: float           # usable fraction of capacity, in (0, 1]

    def __post_init__(self):
        if not 0.0 < self.efficiency_e <= 1.0:
            raise ValueError(f"efficiency_e must be in (0, 1], got {self.efficiency_e}")
        if not 0.0 < self.dod <= 1.0:
            raise ValueError(f"dod must be in (0, 1], got {self.dod}")
        if self.unit_cost_b < 0.0:
            raise ValueError(f"unit_cost_b must be >= 0, got {self.unit_cost_b}")


@dataclass
class PvConfig:
    """Fixed PV array: conversion efficiency and panel area in m^2."""

    conversion_efficiency_eta: float
    array_area_a: float

    def __post_init__(self):
        if not 0.0 < self.conversion_efficiency_eta <= 1.0:
            raise ValueError(
                f"conversion_efficiency_eta must be in (0, 1], got {self.conversion_efficiency_eta}"
            )
        if self.array_area_a <= 0.0:
            raise ValueError(f"array_area_a must be > 0, got {self.array_area_a}")


@dataclass
class BatteryState:
    """Stored energy plus the bounds it must stay within."""

    capacity_br: float  # nameplate capacity, kWh
    floor_bmin: float   # minimum stored energy, kWh
    stored_qb: float    # current stored energy, kWh

    def __post_init__(self):
        if self.capacity_br < 0.0:
            raise ValueError(f"capacity_br must be >= 0, got {self.capacity_br}")
        if not 0.0 <= self.floor_bmin <= self.capacity_br:
            raise ValueError(
                f"floor_bmin must lie in [0, capacity_br], got {self.floor_bmin}"
            )
        if not self.floor_bmin <= self.stored_qb <= self.capacity_br:
            raise ValueError(
                f"stored_qb={self.stored_qb} outside [{self.floor_bmin}, {self.capacity_br}]"
            )


@dataclass
class StepOutcome:
    """Result of one time step: next state, shed energy, spilled PV, service flag."""

    new_state: BatteryState
    energy_lost_ael: float  # kWh; 0 or the full demand of the step
    curtailed: float        # kWh of PV spilled at the capacity cap
    served: bool


def usable_floor(capacity_br: float, dod: float) -> float:
    """Minimum stored energy, capacity_br * (1 - dod)."""
    if capacity_br < 0.0:
        raise ValueError(f"capacity_br must be >= 0, got {capacity_br}")
    if not 0.0 < dod <= 1.0:
        raise ValueError(f"dod must be in (0, 1], got {dod}")
    return capacity_br * (1.0 - dod)


def pv_power(irradiance_i: float, pv: PvConfig) -> float:
    """PV output in kW for one irradiance reading in W/m^2 (eta * I * A / 1000)."""
    if irradiance_i < 0.0:
        raise ValueError(f"irradiance must be >= 0, got {irradiance_i}")
    return pv.conversion_efficiency_eta * irradiance_i * pv.array_area_a / 1000.0


def step_battery(
    state: BatteryState,
    p_kw: float,
    d_kw: float,
    spec: BatterySpec,
    dt_h: float = 1.0,
    mode: str = "asymmetric",
) -> StepOutcome:
    """Advance the battery one time step under PV power p_kw and demand d_kw.

    Surplus steps (p >= d) charge the battery at efficiency e, spilling any
    overflow at the capacity cap. Deficit steps withdraw the shortfall if the
    floor allows; otherwise the entire demand of the step is shed and the
    battery only charges from PV. In asymmetric mode the withdrawal per kWh
    delivered is 1/e; in literal mode it is e.
    """
    if mode not in EFFICIENCY_MODES:
        raise ValueError(f"unknown efficiency mode {mode!r}, expected one of {EFFICIENCY_MODES}")
    if p_kw < 0.0 or d_kw < 0.0:
        raise ValueError(f"p_kw and d_kw must be >= 0, got p={p_kw}, d={d_kw}")
    if dt_h <= 0.0:
        raise ValueError(f"dt_h must be > 0, got {dt_h}")
    if not state.floor_bmin <= state.stored_qb <= state.capacity_br:
        raise ValueError("invalid battery state")

    cap = state.capacity_br
    floor = state.floor_bmin
    q = state.stored_qb
    e = spec.efficiency_e

    if p_kw >= d_kw:
        q_up = q + (p_kw - d_kw) * e * dt_h
        if q_up > cap:
            q_new, curtailed = cap, q_up - cap
        else:
            q_new, curtailed = q_up, 0.0
        return StepOutcome(
            new_state=BatteryState(cap, floor, q_new),
            energy_lost_ael=0.0,
            curtailed=curtailed,
            served=True,
        )

    if mode == "asymmetric":
        withdrawal = (d_kw - p_kw) * dt_h / e
    else:
        withdrawal = (d_kw - p_kw) * e * dt_h

    if q - withdrawal >= floor:
        return StepOutcome(
            new_state=BatteryState(cap, floor, q - withdrawal),
            energy_lost_ael=0.0,
            curtailed=0.0,
            served=True,
        )

    # Depletion: shed the whole step's demand, charge from PV alone.
    q_chg = q + p_kw * e * dt_h
    if q_chg > cap:
        q_new, curtailed = cap, q_chg - cap
    else:
        q_new, curtailed = q_chg, 0.0
    return StepOutcome(
        new_state=BatteryState(cap, floor, q_new),
        energy_lost_ael=d_kw * dt_h,
        curtailed=curtailed,
        served=False,
    )
