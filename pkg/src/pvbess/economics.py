"""Cost model: battery capital plus discounted expected lost-load penalty.

The unserved-energy penalty is annualized as SAIFI * E[lost energy per
outage] * VOLL and discounted over the planning horizon with a constant
rate; battery capital is a single year-0 outlay.
"""

from __future__ import annotations

from dataclasses import dataclass

from .core_model import BatterySpec
from .outage_engine import OutageStats


@dataclass
class EconConfig:
    """Penalty price, planning horizon and discount rate."""

    voll: float            # $/kWh of unserved demand
    horizon_years: int
    discount_rate: float   # fraction per year

    def __post_init__(self):
        if self.voll < 0.0:
            raise ValueError(f"voll must be >= 0, got {self.voll}")
        if self.horizon_years < 1:
            raise ValueError(f"horizon_years must be >= 1, got {self.horizon_years}")
        if self.discount_rate < 0.0:
            raise ValueError(f"discount_rate must be >= 0, got {self.discount_rate}")


@dataclass
class CostBreakdown:
    capital: float
    npv_penalty: float
    tsc: float

    def __post_init__(self):
        if self.tsc != self.capital + self.npv_penalty:
            raise ValueError("tsc must equal capital + npv_penalty exactly")


def annuity_factor(rate: float, years: int) -> float:
    """Present-value multiplier for a constant annual cost over `years` years."""
    if rate < 0.0:
        raise ValueError(f"rate must be >= 0, got {rate}")
    if years < 0:
        raise ValueError(f"years must be >= 0, got {years}")
    if rate == 0.0:
        return float(years)
    return (1.0 - (1.0 + rate) ** (-years)) / rate


def expected_annual_penalty(
    mean_lost_energy_per_outage: float,
    stats: OutageStats,
    econ: EconConfig,
) -> float:
    """Expected lost-load cost per year: SAIFI * E[lost kWh per outage] * VOLL."""
    if mean_lost_energy_per_outage < 0.0:
        raise ValueError(
            f"mean_lost_energy_per_outage must be >= 0, got {mean_lost_energy_per_outage}"
        )
    return stats.saifi_per_year * mean_lost_energy_per_outage * econ.voll


def total_system_cost(
    capacity_br: float,
    spec: BatterySpec,
    annual_penalty: float,
    econ: EconConfig,
) -> CostBreakdown:
    """Capital at year 0 plus the discounted penalty stream."""
    if capacity_br < 0.0:
        raise ValueError(f"capacity_br must be >= 0, got {capacity_br}")
    if annual_penalty < 0.0:
        raise ValueError(f"annual_penalty must be >= 0, got {annual_penalty}")
    capital = capacity_br * spec.unit_cost_b
    npv_penalty = annual_penalty * annuity_factor(econ.discount_rate, econ.horizon_years)
    return CostBreakdown(capital=capital, npv_penalty=npv_penalty, tsc=capital + npv_penalty)
