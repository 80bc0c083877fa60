"""Battery sizing for grid-outage resilient PV systems.

Monte Carlo simulation of grid outages against an hourly PV/demand year,
chance-constrained reliability estimation, and discounted-cost comparison
of battery chemistries over a capacity grid.
"""

from .config import ConfigError, ScenarioConfig, load_scenario_file
from .core_model import (
    BatterySpec,
    BatteryState,
    PvConfig,
    StepOutcome,
    pv_power,
    step_battery,
    usable_floor,
)
from .data_ingest import (
    AlignedYear,
    HourlySeries,
    align,
    load_series,
    synthetic_year,
    write_series,
)
from .economics import (
    CostBreakdown,
    EconConfig,
    annuity_factor,
    expected_annual_penalty,
    total_system_cost,
)
from .outage_engine import (
    CcpEstimate,
    OutageResult,
    OutageSample,
    OutageStats,
    estimate_ccp,
    run_monte_carlo,
    sample_initial_soc,
    sample_outage,
    simulate_outage,
    simulate_outage_batch,
)
from .sweep import (
    BATTERY_CATALOG,
    SweepRow,
    SweepSelection,
    capacity_grid,
    compare_batteries,
    select_optimal,
    sweep,
)

__version__ = "0.1.0"
