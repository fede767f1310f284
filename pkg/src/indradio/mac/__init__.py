from .core import ClassStats, PhyParams, RunResult, Scenario, TrafficClass
from .dcf import run_dcf
from .hcca import FlowSpec, ScheduleTable, edf_next_grant, reference_scheduler, run_hcca
from .pcf import run_pcf
from .sweep import run_scenario, sweep, sweep_rows_to_csv

__all__ = [
    "ClassStats", "PhyParams", "RunResult", "Scenario", "TrafficClass",
    "run_dcf", "run_pcf", "run_hcca", "run_scenario",
    "reference_scheduler", "edf_next_grant", "FlowSpec", "ScheduleTable",
    "sweep", "sweep_rows_to_csv",
]
