"""The message-propagation and monitoring case studies."""
from .metrics import (
    TimeSeries,
    delivery_time,
    export_csv,
    format_csv,
    mean_series,
    metric_aproc,
    metric_truth_fraction,
    read_csv,
    sample_times,
    unnest,
)
from .programs import (
    MONITORING_SERIES,
    monitoring_program,
    monitoring_source,
    sphere_propagation_program,
    sphere_source,
    tree_propagation_program,
    tree_source,
)
from .runner import DEFAULTS, SCENARIOS, ScenarioResult, nearest_device, run_scenario
from .sensors import CriticWindow, Message, OneShotMessages, RandomMessages

__all__ = [
    "TimeSeries", "delivery_time", "export_csv", "format_csv", "mean_series", "metric_aproc",
    "metric_truth_fraction", "read_csv", "sample_times", "unnest",
    "MONITORING_SERIES", "monitoring_program", "monitoring_source",
    "sphere_propagation_program", "sphere_source", "tree_propagation_program", "tree_source",
    "DEFAULTS", "SCENARIOS", "ScenarioResult", "nearest_device", "run_scenario",
    "CriticWindow", "Message", "OneShotMessages", "RandomMessages",
]
