"""Deterministic discrete-event simulation of asynchronous XC rounds."""
from .config import ConfigError, SimConfig, load_config, parse_config_text, sim_config_from
from .engine import MessageStore, SensorPlugin, Simulator, rng_streams, run
from .geometry import RandomWalk, is_connected, move, neighbours, place
from .schedule import Event, schedule
from .trace import (
    Trace,
    TraceFormatError,
    format_trace,
    parse_trace,
    read_trace,
    summary,
    validate_structure,
    write_trace,
)

__all__ = [
    "ConfigError", "SimConfig", "load_config", "parse_config_text", "sim_config_from",
    "MessageStore", "SensorPlugin", "Simulator", "rng_streams", "run",
    "RandomWalk", "is_connected", "move", "neighbours", "place",
    "Event", "schedule", "Trace", "TraceFormatError", "format_trace", "parse_trace",
    "read_trace", "summary", "validate_structure", "write_trace",
]
