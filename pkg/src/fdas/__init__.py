"""Antenna selection for a full-duplex base station: selection criteria,
closed-form outage oracles and a seeded Monte Carlo throughput simulator."""

__version__ = "0.1.0"

from .channel import ChannelRealization, db_to_linear, sample_batch, sample_channel, trial_stream
from .errors import ConfigError, InvalidArgumentError
from .link import LinkBudget
from .montecarlo import SimConfig, ThroughputEstimate, run_trials, sweep_snr, sweep_weight
from .selection import Selection, Strategy, StrategyKind, empirical_weight

__all__ = [
    "ChannelRealization",
    "ConfigError",
    "InvalidArgumentError",
    "LinkBudget",
    "Selection",
    "SimConfig",
    "Strategy",
    "StrategyKind",
    "ThroughputEstimate",
    "db_to_linear",
    "empirical_weight",
    "run_trials",
    "sample_batch",
    "sample_channel",
    "sweep_snr",
    "sweep_weight",
    "trial_stream",
]
