"""Round-based simulator for region/relay clustered sensor-network routing.

Implements a two-tier region/relay hybrid scheme together with LEACH, SEP and
SNRP baselines on a first-order radio energy model.
"""

from .config import PRESETS, RunConfig, dump_config, load_config, parse_config
from .engine import RoundMetrics, SimResult, Summary, run_round, run_simulation, summarize
from .experiments import (
    Comparison,
    ExperimentKind,
    ExperimentSpec,
    protocol_comparison,
    region_division_sweep,
    relay_position_sweep,
)
from .netmodel import (
    Deployment,
    NetworkConfig,
    Node,
    NodeTier,
    Population,
    Position,
    RegionId,
    RegionLayout,
    assign_region,
    deploy_network,
    distance,
)
from .output import csv_text, emit_csv, emit_svg_chart, read_series_csv, svg_chart
from .protocols import (
    BS,
    RELAY,
    ElectionState,
    ProtocolKind,
    RoundPlan,
    elect_cluster_heads,
    election_threshold,
    plan_round,
    sep_tier_probabilities,
)
from .radio import EnergyParams, aggregation_energy, rx_energy, threshold_distance, tx_energy

__all__ = [
    "aggregation_energy",
    "assign_region",
    "BS",
    "Comparison",
    "csv_text",
    "deploy_network",
    "Deployment",
    "distance",
    "dump_config",
    "elect_cluster_heads",
    "election_threshold",
    "ElectionState",
    "emit_csv",
    "emit_svg_chart",
    "EnergyParams",
    "ExperimentKind",
    "ExperimentSpec",
    "load_config",
    "NetworkConfig",
    "Node",
    "NodeTier",
    "parse_config",
    "plan_round",
    "Population",
    "Position",
    "PRESETS",
    "protocol_comparison",
    "ProtocolKind",
    "read_series_csv",
    "region_division_sweep",
    "RegionId",
    "RegionLayout",
    "RELAY",
    "relay_position_sweep",
    "RoundMetrics",
    "RoundPlan",
    "run_round",
    "run_simulation",
    "RunConfig",
    "rx_energy",
    "sep_tier_probabilities",
    "SimResult",
    "summarize",
    "Summary",
    "svg_chart",
    "threshold_distance",
    "tx_energy",
]

__version__ = "0.1.0"
