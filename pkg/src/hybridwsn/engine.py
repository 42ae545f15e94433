"""Round loop: elect, plan, charge energy, record deaths and deliveries."""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .netmodel import NetworkConfig, Node, Population, deploy_network, make_rng
from .protocols import ElectionState, ProtocolKind, RoundPlan, elect_cluster_heads, plan_round
from .radio import EnergyParams, tx_energy_unchecked

DEFAULT_MAX_ROUNDS = 10_000


@dataclass(frozen=True)
class RoundMetrics:
    round: int
    alive: int
    dead: int
    packets_delivered: int
    cumulative_packets: int
    total_residual_energy: float
    # joules charged this round; not part of the CSV series
    energy_consumed: float = 0.0


@dataclass
class SimResult:
    series: list[RoundMetrics]
    fnd: int | None  # None: no node died within the simulated rounds
    lnd: int | None
    config_echo: NetworkConfig
    kind: ProtocolKind
    max_rounds: int
    initial_energy: float = 0.0

    def column(self, name: str) -> np.ndarray:
        return np.array([getattr(r, name) for r in self.series])


@dataclass(frozen=True)
class Summary:
    fnd: int | None
    lnd: int | None
    total_packets: int
    rounds_simulated: int


def charge_round(pop: Population, plan: RoundPlan, params: EnergyParams) -> np.ndarray:
    """Per-node energy charged for one round under ``plan``.

    Sources pay transmission to their destination. Each CH also pays one
    reception per member, fusion of ``members + 1`` signals and its uplink.
    """
    n = len(pop)
    bits = plan.bits
    spend = np.zeros(n)
    spend[plan.sources] = tx_energy_unchecked(params, bits, plan.dist)
    if len(plan.ch_ids):
        ch = plan.ch_ids
        members = plan.members_per_ch(n)[ch]
        spend[ch] = (members * (params.e_elec * bits)
                     + (members + 1) * (params.e_da * params.l)
                     + tx_energy_unchecked(params, bits, plan.ch_dist))
    return spend


def check_plan(pop: Population, plan: RoundPlan) -> None:
    involved = np.concatenate([plan.sources, plan.ch_ids])
    if len(involved) == 0:
        return
    if involved.min() < 0 or involved.max() >= len(pop) or not pop.alive[involved].all():
        raise ValueError("inconsistent plan")
    if len(np.unique(involved)) != len(involved):
        raise ValueError("inconsistent plan")
    is_ch = np.zeros(len(pop), dtype=bool)
    is_ch[plan.ch_ids] = True
    dest_ch = plan.dest[plan.dest >= 0]
    if len(dest_ch) and (dest_ch.max() >= len(pop) or not is_ch[dest_ch].all()):
        raise ValueError("inconsistent plan")


def run_round(pop: Population, plan: RoundPlan, params: EnergyParams,
              round: int = 1, cumulative: int = 0, validate: bool = True) -> RoundMetrics:
    """Apply one round's energy charges to ``pop`` in place.

    A node alive at the start of the round takes full part in it; if its
    energy ends at or below zero it is marked dead afterwards, but its packet
    still counts as delivered.
    """
    if validate:
        check_plan(pop, plan)
    spend = charge_round(pop, plan, params)
    pop.energy -= spend
    pop.alive &= pop.energy > 0
    delivered = len(plan.sources) + len(plan.ch_ids)
    alive = int(np.count_nonzero(pop.alive))
    return RoundMetrics(
        round=round,
        alive=alive,
        dead=len(pop) - alive,
        packets_delivered=delivered,
        cumulative_packets=cumulative + delivered,
        total_residual_energy=float(np.maximum(pop.energy, 0.0).sum()),
        energy_consumed=float(spend.sum()),
    )


def population_for(cfg: NetworkConfig, kind: ProtocolKind) -> list[Node]:
    """Deploy the node set a protocol runs on; LEACH and SNRP are single-tier."""
    if not kind.heterogeneous:
        cfg = cfg.with_(m=0.0, alpha=0.0)
    return deploy_network(cfg, kind.deployment)


def run_simulation(cfg: NetworkConfig, kind: ProtocolKind,
                   max_rounds: int = DEFAULT_MAX_ROUNDS,
                   nodes: list[Node] | None = None) -> SimResult:
    """Simulate until every node is dead or ``max_rounds`` have run.

    ``nodes`` overrides the deployment derived from ``cfg``; the election
    stream is still keyed by ``cfg.seed``.
    """
    if max_rounds < 1:
        raise ValueError("max_rounds must be >= 1")
    kind = ProtocolKind(kind)
    if nodes is None:
        nodes = population_for(cfg, kind)
    pop = Population.from_nodes(nodes)
    rng = make_rng(cfg.seed, 1)
    state = ElectionState.initial(pop, kind, cfg.p, cfg.m, cfg.alpha)
    initial_energy = float(pop.energy.sum())

    series: list[RoundMetrics] = []
    fnd = lnd = None
    cumulative = 0
    n = len(pop)
    for r in range(1, max_rounds + 1):
        if not pop.alive.any():
            break
        state.round = r - 1
        chs = elect_cluster_heads(state, pop, kind, rng)
        plan = plan_round(pop, cfg.layout, chs, kind, cfg.energy.l)
        metrics = run_round(pop, plan, cfg.energy, r, cumulative, validate=False)
        cumulative = metrics.cumulative_packets
        series.append(metrics)
        if fnd is None and metrics.dead > 0:
            fnd = r
        if metrics.alive == 0 and n > 0:
            lnd = r
    return SimResult(series, fnd, lnd, cfg, kind, max_rounds, initial_energy)


def summarize(result: SimResult) -> Summary:
    if not result.series:
        raise ValueError("empty series")
    last = result.series[-1]
    return Summary(result.fnd, result.lnd, last.cumulative_packets, len(result.series))


def censored(value: int | None, max_rounds: int) -> float:
    """Round count with "not reached" mapped to ``max_rounds`` (a lower bound)."""
    return float(max_rounds) if value is None else float(value)


def mean_censored(values, max_rounds: int) -> float:
    vals = [censored(v, max_rounds) for v in values]
    return math.fsum(vals) / len(vals) if vals else float("nan")
