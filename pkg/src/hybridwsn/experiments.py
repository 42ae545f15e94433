"""Multi-seed experiment drivers: relay sweep, region sweep, protocol comparison."""

from __future__ import annotations

import enum
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field, replace
from pathlib import Path

import numpy as np

from .engine import DEFAULT_MAX_ROUNDS, SimResult, censored, run_simulation
from .netmodel import NetworkConfig, Position
from .protocols import ProtocolKind

RELAY_POSITIONS = (Position(50.0, 0.0), Position(50.0, 20.0), Position(50.0, 50.0), Position(50.0, 80.0))
REGION3_SPANS = ((10.0, 90.0), (20.0, 80.0), (30.0, 70.0), (40.0, 60.0), (50.0, 50.0))
DEFAULT_SEEDS = tuple(range(1, 11))

MODELS = {"homogeneous": ProtocolKind.SNRP, "heterogeneous": ProtocolKind.HYBRID}
COMPARED = (ProtocolKind.HYBRID, ProtocolKind.SEP, ProtocolKind.SNRP, ProtocolKind.LEACH)


class ExperimentKind(enum.Enum):
    RELAY_POSITION_SWEEP = "sweep-relay"
    REGION_DIVISION_SWEEP = "sweep-regions"
    PROTOCOL_COMPARISON = "compare"
    SINGLE_RUN = "simulate"


@dataclass(frozen=True)
class ExperimentSpec:
    kind: ExperimentKind
    seeds: tuple[int, ...] = DEFAULT_SEEDS
    base: NetworkConfig = field(default_factory=NetworkConfig)
    max_rounds: int = DEFAULT_MAX_ROUNDS
    output_dir: Path | None = None
    workers: int = 1

    def __post_init__(self):
        if not self.seeds:
            raise ValueError("at least one seed is required")
        if self.max_rounds < 1:
            raise ValueError("max_rounds must be >= 1")
        object.__setattr__(self, "seeds", tuple(int(s) for s in self.seeds))
        for s in self.seeds:
            self.base.with_(seed=s)  # validates the seed range

    def config_for(self, seed: int, **layout_changes) -> NetworkConfig:
        layout = replace(self.base.layout, **layout_changes) if layout_changes else self.base.layout
        return self.base.with_(seed=seed, layout=layout)


def _run(job):
    cfg, kind, max_rounds = job
    return run_simulation(cfg, kind, max_rounds)


def run_batch(jobs, workers: int = 1) -> list[SimResult]:
    """Run ``(cfg, kind, max_rounds)`` jobs; results keep job order."""
    jobs = list(jobs)
    if workers > 1 and len(jobs) > 1:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            return list(pool.map(_run, jobs))
    return [_run(job) for job in jobs]


def _stats(results: list[SimResult]) -> dict:
    max_rounds = results[0].max_rounds
    fnd = np.array([censored(r.fnd, max_rounds) for r in results])
    lnd = np.array([censored(r.lnd, max_rounds) for r in results])
    return {
        "mean_fnd": float(fnd.mean()),
        "min_fnd": float(fnd.min()),
        "max_fnd": float(fnd.max()),
        "mean_lnd": float(lnd.mean()),
        "min_lnd": float(lnd.min()),
        "max_lnd": float(lnd.max()),
        "lnd_not_reached": sum(r.lnd is None for r in results),
        "seeds": len(results),
    }


def relay_position_sweep(spec: ExperimentSpec, positions=RELAY_POSITIONS) -> list[dict]:
    """Seed-averaged lifetime of both region models at each relay position.

    Runs whose last node outlives ``max_rounds`` enter the means as
    ``max_rounds``; ``lnd_not_reached`` counts them.
    """
    positions = [Position(float(x), float(y)) for x, y in positions]
    for pos in positions:
        if not spec.base.layout.contains(pos):
            raise ValueError(f"relay position outside field: {tuple(pos)}")
    jobs, keys = [], []
    for pos in positions:
        for model, kind in MODELS.items():
            keys.append((pos, model))
            jobs.extend((spec.config_for(s, relay=pos), kind, spec.max_rounds) for s in spec.seeds)
    results = run_batch(jobs, spec.workers)
    k = len(spec.seeds)
    rows = []
    for i, (pos, model) in enumerate(keys):
        rows.append({"relay_x": pos.x, "relay_y": pos.y, "model": model,
                     **_stats(results[i * k:(i + 1) * k])})
    return rows


def region_division_sweep(spec: ExperimentSpec, spans=REGION3_SPANS) -> list[dict]:
    """Seed-averaged stability and lifetime for each Region 3 x-span."""
    spans = [(float(a), float(b)) for a, b in spans]
    for lo, hi in spans:
        if lo > hi:
            raise ValueError(f"region 3 span min > max: {lo} > {hi}")
    jobs, keys = [], []
    for lo, hi in spans:
        for model, kind in MODELS.items():
            keys.append((lo, hi, model))
            jobs.extend((spec.config_for(s, r3_x_min=lo, r3_x_max=hi), kind, spec.max_rounds)
                        for s in spec.seeds)
    results = run_batch(jobs, spec.workers)
    k = len(spec.seeds)
    return [{"r3_x_min": lo, "r3_x_max": hi, "model": model, **_stats(results[i * k:(i + 1) * k])}
            for i, (lo, hi, model) in enumerate(keys)]


@dataclass
class Comparison:
    results: dict[ProtocolKind, list[SimResult]]
    seeds: tuple[int, ...]

    def summary(self) -> list[dict]:
        rows = []
        for kind, runs in self.results.items():
            packets = [r.series[-1].cumulative_packets if r.series else 0 for r in runs]
            rows.append({"protocol": kind.value, **_stats(runs),
                         "mean_total_packets": float(np.mean(packets))})
        return rows

    def per_round(self, kind: ProtocolKind, column: str, seed_index: int) -> np.ndarray:
        """One run's metric column padded to ``max_rounds``.

        A run only stops early once every node is dead, so the padding
        repeats the final state with no further deliveries.
        """
        run = self.results[kind][seed_index]
        values = run.column(column).astype(float)
        out = np.zeros(run.max_rounds)
        out[: len(values)] = values
        if column == "round":
            out[:] = np.arange(1, run.max_rounds + 1)
        elif column != "packets_delivered" and len(values):
            out[len(values):] = values[-1]
        return out

    def mean_series(self, kind: ProtocolKind, column: str) -> np.ndarray:
        return np.mean([self.per_round(kind, column, i) for i in range(len(self.seeds))], axis=0)


def protocol_comparison(spec: ExperimentSpec, protocols=COMPARED) -> Comparison:
    """Run every protocol on every seed.

    LEACH and SEP draw the same uniform positions for a seed; SNRP and the
    hybrid scheme use their region deployments for that seed.
    """
    protocols = [ProtocolKind(p) for p in protocols]
    jobs = [(spec.config_for(s), kind, spec.max_rounds) for kind in protocols for s in spec.seeds]
    results = run_batch(jobs, spec.workers)
    k = len(spec.seeds)
    return Comparison({kind: results[i * k:(i + 1) * k] for i, kind in enumerate(protocols)},
                      spec.seeds)
