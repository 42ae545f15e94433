"""Field geometry, region partition and seeded node deployment.

The field is split into four rectangles::

    +-----------------------------+  field_height
    |            R1               |
    +---------+---------+---------+  r1_y_min
    |   R2    |   R3    |   R4    |
    |         |         |         |
    +---------+---------+---------+  0
    0      r3_x_min  r3_x_max   field_width

Intervals are half-open ``[min, max)`` with the outer field edges closed, so
a point on a shared edge belongs to the region to its right or above it.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass, field, replace
from typing import NamedTuple, Sequence

import numpy as np

from .radio import EnergyParams


class Position(NamedTuple):
    x: float
    y: float


class NodeTier(enum.Enum):
    NORMAL = "normal"
    ADVANCED = "advanced"


class RegionId(enum.IntEnum):
    R1 = 1  # direct to base station
    R2 = 2  # clustered
    R3 = 3  # direct to relay
    R4 = 4  # clustered


CLUSTERED_REGIONS = (RegionId.R2, RegionId.R4)
DIRECT_REGIONS = (RegionId.R1, RegionId.R3)


class Deployment(enum.Enum):
    """How nodes are spread over the field.

    ``HETEROGENEOUS``: advanced nodes in R2/R4, normal nodes in R1/R3.
    ``HOMOGENEOUS``: all nodes normal, spread over the four regions.
    ``UNIFORM``: whole-field placement ignoring regions; ``round(n*m)``
    randomly chosen nodes are advanced.
    """

    HETEROGENEOUS = "heterogeneous"
    HOMOGENEOUS = "homogeneous"
    UNIFORM = "uniform"


@dataclass(frozen=True)
class RegionLayout:
    field_width: float = 100.0
    field_height: float = 100.0
    r1_y_min: float = 80.0
    r3_x_min: float = 30.0
    r3_x_max: float = 70.0
    bs: Position = Position(50.0, 120.0)
    relay: Position = Position(50.0, 80.0)

    def __post_init__(self):
        object.__setattr__(self, "bs", Position(*map(float, self.bs)))
        object.__setattr__(self, "relay", Position(*map(float, self.relay)))
        if not (self.field_width > 0 and self.field_height > 0):
            raise ValueError("field dimensions must be positive")
        if not 0 < self.r1_y_min < self.field_height:
            raise ValueError("r1_y_min must lie strictly inside the field")
        if self.r3_x_min > self.r3_x_max:
            raise ValueError(f"region 3 span min > max: {self.r3_x_min} > {self.r3_x_max}")
        if not 0 <= self.r3_x_min <= self.r3_x_max <= self.field_width:
            raise ValueError("region 3 span must lie inside the field")

    def bounds(self, region: RegionId) -> tuple[float, float, float, float]:
        """``(x_min, x_max, y_min, y_max)`` of a region's rectangle."""
        w, h, ym = self.field_width, self.field_height, self.r1_y_min
        if region == RegionId.R1:
            return 0.0, w, ym, h
        if region == RegionId.R2:
            return 0.0, self.r3_x_min, 0.0, ym
        if region == RegionId.R3:
            return self.r3_x_min, self.r3_x_max, 0.0, ym
        return self.r3_x_max, w, 0.0, ym

    def area(self, region: RegionId) -> float:
        x0, x1, y0, y1 = self.bounds(region)
        return (x1 - x0) * (y1 - y0)

    def contains(self, pos: Position) -> bool:
        return 0 <= pos[0] <= self.field_width and 0 <= pos[1] <= self.field_height


@dataclass
class Node:
    id: int
    pos: Position
    tier: NodeTier
    energy: float
    region: RegionId
    alive: bool = True
    was_ch_this_epoch: bool = False


@dataclass(frozen=True)
class NetworkConfig:
    n: int = 100
    m: float = 0.5
    alpha: float = 1.0
    e0: float = 0.5
    layout: RegionLayout = field(default_factory=RegionLayout)
    energy: EnergyParams = field(default_factory=EnergyParams)
    p: float = 0.1
    seed: int = 0
    # "proportional" or explicit per-region counts (R1, R2, R3, R4)
    region_allocation: str | tuple[int, int, int, int] = "proportional"

    def __post_init__(self):
        if self.n < 0:
            raise ValueError("n must be >= 0")
        if not 0 <= self.m <= 1:
            raise ValueError("m must be in [0, 1]")
        if self.alpha < 0:
            raise ValueError("alpha must be >= 0")
        if self.e0 <= 0:
            raise ValueError("e0 must be > 0")
        if not 0 < self.p <= 1:
            raise ValueError("p must be in (0, 1]")
        if not 0 <= self.seed < 2**64:
            raise ValueError("seed must be a 64-bit unsigned integer")
        alloc = self.region_allocation
        if isinstance(alloc, str):
            if alloc != "proportional":
                raise ValueError(f"unknown region allocation {alloc!r}")
        else:
            alloc = tuple(int(c) for c in alloc)
            if len(alloc) != 4 or min(alloc) < 0:
                raise ValueError("explicit allocation needs four non-negative counts")
            if sum(alloc) != self.n:
                raise ValueError(f"explicit allocation sums to {sum(alloc)}, expected n={self.n}")
            object.__setattr__(self, "region_allocation", alloc)

    @property
    def n_advanced(self) -> int:
        return math.floor(self.n * self.m + 0.5)

    def with_(self, **changes) -> "NetworkConfig":
        return replace(self, **changes)


def make_rng(seed: int, stream: int = 0) -> np.random.Generator:
    """PCG64 generator keyed by ``(seed, stream)``.

    Stream 0 drives deployment, stream 1 drives cluster-head election.
    """
    return np.random.Generator(np.random.PCG64([stream, seed]))


def distance(a: Sequence[float], b: Sequence[float]) -> float:
    return math.hypot(a[0] - b[0], a[1] - b[1])


def assign_region(pos: Sequence[float], layout: RegionLayout) -> RegionId:
    x, y = pos
    if not layout.contains(pos):
        raise ValueError(f"position outside field: ({x}, {y})")
    if y >= layout.r1_y_min:
        return RegionId.R1
    if x < layout.r3_x_min:
        return RegionId.R2
    if x < layout.r3_x_max:
        return RegionId.R3
    if layout.r3_x_max < layout.field_width:
        return RegionId.R4
    # x on the closed right edge while R4 has zero width
    return RegionId.R3 if layout.r3_x_min < layout.r3_x_max else RegionId.R2


def assign_regions(x: np.ndarray, y: np.ndarray, layout: RegionLayout) -> np.ndarray:
    """Vectorised :func:`assign_region` returning integer region ids."""
    if layout.r3_x_max < layout.field_width:
        right = 4
    else:
        right = 3 if layout.r3_x_min < layout.r3_x_max else 2
    out = np.where(x < layout.r3_x_min, 2, np.where(x < layout.r3_x_max, 3, right))
    return np.where(y >= layout.r1_y_min, 1, out).astype(np.int8)


def _split_by_area(count: int, areas: Sequence[float]) -> list[int]:
    # largest remainder; ties go to the earlier region
    total = sum(areas)
    if count == 0:
        return [0] * len(areas)
    quotas = [count * a / total for a in areas]
    base = [math.floor(q) for q in quotas]
    order = sorted(range(len(areas)), key=lambda i: (-(quotas[i] - base[i]), i))
    for i in order[: count - sum(base)]:
        base[i] += 1
    return base


def region_counts(cfg: NetworkConfig, model: Deployment) -> list[tuple[RegionId, int, NodeTier]]:
    """``(region, count, tier)`` groups for a region-based deployment."""
    layout = cfg.layout
    if model == Deployment.HOMOGENEOUS:
        groups = [(tuple(RegionId), cfg.n, NodeTier.NORMAL)]
    else:
        n_adv = cfg.n_advanced
        adv_home, nrm_home = CLUSTERED_REGIONS, DIRECT_REGIONS
        # a tier whose home regions have no area lives in the other tier's regions
        if sum(layout.area(r) for r in adv_home) == 0:
            adv_home = DIRECT_REGIONS
        if sum(layout.area(r) for r in nrm_home) == 0:
            nrm_home = CLUSTERED_REGIONS
        groups = [
            (nrm_home, cfg.n - n_adv, NodeTier.NORMAL),
            (adv_home, n_adv, NodeTier.ADVANCED),
        ]

    out: list[tuple[RegionId, int, NodeTier]] = []
    if cfg.region_allocation == "proportional":
        for regions, count, tier in groups:
            split = _split_by_area(count, [layout.area(r) for r in regions])
            out.extend((r, c, tier) for r, c in zip(regions, split) if c)
    else:
        explicit = dict(zip(RegionId, cfg.region_allocation))
        if model == Deployment.HETEROGENEOUS:
            adv = sum(explicit[r] for r in CLUSTERED_REGIONS)
            if adv != cfg.n_advanced:
                raise ValueError(
                    f"explicit allocation puts {adv} nodes in R2/R4, expected {cfg.n_advanced} advanced"
                )
        for r, c in explicit.items():
            if c:
                advanced = model == Deployment.HETEROGENEOUS and r in CLUSTERED_REGIONS
                out.append((r, c, NodeTier.ADVANCED if advanced else NodeTier.NORMAL))

    for r, _, _ in out:
        if layout.area(r) == 0:
            raise ValueError(f"empty region allocation: {r.name} has zero area")
    return sorted(out, key=lambda g: (g[0], g[2] != NodeTier.NORMAL))


def deploy_network(cfg: NetworkConfig, model: Deployment = Deployment.HETEROGENEOUS) -> list[Node]:
    """Place ``cfg.n`` nodes, deterministically in ``cfg.seed``."""
    rng = make_rng(cfg.seed, 0)
    layout = cfg.layout
    nodes: list[Node] = []
    if cfg.n == 0:
        return nodes

    def energy_of(tier: NodeTier) -> float:
        return cfg.e0 * (1 + cfg.alpha) if tier == NodeTier.ADVANCED else cfg.e0

    if model == Deployment.UNIFORM:
        xs = rng.uniform(0.0, layout.field_width, cfg.n)
        ys = rng.uniform(0.0, layout.field_height, cfg.n)
        advanced = np.zeros(cfg.n, dtype=bool)
        advanced[rng.permutation(cfg.n)[: cfg.n_advanced]] = True
        regions = assign_regions(xs, ys, layout)
        for i in range(cfg.n):
            tier = NodeTier.ADVANCED if advanced[i] else NodeTier.NORMAL
            nodes.append(Node(i, Position(float(xs[i]), float(ys[i])), tier,
                              energy_of(tier), RegionId(int(regions[i]))))
        return nodes

    for region, count, tier in region_counts(cfg, model):
        x0, x1, y0, y1 = layout.bounds(region)
        xs = rng.uniform(x0, x1, count)
        ys = rng.uniform(y0, y1, count)
        for x, y in zip(xs, ys):
            nodes.append(Node(len(nodes), Position(float(x), float(y)), tier, energy_of(tier), region))
    return nodes


@dataclass
class Population:
    """Column view of a node list, used by the round loop.

    ``region`` holds integer :class:`RegionId` values. Only ``energy`` and
    ``alive`` change once a simulation starts.
    """

    x: np.ndarray
    y: np.ndarray
    advanced: np.ndarray
    region: np.ndarray
    energy: np.ndarray
    alive: np.ndarray

    @classmethod
    def from_nodes(cls, nodes: Sequence[Node]) -> "Population":
        if [node.id for node in nodes] != list(range(len(nodes))):
            raise ValueError("node ids must be 0..n-1 in order")
        return cls(
            x=np.array([node.pos[0] for node in nodes], dtype=float),
            y=np.array([node.pos[1] for node in nodes], dtype=float),
            advanced=np.array([node.tier == NodeTier.ADVANCED for node in nodes], dtype=bool),
            region=np.array([int(node.region) for node in nodes], dtype=np.int8),
            energy=np.array([node.energy for node in nodes], dtype=float),
            alive=np.array([node.alive for node in nodes], dtype=bool),
        )

    def __len__(self) -> int:
        return len(self.x)

    def copy(self) -> "Population":
        return Population(*(a.copy() for a in (self.x, self.y, self.advanced,
                                                self.region, self.energy, self.alive)))

    def to_nodes(self) -> list[Node]:
        return [
            Node(i, Position(float(self.x[i]), float(self.y[i])),
                 NodeTier.ADVANCED if self.advanced[i] else NodeTier.NORMAL,
                 float(self.energy[i]), RegionId(int(self.region[i])), bool(self.alive[i]))
            for i in range(len(self))
        ]
