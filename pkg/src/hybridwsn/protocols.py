"""Cluster-head election and per-round transmission planning.

Four protocols share the same machinery:

* ``LEACH`` and ``SEP`` cluster the whole field and send CH traffic to the
  base station. SEP weights election probability by energy tier.
* ``SNRP`` and ``HYBRID`` use the four-region layout: R1 nodes talk to the
  base station, R3 nodes to the relay, and R2/R4 form clusters whose heads
  report to the relay. ``HYBRID`` additionally restricts heads to advanced
  nodes.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass

import numpy as np

from .netmodel import CLUSTERED_REGIONS, Deployment, Population, RegionLayout

RELAY = -1
BS = -2


class ProtocolKind(enum.Enum):
    LEACH = "leach"
    SEP = "sep"
    SNRP = "snrp"
    HYBRID = "hybrid"

    @property
    def uses_regions(self) -> bool:
        return self in (ProtocolKind.SNRP, ProtocolKind.HYBRID)

    @property
    def deployment(self) -> Deployment:
        return {
            ProtocolKind.LEACH: Deployment.UNIFORM,
            ProtocolKind.SEP: Deployment.UNIFORM,
            ProtocolKind.SNRP: Deployment.HOMOGENEOUS,
            ProtocolKind.HYBRID: Deployment.HETEROGENEOUS,
        }[self]

    @property
    def heterogeneous(self) -> bool:
        return self in (ProtocolKind.SEP, ProtocolKind.HYBRID)


def epoch_length(p: float) -> int:
    """Rounds per election epoch, ``ceil(1/p)``.

    The small slack keeps e.g. ``1/(0.1/1.5)`` = 15.000000000000002 at 15.
    """
    return max(1, math.ceil(1.0 / p - 1e-9))


def election_threshold(p: float, round: int, in_eligible_set: bool) -> float:
    if not 0 < p <= 1:
        raise ValueError(f"election probability must be in (0, 1], got {p}")
    if round < 0:
        raise ValueError("round must be >= 0")
    if not in_eligible_set:
        return 0.0
    denom = 1.0 - p * (round % epoch_length(p))
    if denom <= 0:
        return 1.0
    return min(1.0, max(0.0, p / denom))


def sep_tier_probabilities(p: float, m: float, alpha: float) -> tuple[float, float]:
    """Per-tier election probabilities whose population average is ``p``."""
    p_nrm = p / (1 + alpha * m)
    p_adv = p * (1 + alpha) / (1 + alpha * m)
    return p_nrm, p_adv


@dataclass
class ElectionState:
    """Epoch bookkeeping for one simulation run.

    ``eligible`` marks nodes that have not yet served as CH in their current
    epoch; ``permitted`` is the static set of nodes the protocol allows to
    ever become CH.
    """

    round: int
    eligible: np.ndarray
    permitted: np.ndarray
    p_eff: np.ndarray
    epoch_len: np.ndarray

    @classmethod
    def initial(cls, pop: Population, kind: ProtocolKind, p: float,
                m: float = 0.0, alpha: float = 0.0) -> "ElectionState":
        n = len(pop)
        if kind == ProtocolKind.SEP:
            p_nrm, p_adv = sep_tier_probabilities(p, m, alpha)
            p_eff = np.where(pop.advanced, p_adv, p_nrm)
        else:
            p_eff = np.full(n, float(p))
        if kind == ProtocolKind.HYBRID:
            permitted = pop.advanced & np.isin(pop.region, CLUSTERED_REGIONS)
        elif kind == ProtocolKind.SNRP:
            permitted = np.isin(pop.region, CLUSTERED_REGIONS)
        else:
            permitted = np.ones(n, dtype=bool)
        epoch_len = np.array([epoch_length(q) for q in p_eff], dtype=np.int64)
        return cls(0, permitted.copy(), permitted, p_eff, epoch_len)


def _thresholds(state: ElectionState) -> np.ndarray:
    phase = state.round % state.epoch_len
    denom = 1.0 - state.p_eff * phase
    with np.errstate(divide="ignore", invalid="ignore"):
        t = np.where(denom > 0, state.p_eff / denom, 1.0)
    return np.clip(t, 0.0, 1.0)


def elect_cluster_heads(state: ElectionState, pop: Population, kind: ProtocolKind,
                        rng: np.random.Generator) -> np.ndarray:
    """Run one election at ``state.round``; returns sorted CH ids.

    Every node consumes one uniform draw per round whether or not it is a
    candidate, so the random stream does not depend on who is eligible.
    Elected nodes leave the eligible set until their epoch restarts.
    """
    reset = (state.round % state.epoch_len) == 0
    state.eligible |= reset & state.permitted
    draws = rng.random(len(pop))
    candidates = state.eligible & pop.alive & state.permitted
    chs = candidates & (draws < _thresholds(state))
    state.eligible &= ~chs
    return np.flatnonzero(chs)


@dataclass
class RoundPlan:
    """Who sends to whom in one round.

    Destinations are encoded as CH node ids (>= 0), ``RELAY`` or ``BS``.
    """

    ch_ids: np.ndarray
    sources: np.ndarray
    dest: np.ndarray
    dist: np.ndarray
    ch_dest: np.ndarray
    ch_dist: np.ndarray
    bits: int

    @property
    def membership(self) -> dict[int, int]:
        out = {int(s): int(d) for s, d in zip(self.sources, self.dest)}
        out.update({int(c): int(d) for c, d in zip(self.ch_ids, self.ch_dest)})
        return out

    @property
    def transmissions(self) -> list[tuple[int, int, int, float]]:
        return [(int(s), int(d), self.bits, float(r))
                for s, d, r in zip(self.sources, self.dest, self.dist)]

    @property
    def ch_uplinks(self) -> list[tuple[int, int, int, float]]:
        return [(int(c), int(d), self.bits, float(r))
                for c, d, r in zip(self.ch_ids, self.ch_dest, self.ch_dist)]

    def members_per_ch(self, n: int) -> np.ndarray:
        """Member count indexed by node id (zero for non-CH nodes)."""
        to_ch = self.dest[self.dest >= 0]
        return np.bincount(to_ch, minlength=n)


def _nearest(src_x, src_y, ch_x, ch_y, allowed=None):
    """Index of and distance to the nearest CH for each source (-1/inf if none)."""
    if len(ch_x) == 0 or len(src_x) == 0:
        return np.full(len(src_x), -1), np.full(len(src_x), np.inf)
    d = np.hypot(src_x[:, None] - ch_x[None, :], src_y[:, None] - ch_y[None, :])
    if allowed is not None:
        d = np.where(allowed, d, np.inf)
    idx = np.argmin(d, axis=1)
    best = d[np.arange(len(src_x)), idx]
    return np.where(np.isfinite(best), idx, -1), best


def plan_round(pop: Population, layout: RegionLayout, chs, kind: ProtocolKind,
               bits: int = 4000) -> RoundPlan:
    chs = np.asarray(chs, dtype=np.int64)
    is_ch = np.zeros(len(pop), dtype=bool)
    is_ch[chs] = True
    if np.any(~pop.alive[chs]):
        raise ValueError("inconsistent plan: dead cluster head")
    sources = np.flatnonzero(pop.alive & ~is_ch)
    sx, sy = pop.x[sources], pop.y[sources]
    cx, cy = pop.x[chs], pop.y[chs]
    bs_x, bs_y = layout.bs
    rl_x, rl_y = layout.relay
    dest = np.empty(len(sources), dtype=np.int64)
    dist = np.empty(len(sources), dtype=float)

    if kind.uses_regions:
        region = pop.region[sources]
        allowed = region[:, None] == pop.region[chs][None, :]
        idx, best = _nearest(sx, sy, cx, cy, allowed)
        to_ch = idx >= 0
        dest[:] = RELAY
        dest[to_ch] = chs[idx[to_ch]]
        dist[:] = np.hypot(sx - rl_x, sy - rl_y)
        dist[to_ch] = best[to_ch]
        r3 = region == 3
        dest[r3] = RELAY
        dist[r3] = np.hypot(sx[r3] - rl_x, sy[r3] - rl_y)
        r1 = region == 1
        dest[r1] = BS
        dist[r1] = np.hypot(sx[r1] - bs_x, sy[r1] - bs_y)
        ch_dest = np.full(len(chs), RELAY, dtype=np.int64)
        ch_dist = np.hypot(cx - rl_x, cy - rl_y)
    else:
        idx, best = _nearest(sx, sy, cx, cy)
        to_ch = idx >= 0
        dest[:] = BS
        dest[to_ch] = chs[idx[to_ch]]
        dist[:] = np.hypot(sx - bs_x, sy - bs_y)
        dist[to_ch] = best[to_ch]
        ch_dest = np.full(len(chs), BS, dtype=np.int64)
        ch_dist = np.hypot(cx - bs_x, cy - bs_y)

    return RoundPlan(chs, sources, dest, dist, ch_dest, ch_dist, bits)
