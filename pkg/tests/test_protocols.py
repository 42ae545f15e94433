import numpy as np
import pytest
from hypothesis import given, settings, strategies as st
from scipy.stats import chi2_contingency

from hybridwsn.netmodel import (
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
    make_rng,
)
from hybridwsn.protocols import (
    BS,
    RELAY,
    ElectionState,
    ProtocolKind,
    elect_cluster_heads,
    election_threshold,
    epoch_length,
    plan_round,
    sep_tier_probabilities,
)

LAYOUT = RegionLayout()


def population(kind, seed=0, **cfg):
    from hybridwsn.engine import population_for
    return Population.from_nodes(population_for(NetworkConfig(seed=seed, **cfg), kind))


def single(pos, tier=NodeTier.NORMAL, energy=0.5):
    return Population.from_nodes([Node(0, Position(*pos), tier, energy, assign_region(pos, LAYOUT))])


# --- threshold -------------------------------------------------------------

@pytest.mark.parametrize("r,expected", [(0, 0.1), (10, 0.1), (9, 1.0), (19, 1.0), (5, 0.2), (15, 0.2)])
def test_threshold_examples(r, expected):
    assert election_threshold(0.1, r, True) == pytest.approx(expected, rel=1e-12)


@pytest.mark.parametrize("r", [0, 3, 9, 12345])
def test_threshold_outside_eligible_set(r):
    assert election_threshold(0.1, r, False) == 0.0


@pytest.mark.parametrize("p", [0.0, -0.1, 1.5])
def test_threshold_rejects_bad_p(p):
    with pytest.raises(ValueError):
        election_threshold(p, 0, True)


@given(st.floats(min_value=1e-3, max_value=1.0), st.integers(min_value=0, max_value=10**6))
def test_threshold_is_probability(p, r):
    assert 0.0 <= election_threshold(p, r, True) <= 1.0


def test_epoch_length_absorbs_float_noise():
    assert epoch_length(0.1) == 10
    assert epoch_length(0.1 / 1.5) == 15
    assert epoch_length(0.2 / 1.5) == 8
    assert epoch_length(1.0) == 1


# --- SEP weighting ---------------------------------------------------------

def test_sep_examples():
    p_nrm, p_adv = sep_tier_probabilities(0.1, 0.5, 1.0)
    assert p_nrm == pytest.approx(0.0667, abs=1e-4)
    assert p_adv == pytest.approx(0.1333, abs=1e-4)
    assert sep_tier_probabilities(0.1, 0.3, 0.0) == pytest.approx((0.1, 0.1))
    assert sep_tier_probabilities(0.1, 0.0, 3.0)[0] == pytest.approx(0.1)


@given(st.floats(0.01, 1.0), st.floats(0.0, 1.0), st.floats(0.0, 10.0))
def test_sep_population_average(p, m, alpha):
    p_nrm, p_adv = sep_tier_probabilities(p, m, alpha)
    assert (1 - m) * p_nrm + m * p_adv == pytest.approx(p, rel=1e-12)


# --- election ----------------------------------------------------------------

def mean_ch_count(pop, kind, rounds, seed=0, p=0.1):
    state = ElectionState.initial(pop, kind, p)
    rng = make_rng(seed, 1)
    counts = []
    for r in range(rounds):
        state.round = r
        counts.append(len(elect_cluster_heads(state, pop, kind, rng)))
    return np.array(counts)


def test_leach_mean_ch_count_monte_carlo():
    pop = population(ProtocolKind.LEACH)
    counts = mean_ch_count(pop, ProtocolKind.LEACH, 10_000)
    assert 9 <= counts.mean() <= 11
    # each epoch of 10 rounds elects every node exactly once
    assert counts.sum() == 100 * 1000


@pytest.mark.parametrize("kind", list(ProtocolKind))
def test_each_permitted_node_serves_once_per_epoch(kind):
    pop = population(kind, seed=4)
    state = ElectionState.initial(pop, kind, 0.1, 0.5, 1.0)
    rng = make_rng(4, 1)
    served = np.zeros(len(pop), dtype=int)
    for r in range(int(state.epoch_len.max())):
        state.round = r
        for ch in elect_cluster_heads(state, pop, kind, rng):
            # count service inside each node's own first epoch
            served[ch] += r < state.epoch_len[ch]
    assert (served[state.permitted] == 1).all()
    assert (served[~state.permitted] == 0).all()


def test_hybrid_heads_are_advanced_clustered_nodes():
    pop = population(ProtocolKind.HYBRID, seed=9)
    state = ElectionState.initial(pop, ProtocolKind.HYBRID, 0.1)
    rng = make_rng(9, 1)
    for r in range(200):
        state.round = r
        chs = elect_cluster_heads(state, pop, ProtocolKind.HYBRID, rng)
        assert pop.advanced[chs].all()
        assert np.isin(pop.region[chs], (2, 4)).all()


def test_snrp_heads_only_in_clustered_regions():
    pop = population(ProtocolKind.SNRP, seed=9)
    counts = []
    state = ElectionState.initial(pop, ProtocolKind.SNRP, 0.1)
    rng = make_rng(9, 1)
    for r in range(100):
        state.round = r
        chs = elect_cluster_heads(state, pop, ProtocolKind.SNRP, rng)
        assert np.isin(pop.region[chs], (2, 4)).all()
        counts.append(len(chs))
    assert sum(counts) == 10 * 48


def test_hybrid_no_heads_when_clustered_nodes_dead():
    pop = population(ProtocolKind.HYBRID, seed=1)
    pop.alive[np.isin(pop.region, (2, 4))] = False
    assert mean_ch_count(pop, ProtocolKind.HYBRID, 30).sum() == 0


def test_empty_eligible_set_mid_epoch():
    pop = population(ProtocolKind.LEACH, seed=2, n=20)
    state = ElectionState.initial(pop, ProtocolKind.LEACH, 0.1)
    state.eligible[:] = False
    rng = make_rng(2, 1)
    for r in range(3, 10):
        state.round = r
        assert len(elect_cluster_heads(state, pop, ProtocolKind.LEACH, rng)) == 0
    state.round = 10
    # epoch restart refills the set
    assert state.eligible.sum() == 0
    elect_cluster_heads(state, pop, ProtocolKind.LEACH, rng)
    assert state.eligible.sum() > 0


def test_ch_count_distribution_invariant_under_permutation():
    nodes = deploy_network(NetworkConfig(seed=5), Deployment.UNIFORM)
    perm = np.random.default_rng(99).permutation(len(nodes))
    shuffled = [nodes[i] for i in perm]
    for new_id, node in enumerate(shuffled):
        shuffled[new_id] = Node(new_id, node.pos, node.tier, node.energy, node.region)
    a = mean_ch_count(Population.from_nodes(nodes), ProtocolKind.LEACH, 2000, seed=1)
    b = mean_ch_count(Population.from_nodes(shuffled), ProtocolKind.LEACH, 2000, seed=2)
    bins = [0, 6, 8, 10, 12, 14, 10**6]
    table = np.array([np.histogram(a, bins)[0], np.histogram(b, bins)[0]])
    table = table[:, table.sum(axis=0) > 0]
    assert chi2_contingency(table)[1] > 1e-3


# --- planning ----------------------------------------------------------------

def test_plan_r1_node_to_bs():
    plan = plan_round(single((50, 90)), LAYOUT, [], ProtocolKind.HYBRID)
    assert plan.transmissions == [(0, BS, 4000, 30.0)]
    assert plan.ch_uplinks == []


def test_plan_r3_node_to_relay():
    plan = plan_round(single((50, 40)), LAYOUT, [], ProtocolKind.HYBRID)
    assert plan.transmissions == [(0, RELAY, 4000, 40.0)]


def test_plan_leach_without_heads_goes_direct():
    pop = population(ProtocolKind.LEACH, seed=3)
    plan = plan_round(pop, LAYOUT, [], ProtocolKind.LEACH)
    assert len(plan.sources) == 100 and (plan.dest == BS).all()
    expected = np.hypot(pop.x - 50, pop.y - 120)
    np.testing.assert_allclose(plan.dist, expected, rtol=1e-15)


def test_plan_member_joins_cluster_head_in_region():
    nodes = [
        Node(0, Position(10, 10), NodeTier.ADVANCED, 1.0, RegionId.R2),
        Node(1, Position(20, 30), NodeTier.ADVANCED, 1.0, RegionId.R2),
        Node(2, Position(75, 30), NodeTier.ADVANCED, 1.0, RegionId.R4),
    ]
    pop = Population.from_nodes(nodes)
    plan = plan_round(pop, LAYOUT, [0], ProtocolKind.HYBRID)
    assert plan.membership == {1: 0, 2: RELAY, 0: RELAY}
    assert plan.transmissions[0] == (1, 0, 4000, pytest.approx(np.hypot(10, 20)))
    # R4 has no head this round, so its node falls back to the relay
    assert plan.transmissions[1] == (2, RELAY, 4000, pytest.approx(np.hypot(25, 50)))
    assert plan.ch_uplinks == [(0, RELAY, 4000, pytest.approx(np.hypot(40, 70)))]


def test_plan_rejects_dead_head():
    pop = population(ProtocolKind.LEACH, seed=1, n=5)
    pop.alive[2] = False
    with pytest.raises(ValueError, match="inconsistent plan"):
        plan_round(pop, LAYOUT, [2], ProtocolKind.LEACH)


def nearest_oracle(pop, i, chs, same_region):
    best, best_d = None, np.inf
    for c in chs:
        if same_region and pop.region[c] != pop.region[i]:
            continue
        d = float(np.hypot(pop.x[i] - pop.x[c], pop.y[i] - pop.y[c]))
        if d < best_d:
            best, best_d = c, d
    return best, best_d


@settings(max_examples=60, deadline=None)
@given(st.sampled_from(list(ProtocolKind)), st.integers(0, 2**32), st.floats(0.0, 0.5),
       st.floats(0.0, 0.3))
def test_plan_invariants(kind, seed, p_dead, p_ch):
    pop = population(kind, seed=seed % 1000)
    rng = np.random.default_rng(seed)
    pop.alive &= rng.random(len(pop)) >= p_dead
    pick = pop.alive & (rng.random(len(pop)) < p_ch)
    if kind.uses_regions:
        pick &= np.isin(pop.region, (2, 4))
    chs = np.flatnonzero(pick)
    plan = plan_round(pop, LAYOUT, chs, kind)

    alive_ids = set(np.flatnonzero(pop.alive).tolist())
    srcs = [t[0] for t in plan.transmissions]
    assert len(srcs) == len(set(srcs))
    assert set(srcs) == alive_ids - set(chs.tolist())
    assert sorted(u[0] for u in plan.ch_uplinks) == sorted(chs.tolist())
    assert all(t[2] == 4000 for t in plan.transmissions + plan.ch_uplinks)

    for src, dst, _, d in plan.transmissions:
        region = pop.region[src]
        if kind.uses_regions and region == RegionId.R1:
            assert dst == BS and d == pytest.approx(np.hypot(pop.x[src] - 50, pop.y[src] - 120))
        elif kind.uses_regions and region == RegionId.R3:
            assert dst == RELAY and d == pytest.approx(np.hypot(pop.x[src] - 50, pop.y[src] - 80))
        else:
            want, want_d = nearest_oracle(pop, src, chs, kind.uses_regions)
            if want is None:
                assert dst == (RELAY if kind.uses_regions else BS)
            else:
                assert d == pytest.approx(want_d)
                assert dst >= 0 and pop.region[dst] == region if kind.uses_regions else dst >= 0
    expected_ch_dest = RELAY if kind.uses_regions else BS
    assert all(u[1] == expected_ch_dest for u in plan.ch_uplinks)
