import random

import pytest
from hypothesis import given, settings, strategies as st

from lpnspp.coverability import (OMEGA, ResourceExhausted, backward_coverable, bounded_explore,
                                 covers, karp_miller, minimize, pre_step)
from lpnspp.generate import NetConfig, random_marking, random_net
from lpnspp.net import fire, fire_sequence, make_net

from helpers import reachable_by_runs

SOURCE_NET = make_net(["p0", "ps"], {"src": "src", "t": "t"},
                      [("src", "p0"), ("p0", "t"), ("t", "ps")])


def test_pre_step_single_arc():
    net = make_net(["p1", "p2"], ["t"], [("p1", "t"), ("t", "p2")])
    assert pre_step(net, (0, 1)) == {"t": (1, 0)}


def test_pre_step_self_loop():
    net = make_net(["p"], ["t"], [("p", "t"), ("t", "p")])
    assert pre_step(net, (1,)) == {"t": (1,)}


def test_pre_step_weighted():
    net = make_net(["p1", "p2"], ["t"], [("p1", "t", 2), ("t", "p2", 3)])
    pred = pre_step(net, (0, 4))["t"]
    assert pred == (2, 1)
    assert covers(fire(net, pred, "t"), (0, 4))


def test_minimize_keeps_antichain():
    assert minimize([(1, 1), (1, 0), (0, 2), (2, 2)]) == [(0, 2), (1, 0)]


def test_backward_initial_already_covers():
    res = backward_coverable(SOURCE_NET, (0, 1), [(0, 1)])
    assert res.coverable and res.witness == ()


def test_backward_source_net_witness():
    ok, witness = backward_coverable(SOURCE_NET, (0, 0), [(0, 1)])
    assert ok and len(witness) == 2
    assert fire_sequence(SOURCE_NET, (0, 0), witness)[-1][1] >= 1
    ex = bounded_explore(SOURCE_NET, (0, 0), 3, 2)
    assert ex.cover_witness([(0, 1)]) == ("src", "t")


def test_backward_structurally_unreachable():
    net = make_net(["p", "q"], ["t"], [("p", "t"), ("t", "p")])
    assert tuple(backward_coverable(net, (1, 0), [(0, 1)])) == (False, None)


def test_backward_no_targets():
    assert not backward_coverable(SOURCE_NET, (0, 0), []).coverable


def test_backward_budget():
    with pytest.raises(ResourceExhausted):
        backward_coverable(SOURCE_NET, (0, 0), [(0, 5)], max_nodes=1)


def test_karp_miller_accelerates_source():
    tree = karp_miller(SOURCE_NET, (0, 0))
    assert tree.unbounded_places(SOURCE_NET) == {"p0", "ps"}
    assert tree.covers((100, 100))
    assert any(m[0] == OMEGA for m in tree.markings)


def test_karp_miller_budget():
    with pytest.raises(ResourceExhausted):
        karp_miller(SOURCE_NET, (0, 0), max_nodes=1)


def test_karp_miller_bounded_net_is_reachability_set():
    net = make_net(["a", "b", "c"], ["t1", "t2", "t3"],
                   [("a", "t1"), ("t1", "b"), ("b", "t2"), ("t2", "c"), ("c", "t3"), ("t3", "a")])
    tree = karp_miller(net, (1, 0, 0))
    ex = bounded_explore(net, (1, 0, 0), 1, 50)
    assert ex.complete
    assert set(tree.markings) == ex.markings == {(1, 0, 0), (0, 1, 0), (0, 0, 1)}


def test_bounded_explore_truncates_unbounded():
    ex = bounded_explore(SOURCE_NET, (0, 0), 3, 100)
    assert not ex.complete
    assert max(max(m) for m in ex.markings) <= 3


def test_bounded_explore_depth_cut():
    net = make_net(["a", "b"], ["t"], [("a", "t"), ("t", "b")])
    assert not bounded_explore(net, (1, 0), 1, 0).complete
    assert bounded_explore(net, (1, 0), 1, 1).complete


@settings(max_examples=60, deadline=None)
@given(st.integers(0, 10**6))
def test_bounded_explore_matches_run_enumeration(seed):
    rng = random.Random(seed)
    net, m0 = random_net(rng, NetConfig(max_places=3, max_transitions=3))
    ex = bounded_explore(net, m0, 10**6, 4)
    assert ex.markings == reachable_by_runs(net, m0, 4)


@settings(max_examples=80, deadline=None)
@given(st.integers(0, 10**6))
def test_pre_step_sound(seed):
    rng = random.Random(seed)
    net, _ = random_net(rng, NetConfig(max_places=4, max_transitions=4))
    b = random_marking(rng, net, 3)
    for t, pred in pre_step(net, b).items():
        assert covers(fire(net, pred, t), b)


@settings(max_examples=80, deadline=None)
@given(st.integers(0, 10**6))
def test_engines_agree_and_witnesses_replay(seed):
    rng = random.Random(seed)
    net, m0 = random_net(rng, NetConfig(max_places=4, max_transitions=4, source_prob=0.2))
    target = random_marking(rng, net, 2)
    res = backward_coverable(net, m0, [target])
    assert res.basis.is_antichain()
    assert res.coverable == karp_miller(net, m0).covers(target)
    if res.coverable:
        assert covers(fire_sequence(net, m0, res.witness)[-1], target)
    ex = bounded_explore(net, m0, 6, 12)
    if ex.complete:
        assert res.coverable == (ex.cover_witness([target]) is not None)
    elif ex.cover_witness([target]) is not None:
        assert res.coverable
