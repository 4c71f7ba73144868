import pytest
from hypothesis import given, strategies as st

from lpnspp.net import (FiringError, NetError, enabled, fire, fire_sequence, label_word,
                        make_net, successors)


def simple(pre=1, post=1):
    return make_net(["p1", "p2"], {"t": "a"}, [("p1", "t", pre), ("t", "p2", post)])


def test_enabled_threshold():
    assert enabled(simple(), (1, 0), "t")
    assert not enabled(simple(pre=2), (1, 0), "t")


def test_source_transition_always_enabled():
    net = make_net(["p"], {"src": "u"}, [("src", "p")])
    assert enabled(net, (0,), "src")
    assert enabled(net, (7,), "src")


def test_enabled_unknown_transition():
    with pytest.raises(NetError):
        enabled(simple(), (1, 0), "nope")


def test_fire_moves_token():
    assert fire(simple(), (1, 0), "t") == (0, 1)


def test_fire_self_loop():
    net = make_net(["p"], {"t": "a"}, [("p", "t"), ("t", "p")])
    assert fire(net, (1,), "t") == (1,)


def test_fire_weighted():
    net = make_net(["p1", "p2"], {"t": "a"}, [("p1", "t", 2), ("t", "p1", 1), ("t", "p2", 3)])
    assert fire(net, (2, 0), "t") == (1, 3)


def test_fire_disabled_names_place():
    with pytest.raises(FiringError) as err:
        fire(simple(pre=2), (1, 0), "t")
    assert err.value.place == "p1"


def test_fire_sequence_empty():
    assert fire_sequence(simple(), (1, 0), []) == [(1, 0)]


def test_fire_sequence_reports_index():
    with pytest.raises(FiringError) as err:
        fire_sequence(simple(), (1, 0), ["t", "t"])
    assert err.value.index == 1


def test_chain_moves_control_token_out_and_back():
    # three-step chain with control place, as produced for gamma(a) = 3
    net = make_net(["p0", "ps", "ctrl", "m1", "m2"], {"t1": "a", "t2": "a", "t3": "a"},
                   [("p0", "t1"), ("ctrl", "t1"), ("t1", "m1"), ("m1", "t2"), ("t2", "m2"),
                    ("m2", "t3"), ("t3", "ps"), ("t3", "ctrl")])
    ms = fire_sequence(net, (1, 0, 1, 0, 0), ["t1", "t2", "t3"])
    assert [m[2] for m in ms] == [1, 0, 0, 1]
    assert ms[-1] == (0, 1, 1, 0, 0)
    assert label_word(net, ["t1", "t2", "t3"]) == ("a", "a", "a")


def test_label_word():
    net = make_net(["p"], {"t1": "a", "t2": "a"}, [])
    assert label_word(net, []) == ()
    assert label_word(net, ["t1", "t2"]) == ("a", "a")


@pytest.mark.parametrize("build", [
    lambda: make_net([], {"t": "a"}, []),
    lambda: make_net(["x"], {"x": "a"}, []),
    lambda: make_net(["p", "p"], {"t": "a"}, []),
    lambda: make_net(["p"], {"t": "a"}, [("p", "q")]),
    lambda: make_net(["p"], {"t": "a"}, [], alphabet=["b"]),
    lambda: make_net(["p"], {"t": "a"}, [("p", "t", -1)]),
])
def test_malformed_nets(build):
    with pytest.raises(NetError):
        build()


def test_zero_weight_arcs_are_dropped():
    net = make_net(["p"], {"t": "a"}, [("p", "t", 0)])
    assert net.flow == {}


# -- properties over random small nets --------------------------------------

@st.composite
def nets(draw):
    n_p = draw(st.integers(1, 4))
    n_t = draw(st.integers(1, 4))
    places = [f"p{i}" for i in range(n_p)]
    trans = [f"t{i}" for i in range(n_t)]
    arcs = []
    for t in trans:
        for p in places:
            arcs.append((p, t, draw(st.integers(0, 2))))
            arcs.append((t, p, draw(st.integers(0, 2))))
    labels = {t: draw(st.sampled_from("ab")) for t in trans}
    net = make_net(places, labels, arcs)
    m = tuple(draw(st.integers(0, 3)) for _ in places)
    return net, m


@given(nets(), st.data())
def test_firing_equation(nm, data):
    net, m = nm
    for t in net.transitions:
        if enabled(net, m, t):
            m2 = fire(net, m, t)
            for p in net.places:
                i = net.place_index[p]
                assert m2[i] == m[i] - net.weight(p, t) + net.weight(t, p)


@given(nets(), st.lists(st.integers(0, 3), min_size=4, max_size=4))
def test_strong_monotonicity(nm, extra):
    net, m = nm
    bigger = tuple(k + e for k, e in zip(m, extra))
    for t in net.transitions:
        if enabled(net, m, t):
            assert enabled(net, bigger, t)
            m1, m1b = fire(net, m, t), fire(net, bigger, t)
            assert all(x <= y for x, y in zip(m1, m1b))


@given(nets(), st.data())
def test_label_word_homomorphism(nm, data):
    net, _ = nm
    seq = st.lists(st.sampled_from(net.transitions), max_size=5)
    s1, s2 = data.draw(seq), data.draw(seq)
    assert label_word(net, s1 + s2) == label_word(net, s1) + label_word(net, s2)


@given(nets())
def test_successors_agree_with_fire(nm):
    net, m = nm
    got = {net.transitions[i]: s for i, s in successors(net, m)}
    want = {t: fire(net, m, t) for t in net.transitions if enabled(net, m, t)}
    assert got == want
