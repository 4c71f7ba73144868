"""Small named instances used in tests, scripts and the instance corpus."""
from __future__ import annotations

from fractions import Fraction

from .model import Semantics, SppInstance, protectable
from .net import make_net


def two_place(cost=5, gamma=1, semantics=Semantics.PARIKH) -> SppInstance:
    """``p0 -t(a)-> ps`` with ``l(ps) = 1``."""
    net = make_net(["p0", "ps"], {"t": "a"}, [("p0", "t"), ("t", "ps")])
    return SppInstance(net, (1, 0), {"ps": 1}, {"a": protectable("a", gamma, cost, semantics)})


def chain(semantics=Semantics.PARIKH, cost=1) -> SppInstance:
    """Two mandatory ``a`` steps, then ``u`` into a secret place with ``l = 2``."""
    net = make_net(["p0", "p1", "p2", "ps"], {"t1": "a", "t2": "a", "t3": "u"},
                   [("p0", "t1"), ("t1", "p1"), ("p1", "t2"), ("t2", "p2"),
                    ("p2", "t3"), ("t3", "ps")])
    return SppInstance(net, (1, 0, 0, 0), {"ps": 2},
                       {"a": protectable("a", 1, cost, semantics)})


def gamma_three(semantics=Semantics.PARIKH, requirement=3, cost=2) -> SppInstance:
    """One transition labeled ``a`` with ``gamma(a) = 3`` guarding a secret place."""
    net = make_net(["p0", "ps"], {"t": "a"}, [("p0", "t"), ("t", "ps")])
    return SppInstance(net, (1, 0), {"ps": requirement},
                       {"a": protectable("a", 3, cost, semantics)})


def unbounded_source() -> SppInstance:
    """A source transition feeding ``p0`` and a guarded step into ``ps``."""
    net = make_net(["p0", "ps"], {"src": "u", "t": "a"},
                   [("src", "p0"), ("p0", "t"), ("t", "ps")])
    return SppInstance(net, (0, 0), {"ps": 1}, {"a": protectable("a", 1, 3)})


def repeated_indicator() -> SppInstance:
    """A loop labeled ``a`` that may fire any number of times before ``ps``."""
    net = make_net(["p0", "ps"], {"loop": "a", "go": "b"},
                   [("p0", "loop"), ("loop", "p0"), ("p0", "go"), ("go", "ps")])
    return SppInstance(net, (1, 0), {"ps": 2},
                       {"a": protectable("a", 2, 3, Semantics.INDICATOR),
                        "b": protectable("b", 1, 1)})


def two_routes() -> SppInstance:
    """Two choices on the way to a secret place; covering the first choice
    ({a, b}, cost 5/6) is cheapest."""
    net = make_net(["p0", "p1", "ps"],
                   {"x": "a", "y": "b", "z": "c", "w": "d"},
                   [("p0", "x"), ("x", "p1"), ("p0", "y"), ("y", "p1"),
                    ("p1", "z"), ("z", "ps"), ("p1", "w"), ("w", "ps")])
    return SppInstance(net, (1, 0, 0), {"ps": 1},
                       {"a": protectable("a", 1, Fraction(1, 2)),
                        "b": protectable("b", 1, Fraction(1, 3)),
                        "c": protectable("c", 1, 1, Semantics.INDICATOR),
                        "d": protectable("d", 2, Fraction(5, 2))})


def hardness_source():
    """Net, initial marking and target used for a coverable gadget example."""
    net = make_net(["p1", "p2"], ["t1", "t2"],
                   [("p1", "t1"), ("t1", "p2"), ("p2", "t2"), ("t2", "p1"), ("t2", "p2")])
    return net, (1, 0), (0, 2)
