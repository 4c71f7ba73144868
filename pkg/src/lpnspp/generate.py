"""Random nets and instances for differential testing and experiments."""
from __future__ import annotations

import random
from dataclasses import dataclass
from fractions import Fraction

from .coverability import bounded_explore
from .model import ProtectableEvent, Semantics, SppInstance
from .net import LabeledPetriNet, Marking, make_net


@dataclass
class NetConfig:
    max_places: int = 6
    max_transitions: int = 6
    max_weight: int = 2
    max_tokens: int = 2
    arc_prob: float = 0.35
    source_prob: float = 0.0


@dataclass
class InstanceConfig:
    max_places: int = 5
    max_transitions: int = 5
    max_protectable: int = 3
    max_unprotectable: int = 1
    gammas: tuple[int, ...] = (0, 1, 2)
    max_requirement: int = 3
    costs: tuple = (0, 1, 2, 3, Fraction(1, 2), Fraction(5, 3))
    semantics: tuple[Semantics, ...] = (Semantics.PARIKH, Semantics.INDICATOR)
    one_safe: bool = True


def random_net(rng: random.Random, cfg: NetConfig = NetConfig()
               ) -> tuple[LabeledPetriNet, Marking]:
    """Arbitrary weighted net (identity labels) and initial marking.

    With ``source_prob`` > 0 some transitions get no input arcs, which makes
    the net unbounded whenever they have outputs.
    """
    np_ = rng.randint(1, cfg.max_places)
    nt = rng.randint(1, cfg.max_transitions)
    places = [f"p{i}" for i in range(np_)]
    trans = [f"t{i}" for i in range(nt)]
    arcs = []
    for t in trans:
        source = rng.random() < cfg.source_prob
        for p in places:
            if not source and rng.random() < cfg.arc_prob:
                arcs.append((p, t, rng.randint(1, cfg.max_weight)))
            if rng.random() < cfg.arc_prob:
                arcs.append((t, p, rng.randint(1, cfg.max_weight)))
    m0 = tuple(rng.randint(0, cfg.max_tokens) for _ in places)
    return make_net(places, trans, arcs), m0


def random_marking(rng: random.Random, net: LabeledPetriNet, max_tokens: int = 2) -> Marking:
    return tuple(rng.randint(0, max_tokens) for _ in net.places)


def _conservative_net(rng, n_places, n_trans):
    """Transitions move tokens without creating any (|pre| == |post|, weight 1)."""
    places = [f"p{i}" for i in range(n_places)]
    arcs = []
    for i in range(n_trans):
        t = f"t{i}"
        k = 1 if n_places < 2 or rng.random() < 0.75 else 2
        for p in rng.sample(places, k):
            arcs.append((p, t))
        for p in rng.sample(places, k):
            arcs.append((t, p))
    return places, arcs


def random_instance(rng: random.Random, cfg: InstanceConfig = InstanceConfig(),
                    attempts: int = 1000) -> SppInstance:
    """Random well-formed instance.

    With ``one_safe`` the net is resampled until breadth-first exploration
    with one token per place is complete, so the exact reachability set is
    small and known.
    """
    for _ in range(attempts):
        np_ = rng.randint(2, cfg.max_places)
        nt = rng.randint(1, cfg.max_transitions)
        places, arcs = _conservative_net(rng, np_, nt)
        if cfg.one_safe:
            marked = rng.sample(places, rng.randint(1, min(2, np_)))
            m0 = tuple(1 if p in marked else 0 for p in places)
        else:
            m0 = tuple(rng.randint(0, 1) for _ in places)
        n_prot = rng.randint(1, cfg.max_protectable)
        n_unprot = rng.randint(0, cfg.max_unprotectable)
        events = [chr(ord("a") + i) for i in range(n_prot)]
        others = [f"u{i}" for i in range(n_unprot)]
        trans = {f"t{i}": rng.choice(events + others) for i in range(nt)}
        net = make_net(places, trans, arcs, alphabet=events + others)
        if cfg.one_safe and not bounded_explore(net, m0, 1, 10**4).complete:
            continue
        requirement = {p: (0 if k else rng.randint(0, cfg.max_requirement))
                       for p, k in zip(places, m0)}
        prot = {a: ProtectableEvent(a, rng.choice(cfg.gammas), Fraction(rng.choice(cfg.costs)),
                                    rng.choice(cfg.semantics))
                for a in events}
        return SppInstance(net, m0, requirement, prot)
    raise RuntimeError("could not sample a 1-safe instance")
