"""Labeled Petri nets and the token game.

Markings are plain tuples of non-negative ints indexed by the net's place
order. Transitions are referred to by name in the public functions; the
pre/post vectors are cached per transition index for the engines.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable, Mapping, Sequence

Marking = tuple[int, ...]


class NetError(ValueError):
    """Malformed net or reference to an unknown place/transition."""


class FiringError(Exception):
    """A transition was fired in a marking that does not enable it."""

    def __init__(self, transition: str, place: str, index: int | None = None):
        self.transition = transition
        self.place = place
        self.index = index
        where = f" at step {index}" if index is not None else ""
        super().__init__(f"transition {transition!r} not enabled{where}: "
                         f"place {place!r} lacks tokens")


@dataclass(frozen=True)
class LabeledPetriNet:
    places: tuple[str, ...]
    transitions: tuple[str, ...]
    flow: Mapping[tuple[str, str], int]
    labeling: Mapping[str, str]
    alphabet: tuple[str, ...]

    pre: tuple[Marking, ...] = field(init=False, repr=False, compare=False)
    post: tuple[Marking, ...] = field(init=False, repr=False, compare=False)
    place_index: Mapping[str, int] = field(init=False, repr=False, compare=False)
    transition_index: Mapping[str, int] = field(init=False, repr=False, compare=False)

    def __post_init__(self):
        places = tuple(self.places)
        transitions = tuple(self.transitions)
        alphabet = tuple(self.alphabet)
        set_ = object.__setattr__
        set_(self, "places", places)
        set_(self, "transitions", transitions)
        set_(self, "alphabet", alphabet)
        set_(self, "labeling", dict(self.labeling))

        if not places or not transitions:
            raise NetError("a net needs at least one place and one transition")
        for kind, names in (("place", places), ("transition", transitions),
                            ("event", alphabet)):
            if len(set(names)) != len(names):
                raise NetError(f"duplicate {kind} identifier")
        if set(places) & set(transitions):
            raise NetError("places and transitions must be disjoint: "
                           f"{sorted(set(places) & set(transitions))}")
        if not alphabet:
            raise NetError("alphabet must be nonempty")

        pidx = {p: i for i, p in enumerate(places)}
        tidx = {t: i for i, t in enumerate(transitions)}
        flow: dict[tuple[str, str], int] = {}
        pre = [[0] * len(places) for _ in transitions]
        post = [[0] * len(places) for _ in transitions]
        for (src, dst), w in self.flow.items():
            if not isinstance(w, int) or w < 0:
                raise NetError(f"arc {src}->{dst} has invalid weight {w!r}")
            if src in pidx and dst in tidx:
                pre[tidx[dst]][pidx[src]] = w
            elif src in tidx and dst in pidx:
                post[tidx[src]][pidx[dst]] = w
            else:
                raise NetError(f"arc {src}->{dst} must join a place and a transition")
            if w:
                flow[(src, dst)] = w
        set_(self, "flow", flow)

        symbols = set(alphabet)
        for t in transitions:
            if t not in self.labeling:
                raise NetError(f"transition {t!r} has no label")
            if self.labeling[t] not in symbols:
                raise NetError(f"label {self.labeling[t]!r} of {t!r} not in alphabet")
        if set(self.labeling) - set(transitions):
            raise NetError("labeling mentions unknown transitions")

        set_(self, "place_index", pidx)
        set_(self, "transition_index", tidx)
        set_(self, "pre", tuple(tuple(v) for v in pre))
        set_(self, "post", tuple(tuple(v) for v in post))

    def weight(self, src: str, dst: str) -> int:
        return self.flow.get((src, dst), 0)

    def index_of(self, t: str) -> int:
        try:
            return self.transition_index[t]
        except KeyError:
            raise NetError(f"unknown transition {t!r}") from None

    def marking(self, tokens: Mapping[str, int] | None = None) -> Marking:
        """Build a marking from a sparse place -> tokens mapping."""
        tokens = tokens or {}
        unknown = set(tokens) - set(self.places)
        if unknown:
            raise NetError(f"unknown places {sorted(unknown)}")
        return tuple(int(tokens.get(p, 0)) for p in self.places)

    def as_dict(self, m: Marking) -> dict[str, int]:
        return {p: k for p, k in zip(self.places, m) if k}

    def transitions_labeled(self, event: str) -> list[str]:
        return [t for t in self.transitions if self.labeling[t] == event]


def make_net(places: Sequence[str],
             transitions: Mapping[str, str] | Sequence[str],
             arcs: Iterable[tuple],
             alphabet: Sequence[str] | None = None) -> LabeledPetriNet:
    """Convenience constructor.

    ``transitions`` maps names to labels, or is a plain sequence in which case
    every transition is labeled by its own name. ``arcs`` holds ``(src, dst)``
    or ``(src, dst, weight)`` triples; repeated arcs add up.
    """
    if not isinstance(transitions, Mapping):
        transitions = {t: t for t in transitions}
    flow: dict[tuple[str, str], int] = {}
    for arc in arcs:
        src, dst, *w = arc
        flow[(src, dst)] = flow.get((src, dst), 0) + (w[0] if w else 1)
    if alphabet is None:
        alphabet = list(dict.fromkeys(transitions.values()))
    return LabeledPetriNet(tuple(places), tuple(transitions), flow,
                           dict(transitions), tuple(alphabet))


def check_marking(net: LabeledPetriNet, m: Sequence[int]) -> Marking:
    m = tuple(m)
    if len(m) != len(net.places):
        raise NetError(f"marking has {len(m)} entries, net has {len(net.places)} places")
    if any(k < 0 for k in m):
        raise NetError("markings are non-negative")
    return m


def enabled(net: LabeledPetriNet, m: Marking, t: str) -> bool:
    pre = net.pre[net.index_of(t)]
    return all(k >= w for k, w in zip(m, pre))


def fire(net: LabeledPetriNet, m: Marking, t: str) -> Marking:
    i = net.index_of(t)
    pre, post = net.pre[i], net.post[i]
    for p, (k, w) in enumerate(zip(m, pre)):
        if k < w:
            raise FiringError(t, net.places[p])
    return tuple(k - a + b for k, a, b in zip(m, pre, post))


def fire_sequence(net: LabeledPetriNet, m: Marking,
                  steps: Sequence[str]) -> list[Marking]:
    """All markings visited by ``steps`` from ``m``, ``m`` included."""
    out = [tuple(m)]
    for i, t in enumerate(steps):
        try:
            out.append(fire(net, out[-1], t))
        except FiringError as err:
            raise FiringError(t, err.place, i) from None
    return out


def label_word(net: LabeledPetriNet, steps: Sequence[str]) -> tuple[str, ...]:
    return tuple(net.labeling[net.transitions[net.index_of(t)]] for t in steps)


def successors(net: LabeledPetriNet, m: Marking):
    """Yield ``(transition index, successor)`` for every enabled transition."""
    for i, (pre, post) in enumerate(zip(net.pre, net.post)):
        if all(k >= w for k, w in zip(m, pre)):
            yield i, tuple(k - a + b for k, a, b in zip(m, pre, post))
