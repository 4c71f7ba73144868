"""Net-to-net constructions.

* :func:`uniformize` rewrites an instance so that every protectable event
  grants exactly one unit of clearance.
* :func:`build_monitor_net` adds a clearance counter for a fixed policy.
* :func:`saturate_counter` replaces that counter by mutually exclusive level
  places clamped at the largest requirement, so "clearance < l" becomes a
  coverability question.
* :func:`gen_hardness_instance` turns a coverability query into an SPP
  instance whose only policy choices are both invalid iff the target is
  coverable.

Fresh identifiers are ``<base>__<role><index>``, checked against every name
already in use.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Mapping, Sequence

from .model import Policy, ProtectableEvent, Semantics, SppInstance, check_policy
from .net import LabeledPetriNet, Marking, NetError, check_marking


class _Fresh:
    def __init__(self, *taken: Iterable[str]):
        self.taken = set()
        for names in taken:
            self.taken.update(names)

    def __call__(self, base: str, role: str) -> str:
        name = f"{base}__{role}"
        i = 1
        while name in self.taken:
            name = f"{base}__{role}{i}"
            i += 1
        self.taken.add(name)
        return name


class _Builder:
    """Mutable scratch space for assembling a net."""

    def __init__(self):
        self.places: list[str] = []
        self.initial: dict[str, int] = {}
        self.transitions: list[str] = []
        self.labels: dict[str, str] = {}
        self.flow: dict[tuple[str, str], int] = {}

    def place(self, p: str, tokens: int = 0):
        self.places.append(p)
        self.initial[p] = tokens

    def transition(self, t: str, label: str, arcs: Mapping[tuple[str, str], int] = ()):
        self.transitions.append(t)
        self.labels[t] = label
        for key, w in dict(arcs).items():
            self.arc(*key, w)

    def arc(self, src: str, dst: str, w: int = 1):
        if w:
            self.flow[(src, dst)] = self.flow.get((src, dst), 0) + w

    def net(self, alphabet: Sequence[str]) -> LabeledPetriNet:
        return LabeledPetriNet(tuple(self.places), tuple(self.transitions),
                               self.flow, self.labels, tuple(alphabet))

    def marking(self) -> Marking:
        return tuple(self.initial[p] for p in self.places)


def _arcs_of(net: LabeledPetriNet, t: str) -> dict[tuple[str, str], int]:
    i = net.index_of(t)
    arcs = {}
    for p, w in zip(net.places, net.pre[i]):
        if w:
            arcs[(p, t)] = w
    for p, w in zip(net.places, net.post[i]):
        if w:
            arcs[(t, p)] = w
    return arcs


def _rename(arcs, old: str, new: str):
    return {(new if s == old else s, new if d == old else d): w
            for (s, d), w in arcs.items()}


# -- uniformization ----------------------------------------------------------

@dataclass
class UniformCertificate:
    """How a uniformized instance relates to its source.

    ``origin`` maps every transition of the new net to the source transition
    it simulates; ``event_origin`` maps every event of the new alphabet to
    the source event it stands for.
    """
    mode: str
    origin: dict[str, str] = field(default_factory=dict)
    event_origin: dict[str, str] = field(default_factory=dict)
    lifted: dict[str, tuple[str, ...]] = field(default_factory=dict)
    control_place: str | None = None
    dropped: tuple[str, ...] = ()
    notes: list[str] = field(default_factory=list)

    def lift_policy(self, pol: Iterable[str]) -> Policy:
        """Source policy -> policy of the uniform instance with the same cost."""
        out = set()
        for a in pol:
            if a in self.dropped:
                continue
            out.update(self.lifted.get(a, (a,)))
        return frozenset(out)

    def project_policy(self, pol: Iterable[str]) -> Policy:
        """Uniform policy -> source policy.

        In ``fresh-labels`` mode a policy containing the first label of a
        chain is read as protecting all of them (they cost nothing extra).
        """
        out = set()
        for e in pol:
            a = self.event_origin.get(e, e)
            if self.lifted.get(a, (e,))[0] == e:
                out.add(a)
        return frozenset(out)

    def __str__(self):
        lines = [f"uniformization ({self.mode})"]
        if self.control_place:
            lines.append(f"control place {self.control_place}")
        lines += self.notes
        return "\n".join(lines)


def uniformize(inst: SppInstance, indicator: str = "gadget"
               ) -> tuple[SppInstance, UniformCertificate]:
    """Rewrite ``inst`` so every protectable event has clearance 1.

    A transition whose parikh-tagged label ``a`` has ``gamma(a) = k > 1`` is
    replaced by a chain of ``k`` transitions labeled ``a`` and run atomically
    under a shared control place. Events with ``gamma = 0`` become
    unprotectable.

    Indicator-tagged events with ``gamma(a) = k > 1`` have two encodings:

    ``"fresh-labels"``
        each chain step gets its own fresh indicator label ``a_i``; ``a_1``
        carries the cost, the others cost 0. This can lower the optimal cost
        (protecting only the free labels buys ``k - 1`` units), so it is kept
        for comparison only.
    ``"gadget"`` (default)
        the first ``a``-occurrence of a run goes through a chain labeled by a
        single fresh parikh-tagged event (cost ``c(a)``), later occurrences
        through a copy labeled by a fresh unprotectable event; a
        ``first``/``other`` place pair enforces the switch.
    """
    if indicator not in ("gadget", "fresh-labels"):
        raise ValueError(f"unknown indicator encoding {indicator!r}")
    net = inst.net
    cert = UniformCertificate(mode=indicator)
    dropped = tuple(a for a in inst.protectable_events if inst.gamma(a) == 0)
    cert.dropped = dropped
    split = {a for a in inst.protectable_events
             if inst.gamma(a) > 1 and net.transitions_labeled(a)}

    prot: dict[str, ProtectableEvent] = {}
    for a in inst.protectable_events:
        ev = inst.protectable[a]
        if ev.gamma == 0:
            cert.notes.append(f"event {a}: gamma 0, now unprotectable")
        elif ev.gamma > 1 and a not in split:
            prot[a] = ProtectableEvent(a, 1, ev.cost, ev.semantics)
        elif a not in split:
            prot[a] = ev

    if not split:
        cert.origin = {t: t for t in net.transitions}
        cert.event_origin = {a: a for a in net.alphabet}
        return inst.replace(protectable=prot), cert

    fresh = _Fresh(net.places, net.transitions, net.alphabet)
    b = _Builder()
    for p, k in zip(net.places, inst.initial):
        b.place(p, k)
    ctrl = fresh("p", "ctrl")
    b.place(ctrl, 1)
    cert.control_place = ctrl
    requirement = dict(inst.requirement)

    alphabet: list[str] = []
    first_other: dict[str, tuple[str, str]] = {}
    chain_labels: dict[str, list[str]] = {}
    again_label: dict[str, str] = {}
    for a in net.alphabet:
        if a not in split:
            alphabet.append(a)
            cert.event_origin[a] = a
            continue
        ev = inst.protectable[a]
        k = ev.gamma
        if ev.semantics is Semantics.PARIKH:
            alphabet.append(a)
            cert.event_origin[a] = a
            chain_labels[a] = [a] * k
            prot[a] = ProtectableEvent(a, 1, ev.cost, Semantics.PARIKH)
        elif indicator == "fresh-labels":
            labels = [fresh(a, f"u{i}") for i in range(1, k + 1)]
            chain_labels[a] = labels
            alphabet += labels
            for i, lab in enumerate(labels):
                cert.event_origin[lab] = a
                prot[lab] = ProtectableEvent(lab, 1, ev.cost if i == 0 else Fraction(0),
                                             Semantics.INDICATOR)
            cert.lifted[a] = tuple(labels)
        else:
            once, again = fresh(a, "u"), fresh(a, "again")
            chain_labels[a] = [once] * k
            again_label[a] = again
            alphabet += [once, again]
            cert.event_origin[once] = a
            cert.event_origin[again] = a
            prot[once] = ProtectableEvent(once, 1, ev.cost, Semantics.PARIKH)
            cert.lifted[a] = (once,)
            first, other = fresh(a, "first"), fresh(a, "other")
            b.place(first, 1)
            b.place(other, 0)
            first_other[a] = (first, other)
        cert.notes.append(f"event {a}: gamma {k} -> chains of {k} unit steps"
                          f" ({ev.semantics})")

    def chain(t: str, steps: str, labels: list[str], arcs, entry=(), exit_=()):
        k = len(labels)
        names = [fresh(t, f"{steps}{i}") for i in range(1, k + 1)]
        mids = [fresh(t, f"mid{i}") for i in range(1, k)]
        for p in mids:
            b.place(p, 0)
        for i, (name, lab) in enumerate(zip(names, labels)):
            cert.origin[name] = t
            step: dict[tuple[str, str], int] = {}
            if i == 0:
                step.update({(s, name): w for (s, d), w in arcs.items() if d == t})
                step[(ctrl, name)] = 1
                for p in entry:
                    step[(p, name)] = 1
            else:
                step[(mids[i - 1], name)] = 1
            if i == k - 1:
                step.update({(name, d): w for (s, d), w in arcs.items() if s == t})
                step[(name, ctrl)] = step.get((name, ctrl), 0) + 1
                for p in exit_:
                    step[(name, p)] = 1
            else:
                step[(name, mids[i])] = 1
            b.transition(name, lab, step)

    for t in net.transitions:
        a = net.labeling[t]
        arcs = _arcs_of(net, t)
        if a not in split:
            b.transition(t, a, arcs)
            b.arc(ctrl, t)
            b.arc(t, ctrl)
            cert.origin[t] = t
        elif a in first_other:
            first, other = first_other[a]
            chain(t, "first", chain_labels[a], arcs, entry=[first], exit_=[other])
            b.transition(t, again_label[a], arcs)
            for p in (ctrl, other):
                b.arc(p, t)
                b.arc(t, p)
            cert.origin[t] = t
        else:
            chain(t, "step", chain_labels[a], arcs)

    for p in b.places:
        requirement.setdefault(p, 0)
    out = SppInstance(b.net(alphabet), b.marking(), requirement, prot, inst.budget)
    return out, cert


# -- monitor net and counter saturation -------------------------------------

@dataclass(frozen=True)
class MonitorNet:
    net: LabeledPetriNet
    initial: Marking
    counter: str
    gadget_places: Mapping[str, tuple[str, str]]
    origin: Mapping[str, str]


def build_monitor_net(inst: SppInstance, pol: Iterable[str]) -> MonitorNet:
    """Copy of ``inst.net`` plus a place counting the clearance granted by ``pol``.

    Parikh-tagged protected transitions add ``gamma`` to the counter on every
    firing. For an indicator-tagged protected event ``a`` the first
    occurrence must use a copy ``t'`` that moves the token of ``first_a`` to
    ``other_a`` and adds ``gamma(a)``; the original transitions then need
    ``other_a`` (self-loop) and add nothing.
    """
    pol = check_policy(inst, pol)
    net = inst.net
    fresh = _Fresh(net.places, net.transitions)
    b = _Builder()
    for p, k in zip(net.places, inst.initial):
        b.place(p, k)
    counter = fresh("p", "counter")
    b.place(counter, 0)
    gadgets = {}
    for a in inst.protectable_events:
        if a in pol and inst.semantics(a) is Semantics.INDICATOR:
            first, other = fresh(a, "first"), fresh(a, "other")
            b.place(first, 1)
            b.place(other, 0)
            gadgets[a] = (first, other)

    origin = {}
    for t in net.transitions:
        a = net.labeling[t]
        arcs = _arcs_of(net, t)
        b.transition(t, a, arcs)
        origin[t] = t
        if a not in pol:
            continue
        g = inst.gamma(a)
        if a in gadgets:
            first, other = gadgets[a]
            b.arc(other, t)
            b.arc(t, other)
            copy = fresh(t, "first")
            b.transition(copy, a, _rename(arcs, t, copy))
            b.arc(first, copy)
            b.arc(copy, other)
            b.arc(copy, counter, g)
            origin[copy] = t
        else:
            b.arc(t, counter, g)
    return MonitorNet(b.net(net.alphabet), b.marking(), counter, gadgets, origin)


@dataclass(frozen=True)
class SaturatedNet:
    net: LabeledPetriNet
    initial: Marking
    levels: tuple[str, ...]
    origin: Mapping[str, str]


def saturate_counter(mon: MonitorNet, L: int) -> SaturatedNet:
    """Replace the counter by level places ``q_0..q_L`` holding one token.

    A transition that adds ``g > 0`` to the counter is split into ``L + 1``
    variants moving the level token from ``q_v`` to ``q_min(v+g, L)``.
    """
    if L < 0:
        raise ValueError("saturation level must be >= 0")
    net = mon.net
    ci = net.place_index[mon.counter]
    for i, t in enumerate(net.transitions):
        if net.pre[i][ci]:
            raise ValueError(f"counter place has an outgoing arc to {t}")
    fresh = _Fresh(net.places, net.transitions)
    b = _Builder()
    for p, k in zip(net.places, mon.initial):
        if p != mon.counter:
            b.place(p, k)
    levels = tuple(fresh("q", str(v)) for v in range(L + 1))
    for v, q in enumerate(levels):
        b.place(q, 1 if v == 0 else 0)

    origin = {}
    for i, t in enumerate(net.transitions):
        arcs = {k: w for k, w in _arcs_of(net, t).items() if mon.counter not in k}
        g = net.post[i][ci]
        if not g:
            b.transition(t, net.labeling[t], arcs)
            origin[t] = t
            continue
        for v in range(L + 1):
            name = fresh(t, f"v{v}")
            b.transition(name, net.labeling[t], _rename(arcs, t, name))
            b.arc(levels[v], name)
            b.arc(name, levels[min(v + g, L)])
            origin[name] = t
    return SaturatedNet(b.net(net.alphabet), b.marking(), levels, origin)


# -- hardness gadget ---------------------------------------------------------

def gen_hardness_instance(net: LabeledPetriNet, m0: Sequence[int],
                          target: Sequence[int], once: bool = True) -> SppInstance:
    """SPP instance that is invalid for every policy iff ``target`` is coverable.

    Adds ``t_new`` consuming ``target`` and producing one token in ``p_new``
    (requirement 2), relabels every transition by its own name and makes
    ``t_new`` the single protectable event (gamma 1, cost 1, budget 1).

    With ``once`` (default) ``t_new`` also consumes the token of an extra,
    initially marked place, so it fires at most once along any run. Without
    it a target that can be covered repeatedly lets ``t_new`` fire again.
    """
    try:
        m0 = check_marking(net, m0)
        target = check_marking(net, target)
    except NetError as err:
        raise NetError(f"hardness gadget: {err}") from None
    fresh = _Fresh(net.places, net.transitions)
    t_new, p_new = fresh("t", "new"), fresh("p", "new")
    b = _Builder()
    for p, k in zip(net.places, m0):
        b.place(p, k)
    b.place(p_new, 0)
    if once:
        p_once = fresh("p", "once")
        b.place(p_once, 1)
    for t in net.transitions:
        b.transition(t, t, _arcs_of(net, t))
    b.transition(t_new, t_new, {(p, t_new): k for p, k in zip(net.places, target) if k})
    b.arc(t_new, p_new)
    if once:
        b.arc(p_once, t_new)
    alphabet = list(net.transitions) + [t_new]
    return SppInstance(b.net(alphabet), b.marking(), {p_new: 2},
                       {t_new: ProtectableEvent(t_new, 1, Fraction(1), Semantics.PARIKH)},
                       Fraction(1))
