"""SPP instances, policies and run-level clearance."""
from __future__ import annotations

from dataclasses import dataclass, field
from enum import Enum
from fractions import Fraction
from typing import Iterable, Mapping, NamedTuple, Sequence

from .net import LabeledPetriNet, Marking, fire_sequence, label_word

Policy = frozenset  # frozenset[str] of protected events


class Semantics(str, Enum):
    PARIKH = "parikh"
    INDICATOR = "indicator"

    def __str__(self):
        return self.value


class InstanceError(ValueError):
    pass


@dataclass(frozen=True)
class ProtectableEvent:
    event: str
    gamma: int
    cost: Fraction
    semantics: Semantics = Semantics.PARIKH

    def __post_init__(self):
        object.__setattr__(self, "cost", Fraction(self.cost))
        object.__setattr__(self, "semantics", Semantics(self.semantics))


@dataclass(frozen=True)
class SppInstance:
    net: LabeledPetriNet
    initial: Marking
    requirement: Mapping[str, int] = field(default_factory=dict)
    protectable: Mapping[str, ProtectableEvent] = field(default_factory=dict)
    budget: Fraction | None = None

    def __post_init__(self):
        req = {p: 0 for p in self.net.places}
        req.update(self.requirement)
        set_ = object.__setattr__
        set_(self, "initial", tuple(self.initial))
        set_(self, "requirement", req)
        set_(self, "protectable", dict(self.protectable))
        if self.budget is not None:
            set_(self, "budget", Fraction(self.budget))

    @property
    def protectable_events(self) -> tuple[str, ...]:
        """Protectable events in alphabet order."""
        return tuple(a for a in self.net.alphabet if a in self.protectable)

    @property
    def max_requirement(self) -> int:
        return max((self.requirement[p] for p in self.net.places), default=0)

    def gamma(self, a: str) -> int:
        return self.protectable[a].gamma

    def cost(self, a: str) -> Fraction:
        return self.protectable[a].cost

    def semantics(self, a: str) -> Semantics:
        return self.protectable[a].semantics

    def replace(self, **changes) -> "SppInstance":
        from dataclasses import replace
        return replace(self, **changes)


def protectable(event: str, gamma: int = 1, cost=1,
                semantics: Semantics | str = Semantics.PARIKH) -> ProtectableEvent:
    return ProtectableEvent(event, gamma, Fraction(cost), Semantics(semantics))


def validate_instance(inst: SppInstance) -> list[str]:
    """Return one diagnostic per violated instance invariant (empty if well formed)."""
    net = inst.net
    out = []
    if len(inst.initial) != len(net.places):
        out.append(f"initial marking has {len(inst.initial)} entries for "
                   f"{len(net.places)} places")
    else:
        for p, k in zip(net.places, inst.initial):
            if k < 0:
                out.append(f"negative initial marking at place {p}")
            elif k > 0 and inst.requirement[p] > 0:
                out.append(f"initially marked secret place {p} "
                           f"(init={k}, l={inst.requirement[p]})")
    for p, r in inst.requirement.items():
        if p not in net.place_index:
            out.append(f"requirement on unknown place {p}")
        elif not isinstance(r, int) or r < 0:
            out.append(f"requirement of place {p} must be a natural number, got {r!r}")
    symbols = set(net.alphabet)
    for a, ev in inst.protectable.items():
        if a not in symbols:
            out.append(f"protectable event {a} not in alphabet")
        if ev.event != a:
            out.append(f"protectable entry {a} describes event {ev.event}")
        if not isinstance(ev.gamma, int) or ev.gamma < 0:
            out.append(f"clearance of event {a} must be a natural number")
        if ev.cost < 0:
            out.append(f"cost of event {a} is negative")
    if inst.budget is not None and inst.budget < 0:
        out.append("budget is negative")
    return out


def check_policy(inst: SppInstance, pol: Iterable[str]) -> Policy:
    pol = frozenset(pol)
    unknown = pol - set(inst.protectable)
    if unknown:
        raise InstanceError(f"policy mentions non-protectable events {sorted(unknown)}")
    return pol


def clearance_of_word(inst: SppInstance, pol: Policy, word: Sequence[str]) -> int:
    total = 0
    for a in pol:
        ev = inst.protectable[a]
        n = sum(1 for x in word if x == a)
        if ev.semantics is Semantics.INDICATOR:
            n = min(n, 1)
        total += ev.gamma * n
    return total


def clearance_of_run(inst: SppInstance, pol: Iterable[str], steps: Sequence[str]) -> int:
    pol = check_policy(inst, pol)
    fire_sequence(inst.net, inst.initial, steps)
    return clearance_of_word(inst, pol, label_word(inst.net, steps))


class Violation(NamedTuple):
    prefix: int
    place: str
    clearance: int


def run_violates(inst: SppInstance, pol: Iterable[str],
                 steps: Sequence[str]) -> Violation | None:
    """Earliest prefix of ``steps`` reaching a marked place whose requirement
    exceeds the clearance accumulated so far."""
    pol = check_policy(inst, pol)
    net = inst.net
    markings = fire_sequence(net, inst.initial, steps)
    word = label_word(net, steps)
    req = [inst.requirement[p] for p in net.places]
    for i, m in enumerate(markings):
        cl = clearance_of_word(inst, pol, word[:i])
        for p, (k, r) in enumerate(zip(m, req)):
            if k > 0 and cl < r:
                return Violation(i, net.places[p], cl)
    return None


def policy_cost(inst: SppInstance, pol: Iterable[str]) -> Fraction:
    pol = check_policy(inst, pol)
    return sum((inst.protectable[a].cost for a in pol), Fraction(0))
