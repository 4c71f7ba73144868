"""Deciding whether a protecting policy is valid.

:func:`is_valid` builds the monitor net of the policy, clamps its counter at
the largest requirement and asks the backward engine whether a marking with
a token in some secret place ``p`` and counter level below ``l(p)`` is
coverable. :func:`is_valid_oracle` is a separate explicit-state search that
never touches the net transforms.
"""
from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from typing import Iterable

from .coverability import (DEFAULT_MAX_NODES, ResourceExhausted, backward_coverable,
                           karp_miller)
from .model import (InstanceError, Semantics, SppInstance, check_policy,
                    run_violates, validate_instance)
from .net import Marking, successors
from .transforms import SaturatedNet, build_monitor_net, saturate_counter

VALID = "valid"
INVALID = "invalid"
EXHAUSTED = "resource-exhausted"
UNKNOWN = "unknown"


@dataclass(frozen=True)
class Verdict:
    status: str
    witness: tuple[str, ...] | None = None
    violated_place: str | None = None
    clearance_at_violation: int | None = None

    @property
    def valid(self) -> bool:
        return self.status == VALID

    @property
    def invalid(self) -> bool:
        return self.status == INVALID


def violation_targets(inst: SppInstance, pol: Iterable[str],
                      sat: SaturatedNet) -> list[Marking]:
    """Minimal markings of the saturated net that witness a violation:
    a secret place ``p`` marked while the level token sits below ``l(p)``."""
    net = sat.net
    out = []
    for p in inst.net.places:
        need = inst.requirement[p]
        for v in range(min(need, len(sat.levels))):
            m = [0] * len(net.places)
            m[net.place_index[p]] = 1
            m[net.place_index[sat.levels[v]]] = 1
            out.append(tuple(m))
    return out


def _require_well_formed(inst: SppInstance, pol) -> frozenset:
    problems = validate_instance(inst)
    if problems:
        raise InstanceError("; ".join(problems))
    return check_policy(inst, pol)


def _confirm(inst: SppInstance, pol, witness) -> Verdict:
    """Cut the witness at its first violating prefix; it must have one."""
    hit = run_violates(inst, pol, witness)
    if hit is None:
        raise AssertionError(f"witness {witness} does not violate the policy")
    return Verdict(INVALID, tuple(witness[:hit.prefix]), hit.place, hit.clearance)


def is_valid(inst: SppInstance, pol: Iterable[str], *, engine: str = "backward",
             max_nodes: int = DEFAULT_MAX_NODES) -> Verdict:
    """Decide validity of ``pol`` exactly.

    ``engine`` picks the coverability procedure run on the saturated monitor
    net: ``"backward"`` or ``"karp-miller"``. The latter produces no
    witnesses itself; invalid answers get one from the backward engine.
    """
    pol = _require_well_formed(inst, pol)
    mon = build_monitor_net(inst, pol)
    sat = saturate_counter(mon, inst.max_requirement)
    targets = violation_targets(inst, pol, sat)
    if not targets:
        return Verdict(VALID)
    try:
        if engine == "karp-miller":
            tree = karp_miller(sat.net, sat.initial, max_nodes)
            if not tree.coverable(targets):
                return Verdict(VALID)
        elif engine != "backward":
            raise ValueError(f"unknown engine {engine!r}")
        res = backward_coverable(sat.net, sat.initial, targets, max_nodes)
    except ResourceExhausted:
        return Verdict(EXHAUSTED)
    if not res.coverable:
        if engine == "karp-miller":
            raise AssertionError("engines disagree on a violation target")
        return Verdict(VALID)
    witness = [mon.origin[sat.origin[t]] for t in res.witness]
    return _confirm(inst, pol, witness)


def is_valid_oracle(inst: SppInstance, pol: Iterable[str], bound: int,
                    depth: int) -> Verdict:
    """Explicit search over (marking, parikh clearance, indicator events seen).

    Parikh clearance is clamped at the largest requirement. Returns
    ``unknown`` if the bounds cut the search before a violation was found.
    """
    pol = _require_well_formed(inst, pol)
    net = inst.net
    L = inst.max_requirement
    req = [inst.requirement[p] for p in net.places]
    labels = [net.labeling[t] for t in net.transitions]
    step_gain = []
    for a in labels:
        if a in pol and inst.semantics(a) is Semantics.PARIKH:
            step_gain.append(("p", inst.gamma(a)))
        elif a in pol:
            step_gain.append(("i", a))
        else:
            step_gain.append(None)

    def clearance(state):
        _, parikh, seen = state
        return parikh + sum(inst.gamma(a) for a in seen)

    def violated(state):
        cl = clearance(state)
        for p, (k, r) in enumerate(zip(state[0], req)):
            if k > 0 and cl < r:
                return net.places[p], cl
        return None

    root = (tuple(inst.initial), 0, frozenset())
    parents = {root: None}
    complete = max(root[0], default=0) <= bound

    def verdict_for(state):
        steps = []
        link = parents[state]
        while link is not None:
            state, t = link
            steps.append(t)
            link = parents[state]
        return _confirm(inst, pol, steps[::-1])

    if violated(root):
        return verdict_for(root)
    frontier = deque([(root, 0)]) if complete else deque()
    while frontier:
        state, d = frontier.popleft()
        m, parikh, seen = state
        for ti, m2 in successors(net, m):
            gain = step_gain[ti]
            if gain is None:
                nxt = (m2, parikh, seen)
            elif gain[0] == "p":
                nxt = (m2, min(parikh + gain[1], L), seen)
            else:
                nxt = (m2, parikh, seen | {gain[1]})
            if nxt in parents:
                continue
            if d >= depth or max(m2, default=0) > bound:
                complete = False
                if violated(nxt):
                    parents[nxt] = (state, net.transitions[ti])
                    return verdict_for(nxt)
                continue
            parents[nxt] = (state, net.transitions[ti])
            if violated(nxt):
                return verdict_for(nxt)
            frontier.append((nxt, d + 1))
    return Verdict(VALID if complete else UNKNOWN)
