"""Optimal and budget-constrained policy synthesis.

Validity is monotone in the policy (clearance never shrinks when more events
are protected), so once a policy is known invalid every subset of it is
skipped. Candidates are visited in order of (cost, size, event order).
"""
from __future__ import annotations

import functools
import itertools
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable, Iterator

from .model import InstanceError, Policy, SppInstance, policy_cost, validate_instance
from .coverability import ResourceExhausted
from .validity import INVALID, VALID, Verdict, is_valid, is_valid_oracle

OPTIMAL = "optimal"
INFEASIBLE = "infeasible"
EXHAUSTED = "resource-exhausted"

Check = Callable[[SppInstance, Policy], Verdict]


@dataclass
class SearchResult:
    status: str
    policy: Policy | None = None
    cost: Fraction | None = None
    explored: int = 0
    certificates: list[tuple[Policy, Verdict]] = field(default_factory=list)


def oracle_check(bound: int, depth: int) -> Check:
    """A ``check`` argument that uses the explicit-state oracle."""
    return functools.partial(_oracle, bound=bound, depth=depth)


def _oracle(inst, pol, bound, depth):
    return is_valid_oracle(inst, pol, bound, depth)


class _Evaluator:
    """Cached validity checks, optionally fanned out to worker processes."""

    def __init__(self, inst: SppInstance, check: Check | None, workers: int):
        problems = validate_instance(inst)
        if problems:
            raise InstanceError("; ".join(problems))
        self.inst = inst
        self.check = check or is_valid
        self.cache: dict[Policy, Verdict] = {}
        self.invalid: list[Policy] = []
        self.pool = ProcessPoolExecutor(workers) if workers > 1 else None
        self.workers = workers

    def close(self):
        if self.pool:
            self.pool.shutdown()

    def known_invalid(self, pol: Policy) -> bool:
        return any(pol <= bad for bad in self.invalid)

    def _record(self, pol, v):
        if v.status not in (VALID, INVALID):
            raise ResourceExhausted(f"validity of {sorted(pol)} undecided ({v.status})")
        self.cache[pol] = v
        if v.status == INVALID:
            self.invalid.append(pol)

    def __call__(self, pol: Policy) -> Verdict:
        if pol not in self.cache:
            self._record(pol, self.check(self.inst, pol))
        return self.cache[pol]

    def prefetch(self, pols: list[Policy]):
        todo = [p for p in pols if p not in self.cache]
        if self.pool and len(todo) > 1:
            for p, v in zip(todo, self.pool.map(self.check, [self.inst] * len(todo), todo)):
                self._record(p, v)


def _candidates(inst: SppInstance) -> Iterator[tuple[Fraction, Policy]]:
    """All policies over the priced events, cheapest first; free events are
    always included."""
    events = inst.protectable_events
    order = {a: i for i, a in enumerate(events)}
    free = frozenset(a for a in events if inst.cost(a) == 0)
    priced = [a for a in events if a not in free]
    subsets = []
    for r in range(len(priced) + 1):
        for combo in itertools.combinations(priced, r):
            subsets.append((sum((inst.cost(a) for a in combo), Fraction(0)),
                            len(combo), tuple(order[a] for a in combo), combo))
    subsets.sort(key=lambda s: s[:3])
    for cost, _, _, combo in subsets:
        yield cost, frozenset(combo) | free


def _search(inst, check, workers, budget=None):
    ev = _Evaluator(inst, check, workers)
    try:
        full = frozenset(inst.protectable)
        if not ev(full).valid:
            return SearchResult(INFEASIBLE, explored=len(ev.cache),
                                certificates=[(full, ev.cache[full])])
        pending = _candidates(inst)
        while True:
            batch = []
            for cost, pol in pending:
                if budget is not None and cost > budget:
                    break
                if not ev.known_invalid(pol):
                    batch.append((cost, pol))
                if len(batch) >= max(ev.workers, 1):
                    break
            if not batch:
                return SearchResult(INFEASIBLE, explored=len(ev.cache),
                                    certificates=_certs(ev))
            ev.prefetch([p for _, p in batch])
            for cost, pol in batch:
                if ev.known_invalid(pol) and pol not in ev.cache:
                    continue
                if ev(pol).valid:
                    pol = _trim_free(inst, ev, pol)
                    return SearchResult(OPTIMAL, pol, cost, len(ev.cache),
                                        [(p, v) for p, v in _certs(ev)
                                         if policy_cost(inst, p) < cost])
    except ResourceExhausted:
        return SearchResult(EXHAUSTED, explored=len(ev.cache))
    finally:
        ev.close()


def _certs(ev):
    return [(p, v) for p, v in ev.cache.items() if v.status == INVALID]


def _trim_free(inst, ev, pol):
    """Drop zero-cost events the policy does not need, in event order."""
    for a in inst.protectable_events:
        if a in pol and inst.cost(a) == 0 and ev(pol - {a}).valid:
            pol = pol - {a}
    return pol


def optimal_policy(inst: SppInstance, *, check: Check | None = None,
                   workers: int = 1) -> SearchResult:
    """Cheapest valid policy, ties broken by size then event order."""
    return _search(inst, check, workers)


def decide_budget(inst: SppInstance, budget=None, *, check: Check | None = None) -> bool:
    """Is there a valid policy of cost at most ``budget`` (default: the
    instance's own budget)?"""
    if budget is None:
        budget = inst.budget
    if budget is None:
        raise InstanceError("no budget given")
    budget = Fraction(budget)
    if budget < 0:
        raise InstanceError("budget must be non-negative")
    res = _search(inst, check, 1, budget)
    if res.status == EXHAUSTED:
        raise ResourceExhausted("budget decision undecided")
    return res.status == OPTIMAL


def minimal_valid_policies(inst: SppInstance, *, check: Check | None = None) -> list[Policy]:
    """All inclusion-minimal valid policies (empty if none is valid)."""
    ev = _Evaluator(inst, check, 1)
    events = inst.protectable_events
    found: list[Policy] = []
    if not ev(frozenset(events)).valid:
        return found
    for r in range(len(events) + 1):
        for combo in itertools.combinations(events, r):
            pol = frozenset(combo)
            if any(m <= pol for m in found) or ev.known_invalid(pol):
                continue
            if ev(pol).valid:
                found.append(pol)
    return found


def brute_force_optimal(inst: SppInstance, check: Check) -> Fraction | None:
    """Optimal cost by checking every policy, no pruning; None if infeasible."""
    best = None
    events = inst.protectable_events
    for r in range(len(events) + 1):
        for combo in itertools.combinations(events, r):
            if check(inst, frozenset(combo)).valid:
                c = policy_cost(inst, combo)
                best = c if best is None else min(best, c)
    return best
