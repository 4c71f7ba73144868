"""Coverability engines.

``backward_coverable`` is the decision procedure used everywhere else: a
saturation of upward-closed sets represented by antichains of minimal
markings. ``karp_miller`` and ``bounded_explore`` are independent forward
engines kept for cross-checking.
"""
from __future__ import annotations

import math
from collections import deque
from dataclasses import dataclass, field
from typing import Iterable, Sequence

from .net import LabeledPetriNet, Marking, fire_sequence, successors

DEFAULT_MAX_NODES = 10**6
OMEGA = math.inf


class ResourceExhausted(RuntimeError):
    """An engine hit its node budget before reaching an answer."""


def covers(m: Sequence, b: Sequence) -> bool:
    return all(x >= y for x, y in zip(m, b))


def minimize(markings: Iterable[Marking]) -> list[Marking]:
    """Antichain of the minimal elements, in lexicographic order."""
    out: list[Marking] = []
    for m in sorted(set(map(tuple, markings)), key=lambda m: (sum(m), m)):
        if not any(covers(m, u) for u in out):
            out.append(m)
    return sorted(out)


def pre_step(net: LabeledPetriNet, b: Marking) -> dict[str, Marking]:
    """Minimal marking from which each transition reaches the upward closure of ``b``."""
    return {t: tuple(max(f, x + f - g) for x, f, g in zip(b, pre, post))
            for t, pre, post in zip(net.transitions, net.pre, net.post)}


@dataclass
class UpwardBasis:
    """Antichain of minimal markings; ``succ`` records how each element was
    derived (transition index, element it leads into) for witness replay."""
    elements: list[Marking] = field(default_factory=list)
    succ: dict[Marking, tuple[int, Marking] | None] = field(default_factory=dict)

    def covered(self, m: Marking) -> bool:
        return any(covers(m, u) for u in self.elements)

    def add(self, m: Marking, how: tuple[int, Marking] | None) -> list[Marking] | None:
        """Insert ``m`` unless already denoted.

        Returns the elements ``m`` displaced, or None if nothing was added.
        """
        if self.covered(m):
            return None
        keep, gone = [], []
        for u in self.elements:
            (gone if covers(u, m) else keep).append(u)
        keep.append(m)
        self.elements = keep
        self.succ[m] = how
        return gone

    def is_antichain(self) -> bool:
        return not any(u != v and covers(u, v)
                       for u in self.elements for v in self.elements)


@dataclass
class CoverResult:
    coverable: bool
    witness: tuple[str, ...] | None = None
    basis: UpwardBasis | None = None
    iterations: int = 0

    def __iter__(self):
        return iter((self.coverable, self.witness))


def backward_coverable(net: LabeledPetriNet, initial: Sequence[int],
                       targets: Iterable[Sequence[int]],
                       max_nodes: int = DEFAULT_MAX_NODES) -> CoverResult:
    """Decide whether some marking reachable from ``initial`` covers a target.

    Positive answers carry a witness firing sequence that is replayed before
    returning.
    """
    initial = tuple(initial)
    targets = minimize(targets)
    basis = UpwardBasis()
    for b in targets:
        basis.add(b, None)
    if not targets:
        return CoverResult(False, None, basis)
    for b in targets:
        if covers(initial, b):
            return CoverResult(True, (), basis)

    queue = deque(targets)
    steps = list(zip(range(len(net.transitions)), net.pre, net.post))
    nodes = len(targets)
    iterations = 0
    # elements displaced by smaller ones: their predecessors are dominated too
    dropped: set[Marking] = set()
    while queue:
        b = queue.popleft()
        if b in dropped:
            continue
        iterations += 1
        for ti, pre, post in steps:
            pred = tuple(max(f, x + f - g) for x, f, g in zip(b, pre, post))
            gone = basis.add(pred, (ti, b))
            if gone is None:
                continue
            dropped.update(gone)
            nodes += 1
            if nodes > max_nodes:
                raise ResourceExhausted(f"backward search exceeded {max_nodes} basis elements")
            if covers(initial, pred):
                witness = _unwind(net, basis, pred)
                _check_witness(net, initial, targets, witness)
                return CoverResult(True, witness, basis, iterations)
            queue.append(pred)
    return CoverResult(False, None, basis, iterations)


def _unwind(net, basis: UpwardBasis, m: Marking) -> tuple[str, ...]:
    out = []
    how = basis.succ[m]
    while how is not None:
        ti, nxt = how
        out.append(net.transitions[ti])
        how = basis.succ[nxt]
    return tuple(out)


def _check_witness(net, initial, targets, witness):
    final = fire_sequence(net, initial, witness)[-1]
    if not any(covers(final, b) for b in targets):
        raise AssertionError(f"coverability witness {witness} does not reach a target")


@dataclass
class KarpMillerTree:
    """Labels of a Karp-Miller tree; ``OMEGA`` marks unbounded coordinates."""
    markings: list[tuple]
    nodes: int

    def covers(self, target: Sequence[int]) -> bool:
        return any(covers(m, target) for m in self.markings)

    def coverable(self, targets: Iterable[Sequence[int]]) -> bool:
        return any(self.covers(b) for b in targets)

    def unbounded_places(self, net: LabeledPetriNet) -> set[str]:
        return {p for m in self.markings for p, k in zip(net.places, m) if k == OMEGA}


def karp_miller(net: LabeledPetriNet, m0: Sequence[int],
                max_nodes: int = DEFAULT_MAX_NODES) -> KarpMillerTree:
    root = tuple(m0)
    seen = {root}
    out = [root]
    # each stack entry carries its ancestor chain (root first)
    stack = [(root, (root,))]
    while stack:
        m, path = stack.pop()
        for pre, post in zip(net.pre, net.post):
            if not all(k >= w for k, w in zip(m, pre)):
                continue
            succ = tuple(k - a + b for k, a, b in zip(m, pre, post))
            for anc in path:
                if anc != succ and covers(succ, anc):
                    succ = tuple(OMEGA if s > a else s for s, a in zip(succ, anc))
            if succ in seen:
                continue
            seen.add(succ)
            out.append(succ)
            if len(out) > max_nodes:
                raise ResourceExhausted(f"Karp-Miller tree exceeded {max_nodes} nodes")
            stack.append((succ, path + (succ,)))
    return KarpMillerTree(out, len(out))


@dataclass
class Exploration:
    markings: set[Marking]
    complete: bool
    parents: dict[Marking, tuple[Marking, str] | None]

    def path_to(self, m: Marking) -> tuple[str, ...]:
        out = []
        link = self.parents[m]
        while link is not None:
            m, t = link
            out.append(t)
            link = self.parents[m]
        return tuple(reversed(out))

    def cover_witness(self, targets: Iterable[Sequence[int]]) -> tuple[str, ...] | None:
        targets = list(targets)
        for m in sorted(self.markings, key=lambda m: (len(self.path_to(m)), m)):
            if any(covers(m, b) for b in targets):
                return self.path_to(m)
        return None


def bounded_explore(net: LabeledPetriNet, m0: Sequence[int], bound: int,
                    depth: int) -> Exploration:
    """Breadth-first reachability, cut at ``bound`` tokens per place and
    ``depth`` steps. ``complete`` is true iff nothing was cut."""
    root = tuple(m0)
    parents: dict[Marking, tuple[Marking, str] | None] = {root: None}
    complete = max(root, default=0) <= bound
    frontier = [root] if complete else []
    for _ in range(depth):
        nxt = []
        for m in frontier:
            for ti, s in successors(net, m):
                if s in parents:
                    continue
                if max(s) > bound:
                    complete = False
                    continue
                parents[s] = (m, net.transitions[ti])
                nxt.append(s)
        frontier = nxt
        if not frontier:
            break
    else:
        if any(s not in parents for m in frontier for _, s in successors(net, m)):
            complete = False
    return Exploration(set(parents), complete, parents)
