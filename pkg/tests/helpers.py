"""Brute-force reference procedures shared by the test modules."""
import itertools

from lpnspp.net import enabled, fire


def all_runs(net, m0, depth):
    """Every firing sequence of length <= depth enabled from m0."""
    out = [()]
    frontier = [((), tuple(m0))]
    for _ in range(depth):
        nxt = []
        for seq, m in frontier:
            for t in net.transitions:
                if enabled(net, m, t):
                    nxt.append((seq + (t,), fire(net, m, t)))
        out += [s for s, _ in nxt]
        frontier = nxt
    return out


def all_policies(events):
    for r in range(len(events) + 1):
        for combo in itertools.combinations(events, r):
            yield frozenset(combo)


def reachable_by_runs(net, m0, depth):
    """Markings reached by sequences of length <= depth (no memoization)."""
    seen = {tuple(m0)}
    frontier = {tuple(m0)}
    for _ in range(depth):
        frontier = {fire(net, m, t) for m in frontier for t in net.transitions
                    if enabled(net, m, t)}
        seen |= frontier
    return seen
