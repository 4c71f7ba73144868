import random
from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from lpnspp import catalog
from lpnspp.generate import InstanceConfig, random_instance
from lpnspp.model import InstanceError, ProtectableEvent, Semantics, policy_cost
from lpnspp.search import (EXHAUSTED, INFEASIBLE, OPTIMAL, brute_force_optimal,
                           decide_budget, minimal_valid_policies, optimal_policy,
                           oracle_check)
from lpnspp.validity import is_valid

from helpers import all_policies

ORACLE = oracle_check(1, 10**4)


def test_two_place_optimal():
    res = optimal_policy(catalog.two_place())
    assert (res.status, res.policy, res.cost) == (OPTIMAL, {"a"}, 5)


def test_chain():
    res = optimal_policy(catalog.chain(Semantics.PARIKH, cost=7))
    assert (res.policy, res.cost) == ({"a"}, 7)
    res = optimal_policy(catalog.chain(Semantics.INDICATOR))
    assert res.status == INFEASIBLE and res.policy is None
    assert res.certificates and all(v.invalid for _, v in res.certificates)


def test_two_routes_rational_cost():
    res = optimal_policy(catalog.two_routes())
    assert res.policy == {"a", "b"} and res.cost == Fraction(5, 6)
    # every cheaper policy that was checked came back invalid with a witness
    assert all(v.witness is not None for _, v in res.certificates)


def test_zero_cost_events_trimmed():
    inst = catalog.two_routes()
    prot = dict(inst.protectable)
    prot["c"] = ProtectableEvent("c", 1, Fraction(0), Semantics.INDICATOR)
    res = optimal_policy(inst.replace(protectable=prot))
    # {a, b, c} is the first valid candidate; c is then dropped as unneeded
    assert res.policy == {"a", "b"} and res.cost == Fraction(5, 6)


def test_decide_budget():
    inst = catalog.two_place()
    assert decide_budget(inst, 5)
    assert not decide_budget(inst, Fraction(49, 10))
    assert decide_budget(catalog.two_routes(), Fraction(5, 6))
    assert not decide_budget(catalog.two_routes(), Fraction(4, 5))
    with pytest.raises(InstanceError):
        decide_budget(inst)
    with pytest.raises(InstanceError):
        decide_budget(inst, -1)


def test_minimal_valid_policies_two_routes():
    got = set(minimal_valid_policies(catalog.two_routes()))
    assert frozenset({"a", "b"}) in got
    assert frozenset({"c", "d"}) in got


def test_exhausted_budget_reported():
    res = optimal_policy(catalog.unbounded_source(), check=oracle_check(2, 5))
    assert res.status == EXHAUSTED


def test_workers_agree():
    inst = catalog.two_routes()
    a = optimal_policy(inst)
    b = optimal_policy(inst, workers=2)
    assert (a.policy, a.cost) == (b.policy, b.cost)


def _random(seed):
    return random_instance(random.Random(seed), InstanceConfig())


@settings(max_examples=50, deadline=None)
@given(st.integers(0, 10**6))
def test_matches_brute_force(seed):
    inst = _random(seed)
    res = optimal_policy(inst)
    best = brute_force_optimal(inst, ORACLE)
    if best is None:
        assert res.status == INFEASIBLE
    else:
        assert res.status == OPTIMAL and res.cost == best
        assert policy_cost(inst, res.policy) == best
        assert is_valid(inst, res.policy).valid


@settings(max_examples=40, deadline=None)
@given(st.integers(0, 10**6), st.sampled_from([0, Fraction(1, 2), 1, 2, 3, 5]))
def test_decide_matches_optimum(seed, budget):
    inst = _random(seed)
    res = optimal_policy(inst)
    expect = res.status == OPTIMAL and res.cost <= budget
    assert decide_budget(inst, budget) is expect


@settings(max_examples=40, deadline=None)
@given(st.integers(0, 10**6))
def test_minimal_policies_exact(seed):
    inst = _random(seed)
    pols = list(all_policies(inst.protectable_events))
    valid = [p for p in pols if ORACLE(inst, p).valid]
    minimal = {p for p in valid if not any(q < p for q in valid)}
    assert set(minimal_valid_policies(inst)) == minimal
