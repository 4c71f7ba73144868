"""Secret protection policies for labeled Petri nets."""
from .coverability import ResourceExhausted, backward_coverable, bounded_explore, karp_miller
from .fileformat import ParseError, parse_instance, serialize_instance
from .model import (Policy, ProtectableEvent, Semantics, SppInstance, clearance_of_run,
                    policy_cost, protectable, run_violates, validate_instance)
from .net import FiringError, LabeledPetriNet, NetError, enabled, fire, fire_sequence, label_word, make_net
from .search import SearchResult, decide_budget, minimal_valid_policies, optimal_policy
from .transforms import build_monitor_net, gen_hardness_instance, saturate_counter, uniformize
from .validity import Verdict, is_valid, is_valid_oracle, violation_targets

__version__ = "0.1.0"
