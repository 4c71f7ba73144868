"""Command-line entry point.

Exit codes: 0 positive answer, 1 negative answer (INVALID / NO /
NOT-COVERABLE), 2 INFEASIBLE, 3 input or usage error, 4 UNKNOWN (bounded
oracle cut short), 5 resource exhausted.
"""
from __future__ import annotations

import argparse
import functools
import random
import re
import sys

from .coverability import ResourceExhausted, backward_coverable, bounded_explore, karp_miller
from .fileformat import ParseError, load_instance, parse_rational, save_instance
from .generate import InstanceConfig, random_instance
from .model import InstanceError
from .net import NetError
from .search import EXHAUSTED, INFEASIBLE, decide_budget, optimal_policy, oracle_check
from .transforms import gen_hardness_instance, uniformize
from .validity import EXHAUSTED as V_EXHAUSTED, INVALID, UNKNOWN, is_valid, is_valid_oracle

OK, NO, INFEASIBLE_EXIT, INPUT_ERROR, UNKNOWN_EXIT, EXHAUSTED_EXIT = range(6)


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(f"{self.format_usage()}{self.prog}: error: {message}")


def _common(defaults: bool) -> argparse.ArgumentParser:
    # global flags are accepted before or after the subcommand
    def d(value):
        return value if defaults else argparse.SUPPRESS
    p = _Parser(add_help=False)
    p.add_argument("--engine", choices=("backward", "karp-miller", "oracle"),
                   default=d("backward"))
    p.add_argument("--seed", type=int, default=d(0))
    p.add_argument("--max-nodes", type=int, default=d(10**6))
    return p


def build_parser() -> argparse.ArgumentParser:
    common = _common(False)
    parser = _Parser(prog="lpnspp", description="Secret protection on labeled Petri nets.",
                     parents=[_common(True)])
    sub = parser.add_subparsers(dest="command", parser_class=_Parser)
    sub.required = True

    def command(name, help_):
        return sub.add_parser(name, help=help_, parents=[common])

    def bounds(p, default_bound=3, default_depth=200):
        p.add_argument("--bound", type=int, default=default_bound,
                       help="per-place token bound for the oracle engine")
        p.add_argument("--depth", type=int, default=default_depth,
                       help="step bound for the oracle engine")

    p = command("check", "decide validity of one policy")
    p.add_argument("--instance", required=True)
    p.add_argument("--policy", default="")
    bounds(p)

    p = command("solve", "compute a minimum-cost valid policy")
    p.add_argument("--instance", required=True)
    p.add_argument("--workers", type=int, default=1)
    bounds(p)

    p = command("decide", "is there a valid policy within the budget?")
    p.add_argument("--instance", required=True)
    p.add_argument("--budget")
    bounds(p)

    p = command("transform", "write a transformed instance")
    p.add_argument("--instance", required=True)
    p.add_argument("--to", choices=("uniform",), required=True)
    p.add_argument("--indicator", choices=("gadget", "fresh-labels"), default="gadget")
    p.add_argument("--out", required=True)

    p = command("gen-hard", "build the coverability hardness gadget")
    p.add_argument("--net", required=True)
    p.add_argument("--target", required=True, help='e.g. "p1=1,p2=2"')
    p.add_argument("--out", required=True)
    p.add_argument("--no-once", action="store_true",
                   help="omit the place that limits t_new to a single firing")

    p = command("cover", "coverability of a target marking")
    p.add_argument("--net", required=True)
    p.add_argument("--target", required=True, help='e.g. "p1>=1,p2>=2"')
    bounds(p)

    p = command("oracle", "bounded explicit-state validity check")
    p.add_argument("--instance", required=True)
    p.add_argument("--policy", default="")
    p.add_argument("--bound", type=int, required=True)
    p.add_argument("--depth", type=int, required=True)

    p = command("gen-random", "write a random 1-safe instance")
    p.add_argument("--out", required=True)
    return parser


def _policy(text: str) -> frozenset:
    """``a,b`` or ``{a,b}`` as printed by ``solve``."""
    text = text.strip().removeprefix("{").removesuffix("}")
    return frozenset(a.strip() for a in text.split(",") if a.strip())


def _target(net, text: str):
    tokens = {}
    for part in text.split(","):
        part = part.strip()
        if not part:
            continue
        m = re.fullmatch(r"([A-Za-z0-9_.-]+)\s*(?:>=|≥|=)\s*(\d+)", part)
        if not m:
            raise InstanceError(f"bad target entry {part!r}")
        tokens[m.group(1)] = int(m.group(2))
    return net.marking(tokens)


def _fmt_policy(inst, pol) -> str:
    return "{" + ",".join(a for a in inst.protectable_events if a in pol) + "}"


def _check_fn(args):
    if args.engine == "oracle":
        return oracle_check(args.bound, args.depth)
    return functools.partial(is_valid, engine=args.engine, max_nodes=args.max_nodes)


def _report_verdict(v, out) -> int:
    if v.status == INVALID:
        print(f"INVALID place={v.violated_place} clearance={v.clearance_at_violation}", file=out)
        print("witness: " + " ".join(v.witness), file=out)
        return NO
    if v.status == UNKNOWN:
        print("UNKNOWN", file=out)
        return UNKNOWN_EXIT
    if v.status == V_EXHAUSTED:
        print("RESOURCE-EXHAUSTED", file=out)
        return EXHAUSTED_EXIT
    print("VALID", file=out)
    return OK


def _run(args, out) -> int:
    cmd = args.command
    if cmd in ("check", "oracle"):
        inst = load_instance(args.instance)
        pol = _policy(args.policy)
        if cmd == "oracle":
            return _report_verdict(is_valid_oracle(inst, pol, args.bound, args.depth), out)
        return _report_verdict(_check_fn(args)(inst, pol), out)

    if cmd == "solve":
        inst = load_instance(args.instance)
        res = optimal_policy(inst, check=_check_fn(args), workers=args.workers)
        if res.status == INFEASIBLE:
            print("INFEASIBLE", file=out)
            return INFEASIBLE_EXIT
        if res.status == EXHAUSTED:
            print("RESOURCE-EXHAUSTED", file=out)
            return EXHAUSTED_EXIT
        print(f"OPTIMAL cost={res.cost} policy={_fmt_policy(inst, res.policy)}", file=out)
        return OK

    if cmd == "decide":
        inst = load_instance(args.instance)
        budget = parse_rational(args.budget) if args.budget is not None else inst.budget
        yes = decide_budget(inst, budget, check=_check_fn(args))
        print("YES" if yes else "NO", file=out)
        return OK if yes else NO

    if cmd == "transform":
        inst = load_instance(args.instance)
        uni, cert = uniformize(inst, args.indicator)
        save_instance(uni, args.out, cert.origin)
        print(f"WROTE {args.out}", file=out)
        return OK

    if cmd == "gen-hard":
        src = load_instance(args.net)
        target = _target(src.net, args.target)
        gadget = gen_hardness_instance(src.net, src.initial, target, once=not args.no_once)
        save_instance(gadget, args.out)
        print(f"WROTE {args.out}", file=out)
        return OK

    if cmd == "cover":
        src = load_instance(args.net)
        target = _target(src.net, args.target)
        if args.engine == "karp-miller":
            ok = karp_miller(src.net, src.initial, args.max_nodes).covers(target)
            witness = None
        elif args.engine == "oracle":
            ex = bounded_explore(src.net, src.initial, args.bound, args.depth)
            witness = ex.cover_witness([target])
            ok = witness is not None
            if not ok and not ex.complete:
                print("UNKNOWN", file=out)
                return UNKNOWN_EXIT
        else:
            ok, witness = backward_coverable(src.net, src.initial, [target], args.max_nodes)
        if not ok:
            print("NOT-COVERABLE", file=out)
            return NO
        print("COVERABLE", file=out)
        if witness is not None:
            print("witness: " + " ".join(witness), file=out)
        return OK

    if cmd == "gen-random":
        inst = random_instance(random.Random(args.seed), InstanceConfig())
        save_instance(inst, args.out)
        print(f"WROTE {args.out}", file=out)
        return OK
    raise UsageError(f"unknown command {cmd}")


def main(argv=None, out=None) -> int:
    out = out or sys.stdout
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except UsageError as err:
        print(err, file=sys.stderr)
        return INPUT_ERROR
    try:
        return _run(args, out)
    except (ParseError, InstanceError, NetError, OSError) as err:
        print(f"error: {err}", file=sys.stderr)
        return INPUT_ERROR
    except ResourceExhausted as err:
        print("RESOURCE-EXHAUSTED", file=out)
        print(f"error: {err}", file=sys.stderr)
        return EXHAUSTED_EXIT


if __name__ == "__main__":
    sys.exit(main())
