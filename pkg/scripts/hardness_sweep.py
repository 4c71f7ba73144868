"""Coverability through budget decisions on random nets.

For each random net and target, builds the hardness gadget, decides it with
budget 1 and compares against direct coverability. Reports agreement and
timing per net size.
"""
import argparse
import random
import time
from collections import defaultdict

from lpnspp.coverability import backward_coverable
from lpnspp.generate import NetConfig, random_marking, random_net
from lpnspp.search import decide_budget
from lpnspp.transforms import gen_hardness_instance


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--nets", type=int, default=200)
    ap.add_argument("--seed", type=int, default=0)
    ap.add_argument("--max-places", type=int, default=6)
    ap.add_argument("--literal", action="store_true",
                    help="build gadgets without the single-firing guard")
    args = ap.parse_args()
    rng = random.Random(args.seed)
    cfg = NetConfig(max_places=args.max_places, max_transitions=args.max_places)
    stats = defaultdict(lambda: [0, 0, 0.0])   # places -> [nets, disagreements, seconds]
    for _ in range(args.nets):
        net, m0 = random_net(rng, cfg)
        target = random_marking(rng, net)
        t0 = time.perf_counter()
        gadget = gen_hardness_instance(net, m0, target, once=not args.literal)
        yes = decide_budget(gadget)
        elapsed = time.perf_counter() - t0
        cov = backward_coverable(net, m0, [target]).coverable
        row = stats[len(net.places)]
        row[0] += 1
        row[1] += yes == cov
        row[2] += elapsed
    print(f"{'places':>6}  {'nets':>5}  {'disagree':>8}  {'mean ms':>8}")
    for k in sorted(stats):
        n, bad, secs = stats[k]
        print(f"{k:>6}  {n:>5}  {bad:>8}  {1000 * secs / n:>8.2f}")


if __name__ == "__main__":
    main()
