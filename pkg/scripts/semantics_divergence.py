"""Optimal policies of every corpus instance under the backward engine and the
explicit-state oracle, side by side."""
import argparse
from pathlib import Path

from lpnspp.fileformat import load_instance
from lpnspp.search import optimal_policy, oracle_check

CORPUS = Path(__file__).resolve().parent.parent / "tests" / "corpus"


def show(res):
    if res.policy is None:
        return res.status
    return f"{res.cost} {{{','.join(sorted(res.policy))}}}"


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--bound", type=int, default=3)
    ap.add_argument("--depth", type=int, default=200)
    args = ap.parse_args()
    oracle = oracle_check(args.bound, args.depth)
    for f in sorted(CORPUS.glob("*.spp")):
        inst = load_instance(f)
        exact, ref = optimal_policy(inst), optimal_policy(inst, check=oracle)
        print(f"{f.stem:<28} {show(exact):<28} {show(ref)}")


if __name__ == "__main__":
    main()
