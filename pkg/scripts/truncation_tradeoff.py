#!/usr/bin/env python3
"""Measure the advice-bits vs. competitive-ratio trade-off of the truncated
optimum player: for each truncation width b, report the worst observed strict
ratio and the exact bits read over a seeded bipartite corpus.

Usage: python3 scripts/truncation_tradeoff.py [--instances 200] [--max-b 8]
"""

import argparse

from multicolor.adversary import random_instance
from multicolor.algorithms import greedy_truncated
from multicolor.harness import make_advice
from multicolor.instance import ColorAction, validate_full
from multicolor.oracle import opt_bipartite


def main():
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--instances", type=int, default=200)
    parser.add_argument("--max-b", type=int, default=8)
    args = parser.parse_args()

    corpus = [
        random_instance("bipartite", seed=seed, n_nodes=8, n_requests=30)
        for seed in range(args.instances)
    ]
    opts = [opt_bipartite(inst) for inst in corpus]

    print(f"{'b':>3} {'guarantee':>10} {'worst ratio':>12} {'max bits':>9}")
    for b in range(1, args.max_b + 1):
        worst, bits = 1.0, 0
        for inst, opt in zip(corpus, opts):
            tape = make_advice(inst, "greedy_truncated", b=b)
            acts = greedy_truncated(inst.graph, tape, inst.requests, b)
            assert validate_full(inst, acts) is None
            used = max((a.color for a in acts if isinstance(a, ColorAction)), default=0)
            if opt:
                worst = max(worst, used / opt)
            bits = max(bits, tape.high_water)
        print(f"{b:>3} {1 + 1 / 2 ** (b - 1):>10.4f} {worst:>12.4f} {bits:>9}")
    return 0


if __name__ == "__main__":
    raise SystemExit(main())
