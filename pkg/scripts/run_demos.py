"""Run every adversary demo over a grid of block sizes and injected eps values."""

import argparse
from fractions import Fraction
from itertools import product

from pcpp_dichotomy.adversary import build_demo, pair_keys, run_attack


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--n", type=int, nargs="+", default=[1, 2])
    ap.add_argument("--m", type=int, nargs="+", default=[3, 5])
    ap.add_argument("--eps", type=Fraction, default=Fraction(1, 20), help="value injected into odd witnesses")
    args = ap.parse_args()
    print(f"{'class':16s} {'n':>2s} {'m':>2s} {'eps':>8s} {'pruned':>7s} {'original':>9s} {'bound':>9s} {'distance':>9s}")
    for tag, n, m in product(("linear", "weakly-positive", "weakly-negative", "2cnf"), args.n, args.m):
        count = len(pair_keys(m)) if tag == "2cnf" else m
        for eps in ([0] * count, [args.eps if j % 2 else 0 for j in range(count)]):
            demo = build_demo(tag, n, m, eps)
            res = run_attack(tag, demo.psi, demo.witnesses, demo.alphas)
            print(f"{tag:16s} {n:2d} {m:2d} {str(max(eps)):>8s} {str(res.satisfied_fraction_pruned):>7s} "
                  f"{str(res.satisfied_fraction_original):>9s} {str(res.bound):>9s} {str(min(res.distances)):>9s}")


if __name__ == "__main__":
    main()
