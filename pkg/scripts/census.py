"""Count Boolean relations of arity 1..3 by Schaefer class and cross-check clause synthesis."""

import argparse
from collections import Counter

from pcpp_dichotomy.classify import CLASSES, FAMILY_POLYMORPHISM, all_tables, classify_constraint, closed_under, synthesize_clauses


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--max-arity", type=int, default=3)
    args = ap.parse_args()
    for arity in range(1, args.max_arity + 1):
        counts = Counter()
        hard = mismatches = 0
        tables = list(all_tables(arity))
        for c in tables:
            flags = classify_constraint(c)
            counts.update(flags.holding())
            hard += not any(flags[cls] for cls in CLASSES[:-1])
            for family, op in FAMILY_POLYMORPHISM.items():
                mismatches += (synthesize_clauses(c, family) is not None) != closed_under(c, op)
        print(f"arity {arity}: {len(tables)} relations, {hard} with no tractable class, "
              f"{mismatches} synthesis/closure mismatches")
        for cls in CLASSES:
            print(f"  {cls:16s} {counts[cls]}")


if __name__ == "__main__":
    main()
