"""Write verified gadgets over exactly-one-of-three for every 1-3 literal clause pattern."""

import argparse
import time

from pcpp_dichotomy.fileio import save_library
from pcpp_dichotomy.gadget import one_in_three_library


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("out", help="directory for the .gad files")
    args = ap.parse_args()
    start = time.perf_counter()
    library = one_in_three_library()
    save_library(library, args.out)
    for key, g in sorted(library.items(), key=lambda kv: (len(kv[0]), kv[0])):
        print(f"CL_{key:4s} aux={g.aux_count} apps={len(g.applications)}")
    print(f"{len(library)} gadgets in {time.perf_counter() - start:.2f}s -> {args.out}")


if __name__ == "__main__":
    main()
