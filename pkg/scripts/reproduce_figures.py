"""Write the CSV data behind every figure recipe into one directory.

    python3 scripts/reproduce_figures.py out/ [--quick] [--only fig13 fig20]

Plotting is left to whatever tool you like; each CSV has a header row and
every scan has a ``.meta.json`` sidecar describing how it was produced.
"""
import argparse
import time

from procmap.recipes import RECIPES, run_recipe


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("out_dir")
    ap.add_argument("--quick", action="store_true", help="coarse grids, runs in seconds")
    ap.add_argument("--only", nargs="+", choices=sorted(RECIPES), default=sorted(RECIPES))
    args = ap.parse_args()
    for name in args.only:
        t = time.perf_counter()
        paths = run_recipe(name, args.out_dir, args.quick)
        print(f"{name:6s} {time.perf_counter() - t:6.1f} s  " + " ".join(paths))


if __name__ == "__main__":
    main()
