"""Print the periodic-window table: refined endpoints for each (L, I, n_max).

    python3 scripts/window_table.py [--n-max 3 4 20 24]

Useful for seeing how each window narrows as n_max grows.
"""
import argparse

from procmap.windows import WindowPredicateSpec, find_windows

SEARCH = {(1, 1): (8.5, 10.5), (1, 2): (15.0, 16.5), (2, 1): (5.3, 5.5), (3, 1): (5.6, 5.75), (3, 2): (5.85, 6.0)}


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--n-max", type=int, nargs="+", default=[3, 4, 20, 24])
    args = ap.parse_args()
    print(f"{'L':>2} {'I':>2} {'n_max':>5}  {'g_lo':>10} {'g_hi':>10} {'width':>9}")
    for (L, I), (lo, hi) in SEARCH.items():
        for n_max in args.n_max:
            for w in find_windows(WindowPredicateSpec(L, I, n_max), lo, hi):
                flag = " (truncated)" if any(w.truncated) else ""
                print(f"{L:>2} {I:>2} {n_max:>5}  {w.g_lo:10.5f} {w.g_hi:10.5f} {w.width:9.5f}{flag}")


if __name__ == "__main__":
    main()
