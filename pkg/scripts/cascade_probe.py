"""Locate period changes along a g-range by classifying the orbit from pi/2.

    python3 scripts/cascade_probe.py 9.205 9.6838 --steps 400

Prints one line each time the label changes, so a period-doubling cascade
shows up as BoundedPeriodic(2) -> (4) -> (8) ... followed by Biotic.
"""
import argparse
import math

from procmap.orbits import OrbitSettings
from procmap.scan import ICPolicy, ScanGrid, bifurcation_scan


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("g_lo", type=float)
    ap.add_argument("g_hi", type=float)
    ap.add_argument("--steps", type=int, default=400)
    ap.add_argument("--ic", type=float, default=math.pi / 2)
    ap.add_argument("--transient", type=int, default=5000)
    ap.add_argument("--samples", type=int, default=4096)
    args = ap.parse_args()
    grid = ScanGrid(args.g_lo, args.g_hi, args.steps, ICPolicy.fixed(args.ic),
                    OrbitSettings(args.transient, args.samples))
    mid = 0.5 * (args.g_lo + args.g_hi)
    prev = None
    for b in bifurcation_scan(grid).blocks:
        if b.label != prev:
            side = "left" if b.g <= mid else "right"
            print(f"{b.g:.5f}  {side:5s}  {b.label}")
            prev = b.label


if __name__ == "__main__":
    main()
