"""Command-line front end: ``procmap <subcommand> [options]``.

Exit codes: 0 success, 1 usage error, 2 numerical failure. Errors are
also written to stderr as one JSON object per line.
"""

from __future__ import annotations

import argparse
import json
import math
import os
import sys

import numpy as np

from . import __version__, scan
from .mapcore import DomainError, MapParams
from .orbits import OrbitSettings, classify, cobweb_trace, run_orbit
from .recipes import UnknownRecipe, run_recipe
from .roots import BracketError, NoRoot
from .scan import ICPolicy, ScanGrid
from .stability import find_fixed_points, locate_stability_boundary, sweep_stability
from .thresholds import (ballistic_onset, scan_lstep_solutions, solve_bios_onset, solve_lstep,
                         solve_lstep_state)
from .windows import WindowPredicateSpec, find_windows, q_curve


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message)


def _floats(text: str, count: int | None = None) -> list[float]:
    parts = text.split(":") if ":" in text else text.split(",")
    try:
        vals = [float(p) for p in parts]
    except ValueError:
        raise argparse.ArgumentTypeError(f"not a number list: {text!r}") from None
    if count is not None and len(vals) != count:
        raise argparse.ArgumentTypeError(f"expected {count} values, got {text!r}")
    return vals


def g_range(text: str) -> tuple[float, float, int]:
    """LO:HI:STEPS"""
    parts = text.split(":")
    if len(parts) != 3:
        raise argparse.ArgumentTypeError("--g-range takes LO:HI:STEPS")
    try:
        return float(parts[0]), float(parts[1]), int(parts[2])
    except ValueError:
        raise argparse.ArgumentTypeError(f"bad --g-range {text!r}") from None


def pair(text: str) -> tuple[float, float]:
    lo, hi = _floats(text, 2)
    return lo, hi


def number_list(text: str) -> list[float]:
    return [float(x) for x in text.split(",") if x]


def int_list(text: str) -> list[int]:
    return [int(x) for x in text.split(",") if x]


def _common() -> argparse.ArgumentParser:
    p = _Parser(add_help=False)
    p.add_argument("--g", type=float, help="coupling constant")
    p.add_argument("--g-range", type=g_range, metavar="LO:HI:STEPS")
    p.add_argument("--ic", type=number_list, metavar="A0[,A0...]", help="initial condition(s)")
    p.add_argument("--ic-random", type=int, metavar="SEED", help="one uniform [0, 2pi) draw per g")
    p.add_argument("--transient", type=int, default=5000)
    p.add_argument("--samples", type=int, default=4096)
    p.add_argument("--escape-bound", type=float, default=1e12)
    p.add_argument("--transform", choices=scan.TRANSFORMS, default="raw")
    p.add_argument("--out", help="output path (default stdout)")
    p.add_argument("--format", choices=("csv", "ndjson"), default="csv")
    p.add_argument("--threads", type=int, default=None, help="worker processes (default $PROCMAP_THREADS or 1)")
    p.add_argument("--config", help="key=value file mirroring these flags")
    return p


def build_parser() -> dict[str, argparse.ArgumentParser]:
    common = _common()
    root = _Parser(prog="procmap", description="Process map A -> A + g sin(A) laboratory")
    root.add_argument("--version", action="version", version=__version__)
    sub = root.add_subparsers(dest="command", required=True, parser_class=_Parser)
    subs = {}

    def add(name, help_):
        subs[name] = sub.add_parser(name, parents=[common], help=help_)
        return subs[name]

    add("iterate", "one orbit after a transient")
    p = add("cobweb", "cobweb staircase vertices")
    p.add_argument("--steps", type=int, default=100)
    add("bifurcation", "orbit samples across a g grid")
    p = add("fixed-points", "roots of f^n(A) - A and their stability")
    p.add_argument("--n", type=int, default=1)
    p.add_argument("--interval", type=pair, default=(0.0, 2 * math.pi), metavar="LO:HI")
    p.add_argument("--grid", type=int)
    p = add("sweep-stability", "fixed points of f^n across a g grid")
    p.add_argument("--n", type=int, default=2)
    p.add_argument("--interval", type=pair, default=(0.0, 2 * math.pi), metavar="LO:HI")
    p.add_argument("--grid", type=int)
    p.add_argument("--locate", action="store_true", help="bisect the g where the stable count changes")
    p = add("thresholds", "closed-form and solved bifurcation thresholds")
    p.add_argument("--bios", action="store_true")
    p.add_argument("--ballistic", type=int, metavar="K")
    p = add("windows", "g intervals satisfying the critical-orbit window condition")
    p.add_argument("--L", type=int, default=1)
    p.add_argument("--I", type=int, default=1)
    p.add_argument("--n-max", type=int, default=20)
    p.add_argument("--which", choices=("A1", "A2"), default="A1")
    p.add_argument("--coarse", action="store_true", help="skip boundary refinement")
    p = add("lstep", "L-step condition f^L(A_k) - A_k = 2pi")
    p.add_argument("--L", type=int, default=2)
    p.add_argument("--ak", type=float, help="solve for g at this A_k")
    p.add_argument("--a-bracket", type=pair, default=(math.pi / 2, math.pi), metavar="LO:HI")
    p.add_argument("--g-bracket", type=pair, default=(4.6, 2 * math.pi), metavar="LO:HI")
    p.add_argument("--scan", type=g_range, metavar="ALO:AHI:N", help="solve for g across an A_k grid")
    p = add("qcurves", "g -> f^n(A*) mod 2pi")
    p.add_argument("--n", type=int_list, default=[1, 2], metavar="N[,N...]")
    p.add_argument("--which", type=lambda s: s.split(","), default=["A1", "A2"])
    add("classify", "behavior label of one orbit")
    p = add("recipe", "write the data for a named figure")
    p.add_argument("name")
    p.add_argument("--quick", action="store_true", help="coarse grids")
    subs[""] = root
    return subs


_BOOL = {"true": True, "1": True, "yes": True, "false": False, "0": False, "no": False}


def read_config(path: str) -> dict[str, str]:
    out = {}
    with open(path) as fh:
        for lineno, line in enumerate(fh, 1):
            line = line.split("#", 1)[0].strip()
            if not line:
                continue
            if "=" not in line:
                raise UsageError(f"{path}:{lineno}: expected key=value")
            k, v = line.split("=", 1)
            out[k.strip().lstrip("-").replace("-", "_")] = v.strip()
    return out


def parse_args(argv: list[str]) -> argparse.Namespace:
    parsers = build_parser()
    root = parsers[""]
    args = root.parse_args(argv)
    if args.config:
        sub = parsers[args.command]
        actions = {a.dest: a for a in sub._actions}
        defaults = {}
        for k, v in read_config(args.config).items():
            if k not in actions or k == "config":
                raise UsageError(f"unknown config key {k!r}")
            if isinstance(actions[k], argparse._StoreTrueAction):
                if v.lower() not in _BOOL:
                    raise UsageError(f"config key {k!r} needs a boolean")
                defaults[k] = _BOOL[v.lower()]
            else:
                defaults[k] = v
        sub.set_defaults(**defaults)
        args = root.parse_args(argv)
    return args


def _settings(args) -> OrbitSettings:
    return OrbitSettings(args.transient, args.samples, args.escape_bound,
                         args.ic_random if args.ic_random is not None else 0)


def _ic_policy(args) -> ICPolicy:
    if args.ic_random is not None:
        if args.ic:
            raise UsageError("--ic and --ic-random are exclusive")
        return ICPolicy.random_per_g(args.ic_random)
    ics = args.ic or [math.pi / 2]
    return ICPolicy.fixed(ics[0]) if len(ics) == 1 else ICPolicy.list(ics)


def _grid(args) -> ScanGrid:
    if args.g_range:
        lo, hi, steps = args.g_range
    elif args.g is not None:
        lo = hi = args.g
        steps = 1
    else:
        raise UsageError("need --g or --g-range")
    return ScanGrid(lo, hi, steps, _ic_policy(args), _settings(args), args.transform)


def _need_g(args) -> float:
    if args.g is None:
        raise UsageError("need --g")
    return args.g


def _g_values(args) -> np.ndarray:
    if not args.g_range:
        raise UsageError("need --g-range")
    lo, hi, steps = args.g_range
    return np.linspace(lo, hi, steps)


def _emit_table(args, header, rows):
    if args.out:
        with open(args.out, "w", newline="") as fh:
            scan.write_rows(rows, fh, args.format, fields=header)
        print(args.out)
    else:
        scan.write_rows(rows, sys.stdout, args.format, fields=header)


def _emit_scan(args, result):
    if args.out:
        meta = {"effective_config": {k: v for k, v in vars(args).items()}}
        scan.save(result, args.out, args.format, meta)
        print(args.out)
    else:
        scan.write_rows(result.rows(), sys.stdout, args.format)


def run(args) -> None:
    cmd = args.command
    workers = args.threads if args.threads is not None else scan.default_workers()
    if cmd in ("iterate", "bifurcation"):
        grid = _grid(args)
        if cmd == "iterate" and grid.g_steps != 1:
            raise UsageError("iterate takes a single --g")
        _emit_scan(args, scan.bifurcation_scan(grid, workers))
    elif cmd == "cobweb":
        g = _need_g(args)
        a0 = (args.ic or [math.pi / 2])[0]
        pts = cobweb_trace(MapParams(g, args.escape_bound), a0, args.steps, args.escape_bound)
        _emit_table(args, ("g", "ic", "point_index", "x", "y"),
                    [(g, a0, i, x, y) for i, (x, y) in enumerate(pts)])
    elif cmd == "fixed-points":
        recs = find_fixed_points(_need_g(args), args.n, args.interval, args.grid)
        _emit_table(args, ("g", "n", "a", "multiplier", "stability", "residual"),
                    [(args.g, r.n, r.a, r.multiplier, r.stability.value, r.residual) for r in recs])
    elif cmd == "sweep-stability":
        lo, hi, steps = args.g_range or (None, None, None)
        if lo is None:
            raise UsageError("need --g-range")
        if args.locate:
            g = locate_stability_boundary(args.n, (lo, hi), args.interval, grid=args.grid)
            _emit_table(args, ("n", "g_lo", "g_hi", "boundary"), [(args.n, lo, hi, g)])
            return
        sw = sweep_stability(args.n, lo, hi, steps, args.interval, args.grid, workers)
        _emit_table(args, ("g", "n", "a", "multiplier", "stability"),
                    [(float(g), r.n, r.a, r.multiplier, r.stability.value)
                     for g, recs in zip(sw.g_grid, sw.records) for r in recs])
    elif cmd == "thresholds":
        results = []
        if args.bios or args.ballistic is None:
            results.append(solve_bios_onset())
        if args.ballistic is not None:
            results.append(ballistic_onset(args.ballistic))
        _emit_table(args, ("kind", "order", "g", "aux", "residual"),
                    [(r.kind, "" if r.order is None else r.order, r.g, r.aux, r.residual) for r in results])
    elif cmd == "windows":
        lo, hi, steps = args.g_range or (None, None, None)
        if lo is None:
            raise UsageError("need --g-range")
        spec = WindowPredicateSpec(args.L, args.I, args.n_max, args.which)
        ws = find_windows(spec, lo, hi, grid=steps or None, refine=not args.coarse)
        _emit_table(args, ("L", "I", "n_max", "which", "g_lo", "g_hi", "truncated_lo", "truncated_hi"),
                    [(spec.L, spec.I, spec.n_max, spec.which, w.g_lo, w.g_hi,
                      int(w.truncated[0]), int(w.truncated[1])) for w in ws])
    elif cmd == "lstep":
        if args.scan:
            alo, ahi, n = args.scan
            res = scan_lstep_solutions(args.L, np.linspace(alo, ahi, n), args.g_bracket)
        elif args.ak is not None:
            res = [solve_lstep(args.L, args.ak, args.g_bracket)]
        elif args.g is not None:
            res = [solve_lstep_state(args.L, args.g, args.a_bracket)]
        else:
            raise UsageError("lstep needs --ak, --g or --scan")
        _emit_table(args, ("L", "g", "a_k", "residual"), [(args.L, r.g, r.aux, r.residual) for r in res])
    elif cmd == "qcurves":
        gs = _g_values(args)
        rows = []
        for n in args.n:
            for which in args.which:
                q = q_curve(n, which, gs)
                rows.extend((float(g), n, which, float(v)) for g, v in zip(q.g_grid, q.points))
        _emit_table(args, ("g", "n", "which", "value"), rows)
    elif cmd == "classify":
        g = _need_g(args)
        rows = []
        for a0 in args.ic or [math.pi / 2]:
            lab = classify(run_orbit(MapParams(g, args.escape_bound), a0, _settings(args)))
            rows.append((g, a0, str(lab), lab.kind.value, lab.period or "", lab.direction or "",
                         json.dumps(lab.evidence, sort_keys=True)))
        _emit_table(args, ("g", "ic", "label", "kind", "period", "direction", "evidence"), rows)
    elif cmd == "recipe":
        for path in run_recipe(args.name, args.out or ".", args.quick):
            print(path)


def _fail(kind: str, message: str, code: int) -> int:
    print(json.dumps({"error": kind, "message": message}), file=sys.stderr)
    return code


def main(argv: list[str] | None = None) -> int:
    argv = sys.argv[1:] if argv is None else argv
    try:
        args = parse_args(argv)
        run(args)
    except UsageError as e:
        return _fail("UsageError", str(e), 1)
    except UnknownRecipe as e:
        return _fail("UnknownRecipe", str(e), 1)
    except (NoRoot, BracketError, DomainError) as e:
        return _fail(type(e).__name__, str(e), 2)
    except ValueError as e:
        return _fail("UsageError", str(e), 1)
    except BrokenPipeError:
        # reader went away (e.g. piped into head); silence the flush at exit
        os.dup2(os.open(os.devnull, os.O_WRONLY), sys.stdout.fileno())
    return 0


if __name__ == "__main__":
    sys.exit(main())
