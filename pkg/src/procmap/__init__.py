"""Numerical laboratory for the process map A_{t+1} = A_t + g sin(A_t)."""

__version__ = "0.1.0"

from .mapcore import (CriticalPair, DomainError, Escaped, MapParams, critical_points, deriv,
                      eval_map, iterate_n, multiplier_n)
from .orbits import (Behavior, BehaviorLabel, OrbitRecord, OrbitSettings, Tolerances, classify,
                     cobweb_trace, mod_reduce, run_orbit, signed_log)
from .roots import BracketError, NoRoot
from .stability import (FixedPointRecord, Stability, StabilitySweep, find_fixed_points,
                        locate_stability_boundary, sweep_stability)
from .thresholds import (ThresholdResult, ballistic_onset, scan_lstep_solutions, solve_bios_onset,
                         solve_lstep, solve_lstep_state)
from .windows import (QCurve, WindowInterval, WindowPredicateSpec, find_windows, q_curve,
                      window_predicate)
from .scan import ICPolicy, ScanGrid, ScanResult, bifurcation_scan, multistability_scan
