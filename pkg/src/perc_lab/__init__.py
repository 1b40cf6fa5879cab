"""perc-lab: percolation on growing uniform-attachment graphs.

Analytic formulas, a dynamic Monte Carlo growth engine with an exact
small-n oracle, a killed branching-random-walk sampler for the local
limit, a continuous-time clock embedding, and a reproducible ensemble
experiment harness with CSV/JSON artifacts.
"""

__version__ = "0.1.0"

from .analytic import (
    CriticalQuantities,
    ModelParams,
    TypeRecursionSolution,
    critical_quantities,
    critical_threshold,
    drift,
    drift_fixed_points,
    growth_exponent,
    kernel_spectral_radius,
    limiting_susceptibility,
    solve_type_recursion,
)

__all__ = [
    "__version__",
    "CriticalQuantities",
    "ModelParams",
    "TypeRecursionSolution",
    "critical_quantities",
    "critical_threshold",
    "drift",
    "drift_fixed_points",
    "growth_exponent",
    "kernel_spectral_radius",
    "limiting_susceptibility",
    "solve_type_recursion",
]
