"""Closed-form quantities for percolation on uniform-attachment growth.

Everything here is a pure function of the model knobs: the out-degree m and
the edge-retention probability pi.  The central objects are

* the critical threshold  pi_c(m) = 1 / (2 (m + sqrt(m (m-1)))),
* the subcritical growth exponent  alpha(pi),
* the limiting second susceptibility  s2_inf(pi)  (m = 2),
* the susceptibility drift  F(s) = 2 pi^2 s^2 + (4 pi - 1) s + 1  and its
  fixed points (m = 2),
* the spectral radius of the two-type path-counting kernel matrix,
* the coupled old/young mean killed-tree size recursion.

These satisfy a web of identities that the test suite checks on a grid:
alpha = 2 pi^2 s2_inf + 2 pi, pi * lambda_beta = 1 at beta = alpha(pi), and
the old-root recursion solution equals s2_inf.

All arithmetic is IEEE double; rationalized forms are used where the naive
formulas suffer cancellation (e.g. s2_inf = 2 / ((1 - 4 pi) + sqrt(disc)),
which extends continuously to 1 at pi = 0).
"""

from __future__ import annotations

import math
from dataclasses import dataclass


@dataclass(frozen=True)
class ModelParams:
    """Model knobs: out-degree ``m`` and edge-retention probability ``pi``."""

    m: int
    pi: float

    def __post_init__(self):
        if not isinstance(self.m, int) or self.m < 1:
            raise ValueError(f"m must be a positive integer, got {self.m!r}")
        if not 0.0 <= self.pi <= 1.0:
            raise ValueError(f"pi must lie in [0, 1], got {self.pi!r}")


@dataclass(frozen=True)
class CriticalQuantities:
    """Bundle of the m = 2 closed forms at a given subcritical pi."""

    pi_c: float
    alpha: float
    s2_inf: float
    lambda2: float


@dataclass(frozen=True)
class TypeRecursionSolution:
    """Expected killed-tree sizes by root label (old / young)."""

    x_old: float
    x_young: float


def critical_threshold(m: int) -> float:
    """Percolation threshold pi_c(m) = 1 / (2 (m + sqrt(m (m - 1))))."""
    if not isinstance(m, int) or m < 1:
        raise ValueError(f"m must be a positive integer, got {m!r}")
    return 1.0 / (2.0 * (m + math.sqrt(m * (m - 1))))


def _discriminant(m: int, pi: float) -> float:
    """1 - 4 m pi (1 - pi); zero exactly at pi = pi_c(m)."""
    return 1.0 - 4.0 * m * pi * (1.0 - pi)


def growth_exponent(params: ModelParams) -> float:
    """Growth exponent alpha(pi): component sizes scale like n**alpha.

    Uses the rationalized form 2 m pi (1 - pi) / (1 + sqrt(disc)) with
    disc = 1 - 4 m pi (1 - pi), which is exact for every m and avoids the
    cancellation of the (1 - sqrt(disc)) / 2 form near pi = 0.
    """
    disc = _discriminant(params.m, params.pi)
    if disc < 0.0:
        raise ValueError(
            f"pi={params.pi} exceeds the critical threshold "
            f"{critical_threshold(params.m):.10g} for m={params.m}"
        )
    return 2.0 * params.m * params.pi * (1.0 - params.pi) / (1.0 + math.sqrt(disc))


def growth_exponent_quadratic_form(pi: float) -> float:
    """alpha(pi) for m = 2 via the direct form (1 - sqrt(8 pi^2 - 8 pi + 1)) / 2.

    Kept separate so the agreement of the two algebraically equal forms can
    be asserted; production callers use :func:`growth_exponent`.
    """
    disc = 8.0 * pi * pi - 8.0 * pi + 1.0
    if disc < 0.0:
        raise ValueError(f"pi={pi} exceeds the critical threshold for m=2")
    return 0.5 * (1.0 - math.sqrt(disc))


def limiting_susceptibility(pi: float) -> float:
    """Limiting second susceptibility s2_inf(pi) for m = 2, pi < pi_c.

    Rationalized: 2 / ((1 - 4 pi) + sqrt(8 pi^2 - 8 pi + 1)), which equals
    ((1 - 4 pi) - sqrt(disc)) / (4 pi^2) and evaluates to exactly 1 at pi = 0.
    """
    pi_c = critical_threshold(2)
    if not 0.0 <= pi < pi_c:
        raise ValueError(
            f"pi={pi} is not in [0, pi_c) with pi_c={pi_c:.10g}; "
            "the limiting susceptibility only exists subcritically"
        )
    disc = 8.0 * pi * pi - 8.0 * pi + 1.0
    return 2.0 / ((1.0 - 4.0 * pi) + math.sqrt(disc))


def drift(pi: float, s: float) -> float:
    """Susceptibility drift F(s) = 2 pi^2 s^2 + (4 pi - 1) s + 1 (m = 2)."""
    if not 0.0 <= pi <= 1.0:
        raise ValueError(f"pi must lie in [0, 1], got {pi!r}")
    return 2.0 * pi * pi * s * s + (4.0 * pi - 1.0) * s + 1.0


def drift_fixed_points(pi: float) -> tuple[float, float]:
    """Zeros (lambda1, lambda2) of the drift, lambda1 <= lambda2.

    lambda1 is the stable fixed point (F' < 0) that the susceptibility
    trajectory tracks; lambda2 is unstable.  Requires 0 < pi <= pi_c(2);
    above the threshold the drift has no real zeros.  At pi = pi_c the two
    roots merge into the double root (1 - 4 pi) / (4 pi^2).
    """
    pi_c = critical_threshold(2)
    if not 0.0 < pi <= pi_c:
        raise ValueError(
            f"pi={pi} is not in (0, pi_c] with pi_c={pi_c:.10g}; "
            "the drift has no real fixed points beyond the threshold"
        )
    disc = 8.0 * pi * pi - 8.0 * pi + 1.0
    disc = max(disc, 0.0)  # guard the pi == pi_c rounding
    root = math.sqrt(disc)
    lambda1 = 2.0 / ((1.0 - 4.0 * pi) + root)
    lambda2 = ((1.0 - 4.0 * pi) + root) / (4.0 * pi * pi)
    return lambda1, lambda2


def kernel_spectral_radius(m: int, beta: float) -> float:
    """Largest eigenvalue of the two-type path-counting matrix.

    The matrix, with rows and columns ordered (old, young), is

        [[ m / (1 - beta),      m / beta ],
         [ (m - 1) / (1 - beta), m / beta ]]

    and both its trace and determinant equal m / (beta (1 - beta)), so the
    top eigenvalue is (m q + sqrt(m q (m q - 4))) / 2 with
    q = 1 / (beta (1 - beta)).  For m = 2 this reduces to
    (1 + sqrt(1 - 2 beta (1 - beta))) / (beta (1 - beta)).
    """
    if not isinstance(m, int) or m < 1:
        raise ValueError(f"m must be a positive integer, got {m!r}")
    if not 0.0 < beta < 1.0:
        raise ValueError(f"beta must lie strictly inside (0, 1), got {beta!r}")
    q = 1.0 / (beta * (1.0 - beta))
    mq = m * q
    return 0.5 * (mq + math.sqrt(mq * (mq - 4.0)))


def solve_type_recursion(
    params: ModelParams,
    tol: float = 1e-13,
    max_iter: int = 100_000,
) -> TypeRecursionSolution:
    """Solve the coupled mean-size equations for the killed two-type tree.

        x_old   = (1 + m pi x_old) (1 + m pi x_young)
        x_young = (1 + (m-1) pi x_old) (1 + m pi x_young)

    Returns the branch continuous in pi with x_old(0) = x_young(0) = 1,
    found by damped fixed-point iteration from (1, 1) (damping 0.5).  The
    iteration is monotone from below, so it converges to the smallest fixed
    point, which is the subcritical branch.  If it stalls, a bisection on
    x_old over the reduced one-dimensional equation finishes the job.
    """
    m, pi = params.m, params.pi
    if pi >= critical_threshold(m):
        raise ValueError(
            f"pi={pi} is at or above the critical threshold "
            f"{critical_threshold(m):.10g} for m={m}; "
            "no finite subcritical solution exists"
        )
    if pi == 0.0:
        return TypeRecursionSolution(1.0, 1.0)

    x_o, x_y = 1.0, 1.0
    for _ in range(max_iter):
        nx_o = (1.0 + m * pi * x_o) * (1.0 + m * pi * x_y)
        nx_y = (1.0 + (m - 1) * pi * x_o) * (1.0 + m * pi * x_y)
        dx = max(abs(nx_o - x_o), abs(nx_y - x_y))
        x_o = x_o + 0.5 * (nx_o - x_o)
        x_y = x_y + 0.5 * (nx_y - x_y)
        if dx < tol:
            break
    else:
        x_o = _bisect_old_root(m, pi, x_o)
        x_y = _young_from_old(m, pi, x_o)
    # one undamped polish step to land on the exact fixed point
    x_o, x_y = (
        (1.0 + m * pi * x_o) * (1.0 + m * pi * x_y),
        (1.0 + (m - 1) * pi * x_o) * (1.0 + m * pi * x_y),
    )
    return TypeRecursionSolution(x_o, x_y)


def _young_from_old(m: int, pi: float, x_o: float) -> float:
    """x_young eliminated from its own equation, given x_old."""
    b = 1.0 + (m - 1) * pi * x_o
    return b / (1.0 - m * pi * b)


def _residual_old(m: int, pi: float, x_o: float) -> float:
    return (1.0 + m * pi * x_o) * (1.0 + m * pi * _young_from_old(m, pi, x_o)) - x_o


def _bisect_old_root(m: int, pi: float, lo: float) -> float:
    # the residual is positive at the start of the monotone iteration and
    # negative past the subcritical root
    hi = max(2.0 * lo, 2.0)
    while _residual_old(m, pi, hi) > 0.0:
        hi *= 2.0
        if hi > 1e12:
            raise ArithmeticError("type recursion bisection failed to bracket")
    for _ in range(200):
        mid = 0.5 * (lo + hi)
        if _residual_old(m, pi, mid) > 0.0:
            lo = mid
        else:
            hi = mid
    return 0.5 * (lo + hi)


def critical_quantities(params: ModelParams) -> CriticalQuantities:
    """The m = 2 closed-form bundle at a given subcritical pi."""
    if params.m != 2:
        raise ValueError("critical_quantities is defined for m = 2 only")
    _, lam2 = drift_fixed_points(params.pi)
    return CriticalQuantities(
        pi_c=critical_threshold(2),
        alpha=growth_exponent(params),
        s2_inf=limiting_susceptibility(params.pi),
        lambda2=lam2,
    )


# ---------------------------------------------------------------------------
# identity suite

PI_GRID = tuple(round(0.01 * i, 2) for i in range(1, 15))


@dataclass(frozen=True)
class IdentityCheck:
    name: str
    max_error: float
    tolerance: float

    @property
    def passed(self) -> bool:
        return self.max_error < self.tolerance


def identity_suite(grid: tuple[float, ...] = PI_GRID) -> list[IdentityCheck]:
    """Cross-check every closed form against the others on a pi grid (m = 2).

    Each entry reports the worst absolute error over the grid and the
    tolerance it must beat.  Monotonicity checks report 0.0 on success and
    1.0 on a violated comparison.
    """
    checks: list[IdentityCheck] = []

    pi_c = critical_threshold(2)
    checks.append(
        IdentityCheck(
            "discriminant_zero_at_pi_c",
            abs(1.0 - 8.0 * pi_c * (1.0 - pi_c)),
            1e-12,
        )
    )

    err = 0.0
    for pi in grid:
        alpha = growth_exponent(ModelParams(2, pi))
        s2 = limiting_susceptibility(pi)
        err = max(err, abs(alpha - (2.0 * pi * pi * s2 + 2.0 * pi)))
    checks.append(IdentityCheck("alpha_equals_susceptibility_relation", err, 1e-12))

    err = 0.0
    sign_err = 0.0
    for pi in grid:
        lam1, lam2 = drift_fixed_points(pi)
        err = max(err, abs(drift(pi, lam1)), abs(drift(pi, lam2)))
        fprime1 = 4.0 * pi * pi * lam1 + (4.0 * pi - 1.0)
        fprime2 = 4.0 * pi * pi * lam2 + (4.0 * pi - 1.0)
        if not (fprime1 < 0.0 < fprime2 and lam1 < lam2):
            sign_err = 1.0
    checks.append(IdentityCheck("drift_zero_at_fixed_points", err, 1e-12))
    checks.append(IdentityCheck("fixed_point_stability_signs", sign_err, 0.5))

    err = 0.0
    for pi in grid:
        alpha = growth_exponent(ModelParams(2, pi))
        err = max(err, abs(pi * kernel_spectral_radius(2, alpha) - 1.0))
    checks.append(IdentityCheck("kernel_radius_inverse_at_alpha", err, 1e-9))

    err = 0.0
    for pi in grid:
        err = max(
            err,
            abs(growth_exponent(ModelParams(2, pi)) - growth_exponent_quadratic_form(pi)),
        )
    checks.append(IdentityCheck("general_m_alpha_matches_quadratic_form", err, 1e-12))

    err = 0.0
    res_err = 0.0
    for pi in grid:
        sol = solve_type_recursion(ModelParams(2, pi))
        res_err = max(
            res_err,
            abs((1.0 + 2.0 * pi * sol.x_old) * (1.0 + 2.0 * pi * sol.x_young) - sol.x_old),
            abs((1.0 + pi * sol.x_old) * (1.0 + 2.0 * pi * sol.x_young) - sol.x_young),
        )
        err = max(err, abs(sol.x_old - limiting_susceptibility(pi)))
    checks.append(IdentityCheck("type_recursion_residuals", res_err, 1e-10))
    checks.append(IdentityCheck("type_recursion_matches_susceptibility", err, 1e-10))

    mono_err = 0.0
    alphas = [growth_exponent(ModelParams(2, pi)) for pi in grid]
    s2s = [limiting_susceptibility(pi) for pi in grid]
    if any(b <= a for a, b in zip(alphas, alphas[1:])):
        mono_err = 1.0
    if any(b <= a for a, b in zip(s2s, s2s[1:])):
        mono_err = 1.0
    checks.append(IdentityCheck("alpha_and_susceptibility_monotone", mono_err, 0.5))

    return checks
