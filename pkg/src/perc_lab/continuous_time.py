"""Continuous-time embedding: Yule arrival clock and martingale diagnostic.

The discrete growth chain embeds into continuous time by letting vertex
arrivals follow a rate-one pure-birth clock: vertex 1 arrives at time 0 and
the gap between arrivals i and i+1 is Exp(i).  The clock is sampled
independently of the graph trajectory and attached afterwards; the embedding
randomness lives entirely in the clock, so one clock can be reused across
diagnostics.

The diagnostic process is M(T_k) = |C_1(k)| * exp(-Lambda(T_k)) where
Lambda integrates the rate w(u) = 2 pi^2 S2(u) + 2 pi, piecewise constant
between arrivals.  Ensemble means of M should not increase along the clock.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .analytic import critical_threshold, growth_exponent, ModelParams
from .rng import pcg64


@dataclass
class YuleClock:
    """Arrival times T_1..T_n with T_1 = 0, strictly increasing."""

    times: np.ndarray

    def __len__(self) -> int:
        return len(self.times)


@dataclass
class MartingaleTrace:
    """Per-arrival diagnostic path along a Yule clock."""

    times: np.ndarray
    w: np.ndarray
    integrated_rate: np.ndarray
    martingale: np.ndarray
    rescaled: np.ndarray


def sample_arrival_times(n: int, seed: int) -> YuleClock:
    """Sample T_i = sum_{j<i} E_j / j (E_j iid standard exponential)."""
    if n < 1:
        raise ValueError(f"n must be at least 1, got {n}")
    times = np.zeros(n, dtype=np.float64)
    if n > 1:
        rng = pcg64(seed)
        gaps = rng.standard_exponential(n - 1) / np.arange(1, n, dtype=np.float64)
        np.cumsum(gaps, out=times[1:])
    return YuleClock(times=times)


def martingale_trace(
    s2_path: np.ndarray,
    c1_path: np.ndarray,
    clock: YuleClock,
    pi: float,
) -> MartingaleTrace:
    """Evaluate the diagnostic M along a clock attached to a growth path.

    ``s2_path[k]`` and ``c1_path[k]`` are the second susceptibility and the
    size of vertex 1's component when k+1 vertices are present (as produced
    by :func:`perc_lab.graph_core.grow_with_paths`).  The rescaled column is
    exp(-alpha * T_k) * |C_1(k)| when pi is subcritical for m = 2, NaN
    otherwise.
    """
    s2 = np.asarray(s2_path, dtype=np.float64)
    c1 = np.asarray(c1_path, dtype=np.float64)
    t = clock.times
    if not len(s2) == len(c1) == len(t):
        raise ValueError(
            f"path/clock length mismatch: s2 {len(s2)}, c1 {len(c1)}, clock {len(t)}"
        )
    w = 2.0 * pi * pi * s2 + 2.0 * pi
    lam = np.zeros_like(t)
    if len(t) > 1:
        np.cumsum(np.diff(t) * w[:-1], out=lam[1:])
    m_values = c1 * np.exp(-lam)
    if pi <= critical_threshold(2):
        alpha = growth_exponent(ModelParams(2, pi))
        rescaled = c1 * np.exp(-alpha * t)
    else:
        rescaled = np.full_like(t, math.nan)
    return MartingaleTrace(
        times=t, w=w, integrated_rate=lam, martingale=m_values, rescaled=rescaled
    )
