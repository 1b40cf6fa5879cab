"""Killed two-type branching random walk: the local limit of a component.

Particles live on the real line and carry a label, old ("O") or young ("Y").
One barrier height A ~ Exp(1) is drawn per tree and shared by every
particle; in the shifted construction used here the root starts at -A and
any particle whose location exceeds 0 is killed.  A particle at location a
produces:

* young children at locations a + g_1, a + g_1 + g_2, ... with iid
  Exp(m pi) gaps, stopping at the first location past the barrier (younger
  children are farther out, so the rest are killed too);
* Bin(m, pi) old children if its own label is O, Bin(m-1, pi) if Y, each
  displaced to a - Exp(1).  Old children move down and can never be killed.

The expected tree size started from an O (resp. Y) root equals the x_old
(resp. x_young) solution of the type recursion, which for m = 2 and an O
root is the limiting second susceptibility.  That bridge is the headline
Monte Carlo check of this module.

Exploration is an explicit-stack DFS capped at ``node_cap`` nodes; hitting
the cap flags the result as truncated rather than raising, so heavy-tail
bias stays visible in estimates.  Randomness is a splitmix64 stream per
tree (cheap to construct for millions of independent trees); trial t of an
estimate uses the documented mix ``trial_seed(base_seed, t)``.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import NamedTuple

import math

from .analytic import ModelParams
from .rng import SplitMix64, trial_seed

_ROOT_LABELS = ("O", "Y")


@dataclass(frozen=True)
class MbrwConfig:
    """Tree-simulation knobs: model params and the node budget."""

    params: ModelParams
    node_cap: int = 10_000_000

    def __post_init__(self):
        if self.node_cap < 1:
            raise ValueError(f"node_cap must be at least 1, got {self.node_cap}")


@dataclass(frozen=True)
class MbrwResult:
    """Outcome of one simulated tree."""

    size: int
    o_count: int
    y_count: int
    truncated: bool


class MbrwEstimate(NamedTuple):
    mean: float
    stderr: float
    truncation_rate: float


def simulate_tree(config: MbrwConfig, root_label: str, seed: int) -> MbrwResult:
    """Simulate one killed tree; counts include the root."""
    if root_label not in _ROOT_LABELS:
        raise ValueError(f"root_label must be 'O' or 'Y', got {root_label!r}")
    m = config.params.m
    pi = config.params.pi
    cap = config.node_cap
    rng = SplitMix64(seed)
    barrier_gap = -math.log1p(-rng.random())  # A ~ Exp(1)
    stack = [(-barrier_gap, root_label == "O")]
    size = 0
    o_count = 0
    y_count = 0
    truncated = False
    rate = m * pi
    while stack:
        loc, is_old = stack.pop()
        size += 1
        if size > 1:
            if is_old:
                o_count += 1
            else:
                y_count += 1
        if size >= cap:
            truncated = True
            break
        if pi == 0.0:
            continue
        # old children: Bin(m or m-1, pi), each displaced downward
        n_attempts = m if is_old else m - 1
        for _ in range(n_attempts):
            if rng.random() < pi:
                stack.append((loc + math.log1p(-rng.random()), True))
        # young children: climb by Exp(m pi) gaps until past the barrier
        pos = loc
        while True:
            pos -= math.log1p(-rng.random()) / rate
            if pos > 0.0:
                break
            stack.append((pos, False))
    return MbrwResult(size=size, o_count=o_count, y_count=y_count, truncated=truncated)


def estimate_mean_size(
    config: MbrwConfig, root_label: str, trials: int, seed: int
) -> MbrwEstimate:
    """Sample mean and standard error of tree size over independent trees."""
    if trials < 2:
        raise ValueError(f"trials must be at least 2, got {trials}")
    total = 0
    total_sq = 0
    n_trunc = 0
    for t in range(trials):
        res = simulate_tree(config, root_label, trial_seed(seed, t))
        total += res.size
        total_sq += res.size * res.size
        if res.truncated:
            n_trunc += 1
    mean = total / trials
    var = (total_sq - trials * mean * mean) / (trials - 1)
    stderr = math.sqrt(max(var, 0.0) / trials)
    return MbrwEstimate(mean=mean, stderr=stderr, truncation_rate=n_trunc / trials)
