"""Exact enumeration of the dynamically percolated growth chain for tiny n.

Each arriving vertex i+1 (with m = 2 edges and i existing vertices) lands in
one of 1 + i + i^2 weighted configurations:

* no retained edges,          weight (1 - pi)^2
* one retained edge to t,     weight 2 pi (1 - pi) / i   for each t in [i]
* two retained edges (t1,t2), weight pi^2 / i^2          for each ordered pair

Propagating these weights over set partitions of [n] gives the exact law of
the component structure, from which expected susceptibilities and per-vertex
component-size distributions follow.  The state space is the set partitions
of [n] (203 at n = 6), so this is instantaneous, but it is the one piece of
ground truth the Monte Carlo engines are validated against.
"""

from __future__ import annotations

from .analytic import ModelParams

MAX_ORACLE_N = 6

Partition = tuple[tuple[int, ...], ...]


def _check_supported(params: ModelParams, n: int) -> None:
    if params.m != 2:
        raise ValueError(f"exact enumeration supports m = 2 only, got m={params.m}")
    if not 1 <= n <= MAX_ORACLE_N:
        raise ValueError(f"n must lie in [1, {MAX_ORACLE_N}], got {n}")


def _canonical(blocks: list[list[int]]) -> Partition:
    return tuple(sorted((tuple(sorted(b)) for b in blocks), key=lambda b: b[0]))


def enumerate_outcomes(params: ModelParams, n: int) -> dict[Partition, float]:
    """Exact law of the partition of [n] into components, as {partition: prob}."""
    _check_supported(params, n)
    pi = params.pi
    states: dict[Partition, float] = {((1,),): 1.0}
    for i in range(1, n):
        new = i + 1
        p_none = (1.0 - pi) ** 2
        p_one = 2.0 * pi * (1.0 - pi) / i
        p_two = pi * pi / (i * i)
        nxt: dict[Partition, float] = {}
        for part, prob in states.items():
            if p_none > 0.0:
                key = _canonical([list(b) for b in part] + [[new]])
                nxt[key] = nxt.get(key, 0.0) + prob * p_none
            for t1 in range(1, new):
                if p_one > 0.0:
                    key = _merge_into(part, new, (t1,))
                    nxt[key] = nxt.get(key, 0.0) + prob * p_one
                if p_two > 0.0:
                    for t2 in range(1, new):
                        key = _merge_into(part, new, (t1, t2))
                        nxt[key] = nxt.get(key, 0.0) + prob * p_two
        states = nxt
    return states


def _merge_into(part: Partition, new: int, targets: tuple[int, ...]) -> Partition:
    blocks = [list(b) for b in part]
    hit = [b for b in blocks if any(t in b for t in targets)]
    rest = [b for b in blocks if not any(t in b for t in targets)]
    merged = [v for b in hit for v in b] + [new]
    return _canonical(rest + [merged])


def exact_expected_susceptibilities(params: ModelParams, n: int) -> tuple[float, float]:
    """Exact (E[S2(n)], E[S3(n)]) with S_k = (1/n) sum over components |C|^k."""
    states = enumerate_outcomes(params, n)
    e_s2 = 0.0
    e_s3 = 0.0
    for part, prob in states.items():
        e_s2 += prob * sum(len(b) ** 2 for b in part) / n
        e_s3 += prob * sum(len(b) ** 3 for b in part) / n
    return e_s2, e_s3


def exact_root_component_distribution(
    params: ModelParams, n: int, v: int
) -> dict[int, float]:
    """Exact law of the size of the component containing vertex ``v`` at time n."""
    _check_supported(params, n)
    if not 1 <= v <= n:
        raise ValueError(f"vertex v must lie in [1, {n}], got {v}")
    pmf: dict[int, float] = {}
    for part, prob in enumerate_outcomes(params, n).items():
        size = next(len(b) for b in part if v in b)
        pmf[size] = pmf.get(size, 0.0) + prob
    return dict(sorted(pmf.items()))
