"""Deterministic seeding utilities shared by all stochastic modules.

Two generators are used in this package, both fixed and documented so that
every run is bit-reproducible from a single 64-bit seed:

* numpy's PCG64 drives the bulk simulations (graph growth, static
  construction, Yule clocks).  Its 128-bit internal state and stream
  increment are expanded from the 64-bit seed with four rounds of the
  splitmix64 sequence, which is much cheaper than SeedSequence and equally
  well mixed.
* a pure-Python splitmix64 stream drives the branching-random-walk trees,
  where millions of tiny independent generators are needed and generator
  construction cost dominates.

Per-trial seeds are derived from (base_seed, trial) with ``trial_seed``,
the splitmix64 output at position ``trial + 1`` of the stream started at
``base_seed``.
"""

from __future__ import annotations

import math

import numpy as np

_MASK64 = (1 << 64) - 1
_GOLDEN = 0x9E3779B97F4A7C15
_MIX1 = 0xBF58476D1CE4E5B9
_MIX2 = 0x94D049BB133111EB


def mix64(x: int) -> int:
    """splitmix64 finalizer: a 64-bit avalanche of ``x``."""
    x &= _MASK64
    x = ((x ^ (x >> 30)) * _MIX1) & _MASK64
    x = ((x ^ (x >> 27)) * _MIX2) & _MASK64
    return x ^ (x >> 31)


def trial_seed(base_seed: int, trial: int) -> int:
    """Seed for independent trial ``trial`` derived from ``base_seed``."""
    if trial < 0:
        raise ValueError(f"trial must be non-negative, got {trial}")
    return mix64((base_seed + (trial + 1) * _GOLDEN) & _MASK64)


def pcg64(seed: int) -> np.random.Generator:
    """PCG64 generator whose full state is expanded from a 64-bit seed."""
    words = []
    s = seed & _MASK64
    for _ in range(4):
        s = (s + _GOLDEN) & _MASK64
        words.append(mix64(s))
    bitgen = np.random.PCG64(0)  # placeholder seeding; state injected below
    bitgen.state = {
        "bit_generator": "PCG64",
        "state": {
            "state": (words[0] << 64) | words[1],
            "inc": (words[2] << 64) | words[3],
        },
        "has_uint32": 0,
        "uinteger": 0,
    }
    return np.random.Generator(bitgen)


class SplitMix64:
    """Minimal scalar RNG: splitmix64 stream with uniform/exponential draws."""

    __slots__ = ("state",)

    def __init__(self, seed: int):
        self.state = seed & _MASK64

    def next_u64(self) -> int:
        self.state = (self.state + _GOLDEN) & _MASK64
        z = self.state
        z = ((z ^ (z >> 30)) * _MIX1) & _MASK64
        z = ((z ^ (z >> 27)) * _MIX2) & _MASK64
        return z ^ (z >> 31)

    def random(self) -> float:
        """Uniform in [0, 1) with 53 bits of precision."""
        return (self.next_u64() >> 11) * 1.1102230246251565e-16  # 2**-53

    def expovariate(self) -> float:
        """Standard exponential (mean 1)."""
        return -math.log1p(-self.random())
