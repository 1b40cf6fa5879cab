"""Dynamically percolated uniform-attachment growth engine.

The engine never stores edges: component structure is all that matters, so
the state is a union-find forest over vertex labels 1..n augmented with the
component size and the oldest (smallest) member label at each root, plus
streaming integer accumulators for the power sums p_k = sum |C|^k over
components (k = 2, 3, 4).  Sizes are merged incrementally: attaching vertex
n+1 to components with distinct root sizes a_1..a_j updates

    p_k += (a_1 + ... + a_j + 1)**k - sum a_i**k.

Randomness contract (fixed so runs are bit-reproducible): the generator is
PCG64 seeded via :func:`perc_lab.rng.pcg64`, and every growth step consumes
exactly 2 m uniforms laid out (retention_1, target_1, ..., retention_m,
target_m).  Edge e is retained iff retention_e < pi, and its target is
1 + floor(target_e * n) over the n pre-step vertices; target uniforms are
consumed whether or not the edge survives, which keeps the stream position
a pure function of the step count.  ``run_to`` draws the same stream in
bulk, so stepping one at a time or in chunks yields identical states.

Power sums are plain Python integers, which are exact at any magnitude, so
the accumulators can never overflow or round.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .analytic import ModelParams
from .rng import pcg64

_CHUNK = 8192
_SMALL_BATCH = 128  # below this, scalar paths beat numpy fixed costs
_SMALL_SCAN = 512


@dataclass
class StepOutcome:
    """What one growth step did: the new vertex, surviving edges, merges."""

    new_vertex: int
    retained_edges: int
    targets: list[int]
    merged_roots: list[int]


@dataclass
class ComponentSnapshot:
    """Component statistics of the graph at one moment."""

    n: int
    s2: float
    s3: float
    s4: float
    s2_trunc: dict[int, float]
    max_size: int
    max_oldest: int
    c1_size: int
    component_size_histogram: dict[int, int] = field(repr=False, default_factory=dict)


class GrowthState:
    """Mutable growth state: forest, accumulators, and a private generator.

    Confine each instance to one thread/process; distinct instances are
    fully independent.
    """

    __slots__ = (
        "params", "seed", "n", "p2", "p3", "p4", "component_count",
        "_rng", "_parent", "_size", "_oldest", "_capacity",
    )

    def __init__(self, params: ModelParams, seed: int):
        self.params = params
        self.seed = seed
        self._rng = pcg64(seed)
        self.n = 1
        self.p2 = 1
        self.p3 = 1
        self.p4 = 1
        self.component_count = 1
        self._capacity = 16
        # index 0 unused; labels are 1-based
        self._parent = list(range(self._capacity))
        self._size = [1] * self._capacity
        self._oldest = list(range(self._capacity))

    def _ensure_capacity(self, labels: int) -> None:
        need = labels + 1
        if need <= self._capacity:
            return
        cap = max(need, 2 * self._capacity)
        self._parent.extend(range(self._capacity, cap))
        self._size.extend([1] * (cap - self._capacity))
        self._oldest.extend(range(self._capacity, cap))
        self._capacity = cap

    def find(self, v: int) -> int:
        """Root label of v's component (path-halving compression)."""
        if not 1 <= v <= self.n:
            raise ValueError(f"vertex {v} not in [1, {self.n}]")
        parent = self._parent
        while parent[v] != v:
            parent[v] = parent[parent[v]]
            v = parent[v]
        return v

    def c1_size(self) -> int:
        """Size of the component containing vertex 1."""
        return self._size[self.find(1)]

    def component_sizes(self) -> np.ndarray:
        """Sizes of all current components (root scan, unordered)."""
        n = self.n
        par = np.asarray(self._parent[1 : n + 1], dtype=np.int64)
        mask = par == np.arange(1, n + 1, dtype=np.int64)
        return np.asarray(self._size[1 : n + 1], dtype=np.int64)[mask]


def init_growth(params: ModelParams, seed: int) -> GrowthState:
    """Fresh state: the one-vertex graph {1} with no edges."""
    return GrowthState(params, seed)


def _merge_new_vertex(state: GrowthState, newv: int, roots: list[int]) -> None:
    """Attach vertex ``newv`` to the distinct component roots ``roots``."""
    size = state._size
    if not roots:
        state.p2 += 1
        state.p3 += 1
        state.p4 += 1
        state.component_count += 1
        return
    parent = state._parent
    oldest = state._oldest
    total = 1
    sum2 = 0
    sum3 = 0
    sum4 = 0
    head = roots[0]
    head_size = size[head]
    old = oldest[head]
    for r in roots:
        a = size[r]
        total += a
        sum2 += a * a
        sum3 += a * a * a
        sum4 += a * a * a * a
        if a > head_size:
            head, head_size = r, a
        if oldest[r] < old:
            old = oldest[r]
    for r in roots:
        parent[r] = head
    parent[newv] = head
    size[head] = total
    oldest[head] = old
    state.p2 += total * total - sum2
    state.p3 += total * total * total - sum3
    state.p4 += total * total * total * total - sum4
    state.component_count += 1 - len(roots)


def _step_from_row(state: GrowthState, row: list[float], want_outcome: bool):
    """Advance one vertex using a pre-drawn row of 2 m uniforms."""
    pi = state.params.pi
    m = state.params.m
    n = state.n
    newv = n + 1
    state._ensure_capacity(newv)
    targets: list[int] = []
    roots: list[int] = []
    for e in range(m):
        if row[2 * e] < pi:
            t = int(row[2 * e + 1] * n) + 1
            if t > n:  # guard the measure-zero float rounding at u -> 1
                t = n
            targets.append(t)
            r = state.find(t)
            if r not in roots:
                roots.append(r)
    _merge_new_vertex(state, newv, roots)
    state.n = newv
    if want_outcome:
        return StepOutcome(
            new_vertex=newv,
            retained_edges=len(targets),
            targets=targets,
            merged_roots=roots,
        )
    return None


def grow_step(state: GrowthState) -> StepOutcome:
    """Add one vertex with its percolated edges; report what happened."""
    row = state._rng.random(2 * state.params.m).tolist()
    return _step_from_row(state, row, want_outcome=True)


def run_to(state: GrowthState, n_target: int) -> GrowthState:
    """Grow the graph to ``n_target`` vertices (bulk path, same stream)."""
    if n_target < state.n:
        raise ValueError(f"n_target={n_target} is below the current n={state.n}")
    m = state.params.m
    pi = state.params.pi
    state._ensure_capacity(n_target)
    size = state._size
    parent = state._parent
    oldest = state._oldest
    while state.n < n_target:
        c = min(_CHUNK, n_target - state.n)
        n0 = state.n
        if c < _SMALL_BATCH:
            # numpy fixed costs dominate tiny batches; same stream, scalar path
            rows = state._rng.random(2 * m * c).reshape(c, 2 * m).tolist()
            for row in rows:
                _step_from_row(state, row, want_outcome=False)
            continue
        u = state._rng.random(2 * m * c).reshape(c, 2 * m)
        retained = u[:, 0::2] < pi
        kvec = retained.sum(axis=1)
        active = np.flatnonzero(kvec)
        singles = c - len(active)
        state.p2 += singles
        state.p3 += singles
        state.p4 += singles
        state.component_count += singles
        if len(active):
            nvec = (n0 + active).astype(np.float64)
            tgt = (u[np.ix_(active, range(1, 2 * m, 2))] * nvec[:, None]).astype(
                np.int64
            )
            np.minimum(tgt, (n0 + active - 1)[:, None], out=tgt)
            ret_rows = retained[active].tolist()
            tgt_rows = (tgt + 1).tolist()
            act_rows = active.tolist()
            for idx in range(len(act_rows)):
                newv = n0 + act_rows[idx] + 1
                ret_row = ret_rows[idx]
                tgt_row = tgt_rows[idx]
                roots: list[int] = []
                for e in range(m):
                    if ret_row[e]:
                        t = tgt_row[e]
                        while parent[t] != t:
                            parent[t] = parent[parent[t]]
                            t = parent[t]
                        if t not in roots:
                            roots.append(t)
                # inline merge accounting (hot loop)
                total = 1
                sum2 = 0
                sum3 = 0
                sum4 = 0
                head = roots[0]
                head_size = size[head]
                old = oldest[head]
                for r in roots:
                    a = size[r]
                    total += a
                    sum2 += a * a
                    sum3 += a * a * a
                    sum4 += a * a * a * a
                    if a > head_size:
                        head, head_size = r, a
                    if oldest[r] < old:
                        old = oldest[r]
                for r in roots:
                    parent[r] = head
                parent[newv] = head
                size[head] = total
                oldest[head] = old
                state.p2 += total * total - sum2
                state.p3 += total * total * total - sum3
                state.p4 += total * total * total * total - sum4
                state.component_count += 1 - len(roots)
        state.n = n0 + c
    return state


def grow_with_paths(
    params: ModelParams, seed: int, n_target: int
) -> tuple[GrowthState, np.ndarray, np.ndarray]:
    """Grow to ``n_target`` recording per-vertex S2 and |C_1| paths.

    Returns (state, s2_path, c1_path) where s2_path[k] and c1_path[k] are
    the values just after vertex k+1 arrived (index 0 is the initial
    one-vertex graph).  Same randomness contract as ``run_to``.
    """
    state = init_growth(params, seed)
    s2_path = np.empty(n_target, dtype=np.float64)
    c1_path = np.empty(n_target, dtype=np.int64)
    s2_path[0] = 1.0
    c1_path[0] = 1
    m = params.m
    while state.n < n_target:
        c = min(_CHUNK, n_target - state.n)
        rows = state._rng.random(2 * m * c).reshape(c, 2 * m).tolist()
        base = state.n
        for j, row in enumerate(rows):
            _step_from_row(state, row, want_outcome=False)
            s2_path[base + j] = state.p2 / state.n
            c1_path[base + j] = state._size[state.find(1)]
    return state, s2_path, c1_path


def _truncated_and_histogram(
    sizes: np.ndarray, n: int, l_list: tuple[int, ...]
) -> tuple[dict[int, float], dict[int, int]]:
    s2_trunc = {}
    for level in l_list:
        kept = sizes[sizes <= level]
        s2_trunc[int(level)] = float(np.sum(kept * kept)) / n
    uniq, counts = np.unique(sizes, return_counts=True)
    hist = {int(s): int(c) for s, c in zip(uniq, counts)}
    return s2_trunc, hist


def _scan_roots(n: int, parent: list[int], size: list[int], oldest: list[int]):
    """(sizes, olds) across roots; pure-Python lists below the numpy payoff."""
    if n < _SMALL_SCAN:
        sizes = []
        olds = []
        for v in range(1, n + 1):
            if parent[v] == v:
                sizes.append(size[v])
                olds.append(oldest[v])
        return sizes, olds
    par = np.asarray(parent[1 : n + 1], dtype=np.int64)
    mask = par == np.arange(1, n + 1, dtype=np.int64)
    return (
        np.asarray(size[1 : n + 1], dtype=np.int64)[mask],
        np.asarray(oldest[1 : n + 1], dtype=np.int64)[mask],
    )


def _scan_stats(sizes, olds, n: int, l_list: tuple[int, ...]):
    """(max_size, max_oldest, s2_trunc, histogram) from a root scan."""
    if isinstance(sizes, list):
        max_size = max(sizes)
        max_oldest = min(o for s, o in zip(sizes, olds) if s == max_size)
        s2_trunc = {
            int(level): sum(s * s for s in sizes if s <= level) / n
            for level in l_list
        }
        hist: dict[int, int] = {}
        for s in sizes:
            hist[s] = hist.get(s, 0) + 1
        return max_size, max_oldest, s2_trunc, dict(sorted(hist.items()))
    max_size = int(sizes.max())
    max_oldest = int(olds[sizes == max_size].min())
    s2_trunc, hist = _truncated_and_histogram(sizes, n, l_list)
    return max_size, max_oldest, s2_trunc, hist


def snapshot(state: GrowthState, l_list: tuple[int, ...] = ()) -> ComponentSnapshot:
    """Component statistics at the current n (O(n) root scan)."""
    n = state.n
    sizes, olds = _scan_roots(n, state._parent, state._size, state._oldest)
    max_size, max_oldest, s2_trunc, hist = _scan_stats(sizes, olds, n, l_list)
    return ComponentSnapshot(
        n=n,
        s2=state.p2 / n,
        s3=state.p3 / n,
        s4=state.p4 / n,
        s2_trunc=s2_trunc,
        max_size=max_size,
        max_oldest=max_oldest,
        c1_size=state.c1_size(),
        component_size_histogram=hist,
    )


def power_sums_from_scratch(state: GrowthState) -> tuple[int, int, int]:
    """Recompute (p2, p3, p4) by scanning the forest; exact integers."""
    p2 = p3 = p4 = 0
    for s in state.component_sizes().tolist():
        p2 += s * s
        p3 += s * s * s
        p4 += s * s * s * s
    return p2, p3, p4


def static_percolated_graph(
    params: ModelParams, n: int, seed: int, l_list: tuple[int, ...] = ()
) -> ComponentSnapshot:
    """Build the static construction and return its component snapshot.

    Every vertex v >= 2 draws m uniform targets among [v-1] (the full
    uniform-attachment multigraph), then each edge is kept independently
    with probability pi.  Distributionally identical to growing with
    ``run_to``; the draw order is all m target uniforms for v = 2..n
    (row-major), then all m retention uniforms in the same layout.
    """
    if n < 1:
        raise ValueError(f"n must be at least 1, got {n}")
    rng = pcg64(seed)
    parent = list(range(n + 1))
    size = [1] * (n + 1)
    oldest = list(range(n + 1))

    def find(v: int) -> int:
        while parent[v] != v:
            parent[v] = parent[parent[v]]
            v = parent[v]
        return v

    if n > 1:
        m = params.m
        if n < _SMALL_BATCH:
            u_tgt = rng.random((n - 1) * m).tolist()
            u_ret = rng.random((n - 1) * m).tolist()
            pi = params.pi
            pos = 0
            for v in range(2, n + 1):
                rv = v
                for _ in range(m):
                    if u_ret[pos] < pi:
                        t = int(u_tgt[pos] * (v - 1)) + 1
                        if t >= v:
                            t = v - 1
                        rt = find(t)
                        rv = find(rv)
                        if rt != rv:
                            if size[rt] < size[rv]:
                                rv, rt = rt, rv
                            parent[rv] = rt
                            size[rt] += size[rv]
                            if oldest[rv] < oldest[rt]:
                                oldest[rt] = oldest[rv]
                            rv = rt
                    pos += 1
        else:
            u_tgt = rng.random((n - 1) * m).reshape(n - 1, m)
            u_ret = rng.random((n - 1) * m).reshape(n - 1, m)
            scale = np.arange(1, n, dtype=np.float64)
            tgt = (u_tgt * scale[:, None]).astype(np.int64)
            np.minimum(tgt, np.arange(0, n - 1, dtype=np.int64)[:, None], out=tgt)
            tgt += 1
            kept = u_ret < params.pi
            rows = np.flatnonzero(kept.any(axis=1))
            kept_rows = kept[rows].tolist()
            tgt_rows = tgt[rows].tolist()
            for v_idx, krow, trow in zip(rows.tolist(), kept_rows, tgt_rows):
                v = v_idx + 2
                rv = find(v)
                for e in range(m):
                    if krow[e]:
                        rt = find(trow[e])
                        if rt == rv:
                            continue
                        if size[rt] < size[rv]:
                            rv, rt = rt, rv
                        # rt is now the larger root; absorb rv
                        parent[rv] = rt
                        size[rt] += size[rv]
                        if oldest[rv] < oldest[rt]:
                            oldest[rt] = oldest[rv]
                        rv = rt

    sizes, olds = _scan_roots(n, parent, size, oldest)
    if isinstance(sizes, list):
        p2 = sum(s * s for s in sizes)
        p3 = sum(s * s * s for s in sizes)
        p4 = sum(s * s * s * s for s in sizes)
    else:
        sizes_list = sizes.tolist()
        p2 = sum(s * s for s in sizes_list)
        p3 = sum(s * s * s for s in sizes_list)
        p4 = sum(s * s * s * s for s in sizes_list)
    max_size, max_oldest, s2_trunc, hist = _scan_stats(sizes, olds, n, l_list)
    return ComponentSnapshot(
        n=n,
        s2=p2 / n,
        s3=p3 / n,
        s4=p4 / n,
        s2_trunc=s2_trunc,
        max_size=max_size,
        max_oldest=max_oldest,
        c1_size=size[find(1)],
        component_size_histogram=hist,
    )
