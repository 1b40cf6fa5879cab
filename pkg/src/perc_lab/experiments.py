"""Monte Carlo harness: seeded trial ensembles with CSV/JSON artifacts.

A run is specified by an :class:`EnsembleConfig`; trials are independent
growth trajectories whose seeds are derived from the base seed with the
documented splitmix64 mix, sampled at a geometric grid of checkpoints.
Trials may execute in parallel worker processes, but rows are always
reduced in (trial, checkpoint) order, so the emitted CSV bodies are
byte-identical regardless of the worker count.

File formats (column order is part of the contract):

* trajectory.csv:   trial, n, s2, s3, s4, s2_trunc_<L>..., max_size,
                    max_oldest, c1_size, rescaled_c1, rescaled_max
* rescaled_max.csv: trial, n, max_size, rescaled_max
* persistence.csv:  n, K, fraction, stderr, fixation_fraction
* summary.csv:      n, s2_mean, s2_stderr, rescaled_max_mean,
                    rescaled_max_stderr, fixation_fraction
* residuals.csv:    n, mean_abs_residual
* ccdf.csv:         k, ccdf
* mbrw.csv:         trial, root_label, size, truncated
* manifest.json:    tool_version, m, pi, alpha, pi_c, s2_inf, n_max,
                    trials, base_seed, checkpoint_ratio, L_list,
                    K_persistence, created_at

Floats in CSV use shortest round-trip decimal text; JSON values are
rounded to 10 significant digits.
"""

from __future__ import annotations

import csv
import json
import math
import os
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from datetime import datetime, timezone

import numpy as np

from . import __version__
from .analytic import (
    ModelParams,
    critical_threshold,
    growth_exponent,
    solve_type_recursion,
)
from .graph_core import init_growth, run_to, snapshot
from .rng import trial_seed

DEFAULT_CHECKPOINT_RATIO = 10.0 ** 0.25
DEFAULT_FIRST_CHECKPOINT = 100


@dataclass(frozen=True)
class EnsembleConfig:
    """One reproducible ensemble: model, scale, seeding, and output knobs."""

    params: ModelParams
    n_max: int
    trials: int
    base_seed: int
    checkpoint_ratio: float = DEFAULT_CHECKPOINT_RATIO
    first_checkpoint: int = DEFAULT_FIRST_CHECKPOINT
    l_list: tuple[int, ...] = ()
    k_persistence: tuple[int, ...] = (1, 5, 20, 100)
    output_dir: str | None = None

    def __post_init__(self):
        if self.n_max < 1:
            raise ValueError(f"n_max must be at least 1, got {self.n_max}")
        if self.trials < 1:
            raise ValueError(f"trials must be at least 1, got {self.trials}")
        if not self.checkpoint_ratio > 1.0:
            raise ValueError(
                f"checkpoint_ratio must exceed 1, got {self.checkpoint_ratio}"
            )
        if self.first_checkpoint < 1:
            raise ValueError(
                f"first_checkpoint must be at least 1, got {self.first_checkpoint}"
            )
        if any(l < 1 for l in self.l_list):
            raise ValueError(f"truncation levels must be positive, got {self.l_list}")
        if any(k < 1 for k in self.k_persistence):
            raise ValueError(f"K values must be positive, got {self.k_persistence}")


@dataclass
class TrajectoryRecord:
    """One (trial, checkpoint) row of an ensemble."""

    trial: int
    n: int
    s2: float
    s3: float
    s4: float
    s2_trunc: dict[int, float]
    max_size: int
    max_oldest: int
    c1_size: int
    rescaled_c1: float
    rescaled_max: float


@dataclass
class PersistenceRow:
    n: int
    k: int
    fraction: float
    stderr: float
    fixation_fraction: float


@dataclass
class EnsembleSummary:
    """Per-checkpoint ensemble statistics (derived from the trajectory rows)."""

    checkpoints: list[int]
    s2_mean: list[float]
    s2_stderr: list[float]
    rescaled_max_mean: list[float]
    rescaled_max_stderr: list[float]
    persistence_fraction: dict[int, list[float]] = field(default_factory=dict)
    fixation_fraction: list[float] = field(default_factory=list)


@dataclass
class ResidualReport:
    """Decay of |S2(n) - s2_inf| with a fitted rate over the last decade."""

    checkpoints: list[int]
    mean_abs_residual: list[float]
    s2_limit: float
    gamma_hat: float
    r_squared: float


def checkpoint_schedule(config: EnsembleConfig) -> list[int]:
    """Strictly increasing geometric checkpoints ending exactly at n_max."""
    pts: list[int] = []
    value = float(config.first_checkpoint)
    while True:
        v = math.ceil(value)
        if v >= config.n_max:
            break
        if not pts or v > pts[-1]:
            pts.append(v)
        value *= config.checkpoint_ratio
    pts.append(config.n_max)
    return pts


def growth_alpha(params: ModelParams) -> float:
    """Rescaling exponent; NaN when pi is supercritical for this m."""
    if params.pi <= critical_threshold(params.m):
        return growth_exponent(params)
    return math.nan


def susceptibility_limit(params: ModelParams) -> float:
    """s2_inf, i.e. the expected killed-tree size of an old root; NaN supercritically."""
    if params.pi < critical_threshold(params.m):
        return solve_type_recursion(params).x_old
    return math.nan


def _trial_records(config: EnsembleConfig, trial: int) -> list[TrajectoryRecord]:
    alpha = growth_alpha(config.params)
    state = init_growth(config.params, trial_seed(config.base_seed, trial))
    records = []
    for n_k in checkpoint_schedule(config):
        run_to(state, n_k)
        snap = snapshot(state, config.l_list)
        scale = n_k ** (-alpha) if not math.isnan(alpha) else math.nan
        records.append(
            TrajectoryRecord(
                trial=trial,
                n=n_k,
                s2=snap.s2,
                s3=snap.s3,
                s4=snap.s4,
                s2_trunc=snap.s2_trunc,
                max_size=snap.max_size,
                max_oldest=snap.max_oldest,
                c1_size=snap.c1_size,
                rescaled_c1=snap.c1_size * scale,
                rescaled_max=snap.max_size * scale,
            )
        )
    return records


def _trial_records_star(args) -> list[TrajectoryRecord]:
    return _trial_records(*args)


def run_trials(config: EnsembleConfig, threads: int = 1) -> list[TrajectoryRecord]:
    """All trajectory rows, sorted by (trial, checkpoint)."""
    if threads <= 1 or config.trials == 1:
        per_trial = [_trial_records(config, t) for t in range(config.trials)]
    else:
        jobs = [(config, t) for t in range(config.trials)]
        chunk = max(1, config.trials // (threads * 4))
        with ProcessPoolExecutor(max_workers=threads) as pool:
            per_trial = list(pool.map(_trial_records_star, jobs, chunksize=chunk))
    return [rec for rows in per_trial for rec in rows]


def summarize(config: EnsembleConfig, records: list[TrajectoryRecord]) -> EnsembleSummary:
    """Reduce trajectory rows to per-checkpoint ensemble statistics."""
    checkpoints = checkpoint_schedule(config)
    n_cp = len(checkpoints)
    trials = config.trials
    s2 = np.array([r.s2 for r in records], dtype=np.float64).reshape(trials, n_cp)
    rmx = np.array([r.rescaled_max for r in records], dtype=np.float64).reshape(
        trials, n_cp
    )
    oldest = np.array([r.max_oldest for r in records], dtype=np.int64).reshape(
        trials, n_cp
    )

    def _stderr(cols: np.ndarray) -> list[float]:
        if trials < 2:
            return [math.nan] * n_cp
        return (cols.std(axis=0, ddof=1) / math.sqrt(trials)).tolist()

    persistence = {
        int(k): (oldest <= k).mean(axis=0).tolist() for k in config.k_persistence
    }
    fixation = [math.nan, math.nan][: min(2, n_cp)]
    for j in range(2, n_cp):
        fixed = (oldest[:, j] == oldest[:, j - 1]) & (oldest[:, j - 1] == oldest[:, j - 2])
        fixation.append(float(fixed.mean()))
    return EnsembleSummary(
        checkpoints=checkpoints,
        s2_mean=s2.mean(axis=0).tolist(),
        s2_stderr=_stderr(s2),
        rescaled_max_mean=rmx.mean(axis=0).tolist(),
        rescaled_max_stderr=_stderr(rmx),
        persistence_fraction=persistence,
        fixation_fraction=fixation,
    )


def persistence_table(
    config: EnsembleConfig, summary: EnsembleSummary
) -> list[PersistenceRow]:
    """Rows (n, K) of the weak-persistence experiment, binomial errors."""
    rows = []
    trials = config.trials
    for j, n_k in enumerate(summary.checkpoints):
        for k in config.k_persistence:
            frac = summary.persistence_fraction[int(k)][j]
            stderr = math.sqrt(frac * (1.0 - frac) / trials)
            rows.append(
                PersistenceRow(
                    n=n_k,
                    k=int(k),
                    fraction=frac,
                    stderr=stderr,
                    fixation_fraction=summary.fixation_fraction[j],
                )
            )
    return rows


def residual_report(
    config: EnsembleConfig, records: list[TrajectoryRecord]
) -> ResidualReport:
    """Mean |S2 - s2_inf| per checkpoint plus a last-decade log-log rate fit."""
    checkpoints = checkpoint_schedule(config)
    s2_inf = susceptibility_limit(config.params)
    n_cp = len(checkpoints)
    s2 = np.array([r.s2 for r in records], dtype=np.float64).reshape(
        config.trials, n_cp
    )
    resid = np.abs(s2 - s2_inf).mean(axis=0)
    gamma_hat = math.nan
    r_squared = math.nan
    lo = config.n_max / 10.0
    sel = [
        j
        for j, n_k in enumerate(checkpoints)
        if n_k >= lo and resid[j] > 0.0 and not math.isnan(resid[j])
    ]
    if len(sel) >= 2:
        x = np.log(np.asarray([checkpoints[j] for j in sel], dtype=np.float64))
        y = np.log(resid[sel])
        slope, intercept = np.polyfit(x, y, 1)
        gamma_hat = -float(slope)
        fitted = slope * x + intercept
        ss_res = float(np.sum((y - fitted) ** 2))
        ss_tot = float(np.sum((y - y.mean()) ** 2))
        r_squared = 1.0 - ss_res / ss_tot if ss_tot > 0.0 else math.nan
    return ResidualReport(
        checkpoints=checkpoints,
        mean_abs_residual=resid.tolist(),
        s2_limit=s2_inf,
        gamma_hat=gamma_hat,
        r_squared=r_squared,
    )


def _tail_histogram(config: EnsembleConfig, trial: int) -> dict[int, int]:
    state = init_growth(config.params, trial_seed(config.base_seed, trial))
    run_to(state, config.n_max)
    return snapshot(state).component_size_histogram


def _tail_histogram_star(args) -> dict[int, int]:
    return _tail_histogram(*args)


def tail_ccdf(config: EnsembleConfig, threads: int = 1) -> list[tuple[int, float]]:
    """Empirical P(|C(o)| >= k) for a uniform vertex o at the final checkpoint.

    Pooled over trials.  Exploratory output: rows (k, ccdf) at each distinct
    component size; the conjectured reference slope is -1/alpha.
    """
    if threads <= 1 or config.trials == 1:
        hists = [_tail_histogram(config, t) for t in range(config.trials)]
    else:
        jobs = [(config, t) for t in range(config.trials)]
        with ProcessPoolExecutor(max_workers=threads) as pool:
            hists = list(pool.map(_tail_histogram_star, jobs))
    weight: dict[int, int] = {}
    for hist in hists:
        for size, count in hist.items():
            weight[size] = weight.get(size, 0) + size * count
    total = config.n_max * config.trials
    rows = []
    tail = sum(weight.values())
    for size in sorted(weight):
        rows.append((size, tail / total))
        tail -= weight[size]
    return rows


# ---------------------------------------------------------------------------
# artifact writers


def _fmt(value) -> str:
    if isinstance(value, float):
        return repr(value)
    return str(value)


def json_ready(value):
    """Recursively round floats to 10 significant digits for JSON output."""
    if isinstance(value, bool):
        return value
    if isinstance(value, float):
        if math.isnan(value):
            return None
        return float(f"{value:.10g}")
    if isinstance(value, dict):
        return {k: json_ready(v) for k, v in value.items()}
    if isinstance(value, (list, tuple)):
        return [json_ready(v) for v in value]
    return value


def write_manifest(config: EnsembleConfig, out_dir: str) -> str:
    params = config.params
    manifest = {
        "tool_version": __version__,
        "m": params.m,
        "pi": params.pi,
        "alpha": growth_alpha(params),
        "pi_c": critical_threshold(params.m),
        "s2_inf": susceptibility_limit(params),
        "n_max": config.n_max,
        "trials": config.trials,
        "base_seed": config.base_seed,
        "checkpoint_ratio": config.checkpoint_ratio,
        "L_list": list(config.l_list),
        "K_persistence": list(config.k_persistence),
        "created_at": datetime.now(timezone.utc).isoformat(),
    }
    path = os.path.join(out_dir, "manifest.json")
    with open(path, "w", encoding="utf-8") as fh:
        json.dump(json_ready(manifest), fh, indent=2)
        fh.write("\n")
    return path


def write_trajectory_csv(
    config: EnsembleConfig, records: list[TrajectoryRecord], out_dir: str
) -> str:
    path = os.path.join(out_dir, "trajectory.csv")
    trunc_cols = [f"s2_trunc_{l}" for l in config.l_list]
    with open(path, "w", newline="", encoding="utf-8") as fh:
        writer = csv.writer(fh)
        writer.writerow(
            ["trial", "n", "s2", "s3", "s4", *trunc_cols,
             "max_size", "max_oldest", "c1_size", "rescaled_c1", "rescaled_max"]
        )
        for r in records:
            writer.writerow(
                [r.trial, r.n, _fmt(r.s2), _fmt(r.s3), _fmt(r.s4),
                 *[_fmt(r.s2_trunc[l]) for l in config.l_list],
                 r.max_size, r.max_oldest, r.c1_size,
                 _fmt(r.rescaled_c1), _fmt(r.rescaled_max)]
            )
    return path


def write_rescaled_max_csv(records: list[TrajectoryRecord], out_dir: str) -> str:
    path = os.path.join(out_dir, "rescaled_max.csv")
    with open(path, "w", newline="", encoding="utf-8") as fh:
        writer = csv.writer(fh)
        writer.writerow(["trial", "n", "max_size", "rescaled_max"])
        for r in records:
            writer.writerow([r.trial, r.n, r.max_size, _fmt(r.rescaled_max)])
    return path


def write_summary_csv(summary: EnsembleSummary, out_dir: str) -> str:
    path = os.path.join(out_dir, "summary.csv")
    with open(path, "w", newline="", encoding="utf-8") as fh:
        writer = csv.writer(fh)
        writer.writerow(
            ["n", "s2_mean", "s2_stderr", "rescaled_max_mean",
             "rescaled_max_stderr", "fixation_fraction"]
        )
        for j, n_k in enumerate(summary.checkpoints):
            writer.writerow(
                [n_k, _fmt(summary.s2_mean[j]), _fmt(summary.s2_stderr[j]),
                 _fmt(summary.rescaled_max_mean[j]),
                 _fmt(summary.rescaled_max_stderr[j]),
                 _fmt(summary.fixation_fraction[j])]
            )
    return path


def write_persistence_csv(rows: list[PersistenceRow], out_dir: str) -> str:
    path = os.path.join(out_dir, "persistence.csv")
    with open(path, "w", newline="", encoding="utf-8") as fh:
        writer = csv.writer(fh)
        writer.writerow(["n", "K", "fraction", "stderr", "fixation_fraction"])
        for r in rows:
            writer.writerow(
                [r.n, r.k, _fmt(r.fraction), _fmt(r.stderr),
                 _fmt(r.fixation_fraction)]
            )
    return path


def write_residuals_csv(report: ResidualReport, out_dir: str) -> str:
    path = os.path.join(out_dir, "residuals.csv")
    with open(path, "w", newline="", encoding="utf-8") as fh:
        writer = csv.writer(fh)
        writer.writerow(["n", "mean_abs_residual"])
        for n_k, resid in zip(report.checkpoints, report.mean_abs_residual):
            writer.writerow([n_k, _fmt(resid)])
    return path


def write_ccdf_csv(rows: list[tuple[int, float]], out_dir: str) -> str:
    path = os.path.join(out_dir, "ccdf.csv")
    with open(path, "w", newline="", encoding="utf-8") as fh:
        writer = csv.writer(fh)
        writer.writerow(["k", "ccdf"])
        for k, val in rows:
            writer.writerow([k, _fmt(val)])
    return path


def write_mbrw_csv(results, out_dir: str) -> str:
    """Per-tree rows (trial, root_label, size, truncated)."""
    path = os.path.join(out_dir, "mbrw.csv")
    with open(path, "w", newline="", encoding="utf-8") as fh:
        writer = csv.writer(fh)
        writer.writerow(["trial", "root_label", "size", "truncated"])
        for trial, label, res in results:
            writer.writerow([trial, label, res.size, int(res.truncated)])
    return path


# ---------------------------------------------------------------------------
# top-level experiment entry points


def run_ensemble(config: EnsembleConfig, threads: int = 1) -> EnsembleSummary:
    """Run the ensemble; write trajectory/summary/rescaled_max/manifest if
    an output directory is configured."""
    records = run_trials(config, threads=threads)
    summary = summarize(config, records)
    if config.output_dir is not None:
        os.makedirs(config.output_dir, exist_ok=True)
        write_trajectory_csv(config, records, config.output_dir)
        write_rescaled_max_csv(records, config.output_dir)
        write_summary_csv(summary, config.output_dir)
        write_manifest(config, config.output_dir)
    return summary


def persistence_experiment(
    config: EnsembleConfig, threads: int = 1
) -> list[PersistenceRow]:
    """Weak-persistence table; writes persistence.csv when output_dir is set."""
    records = run_trials(config, threads=threads)
    rows = persistence_table(config, summarize(config, records))
    if config.output_dir is not None:
        os.makedirs(config.output_dir, exist_ok=True)
        write_persistence_csv(rows, config.output_dir)
        write_manifest(config, config.output_dir)
    return rows


def susceptibility_residuals(
    config: EnsembleConfig, threads: int = 1
) -> ResidualReport:
    """Residual decay table; writes residuals.csv when output_dir is set."""
    records = run_trials(config, threads=threads)
    report = residual_report(config, records)
    if config.output_dir is not None:
        os.makedirs(config.output_dir, exist_ok=True)
        write_residuals_csv(report, config.output_dir)
        write_manifest(config, config.output_dir)
    return report


def tail_experiment(
    config: EnsembleConfig, threads: int = 1
) -> list[tuple[int, float]]:
    """Exploratory component-size CCDF; writes ccdf.csv when output_dir is set."""
    rows = tail_ccdf(config, threads=threads)
    if config.output_dir is not None:
        os.makedirs(config.output_dir, exist_ok=True)
        write_ccdf_csv(rows, config.output_dir)
        write_manifest(config, config.output_dir)
    return rows
