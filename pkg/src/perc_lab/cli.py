"""perc-lab command line: every module behind one reproducible entry point.

Subcommands: analytic, grow, ensemble, mbrw, oracle, persistence,
residuals, tail, validate.  Runs that write files (--out DIR) always write
manifest.json alongside; without --out, results go to stdout as JSON with
10-significant-digit floats.

Exit codes: 0 success, 1 flag/validation error (message names the flag),
2 runtime failure (I/O and similar).
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from datetime import datetime, timezone

from . import __version__
from .analytic import (
    ModelParams,
    critical_threshold,
    drift,
    drift_fixed_points,
    growth_exponent,
    identity_suite,
    limiting_susceptibility,
    solve_type_recursion,
)
from .experiments import (
    EnsembleConfig,
    json_ready,
    persistence_experiment,
    run_ensemble,
    susceptibility_limit,
    growth_alpha,
    susceptibility_residuals,
    tail_experiment,
    write_mbrw_csv,
)
from .graph_core import init_growth, run_to, snapshot
from .mbrw import MbrwConfig, estimate_mean_size, simulate_tree
from .oracle import exact_expected_susceptibilities, exact_root_component_distribution
from .rng import trial_seed


class _Parser(argparse.ArgumentParser):
    """argparse, but flag errors exit 1 with usage on stderr."""

    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(1, f"{self.prog}: error: {message}\n")


def _emit(payload) -> None:
    print(json.dumps(json_ready(payload), indent=2))


def _model(args) -> ModelParams:
    try:
        return ModelParams(args.m, args.pi)
    except ValueError as exc:
        raise _FlagError(f"--m/--pi: {exc}") from exc


class _FlagError(ValueError):
    pass


def _require_subcritical(params: ModelParams, strict: bool = True) -> None:
    pi_c = critical_threshold(params.m)
    bad = params.pi >= pi_c if strict else params.pi > pi_c
    if bad:
        raise _FlagError(
            f"--pi {params.pi} exceeds the critical threshold "
            f"pi_c({params.m}) = {pi_c:.10g}; subcritical quantities are undefined"
        )


def build_parser() -> _Parser:
    parser = _Parser(prog="perc-lab", description=__doc__)
    parser.add_argument("--version", action="version", version=f"perc-lab {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    def add_model(p, with_n=False):
        p.add_argument("--m", type=int, default=2, help="out-degree (default 2)")
        p.add_argument("--pi", type=float, required=True, help="edge-retention probability")
        if with_n:
            p.add_argument("--n", type=int, required=True, help="number of vertices")

    def add_run(p):
        p.add_argument("--trials", type=int, required=True)
        p.add_argument("--seed", type=int, default=0)
        p.add_argument("--checkpoint-ratio", type=float, default=10.0 ** 0.25)
        p.add_argument("--L", type=int, action="append", default=[],
                       help="truncation level (repeatable)")
        p.add_argument("--K", type=int, action="append", default=[],
                       help="persistence label cutoff (repeatable)")
        p.add_argument("--out", type=str, default=None, help="output directory")
        p.add_argument("--threads", type=int, default=os.cpu_count() or 1)

    p = sub.add_parser("analytic", help="closed-form quantities at (m, pi)")
    add_model(p)

    p = sub.add_parser("grow", help="single trajectory snapshot")
    add_model(p, with_n=True)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--L", type=int, action="append", default=[])

    p = sub.add_parser("ensemble", help="Monte Carlo ensemble with CSV artifacts")
    add_model(p, with_n=True)
    add_run(p)

    p = sub.add_parser("persistence", help="weak-persistence experiment")
    add_model(p, with_n=True)
    add_run(p)

    p = sub.add_parser("residuals", help="susceptibility residual decay")
    add_model(p, with_n=True)
    add_run(p)

    p = sub.add_parser("tail", help="component-size CCDF (exploratory)")
    add_model(p, with_n=True)
    add_run(p)

    p = sub.add_parser("mbrw", help="killed branching random walk trees")
    add_model(p)
    p.add_argument("--trials", type=int, required=True)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--root-label", choices=("O", "Y"), default="O")
    p.add_argument("--node-cap", type=int, default=10_000_000)
    p.add_argument("--out", type=str, default=None)

    p = sub.add_parser("oracle", help="exact small-n expectations")
    p.add_argument("--pi", type=float, required=True)
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--v", type=int, default=None,
                   help="also print the exact component-size law of vertex v")

    sub.add_parser("validate", help="run the analytic identity suite")

    return parser


def _ensemble_config(args) -> EnsembleConfig:
    params = _model(args)
    try:
        return EnsembleConfig(
            params=params,
            n_max=args.n,
            trials=args.trials,
            base_seed=args.seed,
            checkpoint_ratio=args.checkpoint_ratio,
            l_list=tuple(args.L),
            k_persistence=tuple(args.K) if args.K else (1, 5, 20, 100),
            output_dir=args.out,
        )
    except ValueError as exc:
        raise _FlagError(str(exc)) from exc


def _cmd_analytic(args) -> None:
    params = _model(args)
    _require_subcritical(params)
    sol = solve_type_recursion(params)
    payload = {
        "m": params.m,
        "pi": params.pi,
        "pi_c": critical_threshold(params.m),
        "alpha": growth_exponent(params),
        "x_old": sol.x_old,
        "x_young": sol.x_young,
    }
    if params.m == 2:
        lam1, lam2 = drift_fixed_points(params.pi)
        payload.update(
            s2_inf=limiting_susceptibility(params.pi),
            lambda1=lam1,
            lambda2=lam2,
            drift_at_limit=drift(params.pi, lam1),
        )
    _emit(payload)


def _cmd_grow(args) -> None:
    params = _model(args)
    if args.n < 1:
        raise _FlagError(f"--n must be at least 1, got {args.n}")
    state = init_growth(params, args.seed)
    run_to(state, args.n)
    snap = snapshot(state, tuple(args.L))
    _emit(
        {
            "n": snap.n,
            "s2": snap.s2,
            "s3": snap.s3,
            "s4": snap.s4,
            "s2_trunc": {str(k): v for k, v in snap.s2_trunc.items()},
            "max_size": snap.max_size,
            "max_oldest": snap.max_oldest,
            "c1_size": snap.c1_size,
        }
    )


def _cmd_ensemble(args) -> None:
    summary = run_ensemble(_ensemble_config(args), threads=args.threads)
    if args.out is None:
        _emit(
            {
                "checkpoints": summary.checkpoints,
                "s2_mean": summary.s2_mean,
                "s2_stderr": summary.s2_stderr,
                "rescaled_max_mean": summary.rescaled_max_mean,
                "rescaled_max_stderr": summary.rescaled_max_stderr,
                "fixation_fraction": summary.fixation_fraction,
            }
        )


def _cmd_persistence(args) -> None:
    rows = persistence_experiment(_ensemble_config(args), threads=args.threads)
    if args.out is None:
        _emit(
            [
                {
                    "n": r.n,
                    "K": r.k,
                    "fraction": r.fraction,
                    "stderr": r.stderr,
                    "fixation_fraction": r.fixation_fraction,
                }
                for r in rows
            ]
        )


def _cmd_residuals(args) -> None:
    report = susceptibility_residuals(_ensemble_config(args), threads=args.threads)
    if args.out is None:
        _emit(
            {
                "checkpoints": report.checkpoints,
                "mean_abs_residual": report.mean_abs_residual,
                "s2_limit": report.s2_limit,
                "gamma_hat": report.gamma_hat,
                "r_squared": report.r_squared,
            }
        )


def _cmd_tail(args) -> None:
    config = _ensemble_config(args)
    rows = tail_experiment(config, threads=args.threads)
    alpha = growth_alpha(config.params)
    slope = -1.0 / alpha if alpha and alpha > 0.0 else None
    if args.out is None:
        _emit(
            {
                "ccdf": [{"k": k, "ccdf": v} for k, v in rows],
                "reference_slope": slope,
            }
        )


def _cmd_mbrw(args) -> None:
    params = _model(args)
    if args.trials < 2:
        raise _FlagError(f"--trials must be at least 2, got {args.trials}")
    try:
        config = MbrwConfig(params=params, node_cap=args.node_cap)
    except ValueError as exc:
        raise _FlagError(f"--node-cap: {exc}") from exc
    if args.out is not None:
        os.makedirs(args.out, exist_ok=True)
        results = [
            (t, args.root_label, simulate_tree(config, args.root_label, trial_seed(args.seed, t)))
            for t in range(args.trials)
        ]
        write_mbrw_csv(results, args.out)
        manifest = {
            "tool_version": __version__,
            "m": params.m,
            "pi": params.pi,
            "alpha": growth_alpha(params),
            "pi_c": critical_threshold(params.m),
            "s2_inf": susceptibility_limit(params),
            "n_max": None,
            "trials": args.trials,
            "base_seed": args.seed,
            "checkpoint_ratio": None,
            "L_list": [],
            "K_persistence": [],
            "root_label": args.root_label,
            "node_cap": args.node_cap,
            "created_at": datetime.now(timezone.utc).isoformat(),
        }
        with open(os.path.join(args.out, "manifest.json"), "w", encoding="utf-8") as fh:
            json.dump(json_ready(manifest), fh, indent=2)
            fh.write("\n")
    else:
        est = estimate_mean_size(config, args.root_label, args.trials, args.seed)
        _emit(
            {
                "root_label": args.root_label,
                "trials": args.trials,
                "mean": est.mean,
                "stderr": est.stderr,
                "truncation_rate": est.truncation_rate,
            }
        )


def _cmd_oracle(args) -> None:
    try:
        params = ModelParams(2, args.pi)
    except ValueError as exc:
        raise _FlagError(f"--pi: {exc}") from exc
    try:
        e_s2, e_s3 = exact_expected_susceptibilities(params, args.n)
        payload = {"n": args.n, "pi": args.pi, "E_S2": e_s2, "E_S3": e_s3}
        if args.v is not None:
            pmf = exact_root_component_distribution(params, args.n, args.v)
            payload["component_size_pmf"] = {str(k): v for k, v in pmf.items()}
    except ValueError as exc:
        raise _FlagError(f"--n/--v: {exc}") from exc
    _emit(payload)


def _cmd_validate(args) -> None:
    checks = identity_suite()
    failed = [c for c in checks if not c.passed]
    for c in checks:
        status = "ok" if c.passed else "FAIL"
        print(f"{status:4s} {c.name}: max_error={c.max_error:.3e} tol={c.tolerance:.0e}")
    if failed:
        raise _FlagError(f"{len(failed)} identity check(s) failed")


_COMMANDS = {
    "analytic": _cmd_analytic,
    "grow": _cmd_grow,
    "ensemble": _cmd_ensemble,
    "persistence": _cmd_persistence,
    "residuals": _cmd_residuals,
    "tail": _cmd_tail,
    "mbrw": _cmd_mbrw,
    "oracle": _cmd_oracle,
    "validate": _cmd_validate,
}


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        _COMMANDS[args.command](args)
    except _FlagError as exc:
        print(f"perc-lab {args.command}: error: {exc}", file=sys.stderr)
        return 1
    except ValueError as exc:
        print(f"perc-lab {args.command}: error: {exc}", file=sys.stderr)
        return 1
    except OSError as exc:
        print(f"perc-lab {args.command}: runtime failure: {exc}", file=sys.stderr)
        return 2
    return 0


if __name__ == "__main__":
    sys.exit(main())
