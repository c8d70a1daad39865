"""Experiment harness: seeded trials, aggregate stats, artifacts on disk.

An experiment is `trials` independent runs of one objective, each seeded
deterministically from (master_seed, trial_index), aggregated into the
mean/std/best/worst table row format. Artifacts are a stacked trace CSV,
a convergence SVG (plus a response SVG and coefficient CSV for filter
designs), and a canonical JSON report that echoes every resolved design
switch. Identical configs produce byte-identical artifacts except for
the report's timing block.
"""

from __future__ import annotations

import json
import math
import os
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import asdict, dataclass
from itertools import repeat

import numpy as np

from .engine import RunResult, SwarmConfig, run
from .filters import (
    FilterSpec,
    evaluate_filter,
    expand_symmetric,
    make_filter_objective,
    write_coefficients,
)
from .objectives import BENCHMARK_NAMES, Objective, make_benchmark
from .svg import line_plot
from .well import WellParams

__all__ = [
    "ExperimentConfig",
    "TrialStats",
    "EMIT_KINDS",
    "aggregate_stats",
    "build_problem",
    "run_trial",
    "run_experiment",
    "emit_trace",
    "emit_plot",
    "emit_response_plot",
    "emit_report",
    "build_report",
    "canonical_json",
]

EMIT_KINDS = ("traces", "plots", "report")


@dataclass(frozen=True)
class ExperimentConfig:
    """Everything one experiment needs, JSON-mirrorable.

    objective is a benchmark name or "fir". For "fir" the search
    dimension is derived from order/symmetric and the dimension field is
    ignored. wp and ws are band edges as fractions of pi (0.3 means
    0.3*pi radians). lam = None draws the step scale per run; emit
    selects which artifact kinds are written.
    """

    objective: str
    dimension: int | None = None
    population: int = 20
    iterations: int = 250
    trials: int = 10
    master_seed: int = 2023
    mode: str = "literal"
    rebind: str = "post"
    lambda_abs: bool = False
    k: float = 5.0
    epsilon: float = 0.3
    lam: float | None = None
    init_range: tuple[float, float] | None = None
    order: int = 10
    wp: float = 0.3
    ws: float = 0.6
    eta: float = 0.5
    grid: int = 2048
    symmetric: bool = True
    out_dir: str = "out"
    emit: tuple[str, ...] = EMIT_KINDS
    workers: int = 1
    label: str | None = None

    def __post_init__(self) -> None:
        if self.objective != "fir" and self.objective not in BENCHMARK_NAMES:
            raise ValueError(
                f"objective must be 'fir' or one of {', '.join(BENCHMARK_NAMES)}, "
                f"got {self.objective!r}"
            )
        if self.objective != "fir" and (self.dimension is None or self.dimension < 1):
            raise ValueError("benchmark experiments need dimension >= 1")
        if self.trials < 1:
            raise ValueError(f"trials must be >= 1, got {self.trials}")
        if self.workers < 1:
            raise ValueError(f"workers must be >= 1, got {self.workers}")
        unknown = set(self.emit) - set(EMIT_KINDS)
        if unknown:
            raise ValueError(f"unknown emit kinds {sorted(unknown)}; allowed: {EMIT_KINDS}")
        object.__setattr__(self, "emit", tuple(self.emit))
        if self.init_range is not None:
            object.__setattr__(self, "init_range", tuple(self.init_range))

    def resolved_label(self) -> str:
        if self.label:
            return self.label
        if self.objective == "fir":
            return f"fir-{self.order}"
        return f"{self.objective}-d{self.dimension}-p{self.population}"


@dataclass(frozen=True)
class TrialStats:
    """Aggregate of per-trial final best costs (sample std, n-1)."""

    mean: float
    std: float
    best: float
    worst: float
    per_trial: tuple[float, ...]


def aggregate_stats(final_costs) -> TrialStats:
    """Mean, sample standard deviation, min and max over trial costs."""
    costs = [float(c) for c in final_costs]
    if not costs:
        raise ValueError("need at least one trial cost to aggregate")
    arr = np.asarray(costs)
    std = float(np.std(arr, ddof=1)) if arr.size > 1 else 0.0
    return TrialStats(
        mean=float(arr.mean()),
        std=std,
        best=float(arr.min()),
        worst=float(arr.max()),
        per_trial=tuple(costs),
    )


def build_problem(config: ExperimentConfig) -> tuple[Objective, FilterSpec | None]:
    """Materialize the objective (and design spec for filter runs)."""
    if config.objective == "fir":
        spec = FilterSpec(
            n_coeff=config.order,
            omega_p=config.wp * math.pi,
            omega_s=config.ws * math.pi,
            eta=config.eta,
            grid_points=config.grid,
            symmetric=config.symmetric,
        )
        return make_filter_objective(spec), spec
    return make_benchmark(config.objective, config.dimension), None


def _swarm_config(config: ExperimentConfig, objective: Objective, trial: int) -> SwarmConfig:
    well = WellParams(
        k=config.k,
        epsilon=config.epsilon,
        lam=config.lam,
        max_iter=config.iterations,
    )
    init_range = config.init_range or objective.init_range
    return SwarmConfig(
        well=well,
        population=config.population,
        dimension=objective.dimension,
        init_range=tuple(init_range),
        seed=[config.master_seed, trial],
        mode=config.mode,
        rebind=config.rebind,
        lambda_abs=config.lambda_abs,
    )


def run_trial(config: ExperimentConfig, trial: int) -> RunResult:
    """One seeded run; rebuilds the objective locally so it can cross
    a process boundary (only the config and index are pickled)."""
    objective, _ = build_problem(config)
    return run(_swarm_config(config, objective, trial), objective)


def _trace_lines(result: RunResult, trial: int):
    for iteration, best_cost, eval_count in result.trace:
        yield f"{trial},{iteration},{best_cost!r},{eval_count}\n"


def emit_trace(result: RunResult, path, trial: int = 0) -> None:
    """Write one run's trace CSV: trial,iter,best_cost,eval_count."""
    try:
        with open(path, "w", encoding="ascii") as fh:
            fh.write("trial,iter,best_cost,eval_count\n")
            fh.writelines(_trace_lines(result, trial))
    except OSError as exc:
        raise OSError(f"writing trace to {path}: {exc}") from exc


def _emit_traces_stacked(results, path) -> None:
    with open(path, "w", encoding="ascii") as fh:
        fh.write("trial,iter,best_cost,eval_count\n")
        for trial, result in enumerate(results):
            fh.writelines(_trace_lines(result, trial))


def emit_plot(traces, path, *, title: str = "", log_y: bool | None = None) -> None:
    """Convergence SVG, one polyline per trace.

    traces is a sequence of trace row lists as stored on RunResult.
    log_y = None auto-selects log scale when every best cost is
    positive.
    """
    if not traces:
        raise ValueError("need at least one trace to plot")
    series = []
    for rows in traces:
        series.append(([row[0] for row in rows], [row[1] for row in rows]))
    if log_y is None:
        log_y = all(y > 0.0 for _, ys in series for y in ys)
    try:
        line_plot(
            series,
            path,
            title=title,
            x_label="iteration",
            y_label="best cost",
            log_y=log_y,
        )
    except OSError as exc:
        raise OSError(f"writing plot to {path}: {exc}") from exc


def emit_response_plot(h, path, *, title: str = "", points: int = 1025) -> None:
    """Magnitude response SVG: 20*log10|H| (floor -120 dB) vs omega/pi."""
    from .filters import fir_response_magnitude

    w = np.linspace(0.0, math.pi, points)
    mag = fir_response_magnitude(h, w)
    db = 20.0 * np.log10(np.maximum(mag, 1e-6))
    try:
        line_plot(
            [(list(w / math.pi), list(db))],
            path,
            title=title,
            x_label="omega / pi",
            y_label="magnitude (dB)",
            log_y=False,
        )
    except OSError as exc:
        raise OSError(f"writing plot to {path}: {exc}") from exc


def canonical_json(payload) -> str:
    """Stable serialization: sorted keys, two-space indent, newline end."""
    return json.dumps(payload, indent=2, sort_keys=True) + "\n"


def build_report(
    config: ExperimentConfig,
    stats: TrialStats,
    results: list[RunResult],
    elapsed_seconds: float | None = None,
) -> dict:
    """Assemble the report document (pure data, ready for canonical_json)."""
    objective, spec = build_problem(config)
    cfg = asdict(config)
    cfg["emit"] = list(config.emit)
    cfg["init_range"] = list(config.init_range or objective.init_range)
    cfg["resolved_dimension"] = objective.dimension
    report = {
        "config": cfg,
        "stats": {
            "mean": stats.mean,
            "std": stats.std,
            "best": stats.best,
            "worst": stats.worst,
        },
        "trials": [
            {
                "trial": i,
                "seed": [config.master_seed, i],
                "best_cost": r.best_cost,
                "best_solution": [float(v) for v in r.best_solution],
                "lam": r.lam,
                "eval_count": r.eval_count,
                "events": r.events.as_dict(),
            }
            for i, r in enumerate(results)
        ],
        "events_total": {
            key: sum(r.events.as_dict()[key] for r in results)
            for key in ("in_band", "solver_fallback", "guard_clamp")
        },
    }
    if spec is not None:
        best_idx = int(np.argmin([r.best_cost for r in results]))
        best = results[best_idx]
        h = expand_symmetric(best.best_solution) if spec.symmetric else best.best_solution
        ev = evaluate_filter(h, spec)
        report["fir"] = {
            "best_trial": best_idx,
            "coefficients": [float(c) for c in h],
            "e_p": ev.e_p,
            "e_s": ev.e_s,
            "gamma": ev.gamma,
            "delta_db": ev.delta_db,
        }
    if elapsed_seconds is not None:
        # excluded from the determinism contract
        report["timing"] = {"wall_clock_seconds": elapsed_seconds}
    return report


def emit_report(config, stats, results, path, elapsed_seconds=None) -> dict:
    """Write the canonical JSON report; returns the document."""
    report = build_report(config, stats, results, elapsed_seconds)
    try:
        with open(path, "w", encoding="ascii") as fh:
            fh.write(canonical_json(report))
    except OSError as exc:
        raise OSError(f"writing report to {path}: {exc}") from exc
    return report


def run_experiment(config: ExperimentConfig) -> tuple[TrialStats, dict]:
    """Run all trials, aggregate, and write the selected artifacts.

    Output directory problems surface before any trial runs. Trials
    execute sequentially for workers = 1, otherwise across a process
    pool, joined in trial-index order either way.
    """
    out = config.out_dir
    os.makedirs(out, exist_ok=True)
    if not os.path.isdir(out) or not os.access(out, os.W_OK):
        raise OSError(f"output directory not writable: {out}")

    started = time.perf_counter()
    if config.workers == 1:
        results = [run_trial(config, t) for t in range(config.trials)]
    else:
        with ProcessPoolExecutor(max_workers=config.workers) as pool:
            results = list(pool.map(run_trial, repeat(config), range(config.trials)))
    elapsed = time.perf_counter() - started

    stats = aggregate_stats([r.best_cost for r in results])
    label = config.resolved_label()

    if "traces" in config.emit:
        _emit_traces_stacked(results, os.path.join(out, f"{label}_traces.csv"))
    if "plots" in config.emit:
        emit_plot(
            [r.trace for r in results],
            os.path.join(out, f"{label}_convergence.svg"),
            title=label,
        )
    report = build_report(config, stats, results, elapsed)
    if "report" in config.emit:
        with open(os.path.join(out, f"{label}_report.json"), "w", encoding="ascii") as fh:
            fh.write(canonical_json(report))
    if config.objective == "fir":
        h = np.asarray(report["fir"]["coefficients"])
        if "plots" in config.emit:
            emit_response_plot(
                h, os.path.join(out, f"{label}_response.svg"), title=f"{label} response"
            )
        if "report" in config.emit:
            write_coefficients(h, os.path.join(out, f"{label}_coefficients.csv"))
    return stats, report
