"""Swarm engine driving the delta-state recursion.

Each particle keeps, per dimension, a position r and a two-deep delta
history. One update applies the gated delta nudge, inverts the state
map to get a raw position, and blends it with the best solution found
so far using a single uniformly drawn weight per update. Scheduling is
either "literal" (one randomly selected particle per iteration, the
default) or "sweep" (all particles in index order per iteration).

All randomness flows from one numpy Generator seeded by the config, so
identical (config, objective, seed) produce bitwise identical runs.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Sequence

import numpy as np

from .objectives import Objective
from .well import (
    EXP_ARG_LIMIT,
    DeltaHistory,
    WellParams,
    delta_of_r,
    delta_update_arrays,
    learning_rate,
    solve_r_batch,
)

__all__ = [
    "SwarmConfig",
    "ParticleState",
    "StepContext",
    "EventCounters",
    "RunResult",
    "Swarm",
    "init_swarm",
    "step",
    "run",
    "blend_with_gbest",
]

MODES = ("literal", "sweep")
REBINDS = ("post", "pre")


@dataclass(frozen=True)
class SwarmConfig:
    """Run configuration for one seeded swarm.

    seed may be an int or a sequence of ints (a harness passes
    [master_seed, trial_index]). init_range is intersected with the
    solvable interval of the state map, |r| <= 700/(2k), before any
    position is drawn; configs whose range lies entirely outside that
    interval are rejected.

    rebind selects what delta the history stores after blending moves a
    particle: "post" (default) re-derives delta from the blended
    position, keeping delta_prev = delta(position) invariant; "pre"
    stores the gate's output delta directly, which keeps raw positions
    frozen when lam = 0. lambda_abs forces the per-run lam draw to be
    non-negative (a negative lam inverts the band push-back direction).
    """

    well: WellParams
    population: int
    dimension: int
    init_range: tuple[float, float]
    seed: int | Sequence[int] = 0
    mode: str = "literal"
    rebind: str = "post"
    lambda_abs: bool = False

    def __post_init__(self) -> None:
        if self.population < 1:
            raise ValueError(f"population must be >= 1, got {self.population}")
        if self.dimension < 1:
            raise ValueError(f"dimension must be >= 1, got {self.dimension}")
        lo, hi = self.init_range
        if not lo <= hi:
            raise ValueError(f"init_range must be non-empty, got {self.init_range}")
        if self.mode not in MODES:
            raise ValueError(f"mode must be one of {MODES}, got {self.mode!r}")
        if self.rebind not in REBINDS:
            raise ValueError(f"rebind must be one of {REBINDS}, got {self.rebind!r}")
        if self.effective_init_range()[0] > self.effective_init_range()[1]:
            raise ValueError(
                f"init_range {self.init_range} lies outside the solvable "
                f"interval [{-self.guard_halfwidth():g}, {self.guard_halfwidth():g}]"
            )

    def guard_halfwidth(self) -> float:
        """Largest |r| the forward map accepts at this stiffness."""
        return EXP_ARG_LIMIT / (2.0 * self.well.k)

    def effective_init_range(self) -> tuple[float, float]:
        """Requested range clipped to the solvable interval."""
        hw = self.guard_halfwidth()
        lo, hi = self.init_range
        return max(lo, -hw), min(hi, hw)


@dataclass
class ParticleState:
    """Read-only per-particle view: position vector plus delta histories."""

    position: np.ndarray
    history: list[DeltaHistory]

    def __post_init__(self) -> None:
        if len(self.position) != len(self.history):
            raise ValueError("position and history must share a dimension")


@dataclass(frozen=True)
class StepContext:
    """Per-update draw record: which particle, its blend weight, the rate."""

    selected_particle: int
    rho: float
    theta: float

    def __post_init__(self) -> None:
        if not 0.0 <= self.rho <= 1.0:
            raise ValueError(f"rho must be in [0, 1], got {self.rho}")


@dataclass
class EventCounters:
    """Diagnostic tallies, all counted per dimension occurrence."""

    in_band: int = 0
    solver_fallback: int = 0
    guard_clamp: int = 0

    def as_dict(self) -> dict[str, int]:
        return {
            "in_band": self.in_band,
            "solver_fallback": self.solver_fallback,
            "guard_clamp": self.guard_clamp,
        }


@dataclass
class RunResult:
    """Outcome of one seeded run.

    trace holds one (iteration, best_cost, eval_count) row per
    iteration: rows 1 and 2 record the two initialization sweeps, row 3
    marks the optimization start, and each step appends one row, for
    max_iter rows total. lam is the step scale actually used (drawn or
    configured), recorded for reproducibility.
    """

    best_cost: float
    best_solution: np.ndarray
    trace: list[tuple[int, float, int]]
    eval_count: int
    events: EventCounters
    lam: float


@dataclass
class Swarm:
    """Mutable run state; create via init_swarm, advance via step."""

    config: SwarmConfig
    positions: np.ndarray
    delta_prev: np.ndarray
    delta_prev2: np.ndarray
    best_cost: float
    best_solution: np.ndarray
    iteration: int
    eval_count: int
    lam: float
    rng: np.random.Generator
    events: EventCounters = field(default_factory=EventCounters)
    trace: list[tuple[int, float, int]] = field(default_factory=list)
    last_context: StepContext | None = None

    def particle(self, index: int) -> ParticleState:
        history = [
            DeltaHistory(float(self.delta_prev[index, d]), float(self.delta_prev2[index, d]))
            for d in range(self.config.dimension)
        ]
        return ParticleState(position=self.positions[index].copy(), history=history)


def blend_with_gbest(raw, gbest, rho):
    """Convex blend rho*raw + (1 - rho)*gbest, one scalar rho for all dims."""
    raw = np.asarray(raw, dtype=float)
    gbest = np.asarray(gbest, dtype=float)
    if raw.shape != gbest.shape:
        raise ValueError(f"shape mismatch: raw {raw.shape} vs gbest {gbest.shape}")
    if not 0.0 <= rho <= 1.0:
        raise ValueError(f"rho must be in [0, 1], got {rho}")
    return rho * raw + (1.0 - rho) * gbest


def init_swarm(config: SwarmConfig, objective: Objective) -> Swarm:
    """Draw two position sets, seed histories, and evaluate both sets.

    Positions r1 and r2 per particle and dimension seed the two-deep
    delta window (delta_prev2 from r1, delta_prev from r2); the current
    position is r2. Both full position vectors of every particle are
    evaluated, so eval_count starts at 2*population and best_cost at
    the minimum seen. The iteration counter starts at 3.
    """
    if objective.dimension != config.dimension:
        raise ValueError(
            f"objective dimension {objective.dimension} != config dimension {config.dimension}"
        )
    rng = np.random.default_rng(config.seed)
    if config.well.lam is None:
        lam = float(rng.normal(0.0, 0.5) * 1e-3)
    else:
        lam = float(config.well.lam)
    if config.lambda_abs:
        lam = abs(lam)
    lo, hi = config.effective_init_range()
    shape = (config.population, config.dimension)
    r1 = rng.uniform(lo, hi, shape)
    r2 = rng.uniform(lo, hi, shape)
    k = config.well.k
    delta_prev2 = delta_of_r(r1, k)
    delta_prev = delta_of_r(r2, k)

    costs1 = np.array([objective.evaluate(r1[p]) for p in range(config.population)])
    costs2 = np.array([objective.evaluate(r2[p]) for p in range(config.population)])
    best1 = int(np.argmin(costs1))
    if costs2.min() < costs1[best1]:
        best2 = int(np.argmin(costs2))
        best_cost, best_solution = float(costs2[best2]), r2[best2].copy()
    else:
        best_cost, best_solution = float(costs1[best1]), r1[best1].copy()

    swarm = Swarm(
        config=config,
        positions=r2.copy(),
        delta_prev=np.asarray(delta_prev, dtype=float).reshape(shape),
        delta_prev2=np.asarray(delta_prev2, dtype=float).reshape(shape),
        best_cost=best_cost,
        best_solution=best_solution,
        iteration=3,
        eval_count=2 * config.population,
        lam=lam,
        rng=rng,
    )
    swarm.trace.append((1, float(costs1[best1]), config.population))
    swarm.trace.append((2, best_cost, swarm.eval_count))
    swarm.trace.append((3, best_cost, swarm.eval_count))
    return swarm


def _update_particle(swarm: Swarm, objective: Objective, p: int, theta: float) -> None:
    cfg = swarm.config
    k = cfg.well.k
    dp = swarm.delta_prev[p]
    dp2 = swarm.delta_prev2[p]
    delta_new, fired = delta_update_arrays(dp, dp2, theta, swarm.lam)
    swarm.events.in_band += int(cfg.dimension - fired.sum())

    r_raw, solved, fallbacks = solve_r_batch(delta_new, k)
    swarm.events.solver_fallback += fallbacks
    swarm.events.guard_clamp += int((~solved).sum())
    # unsolvable target deltas: that dimension's raw position stays put
    r_raw = np.where(solved, r_raw, swarm.positions[p])
    delta_new = np.where(solved, delta_new, dp)

    rho = float(swarm.rng.uniform())
    blended = blend_with_gbest(r_raw, swarm.best_solution, rho)
    swarm.last_context = StepContext(selected_particle=p, rho=rho, theta=theta)

    cost = objective.evaluate(blended)
    swarm.eval_count += 1
    if cost < swarm.best_cost:
        swarm.best_cost = float(cost)
        swarm.best_solution = blended.copy()

    swarm.positions[p] = blended
    swarm.delta_prev2[p] = dp
    if cfg.rebind == "post":
        swarm.delta_prev[p] = delta_of_r(blended, k)
    else:
        swarm.delta_prev[p] = delta_new


def step(swarm: Swarm, objective: Objective) -> Swarm:
    """Advance one iteration: update one particle (literal) or all (sweep)."""
    cfg = swarm.config
    if swarm.iteration >= cfg.well.max_iter:
        raise ValueError(
            f"iteration {swarm.iteration} already reached max_iter {cfg.well.max_iter}"
        )
    theta = learning_rate(swarm.iteration, cfg.well.max_iter, cfg.well.epsilon)
    if cfg.mode == "literal":
        indices = [int(swarm.rng.integers(cfg.population))]
    else:
        indices = range(cfg.population)
    for p in indices:
        _update_particle(swarm, objective, p, theta)
    swarm.iteration += 1
    swarm.trace.append((swarm.iteration, swarm.best_cost, swarm.eval_count))
    return swarm


def run(config: SwarmConfig, objective: Objective) -> RunResult:
    """Initialize and step until the iteration counter reaches max_iter."""
    swarm = init_swarm(config, objective)
    while swarm.iteration < config.well.max_iter:
        step(swarm, objective)
    return RunResult(
        best_cost=swarm.best_cost,
        best_solution=swarm.best_solution.copy(),
        trace=list(swarm.trace),
        eval_count=swarm.eval_count,
        events=swarm.events,
        lam=swarm.lam,
    )
