"""Benchmark cost functions and the common objective interface.

Four classic minimization benchmarks (all with a known zero optimum)
plus a small registry keyed by name. Filter-design objectives are built
separately in :mod:`qdds.filters` and share the same Objective shape.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable

import numpy as np

__all__ = [
    "Objective",
    "rastrigin",
    "rosenbrock",
    "sphere",
    "griewank",
    "BENCHMARK_NAMES",
    "make_benchmark",
]


@dataclass(frozen=True)
class Objective:
    """Named cost function with the metadata the engine needs.

    init_range is the canonical per-dimension initialization interval;
    known_min, when present, is a (location, value) pair the evaluator
    reproduces to machine precision.
    """

    name: str
    dimension: int
    evaluate: Callable[[np.ndarray], float]
    init_range: tuple[float, float]
    known_min: tuple[np.ndarray, float] | None = None

    def __post_init__(self) -> None:
        if self.dimension < 1:
            raise ValueError(f"dimension must be >= 1, got {self.dimension}")
        lo, hi = self.init_range
        if not lo <= hi:
            raise ValueError(f"init_range must be non-empty, got {self.init_range}")


def rastrigin(x) -> float:
    x = np.asarray(x, dtype=float)
    return float(10.0 * x.size + np.sum(x * x - 10.0 * np.cos(2.0 * np.pi * x)))


def rosenbrock(x) -> float:
    x = np.asarray(x, dtype=float)
    if x.size < 2:
        raise ValueError(f"rosenbrock needs n >= 2, got n={x.size}")
    return float(
        np.sum(100.0 * (x[1:] - x[:-1] ** 2) ** 2 + (1.0 - x[:-1]) ** 2)
    )


def sphere(x) -> float:
    x = np.asarray(x, dtype=float)
    return float(np.sum(x * x))


def griewank(x) -> float:
    x = np.asarray(x, dtype=float)
    i = np.arange(1, x.size + 1, dtype=float)
    return float(1.0 + np.sum(x * x) / 4000.0 - np.prod(np.cos(x / np.sqrt(i))))


# canonical initialization domains (community convention, per dimension)
_BENCHMARKS: dict[str, tuple[Callable[[np.ndarray], float], tuple[float, float]]] = {
    "rastrigin": (rastrigin, (-5.12, 5.12)),
    "rosenbrock": (rosenbrock, (-2.048, 2.048)),
    "sphere": (sphere, (-100.0, 100.0)),
    "griewank": (griewank, (-600.0, 600.0)),
}

BENCHMARK_NAMES = tuple(_BENCHMARKS)


def make_benchmark(name: str, dimension: int) -> Objective:
    """Build one of the named benchmarks at the given dimensionality."""
    if name not in _BENCHMARKS:
        raise ValueError(
            f"unknown benchmark {name!r}; choose from {', '.join(BENCHMARK_NAMES)}"
        )
    fn, init_range = _BENCHMARKS[name]
    optimum = np.ones(dimension) if name == "rosenbrock" else np.zeros(dimension)
    return Objective(
        name=name,
        dimension=dimension,
        evaluate=fn,
        init_range=init_range,
        known_min=(optimum, 0.0),
    )
