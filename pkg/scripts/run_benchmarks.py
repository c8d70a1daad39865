"""Run benchmark preset cells and print one stats row per cell.

Runs the full 36-cell grid by default; filter it down with --function,
--dim, or --pop. Artifacts (trace CSV, convergence SVG, JSON report)
land in --out.

    python3 scripts/run_benchmarks.py
    python3 scripts/run_benchmarks.py --function rastrigin --dim 10
"""

import argparse
import sys

sys.path.insert(0, "src")

from qdds.harness import run_experiment
from qdds.objectives import BENCHMARK_NAMES
from qdds.presets import get_preset, preset_names


def main() -> int:
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--function", choices=list(BENCHMARK_NAMES), default=None)
    parser.add_argument("--dim", type=int, default=None)
    parser.add_argument("--pop", type=int, default=None)
    parser.add_argument("--trials", type=int, default=None)
    parser.add_argument("--seed", type=int, default=None)
    parser.add_argument("--workers", type=int, default=None)
    parser.add_argument("--out", default="results/benchmarks")
    args = parser.parse_args()

    overrides = {"out_dir": args.out}
    if args.trials is not None:
        overrides["trials"] = args.trials
    if args.seed is not None:
        overrides["master_seed"] = args.seed
    if args.workers is not None:
        overrides["workers"] = args.workers

    ran = 0
    for name in preset_names():
        if name.startswith("fir"):
            continue
        config = get_preset(name, **overrides)
        if args.function and config.objective != args.function:
            continue
        if args.dim and config.dimension != args.dim:
            continue
        if args.pop and config.population != args.pop:
            continue
        stats, _ = run_experiment(config)
        print(
            f"{name}: mean={stats.mean:.6g} std={stats.std:.6g} "
            f"best={stats.best:.6g} worst={stats.worst:.6g}"
        )
        ran += 1
    if not ran:
        print("no preset matches the given filters", file=sys.stderr)
        return 1
    print(f"{ran} cell(s) done, artifacts in {args.out}")
    return 0


if __name__ == "__main__":
    sys.exit(main())
