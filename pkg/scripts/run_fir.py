"""Run the low-pass filter design presets and report the best designs.

Both the 10- and 20-coefficient presets run by default (1000 particles,
250/500 iterations, 10 trials). Artifacts include the magnitude
response SVG and the best coefficient vector CSV.

    python3 scripts/run_fir.py
    python3 scripts/run_fir.py --order 20 --trials 3
"""

import argparse
import sys

sys.path.insert(0, "src")

from qdds.harness import run_experiment
from qdds.presets import get_preset


def main() -> int:
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--order", type=int, choices=[10, 20], default=None,
                        help="run only this design (default: both)")
    parser.add_argument("--trials", type=int, default=None)
    parser.add_argument("--seed", type=int, default=None)
    parser.add_argument("--workers", type=int, default=None)
    parser.add_argument("--out", default="results/fir")
    args = parser.parse_args()

    overrides = {"out_dir": args.out}
    if args.trials is not None:
        overrides["trials"] = args.trials
    if args.seed is not None:
        overrides["master_seed"] = args.seed
    if args.workers is not None:
        overrides["workers"] = args.workers

    orders = [args.order] if args.order else [10, 20]
    for order in orders:
        name = f"fir-{order}"
        stats, report = run_experiment(get_preset(name, **overrides))
        fir = report["fir"]
        print(
            f"{name}: gamma mean={stats.mean:.6g} best={stats.best:.6g} "
            f"delta_db={fir['delta_db']:.4f} e_p={fir['e_p']:.6g} e_s={fir['e_s']:.6g}"
        )
        print(f"{name}: best coefficients in {args.out}/{name}_coefficients.csv")
    return 0


if __name__ == "__main__":
    sys.exit(main())
