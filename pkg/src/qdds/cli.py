"""Command-line front end.

Subcommands: `bench` runs benchmark experiments, `fir` runs filter
design experiments, `validate` runs the math-identity oracle suite,
`presets` lists or runs the canned experiment grid. Exit codes: 0
success, 1 usage or configuration error, 2 runtime failure, 3 oracle
failure from `validate`.

A JSON config file (--config) mirrors ExperimentConfig field names;
explicit command-line flags override file values.
"""

from __future__ import annotations

import argparse
import json
import sys

from .harness import EMIT_KINDS, ExperimentConfig, run_experiment
from .objectives import BENCHMARK_NAMES
from .presets import get_preset, preset_names
from .validate import run_validation

__all__ = ["main", "main_entry"]


class _CliError(Exception):
    def __init__(self, code: int, message: str = ""):
        super().__init__(message)
        self.code = code
        self.message = message


class _Parser(argparse.ArgumentParser):
    # exit-code contract: usage problems are 1, not argparse's default 2
    def error(self, message):
        self.print_usage(sys.stderr)
        raise _CliError(1, f"{self.prog}: error: {message}")


def _add_engine_flags(p: argparse.ArgumentParser) -> None:
    p.add_argument("--pop", type=int, default=None, help="particle count")
    p.add_argument("--iters", type=int, default=None, help="iteration budget")
    p.add_argument("--trials", type=int, default=None, help="independent seeded runs")
    p.add_argument("--seed", type=int, default=None, help="master seed")
    p.add_argument("--mode", choices=["literal", "sweep"], default=None,
                   help="one random particle per iteration, or all particles")
    p.add_argument("--rebind", choices=["post", "pre"], default=None,
                   help="delta history source after blending")
    p.add_argument("--lambda-abs", dest="lambda_abs",
                   action=argparse.BooleanOptionalAction, default=None,
                   help="force the per-run step scale to be non-negative")
    p.add_argument("--k", type=float, default=None, help="well stiffness")
    p.add_argument("--epsilon", type=float, default=None, help="learning-rate floor")
    p.add_argument("--out", default=None, help="output directory")
    p.add_argument("--emit", default=None,
                   help="comma-separated artifact kinds: traces,plots,report")
    p.add_argument("--workers", type=int, default=None, help="parallel trial workers")
    p.add_argument("--label", default=None, help="artifact basename override")
    p.add_argument("--config", default=None, help="JSON config file (flags override it)")


_FLAG_FIELDS = {
    "function": "objective",
    "dim": "dimension",
    "pop": "population",
    "iters": "iterations",
    "seed": "master_seed",
    "out": "out_dir",
}


def _build_config(args: argparse.Namespace, forced: dict) -> ExperimentConfig:
    base: dict = {}
    if getattr(args, "config", None):
        try:
            with open(args.config, "r", encoding="utf-8") as fh:
                base = json.load(fh)
        except (OSError, json.JSONDecodeError) as exc:
            raise _CliError(1, f"config file {args.config}: {exc}")
        if not isinstance(base, dict):
            raise _CliError(1, f"config file {args.config}: expected a JSON object")
    for arg_name, field in list(_FLAG_FIELDS.items()) + [
        (name, name)
        for name in (
            "trials", "mode", "rebind", "lambda_abs", "k", "epsilon",
            "order", "wp", "ws", "eta", "grid", "symmetric", "workers", "label",
        )
    ]:
        value = getattr(args, arg_name, None)
        if value is not None:
            base[field] = value
    if getattr(args, "emit", None) is not None:
        base["emit"] = tuple(part for part in args.emit.split(",") if part)
    base.update(forced)
    if "emit" in base:
        base["emit"] = tuple(base["emit"])
    if "init_range" in base and base["init_range"] is not None:
        base["init_range"] = tuple(base["init_range"])
    try:
        return ExperimentConfig(**base)
    except (TypeError, ValueError) as exc:
        raise _CliError(1, f"bad configuration: {exc}")


def _print_summary(label: str, stats, report: dict, out_dir: str) -> None:
    print(
        f"{label}: mean={stats.mean:.6g} std={stats.std:.6g} "
        f"best={stats.best:.6g} worst={stats.worst:.6g}"
    )
    if "fir" in report:
        fir = report["fir"]
        print(
            f"{label}: delta_db={fir['delta_db']:.4f} "
            f"e_p={fir['e_p']:.6g} e_s={fir['e_s']:.6g} gamma={fir['gamma']:.6g}"
        )
    print(f"artifacts in {out_dir}")


def _cmd_bench(args) -> int:
    config = _build_config(args, {})
    if config.objective == "fir":
        raise _CliError(1, "use the fir subcommand for filter experiments")
    stats, report = run_experiment(config)
    _print_summary(config.resolved_label(), stats, report, config.out_dir)
    return 0


def _cmd_fir(args) -> int:
    config = _build_config(args, {"objective": "fir"})
    stats, report = run_experiment(config)
    _print_summary(config.resolved_label(), stats, report, config.out_dir)
    return 0


def _cmd_validate(args) -> int:
    results = run_validation(quick=args.quick)
    failures = 0
    for res in results:
        tag = "ok  " if res.passed else "FAIL"
        print(f"{tag} {res.name}: {res.detail}")
        failures += 0 if res.passed else 1
    if failures:
        print(f"{failures} oracle check(s) failed")
        return 3
    print("all oracle checks passed")
    return 0


def _cmd_presets(args) -> int:
    names = preset_names()
    if args.name is None:
        for name in names:
            print(name)
        return 0
    targets = names if args.name == "all" else [args.name]
    if args.name != "all" and args.name not in names:
        raise _CliError(1, f"unknown preset {args.name!r}; run `qdds presets` to list")
    overrides = {}
    if args.out is not None:
        overrides["out_dir"] = args.out
    if args.seed is not None:
        overrides["master_seed"] = args.seed
    if args.trials is not None:
        overrides["trials"] = args.trials
    if args.workers is not None:
        overrides["workers"] = args.workers
    for name in targets:
        config = get_preset(name, **overrides)
        stats, report = run_experiment(config)
        _print_summary(name, stats, report, config.out_dir)
    return 0


def _make_parser() -> _Parser:
    parser = _Parser(prog="qdds", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    p_bench = sub.add_parser("bench", help="run a benchmark experiment")
    p_bench.add_argument("--function", choices=list(BENCHMARK_NAMES), default=None,
                         help="benchmark objective")
    p_bench.add_argument("--dim", type=int, default=None, help="search dimension")
    _add_engine_flags(p_bench)
    p_bench.set_defaults(handler=_cmd_bench)

    p_fir = sub.add_parser("fir", help="run a filter design experiment")
    p_fir.add_argument("--order", type=int, default=None, help="total coefficient count")
    p_fir.add_argument("--wp", type=float, default=None,
                       help="passband edge as a fraction of pi")
    p_fir.add_argument("--ws", type=float, default=None,
                       help="stopband edge as a fraction of pi")
    p_fir.add_argument("--eta", type=float, default=None, help="passband error weight")
    p_fir.add_argument("--grid", type=int, default=None, help="integration grid per band")
    p_fir.add_argument("--symmetric", action=argparse.BooleanOptionalAction,
                       default=None, help="enforce linear-phase symmetry")
    _add_engine_flags(p_fir)
    p_fir.set_defaults(handler=_cmd_fir)

    p_val = sub.add_parser("validate", help="run the math-identity oracle suite")
    p_val.add_argument("--quick", action="store_true",
                       help="smaller sample counts for a fast smoke check")
    p_val.set_defaults(handler=_cmd_validate)

    p_pre = sub.add_parser("presets", help="list or run canned experiments")
    p_pre.add_argument("name", nargs="?", default=None,
                       help="preset name, 'all', or omit to list")
    p_pre.add_argument("--out", default=None, help="output directory")
    p_pre.add_argument("--seed", type=int, default=None, help="master seed override")
    p_pre.add_argument("--trials", type=int, default=None, help="trial count override")
    p_pre.add_argument("--workers", type=int, default=None, help="parallel trial workers")
    p_pre.set_defaults(handler=_cmd_presets)
    return parser


def main(argv=None) -> int:
    parser = _make_parser()
    try:
        args = parser.parse_args(argv)
        return args.handler(args)
    except _CliError as exc:
        if exc.message:
            print(exc.message, file=sys.stderr)
        return exc.code
    except (ValueError, KeyError) as exc:
        print(f"configuration error: {exc}", file=sys.stderr)
        return 1
    except Exception as exc:  # I/O and anything unexpected mid-run
        print(f"runtime failure: {exc}", file=sys.stderr)
        return 2


def main_entry() -> None:
    sys.exit(main())
