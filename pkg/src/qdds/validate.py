"""Math-identity oracle suite behind the `validate` CLI subcommand.

Three families of checks, each independent of the code paths they
audit: the inverse state map is checked by round-tripping through the
forward map, the confinement closed form is checked by quadrature, and
the filter attenuation metric is checked against two frozen reference
designs. The 10-coefficient reference target is known-inconsistent with
its own published coefficient listing (the coefficients' tallest
stopband lobe sits near -9.24 dB, not -13.65 dB), so that oracle fails
by design until the upstream figures are corrected; it is kept honest
rather than loosened.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .filters import FilterSpec, expand_symmetric, stopband_attenuation_db
from .well import WaveProbe, confinement_integral, delta_of_r, solve_r_batch

__all__ = [
    "REFERENCE_HALF_10",
    "REFERENCE_HALF_20",
    "REFERENCE_DELTA_DB_10",
    "REFERENCE_DELTA_DB_20",
    "OracleResult",
    "check_round_trip",
    "check_confinement",
    "check_attenuation_goldens",
    "run_validation",
]

# frozen half-coefficients of the two reference low-pass designs
REFERENCE_HALF_10 = (
    0.070824792496751651,
    -0.063184376757871669,
    -0.038806613903081974,
    0.013227497402604124,
    0.39889122413816075,
)
REFERENCE_HALF_20 = (
    0.011566963779404912,
    0.0077331878563942523,
    -0.0094736298940968737,
    -0.0068424142182682956,
    0.024047530227972496,
    0.04099248691610477,
    0.14983102243854188,
    0.0057626071427242216,
    -0.0038505536917844913,
    0.28023279944300716,
)
REFERENCE_DELTA_DB_10 = -13.6466
REFERENCE_DELTA_DB_20 = -17.7398
ATTENUATION_TOL_DB = 0.1


@dataclass(frozen=True)
class OracleResult:
    name: str
    passed: bool
    detail: str


def check_round_trip(samples: int = 10**5, seed: int = 7, tol: float = 1e-9) -> OracleResult:
    """r -> delta -> r over random (r, k); error bound 1e-9*max(1, |r|)."""
    rng = np.random.default_rng(seed)
    r = rng.uniform(-5.0, 5.0, samples)
    k = rng.uniform(1.0, 10.0, samples)
    deltas = delta_of_r(r, k)
    r_hat, solved, _ = solve_r_batch(deltas, k)
    err = np.abs(r_hat - r) / np.maximum(1.0, np.abs(r))
    worst = float(err.max())
    ok = bool(solved.all()) and worst <= tol
    return OracleResult(
        name="inverse-map round trip",
        passed=ok,
        detail=f"{samples} samples, worst scaled error {worst:.3e} (bound {tol:.0e})",
    )


def check_confinement(
    probes: int = 100, quad_points: int = 10**5, seed: int = 11, rel_tol: float = 1e-6
) -> OracleResult:
    """Quadrature of psi^2 over the vicinity must match 0.5*g."""
    rng = np.random.default_rng(seed)
    worst = 0.0
    for _ in range(probes):
        r = rng.uniform(1e-3, 2.0)
        g = rng.uniform(1.0 + 1e-9, 2.0 - 1e-9)
        k = rng.uniform(1.0, 10.0)
        probe = WaveProbe(r_boundary=r, g=g, k=k)
        mass = confinement_integral(probe, quad_points)
        worst = max(worst, abs(mass - 0.5 * g) / (0.5 * g))
    ok = worst <= rel_tol
    return OracleResult(
        name="confinement identity",
        passed=ok,
        detail=f"{probes} probes, worst relative error {worst:.3e} (bound {rel_tol:.0e})",
    )


def check_attenuation_goldens(grid_points: int = 8192) -> list[OracleResult]:
    """Both reference designs against their frozen attenuation targets."""
    results = []
    for label, half, target, order in (
        ("attenuation golden, 10-tap", REFERENCE_HALF_10, REFERENCE_DELTA_DB_10, 10),
        ("attenuation golden, 20-tap", REFERENCE_HALF_20, REFERENCE_DELTA_DB_20, 20),
    ):
        spec = FilterSpec(n_coeff=order)
        got = stopband_attenuation_db(expand_symmetric(half), spec, grid_points)
        ok = abs(got - target) <= ATTENUATION_TOL_DB
        results.append(
            OracleResult(
                name=label,
                passed=ok,
                detail=f"got {got:.4f} dB, target {target:.4f} +- {ATTENUATION_TOL_DB} dB",
            )
        )
    return results


def run_validation(quick: bool = False) -> list[OracleResult]:
    """Run every oracle; quick mode shrinks sample counts for smoke use."""
    if quick:
        # trapezoid error grows quadratically as the grid coarsens, so the
        # 10x smaller grid gets a 100x looser bound
        results = [
            check_round_trip(samples=10**3),
            check_confinement(probes=10, quad_points=10**4, rel_tol=1e-4),
        ]
    else:
        results = [check_round_trip(), check_confinement()]
    results.extend(check_attenuation_goldens())
    return results
