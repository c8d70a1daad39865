"""Low-pass FIR design objective: band errors, cost, and attenuation.

The design target is the ideal low-pass response (1 on the passband
[0, omega_p], 0 on the stopband [omega_s, pi]). Candidate filters are
scored by trapezoid-integrated squared band errors

    E_p = (1/pi) * integral_0^{omega_p} (1 - H(w))^2 dw
    E_s = (1/pi) * integral_{omega_s}^{pi} H(w)^2 dw

with H the magnitude response, combined as gamma = eta*E_p +
(1-eta)*E_s. Linear phase is enforced by mirroring the free half of the
coefficient vector.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .objectives import Objective

__all__ = [
    "FilterSpec",
    "FilterEval",
    "fir_response_magnitude",
    "fir_band_errors",
    "fir_cost",
    "stopband_attenuation_db",
    "expand_symmetric",
    "evaluate_filter",
    "make_filter_objective",
    "write_coefficients",
    "read_coefficients",
    "ATTENUATION_GRID",
]

# attenuation is a max statistic and needs a denser grid than the integrals
ATTENUATION_GRID = 8192


@dataclass(frozen=True)
class FilterSpec:
    """Design problem description.

    n_coeff is the total coefficient count of the filter (the design's
    advertised order); with symmetric=True only the first
    ceil(n_coeff/2) coefficients are free and the rest mirror them.
    Band edges are in radians with 0 < omega_p < omega_s < pi.
    """

    n_coeff: int = 10
    omega_p: float = 0.3 * math.pi
    omega_s: float = 0.6 * math.pi
    eta: float = 0.5
    grid_points: int = 2048
    symmetric: bool = True

    def __post_init__(self) -> None:
        if self.n_coeff < 1:
            raise ValueError(f"n_coeff must be >= 1, got {self.n_coeff}")
        if not 0.0 < self.omega_p < self.omega_s < math.pi:
            raise ValueError(
                f"band edges must satisfy 0 < omega_p < omega_s < pi, "
                f"got omega_p={self.omega_p}, omega_s={self.omega_s}"
            )
        if not 0.0 <= self.eta <= 1.0:
            raise ValueError(f"eta must be in [0, 1], got {self.eta}")
        if self.grid_points < 2:
            raise ValueError(f"grid_points must be >= 2, got {self.grid_points}")

    @property
    def free_dimension(self) -> int:
        """Number of independent design variables."""
        return (self.n_coeff + 1) // 2 if self.symmetric else self.n_coeff


@dataclass(frozen=True)
class FilterEval:
    """Evaluated band errors, weighted cost, and stopband attenuation."""

    e_p: float
    e_s: float
    gamma: float
    delta_db: float


def fir_response_magnitude(h, omega):
    """|H(w)| = |sum_n h(n) exp(-j w n)| for scalar or array omega in [0, pi]."""
    h = np.asarray(h, dtype=float)
    w = np.asarray(omega, dtype=float)
    if np.any(w < 0.0) or np.any(w > np.pi):
        raise ValueError("omega must lie in [0, pi]")
    n = np.arange(h.size)
    mag = np.abs(np.exp(-1j * np.multiply.outer(w, n)) @ h)
    if np.ndim(omega) == 0:
        return float(mag)
    return mag


def fir_band_errors(h, spec: FilterSpec) -> tuple[float, float]:
    """Trapezoid band errors (E_p, E_s) on spec.grid_points samples per band."""
    w_pass = np.linspace(0.0, spec.omega_p, spec.grid_points)
    w_stop = np.linspace(spec.omega_s, np.pi, spec.grid_points)
    h_pass = fir_response_magnitude(h, w_pass)
    h_stop = fir_response_magnitude(h, w_stop)
    e_p = float(np.trapezoid((1.0 - h_pass) ** 2, w_pass) / np.pi)
    e_s = float(np.trapezoid(h_stop**2, w_stop) / np.pi)
    return e_p, e_s


def fir_cost(h, spec: FilterSpec) -> float:
    """Weighted design cost gamma = eta*E_p + (1 - eta)*E_s."""
    e_p, e_s = fir_band_errors(h, spec)
    return spec.eta * e_p + (1.0 - spec.eta) * e_s


def stopband_attenuation_db(h, spec: FilterSpec, grid_points: int | None = None) -> float:
    """Attenuation of the tallest stopband lobe, in dB.

    The response is sampled densely on [omega_s, pi] and the reported
    level is 20*log10 of the highest strict interior local maximum,
    i.e. the peak of the worst sidelobe. Roll-off from the transition
    band can dominate the raw magnitude at the band edge without being
    a lobe, so it does not count; a response with no interior peak at
    all (monotone over the band, e.g. an impulse) falls back to the
    plain grid maximum. |H| is used as-is, with no renormalization.
    An all-zero filter reports -inf.
    """
    grid = ATTENUATION_GRID if grid_points is None else grid_points
    if grid < 3:
        raise ValueError(f"attenuation grid must be >= 3 points, got {grid}")
    w = np.linspace(spec.omega_s, np.pi, grid)
    m = fir_response_magnitude(h, w)
    top = float(m.max())
    if top == 0.0:
        return float("-inf")
    interior = m[1:-1]
    peaks = (interior > m[:-2]) & (interior > m[2:])
    if peaks.any():
        top = float(interior[peaks].max())
    return float(20.0 * np.log10(top))


def expand_symmetric(half):
    """Mirror the free half into a full even-length linear-phase vector."""
    half = np.asarray(half, dtype=float)
    if half.size == 0:
        raise ValueError("free coefficient half must be non-empty")
    return np.concatenate([half, half[::-1]])


def evaluate_filter(h, spec: FilterSpec) -> FilterEval:
    """Full scoring of one coefficient vector under a design spec."""
    e_p, e_s = fir_band_errors(h, spec)
    return FilterEval(
        e_p=e_p,
        e_s=e_s,
        gamma=spec.eta * e_p + (1.0 - spec.eta) * e_s,
        delta_db=stopband_attenuation_db(h, spec),
    )


def make_filter_objective(spec: FilterSpec) -> Objective:
    """Wrap a design spec as an engine objective over the free variables."""
    if spec.symmetric:

        def evaluate(x) -> float:
            return fir_cost(expand_symmetric(x), spec)

    else:

        def evaluate(x) -> float:
            return fir_cost(x, spec)

    return Objective(
        name=f"fir-{spec.n_coeff}",
        dimension=spec.free_dimension,
        evaluate=evaluate,
        init_range=(-1.0, 1.0),
        known_min=None,
    )


def write_coefficients(h, path) -> None:
    """Write the full coefficient vector, one per line, 17 significant digits."""
    h = np.asarray(h, dtype=float)
    with open(path, "w", encoding="ascii") as fh:
        for c in h:
            fh.write(f"{c:.17g}\n")


def read_coefficients(path) -> np.ndarray:
    """Read a coefficient vector written by write_coefficients."""
    with open(path, "r", encoding="ascii") as fh:
        values = [float(line) for line in fh if line.strip()]
    if not values:
        raise ValueError(f"no coefficients found in {path}")
    return np.asarray(values, dtype=float)
