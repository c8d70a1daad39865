"""Minimal deterministic SVG line plots.

Plots are written directly as SVG text so artifact bytes depend only on
the data passed in: no plotting library, no fonts measured, no
timestamps. Good enough for convergence traces and response curves.
"""

from __future__ import annotations

import math

__all__ = ["line_plot"]

_PALETTE = (
    "#1f77b4",
    "#d62728",
    "#2ca02c",
    "#9467bd",
    "#ff7f0e",
    "#8c564b",
    "#e377c2",
    "#7f7f7f",
    "#bcbd22",
    "#17becf",
)

_MARGIN_L, _MARGIN_R, _MARGIN_T, _MARGIN_B = 64, 18, 36, 46


def _fmt(value: float) -> str:
    return f"{value:.6g}"


def _ticks(lo: float, hi: float, count: int = 5) -> list[float]:
    if hi == lo:
        return [lo]
    return [lo + (hi - lo) * i / (count - 1) for i in range(count)]


def line_plot(
    series,
    path,
    *,
    title: str = "",
    x_label: str = "",
    y_label: str = "",
    log_y: bool = False,
    width: int = 640,
    height: int = 420,
) -> None:
    """Write a polyline plot of one or more (xs, ys) series.

    series is a sequence of (xs, ys) pairs of equal-length sequences.
    With log_y the vertical axis is log10-scaled; non-positive values
    are clamped to the smallest positive value present (or 1e-300 if
    none), so traces that bottom out at zero still render.
    """
    series = [(list(xs), list(ys)) for xs, ys in series]
    if not series or any(len(xs) == 0 or len(xs) != len(ys) for xs, ys in series):
        raise ValueError("series must be non-empty (xs, ys) pairs of equal length")

    if log_y:
        positive = [y for _, ys in series for y in ys if y > 0.0]
        floor = min(positive) if positive else 1e-300
        tf = lambda y: math.log10(max(y, floor))
    else:
        tf = lambda y: y

    all_x = [x for xs, _ in series for x in xs]
    all_y = [tf(y) for _, ys in series for y in ys]
    x_lo, x_hi = min(all_x), max(all_x)
    y_lo, y_hi = min(all_y), max(all_y)
    if x_hi == x_lo:
        x_lo, x_hi = x_lo - 1.0, x_hi + 1.0
    if y_hi == y_lo:
        y_lo, y_hi = y_lo - 1.0, y_hi + 1.0

    plot_w = width - _MARGIN_L - _MARGIN_R
    plot_h = height - _MARGIN_T - _MARGIN_B

    def px(x: float) -> float:
        return _MARGIN_L + (x - x_lo) / (x_hi - x_lo) * plot_w

    def py(y: float) -> float:
        return _MARGIN_T + (y_hi - tf(y)) / (y_hi - y_lo) * plot_h

    lines = [
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{width}" height="{height}" '
        f'viewBox="0 0 {width} {height}">',
        f'<rect width="{width}" height="{height}" fill="white"/>',
        f'<rect x="{_MARGIN_L}" y="{_MARGIN_T}" width="{plot_w}" height="{plot_h}" '
        'fill="none" stroke="black" stroke-width="1"/>',
    ]
    if title:
        lines.append(
            f'<text x="{width / 2:.2f}" y="22" text-anchor="middle" '
            f'font-family="sans-serif" font-size="14">{title}</text>'
        )
    if x_label:
        lines.append(
            f'<text x="{_MARGIN_L + plot_w / 2:.2f}" y="{height - 10}" '
            f'text-anchor="middle" font-family="sans-serif" font-size="12">{x_label}</text>'
        )
    if y_label:
        yc = _MARGIN_T + plot_h / 2
        lines.append(
            f'<text x="16" y="{yc:.2f}" text-anchor="middle" font-family="sans-serif" '
            f'font-size="12" transform="rotate(-90 16 {yc:.2f})">{y_label}</text>'
        )

    for tx in _ticks(x_lo, x_hi):
        gx = _MARGIN_L + (tx - x_lo) / (x_hi - x_lo) * plot_w
        lines.append(
            f'<line x1="{gx:.2f}" y1="{_MARGIN_T + plot_h}" x2="{gx:.2f}" '
            f'y2="{_MARGIN_T + plot_h + 5}" stroke="black" stroke-width="1"/>'
        )
        lines.append(
            f'<text x="{gx:.2f}" y="{_MARGIN_T + plot_h + 18}" text-anchor="middle" '
            f'font-family="sans-serif" font-size="11">{_fmt(tx)}</text>'
        )
    for ty in _ticks(y_lo, y_hi):
        gy = _MARGIN_T + (y_hi - ty) / (y_hi - y_lo) * plot_h
        label = _fmt(10.0**ty if log_y else ty)
        lines.append(
            f'<line x1="{_MARGIN_L - 5}" y1="{gy:.2f}" x2="{_MARGIN_L}" '
            f'y2="{gy:.2f}" stroke="black" stroke-width="1"/>'
        )
        lines.append(
            f'<text x="{_MARGIN_L - 8}" y="{gy + 4:.2f}" text-anchor="end" '
            f'font-family="sans-serif" font-size="11">{label}</text>'
        )

    for i, (xs, ys) in enumerate(series):
        color = _PALETTE[i % len(_PALETTE)]
        points = " ".join(f"{px(x):.2f},{py(y):.2f}" for x, y in zip(xs, ys))
        lines.append(
            f'<polyline points="{points}" fill="none" stroke="{color}" stroke-width="1.2"/>'
        )

    lines.append("</svg>")
    with open(path, "w", encoding="ascii") as fh:
        fh.write("\n".join(lines) + "\n")
