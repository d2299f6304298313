"""Minimal standalone SVG writer for log-scale convergence plots.

No plotting backend: artifacts must be byte-deterministic and asset-free,
so the polylines are emitted directly.  Residues are clamped at 1e-16
before the log transform (exact zeros from stationary runs would otherwise
break the scale).
"""

from __future__ import annotations

import math

import numpy as np

__all__ = ["write_convergence_svg", "LOG_FLOOR"]

LOG_FLOOR = 1e-16

WIDTH, HEIGHT = 640, 480
MARGIN_L, MARGIN_R, MARGIN_T, MARGIN_B = 64, 16, 28, 44

SERIES_COLORS = {
    "gd": "#e08214",
    "phb": "#2166ac",
    "nag": "#1a9850",
    "ref": "#d62728",
}
FALLBACK_COLOR = "#555555"


def _fmt(x: float) -> str:
    return f"{x:.2f}"


def _x_ticks(n: int) -> list[int]:
    if n <= 10:
        return list(range(n + 1))
    step = 10 ** max(0, int(math.floor(math.log10(n))) )
    if n / step < 3:
        step //= 2
    ticks = list(range(0, n + 1, max(1, step)))
    if ticks[-1] != n:
        ticks.append(n)
    return ticks


def write_convergence_svg(path, epochs: np.ndarray, series: dict, title: str = "") -> None:
    """Write a log10-residue vs. epoch plot.

    ``series`` maps a label (``gd``/``phb``/``nag``/``ref`` get their
    conventional colors) to an array aligned with ``epochs``.
    """
    epochs = np.asarray(epochs, dtype=float)
    n = float(epochs.max()) if epochs.size else 1.0

    logs = {}
    for label, ys in series.items():
        ys = np.maximum(np.asarray(ys, dtype=float), LOG_FLOOR)
        logs[label] = np.log10(ys)

    lo = math.floor(min(arr.min() for arr in logs.values()))
    hi = math.ceil(max(arr.max() for arr in logs.values()))
    if hi == lo:
        hi = lo + 1

    plot_w = WIDTH - MARGIN_L - MARGIN_R
    plot_h = HEIGHT - MARGIN_T - MARGIN_B

    def px(e):
        return MARGIN_L + plot_w * (e / n if n else 0.0)

    def py(v):
        return MARGIN_T + plot_h * (hi - v) / (hi - lo)

    parts = [
        '<?xml version="1.0" encoding="UTF-8"?>',
        f'<svg xmlns="http://www.w3.org/2000/svg" version="1.1" '
        f'width="{WIDTH}" height="{HEIGHT}" viewBox="0 0 {WIDTH} {HEIGHT}">',
        f'<rect width="{WIDTH}" height="{HEIGHT}" fill="white"/>',
    ]
    if title:
        parts.append(
            f'<text x="{WIDTH / 2:.0f}" y="18" text-anchor="middle" '
            f'font-family="sans-serif" font-size="13">{title}</text>'
        )

    # frame
    parts.append(
        f'<rect x="{MARGIN_L}" y="{MARGIN_T}" width="{plot_w}" height="{plot_h}" '
        'fill="none" stroke="#000000" stroke-width="1"/>'
    )

    # y ticks at integer decades (thinned to at most ~12 labels)
    span = hi - lo
    dec_step = max(1, int(math.ceil(span / 12)))
    for d in range(lo, hi + 1, dec_step):
        y = py(d)
        parts.append(
            f'<line x1="{MARGIN_L - 4}" y1="{_fmt(y)}" x2="{MARGIN_L}" '
            f'y2="{_fmt(y)}" stroke="#000000" stroke-width="1"/>'
        )
        parts.append(
            f'<text x="{MARGIN_L - 8}" y="{_fmt(y + 4)}" text-anchor="end" '
            f'font-family="sans-serif" font-size="11">1e{d}</text>'
        )
        if d != lo:
            parts.append(
                f'<line x1="{MARGIN_L}" y1="{_fmt(y)}" x2="{MARGIN_L + plot_w}" '
                f'y2="{_fmt(y)}" stroke="#dddddd" stroke-width="0.5"/>'
            )

    for t in _x_ticks(int(n)):
        x = px(t)
        parts.append(
            f'<line x1="{_fmt(x)}" y1="{MARGIN_T + plot_h}" x2="{_fmt(x)}" '
            f'y2="{MARGIN_T + plot_h + 4}" stroke="#000000" stroke-width="1"/>'
        )
        parts.append(
            f'<text x="{_fmt(x)}" y="{MARGIN_T + plot_h + 18}" text-anchor="middle" '
            f'font-family="sans-serif" font-size="11">{t}</text>'
        )

    parts.append(
        f'<text x="{MARGIN_L + plot_w / 2:.0f}" y="{HEIGHT - 8}" text-anchor="middle" '
        'font-family="sans-serif" font-size="12">epoch</text>'
    )
    parts.append(
        f'<text x="14" y="{MARGIN_T + plot_h / 2:.0f}" text-anchor="middle" '
        f'font-family="sans-serif" font-size="12" '
        f'transform="rotate(-90 14 {MARGIN_T + plot_h / 2:.0f})">residue</text>'
    )

    # one polyline per series
    for label, arr in logs.items():
        color = SERIES_COLORS.get(label, FALLBACK_COLOR)
        pts = " ".join(
            f"{_fmt(px(e))},{_fmt(py(v))}" for e, v in zip(epochs, arr)
        )
        dash = ' stroke-dasharray="5,3"' if label == "ref" else ""
        parts.append(
            f'<polyline points="{pts}" fill="none" stroke="{color}" '
            f'stroke-width="1.5"{dash}/>'
        )

    # legend
    lx, ly = MARGIN_L + 10, MARGIN_T + 14
    for i, label in enumerate(logs):
        color = SERIES_COLORS.get(label, FALLBACK_COLOR)
        y = ly + 16 * i
        parts.append(
            f'<line x1="{lx}" y1="{y - 4}" x2="{lx + 22}" y2="{y - 4}" '
            f'stroke="{color}" stroke-width="2"/>'
        )
        parts.append(
            f'<text x="{lx + 28}" y="{y}" font-family="sans-serif" '
            f'font-size="11">{label}</text>'
        )

    parts.append("</svg>")
    with open(path, "w", encoding="utf-8", newline="\n") as fh:
        fh.write("\n".join(parts))
        fh.write("\n")
