"""Dependency-free SVG rendering for the report commands.

Charts are plain strings assembled deterministically, so repeated runs with
identical inputs produce byte-identical files.
"""

from __future__ import annotations

from typing import Sequence, Tuple

import numpy as np

WIDTH = 800
HEIGHT = 600
MARGIN_LEFT = 80
MARGIN_RIGHT = 160
MARGIN_TOP = 60
MARGIN_BOTTOM = 70

COLORS = [
    "#1f77b4",
    "#d62728",
    "#2ca02c",
    "#ff7f0e",
    "#9467bd",
    "#8c564b",
]

#: White-to-red ramp for error heatmaps.
HEAT_STOPS = [
    (1.0, 1.0, 1.0),
    (1.0, 0.86, 0.57),
    (0.98, 0.55, 0.32),
    (0.84, 0.19, 0.15),
    (0.5, 0.0, 0.1),
]


def _escape(text: str) -> str:
    return (
        text.replace("&", "&amp;")
        .replace("<", "&lt;")
        .replace(">", "&gt;")
        .replace('"', "&quot;")
        .replace("'", "&#39;")
    )


def _heat_color(t: float) -> str:
    """Interpolated ramp color for t in [0, 1]."""
    t = min(max(t, 0.0), 1.0)
    pos = t * (len(HEAT_STOPS) - 1)
    idx = min(int(pos), len(HEAT_STOPS) - 2)
    frac = pos - idx
    r0, g0, b0 = HEAT_STOPS[idx]
    r1, g1, b1 = HEAT_STOPS[idx + 1]
    r = round(255 * (r0 + (r1 - r0) * frac))
    g = round(255 * (g0 + (g1 - g0) * frac))
    b = round(255 * (b0 + (b1 - b0) * frac))
    return f"#{r:02x}{g:02x}{b:02x}"


def render_line_chart(
    xs: Sequence[float],
    series: Sequence[Tuple[str, Sequence[float]]],
    title: str,
    x_label: str = "x",
    y_label: str = "value",
) -> str:
    """Multi-series line chart over a shared abscissa, decile x ticks."""
    xs = np.asarray(xs, dtype=float)
    if xs.size < 2:
        raise ValueError("need at least two abscissa points")
    if not series:
        raise ValueError("no series to plot")
    plot_left = MARGIN_LEFT
    plot_right = WIDTH - MARGIN_RIGHT
    plot_top = MARGIN_TOP
    plot_bottom = HEIGHT - MARGIN_BOTTOM
    plot_width = plot_right - plot_left
    plot_height = plot_bottom - plot_top

    all_values = np.concatenate([np.asarray(ys, dtype=float) for _, ys in series])
    y_min = min(0.0, float(all_values.min()))
    y_max = float(all_values.max())
    if y_max <= y_min:
        y_max = y_min + 1.0
    y_max += 0.05 * (y_max - y_min)
    x_min, x_max = float(xs[0]), float(xs[-1])

    def x_to_px(x: float) -> float:
        return plot_left + (x - x_min) / (x_max - x_min) * plot_width

    def y_to_px(y: float) -> float:
        return plot_bottom - (y - y_min) / (y_max - y_min) * plot_height

    lines = [
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{WIDTH}" height="{HEIGHT}" '
        f'viewBox="0 0 {WIDTH} {HEIGHT}">',
        '<rect x="0" y="0" width="100%" height="100%" fill="#ffffff"/>',
        f'<text x="{WIDTH / 2:.1f}" y="32" text-anchor="middle" font-size="20" '
        f'font-family="Arial">{_escape(title)}</text>',
    ]

    # Horizontal grid with 6 labeled levels.
    for i in range(7):
        value = y_min + (y_max - y_min) * i / 6
        y = y_to_px(value)
        lines.append(
            f'<line x1="{plot_left}" y1="{y:.2f}" x2="{plot_right}" y2="{y:.2f}" '
            'stroke="#d9d9d9" stroke-width="1"/>'
        )
        lines.append(
            f'<text x="{plot_left - 8}" y="{y + 4:.2f}" text-anchor="end" font-size="12" '
            f'font-family="Arial">{value:.3g}</text>'
        )

    lines.append(
        f'<line x1="{plot_left}" y1="{plot_bottom}" x2="{plot_right}" y2="{plot_bottom}" '
        'stroke="#000000" stroke-width="2"/>'
    )
    lines.append(
        f'<line x1="{plot_left}" y1="{plot_top}" x2="{plot_left}" y2="{plot_bottom}" '
        'stroke="#000000" stroke-width="2"/>'
    )

    # Decile ticks along x.
    for i in range(11):
        value = x_min + (x_max - x_min) * i / 10
        x = x_to_px(value)
        lines.append(
            f'<line x1="{x:.2f}" y1="{plot_bottom}" x2="{x:.2f}" y2="{plot_bottom + 6}" '
            'stroke="#000000" stroke-width="1"/>'
        )
        lines.append(
            f'<text x="{x:.2f}" y="{plot_bottom + 24}" text-anchor="middle" font-size="12" '
            f'font-family="Arial">{value:.2g}</text>'
        )
    lines.append(
        f'<text x="{(plot_left + plot_right) / 2:.1f}" y="{HEIGHT - 16}" text-anchor="middle" '
        f'font-size="14" font-family="Arial">{_escape(x_label)}</text>'
    )
    lines.append(
        f'<text x="20" y="{(plot_top + plot_bottom) / 2:.1f}" text-anchor="middle" '
        f'font-size="14" font-family="Arial" '
        f'transform="rotate(-90 20 {(plot_top + plot_bottom) / 2:.1f})">{_escape(y_label)}</text>'
    )

    legend_x = plot_right + 16
    legend_y = plot_top + 16
    for idx, (label, ys) in enumerate(series):
        ys = np.asarray(ys, dtype=float)
        if ys.shape != xs.shape:
            raise ValueError(f"series {label!r} length does not match the abscissa")
        color = COLORS[idx % len(COLORS)]
        points = " ".join(
            f"{x_to_px(float(x)):.2f},{y_to_px(float(y)):.2f}" for x, y in zip(xs, ys)
        )
        lines.append(
            f'<polyline fill="none" stroke="{color}" stroke-width="2" points="{points}"/>'
        )
        ly = legend_y + idx * 24
        lines.append(
            f'<line x1="{legend_x}" y1="{ly}" x2="{legend_x + 24}" y2="{ly}" '
            f'stroke="{color}" stroke-width="2"/>'
        )
        lines.append(
            f'<text x="{legend_x + 30}" y="{ly + 4}" text-anchor="start" font-size="13" '
            f'font-family="Arial">{_escape(label)}</text>'
        )

    lines.append("</svg>")
    return "\n".join(lines) + "\n"


def render_heatmap(
    values: np.ndarray,
    title: str,
    x_label: str = "y1",
    y_label: str = "y2",
    lo1: float = 0.0,
    hi1: float = 1.0,
    lo2: float = 0.0,
    hi2: float = 1.0,
) -> str:
    """Cell heatmap of a matrix indexed as values[i, j] = f(x_i, y_j).

    The first axis runs left to right, the second bottom to top, so the
    picture matches the usual orientation of the unit square.
    """
    values = np.asarray(values, dtype=float)
    if values.ndim != 2 or values.size == 0:
        raise ValueError("heatmap needs a nonempty 2-d array")
    n1, n2 = values.shape
    plot_left = MARGIN_LEFT
    plot_right = WIDTH - MARGIN_RIGHT
    plot_top = MARGIN_TOP
    plot_bottom = HEIGHT - MARGIN_BOTTOM
    plot_width = plot_right - plot_left
    plot_height = plot_bottom - plot_top
    v_min = float(values.min())
    v_max = float(values.max())
    spread = v_max - v_min if v_max > v_min else 1.0

    lines = [
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{WIDTH}" height="{HEIGHT}" '
        f'viewBox="0 0 {WIDTH} {HEIGHT}">',
        '<rect x="0" y="0" width="100%" height="100%" fill="#ffffff"/>',
        f'<text x="{WIDTH / 2:.1f}" y="32" text-anchor="middle" font-size="20" '
        f'font-family="Arial">{_escape(title)}</text>',
    ]

    cell_w = plot_width / n1
    cell_h = plot_height / n2
    for i in range(n1):
        x = plot_left + i * cell_w
        for j in range(n2):
            # Row j = 0 sits at the bottom edge.
            y = plot_bottom - (j + 1) * cell_h
            color = _heat_color((values[i, j] - v_min) / spread)
            lines.append(
                f'<rect x="{x:.2f}" y="{y:.2f}" width="{cell_w + 0.5:.2f}" '
                f'height="{cell_h + 0.5:.2f}" fill="{color}"/>'
            )

    # Decile ticks on both axes.
    for i in range(11):
        frac = i / 10
        x = plot_left + frac * plot_width
        value1 = lo1 + (hi1 - lo1) * frac
        lines.append(
            f'<line x1="{x:.2f}" y1="{plot_bottom}" x2="{x:.2f}" y2="{plot_bottom + 6}" '
            'stroke="#000000" stroke-width="1"/>'
        )
        lines.append(
            f'<text x="{x:.2f}" y="{plot_bottom + 24}" text-anchor="middle" font-size="12" '
            f'font-family="Arial">{value1:.2g}</text>'
        )
        y = plot_bottom - frac * plot_height
        value2 = lo2 + (hi2 - lo2) * frac
        lines.append(
            f'<line x1="{plot_left - 6}" y1="{y:.2f}" x2="{plot_left}" y2="{y:.2f}" '
            'stroke="#000000" stroke-width="1"/>'
        )
        lines.append(
            f'<text x="{plot_left - 10}" y="{y + 4:.2f}" text-anchor="end" font-size="12" '
            f'font-family="Arial">{value2:.2g}</text>'
        )
    lines.append(
        f'<text x="{(plot_left + plot_right) / 2:.1f}" y="{HEIGHT - 16}" text-anchor="middle" '
        f'font-size="14" font-family="Arial">{_escape(x_label)}</text>'
    )
    lines.append(
        f'<text x="20" y="{(plot_top + plot_bottom) / 2:.1f}" text-anchor="middle" '
        f'font-size="14" font-family="Arial" '
        f'transform="rotate(-90 20 {(plot_top + plot_bottom) / 2:.1f})">{_escape(y_label)}</text>'
    )

    # Color bar with min/max labels.
    bar_x = plot_right + 30
    bar_w = 22
    steps = 40
    step_h = plot_height / steps
    for s in range(steps):
        t = 1.0 - s / (steps - 1)
        y = plot_top + s * step_h
        lines.append(
            f'<rect x="{bar_x}" y="{y:.2f}" width="{bar_w}" height="{step_h + 0.5:.2f}" '
            f'fill="{_heat_color(t)}"/>'
        )
    lines.append(
        f'<text x="{bar_x + bar_w + 6}" y="{plot_top + 10:.2f}" text-anchor="start" '
        f'font-size="12" font-family="Arial">{v_max:.3g}</text>'
    )
    lines.append(
        f'<text x="{bar_x + bar_w + 6}" y="{plot_bottom:.2f}" text-anchor="start" '
        f'font-size="12" font-family="Arial">{v_min:.3g}</text>'
    )
    lines.append("</svg>")
    return "\n".join(lines) + "\n"


def write_svg(path, content: str) -> None:
    with open(path, "w", newline="\n") as fh:
        fh.write(content)
