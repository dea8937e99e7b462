"""Minimal standalone SVG line charts, no plotting dependency.

One polyline, two axes, tick labels. Output depends only on the input
points, so plots are byte-reproducible.
"""
from __future__ import annotations

from pathlib import Path
from typing import Sequence

_WIDTH = 720
_HEIGHT = 480
_MARGIN_L = 70
_MARGIN_R = 20
_MARGIN_T = 40
_MARGIN_B = 50
_TICKS = 5


def _ticks(lo: float, hi: float) -> list[float]:
    step = (hi - lo) / (_TICKS - 1)
    return [lo + i * step for i in range(_TICKS)]


def line_plot(points: Sequence[tuple[float, float]], *, title: str = "",
              x_label: str = "", y_label: str = "") -> str:
    """Render (x, y) points as a standalone SVG document string."""
    w, h = _WIDTH, _HEIGHT
    px0, px1 = _MARGIN_L, w - _MARGIN_R
    py0, py1 = h - _MARGIN_B, _MARGIN_T  # y axis grows upward

    parts = [
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{w}" height="{h}" '
        f'viewBox="0 0 {w} {h}">',
        f'<rect width="{w}" height="{h}" fill="white"/>',
        f'<text x="{w // 2}" y="20" text-anchor="middle" font-size="14" '
        f'font-family="sans-serif">{title}</text>',
    ]
    if points:
        xs = [float(p[0]) for p in points]
        ys = [float(p[1]) for p in points]
        xlo, xhi = min(xs), max(xs)
        ylo, yhi = min(ys), max(ys)
        if xhi == xlo:
            xlo, xhi = xlo - 0.5, xhi + 0.5
        if yhi == ylo:
            ylo, yhi = ylo - 0.5, yhi + 0.5

        def sx(x: float) -> float:
            return px0 + (x - xlo) / (xhi - xlo) * (px1 - px0)

        def sy(y: float) -> float:
            return py0 - (y - ylo) / (yhi - ylo) * (py0 - py1)

        coords = " ".join(f"{sx(x):.2f},{sy(y):.2f}" for x, y in zip(xs, ys))
        parts.append(
            f'<polyline points="{coords}" fill="none" stroke="#1f6fb2" stroke-width="1.5"/>'
        )
        for xv in _ticks(xlo, xhi):
            px = sx(xv)
            parts.append(
                f'<line x1="{px:.2f}" y1="{py0}" x2="{px:.2f}" y2="{py0 + 5}" stroke="black"/>'
            )
            parts.append(
                f'<text x="{px:.2f}" y="{py0 + 18}" text-anchor="middle" font-size="11" '
                f'font-family="sans-serif">{xv:.6g}</text>'
            )
        for yv in _ticks(ylo, yhi):
            py = sy(yv)
            parts.append(
                f'<line x1="{px0 - 5}" y1="{py:.2f}" x2="{px0}" y2="{py:.2f}" stroke="black"/>'
            )
            parts.append(
                f'<text x="{px0 - 8}" y="{py + 4:.2f}" text-anchor="end" font-size="11" '
                f'font-family="sans-serif">{yv:.6g}</text>'
            )
    parts.append(f'<line x1="{px0}" y1="{py0}" x2="{px1}" y2="{py0}" stroke="black"/>')
    parts.append(f'<line x1="{px0}" y1="{py0}" x2="{px0}" y2="{py1}" stroke="black"/>')
    parts.append(
        f'<text x="{(px0 + px1) // 2}" y="{h - 12}" text-anchor="middle" font-size="12" '
        f'font-family="sans-serif">{x_label}</text>'
    )
    parts.append(
        f'<text x="{px0}" y="{py1 - 8}" text-anchor="middle" font-size="12" '
        f'font-family="sans-serif">{y_label}</text>'
    )
    parts.append("</svg>")
    return "\n".join(parts) + "\n"


def write_svg(path: str | Path, points: Sequence[tuple[float, float]], *,
              title: str = "", x_label: str = "", y_label: str = "") -> Path:
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    with open(path, "w", newline="") as fh:
        fh.write(line_plot(points, title=title, x_label=x_label, y_label=y_label))
    return path
