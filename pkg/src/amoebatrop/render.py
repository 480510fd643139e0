"""Minimal deterministic SVG output for experiment figures.

Hand-rolled on purpose: plots are diffable text artifacts, every numeric
field is written with six decimals, and the only consumers are the CLI
commands.  World coordinates map to pixels through an axis-preserving
affine transform with the y axis flipped.
"""

from __future__ import annotations

import math
from typing import Sequence

PALETTE = ("#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#ff7f0e", "#8c564b")


def _fmt(x: float) -> str:
    return f"{x:.6f}"


class SvgCanvas:
    def __init__(self, window_box, size: int = 520, margin: int = 36):
        (self.x0, self.x1), (self.y0, self.y1) = [(float(a), float(b)) for a, b in window_box]
        span = max(self.x1 - self.x0, self.y1 - self.y0)
        self.scale = (size - 2 * margin) / span
        self.margin = margin
        self.width = int(margin * 2 + (self.x1 - self.x0) * self.scale)
        self.height = int(margin * 2 + (self.y1 - self.y0) * self.scale)
        self.elements: list[str] = []

    def map(self, p) -> tuple[float, float]:
        px = self.margin + (float(p[0]) - self.x0) * self.scale
        py = self.height - self.margin - (float(p[1]) - self.y0) * self.scale
        return px, py

    def frame(self) -> None:
        self.elements.append(
            f'<rect x="{_fmt(self.margin)}" y="{_fmt(self.margin)}" '
            f'width="{_fmt(self.width - 2 * self.margin)}" '
            f'height="{_fmt(self.height - 2 * self.margin)}" '
            'fill="none" stroke="#888888" stroke-width="1.000000"/>')

    def segment(self, a, b, stroke: str = "#000000", width: float = 1.5,
                opacity: float = 1.0) -> None:
        ax, ay = self.map(a)
        bx, by = self.map(b)
        self.elements.append(
            f'<line x1="{_fmt(ax)}" y1="{_fmt(ay)}" x2="{_fmt(bx)}" y2="{_fmt(by)}" '
            f'stroke="{stroke}" stroke-width="{_fmt(width)}" stroke-opacity="{_fmt(opacity)}"/>')

    def circle(self, center, radius_px: float = 1.2, fill: str = "#000000",
               opacity: float = 1.0) -> None:
        cx, cy = self.map(center)
        self.elements.append(
            f'<circle cx="{_fmt(cx)}" cy="{_fmt(cy)}" r="{_fmt(radius_px)}" '
            f'fill="{fill}" fill-opacity="{_fmt(opacity)}"/>')

    def polygon(self, pts, stroke: str = "#333333", width: float = 1.5) -> None:
        mapped = " ".join(f"{_fmt(x)},{_fmt(y)}" for x, y in (self.map(p) for p in pts))
        self.elements.append(
            f'<polygon points="{mapped}" fill="none" stroke="{stroke}" '
            f'stroke-width="{_fmt(width)}"/>')

    def text(self, p, label: str, size: int = 12, fill: str = "#222222") -> None:
        px, py = self.map(p)
        self.elements.append(
            f'<text x="{_fmt(px)}" y="{_fmt(py)}" font-size="{size}" '
            f'fill="{fill}" font-family="monospace">{label}</text>')

    def caption(self, label: str) -> None:
        self.elements.append(
            f'<text x="{_fmt(self.margin)}" y="{_fmt(self.margin - 10)}" '
            f'font-size="13" fill="#222222" font-family="monospace">{label}</text>')

    def tostring(self) -> str:
        head = (f'<svg xmlns="http://www.w3.org/2000/svg" '
                f'width="{self.width}" height="{self.height}" '
                f'viewBox="0 0 {self.width} {self.height}">')
        return "\n".join([head, *self.elements, "</svg>", ""])

    def save(self, path) -> None:
        with open(path, "w", encoding="utf-8") as fh:
            fh.write(self.tostring())


def draw_corner_locus(canvas: SvgCanvas, comp, stroke: str = "#111111",
                      width: float = 2.0) -> None:
    box = ((canvas.x0, canvas.x1), (canvas.y0, canvas.y1))
    for a, b in comp.clipped_segments(box):
        canvas.segment(a, b, stroke=stroke, width=width)
    for x, y in comp.vertices:
        if canvas.x0 <= x <= canvas.x1 and canvas.y0 <= y <= canvas.y1:
            canvas.circle((x, y), radius_px=3.0, fill=stroke)


def draw_points(canvas: SvgCanvas, points: Sequence, fill: str,
                radius_px: float = 1.1, opacity: float = 0.55) -> None:
    for p in points:
        x, y = float(p[0]), float(p[1])
        if canvas.x0 <= x <= canvas.x1 and canvas.y0 <= y <= canvas.y1:
            canvas.circle((x, y), radius_px=radius_px, fill=fill, opacity=opacity)
