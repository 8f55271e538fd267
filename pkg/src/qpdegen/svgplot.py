"""Bare-bones static SVG line/scatter plots.

No fonts, scripts or timestamps are embedded, so the same data always
produces the same bytes.
"""
from __future__ import annotations

import math
from html import escape
from typing import Iterable, Sequence

Point = tuple[float, float]

PALETTE = ("#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#ff7f0e", "#8c564b", "#17becf")


def _f(x: float) -> str:
    return f"{x:.2f}"


def _nice_ticks(lo: float, hi: float, count: int = 5) -> list[float]:
    span = hi - lo
    if span <= 0:
        return [lo]
    raw = span / count
    mag = 10 ** math.floor(math.log10(raw))
    step = min((m * mag for m in (1, 2, 2.5, 5, 10) if m * mag >= raw), default=raw)
    start = math.ceil(lo / step - 1e-9) * step
    ticks = []
    t = start
    while t <= hi + 1e-9 * step:
        ticks.append(round(t, 10))
        t += step
    return ticks


class Plot:
    def __init__(self, title: str = "", xlabel: str = "", ylabel: str = "",
                 width: int = 480, height: int = 400,
                 xlim: Sequence[float] | None = None, ylim: Sequence[float] | None = None):
        self.title, self.xlabel, self.ylabel = title, xlabel, ylabel
        self.width, self.height = width, height
        self.xlim, self.ylim = xlim, ylim
        self.layers: list[tuple[str, list[Point], str, str]] = []
        self.marks: list[tuple[float, float, str]] = []

    def line(self, points: Iterable[Point], label: str = "", color: str | None = None) -> None:
        self._add("line", points, label, color)

    def scatter(self, points: Iterable[Point], label: str = "", color: str | None = None) -> None:
        self._add("scatter", points, label, color)

    def _add(self, kind, points, label, color):
        color = color or PALETTE[len(self.layers) % len(PALETTE)]
        self.layers.append((kind, [(float(x), float(y)) for x, y in points], label, color))

    def _limits(self):
        xs = [x for _, pts, _, _ in self.layers for x, _ in pts] + [m[0] for m in self.marks]
        ys = [y for _, pts, _, _ in self.layers for _, y in pts] + [m[1] for m in self.marks]
        xlim = self.xlim or ((min(xs), max(xs)) if xs else (0.0, 1.0))
        ylim = self.ylim or ((min(ys), max(ys)) if ys else (0.0, 1.0))
        if xlim[0] == xlim[1]:
            xlim = (xlim[0] - 0.5, xlim[1] + 0.5)
        if ylim[0] == ylim[1]:
            ylim = (ylim[0] - 0.5, ylim[1] + 0.5)
        return xlim, ylim

    def render(self) -> str:
        left, right, top, bottom = 60, 20, 30, 45
        w, h = self.width, self.height
        pw, ph = w - left - right, h - top - bottom
        (x0, x1), (y0, y1) = self._limits()

        def sx(x):
            return left + (x - x0) / (x1 - x0) * pw

        def sy(y):
            return top + (1.0 - (y - y0) / (y1 - y0)) * ph

        out = [
            f'<svg xmlns="http://www.w3.org/2000/svg" width="{w}" height="{h}" '
            f'viewBox="0 0 {w} {h}">',
            f'<rect x="0" y="0" width="{w}" height="{h}" fill="white"/>',
            f'<rect x="{left}" y="{top}" width="{pw}" height="{ph}" fill="none" stroke="black"/>',
        ]
        for t in _nice_ticks(x0, x1):
            X = sx(t)
            out.append(f'<line x1="{_f(X)}" y1="{top + ph}" x2="{_f(X)}" y2="{top + ph + 5}" stroke="black"/>')
            out.append(f'<text x="{_f(X)}" y="{top + ph + 18}" font-size="11" text-anchor="middle">{t:g}</text>')
        for t in _nice_ticks(y0, y1):
            Y = sy(t)
            out.append(f'<line x1="{left - 5}" y1="{_f(Y)}" x2="{left}" y2="{_f(Y)}" stroke="black"/>')
            out.append(f'<text x="{left - 8}" y="{_f(Y + 4)}" font-size="11" text-anchor="end">{t:g}</text>')
        if self.title:
            out.append(f'<text x="{w / 2:.1f}" y="18" font-size="13" text-anchor="middle">{escape(self.title)}</text>')
        if self.xlabel:
            out.append(f'<text x="{left + pw / 2:.1f}" y="{h - 8}" font-size="12" '
                       f'text-anchor="middle">{escape(self.xlabel)}</text>')
        if self.ylabel:
            out.append(f'<text x="14" y="{top + ph / 2:.1f}" font-size="12" text-anchor="middle" '
                       f'transform="rotate(-90 14 {top + ph / 2:.1f})">{escape(self.ylabel)}</text>')

        out.append(f'<clipPath id="plot-area"><rect x="{left}" y="{top}" width="{pw}" height="{ph}"/></clipPath>')
        legend_y = top + 14
        for kind, pts, label, color in self.layers:
            if kind == "line" and len(pts) > 1:
                coords = " ".join(f"{_f(sx(x))},{_f(sy(y))}" for x, y in pts)
                out.append(f'<polyline points="{coords}" fill="none" stroke="{color}" '
                           f'stroke-width="1.5" clip-path="url(#plot-area)"/>')
            elif kind == "scatter":
                for x, y in pts:
                    out.append(f'<circle cx="{_f(sx(x))}" cy="{_f(sy(y))}" r="3" fill="{color}"/>')
            if label:
                out.append(f'<text x="{left + pw - 6}" y="{legend_y}" font-size="11" text-anchor="end" '
                           f'fill="{color}">{escape(label)}</text>')
                legend_y += 14
        for x, y, text in self.marks:
            out.append(f'<circle cx="{_f(sx(x))}" cy="{_f(sy(y))}" r="4" fill="none" stroke="black"/>')
            if text:
                out.append(f'<text x="{_f(sx(x) + 6)}" y="{_f(sy(y) - 6)}" font-size="11">{escape(text)}</text>')
        out.append("</svg>")
        return "\n".join(out) + "\n"

    def mark(self, x: float, y: float, text: str = "") -> None:
        """A labelled point marker drawn above all layers."""
        self.marks.append((float(x), float(y), text))
