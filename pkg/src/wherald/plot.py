"""Minimal self-contained SVG line charts from sweep CSVs."""

from __future__ import annotations

import csv
from collections import defaultdict
from xml.sax.saxutils import escape

WIDTH, HEIGHT = 640, 420
MARGIN = dict(left=70, right=130, top=30, bottom=55)
PALETTE = ["#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#ff7f0e", "#8c564b", "#e377c2", "#17becf"]


def load_series(csv_path, x: str, y: str, series: str | None = None, where: dict | None = None):
    """Group CSV rows into {label: [(x, y), ...]} sorted by x."""
    groups = defaultdict(list)
    with open(csv_path, newline="") as f:
        reader = csv.DictReader(f)
        for col in [x, y] + ([series] if series else []):
            if col not in (reader.fieldnames or []):
                raise KeyError(f"column {col!r} not in {csv_path}")
        for row in reader:
            if where and any(row.get(k) != v for k, v in where.items()):
                continue
            if row[x] == "" or row[y] == "":
                continue
            label = f"{series}={row[series]}" if series else y
            groups[label].append((float(row[x]), float(row[y])))
    return {k: sorted(v) for k, v in groups.items()}


def _ticks(lo, hi, k=5):
    if hi == lo:
        return [lo]
    return [lo + (hi - lo) * i / (k - 1) for i in range(k)]


def render_svg(groups: dict, xlabel: str, ylabel: str, title: str = "") -> str:
    pts = [p for v in groups.values() for p in v]
    if not pts:
        raise ValueError("nothing to plot")
    xs, ys = [p[0] for p in pts], [p[1] for p in pts]
    x0, x1, y0, y1 = min(xs), max(xs), min(ys), max(ys)
    if x1 == x0:
        x0, x1 = x0 - 0.5, x1 + 0.5
    if y1 == y0:
        y0, y1 = y0 - 0.5, y1 + 0.5
    pw = WIDTH - MARGIN["left"] - MARGIN["right"]
    ph = HEIGHT - MARGIN["top"] - MARGIN["bottom"]

    def sx(v):
        return MARGIN["left"] + (v - x0) / (x1 - x0) * pw

    def sy(v):
        return MARGIN["top"] + (1 - (v - y0) / (y1 - y0)) * ph

    out = [
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{WIDTH}" height="{HEIGHT}" font-family="sans-serif" font-size="12">',
        f'<rect width="{WIDTH}" height="{HEIGHT}" fill="white"/>',
        f'<rect x="{MARGIN["left"]}" y="{MARGIN["top"]}" width="{pw}" height="{ph}" fill="none" stroke="black"/>',
    ]
    for t in _ticks(x0, x1):
        out.append(f'<text x="{sx(t):.1f}" y="{MARGIN["top"] + ph + 18}" text-anchor="middle">{t:.3g}</text>')
    for t in _ticks(y0, y1):
        out.append(f'<text x="{MARGIN["left"] - 6}" y="{sy(t) + 4:.1f}" text-anchor="end">{t:.3g}</text>')
        out.append(f'<line x1="{MARGIN["left"]}" x2="{MARGIN["left"] + pw}" y1="{sy(t):.1f}" y2="{sy(t):.1f}" stroke="#ddd"/>')
    out.append(f'<text x="{MARGIN["left"] + pw / 2}" y="{HEIGHT - 12}" text-anchor="middle">{escape(xlabel)}</text>')
    out.append(
        f'<text x="16" y="{MARGIN["top"] + ph / 2}" text-anchor="middle" '
        f'transform="rotate(-90 16 {MARGIN["top"] + ph / 2})">{escape(ylabel)}</text>'
    )
    if title:
        out.append(f'<text x="{MARGIN["left"] + pw / 2}" y="18" text-anchor="middle">{escape(title)}</text>')

    def sort_key(label):
        tail = label.split("=", 1)[-1]
        try:
            return (0, float(tail))
        except ValueError:
            return (1, label)

    for i, label in enumerate(sorted(groups, key=sort_key)):
        color = PALETTE[i % len(PALETTE)]
        path = " ".join(f"{sx(a):.2f},{sy(b):.2f}" for a, b in groups[label])
        out.append(f'<polyline fill="none" stroke="{color}" stroke-width="1.8" points="{path}"/>')
        ly = MARGIN["top"] + 14 + 16 * i
        lx = MARGIN["left"] + pw + 10
        out.append(f'<line x1="{lx}" x2="{lx + 18}" y1="{ly - 4}" y2="{ly - 4}" stroke="{color}" stroke-width="2"/>')
        out.append(f'<text x="{lx + 24}" y="{ly}">{escape(label)}</text>')
    out.append("</svg>")
    return "\n".join(out) + "\n"
