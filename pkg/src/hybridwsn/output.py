"""CSV tables and standalone SVG line charts."""

from __future__ import annotations

import csv
import io
import math
from pathlib import Path
from typing import Iterable, Sequence
from xml.sax.saxutils import escape

from .engine import RoundMetrics, SimResult

SERIES_COLUMNS = ("round", "alive", "dead", "packets_delivered",
                  "cumulative_packets", "total_residual_energy_j")

PALETTE = ("#1f77b4", "#d62728", "#2ca02c", "#ff7f0e", "#9467bd", "#8c564b", "#e377c2", "#7f7f7f")


def _cell(value) -> str:
    if value is None:
        return "not reached"
    if isinstance(value, bool):
        return str(value).lower()
    if isinstance(value, float):
        return repr(value)  # shortest exact round-trip form
    if hasattr(value, "item"):  # numpy scalar
        return _cell(value.item())
    return str(value)


def series_rows(series: Iterable[RoundMetrics]) -> list[tuple]:
    return [(m.round, m.alive, m.dead, m.packets_delivered, m.cumulative_packets,
             float(m.total_residual_energy)) for m in series]


def csv_text(data, columns: Sequence[str] | None = None) -> str:
    """Render a series or a table of dict rows as CSV text.

    ``data`` may be a :class:`SimResult`, a list of :class:`RoundMetrics` or a
    list of dicts. ``columns`` is needed to write a header for an empty
    table of dicts.
    """
    if isinstance(data, SimResult):
        data = data.series
    data = list(data)
    if (data and isinstance(data[0], RoundMetrics)) or (not data and columns is None):
        header, rows = list(SERIES_COLUMNS), series_rows(data)
    else:
        header = list(columns) if columns is not None else list(data[0])
        rows = [tuple(row.get(c) for c in header) for row in data]
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\r\n")
    writer.writerow(header)
    for row in rows:
        writer.writerow([_cell(v) for v in row])
    return buf.getvalue()


def emit_csv(data, path, columns: Sequence[str] | None = None) -> Path:
    path = Path(path)
    text = csv_text(data, columns)
    try:
        path.parent.mkdir(parents=True, exist_ok=True)
        with open(path, "w", encoding="utf-8", newline="") as fh:
            fh.write(text)
    except OSError as exc:
        raise OSError(f"cannot write {path}: {exc}") from exc
    return path


def read_series_csv(path) -> dict[str, list[float]]:
    """Columns of a CSV written by :func:`emit_csv`, as floats."""
    with open(path, newline="", encoding="utf-8") as fh:
        reader = csv.DictReader(fh)
        cols: dict[str, list[float]] = {name: [] for name in reader.fieldnames or []}
        for row in reader:
            for k, v in row.items():
                cols[k].append(float("nan") if v == "not reached" else float(v))
    return cols


def nice_ticks(lo: float, hi: float, target: int = 6) -> list[float]:
    if not (math.isfinite(lo) and math.isfinite(hi)):
        raise ValueError("non-finite axis range")
    if hi - lo <= 1e-9 * max(1.0, abs(lo), abs(hi)):
        hi = lo + max(1.0, abs(lo) * 0.1)
    raw = (hi - lo) / max(1, target - 1)
    mag = 10 ** math.floor(math.log10(raw))
    step = next(s * mag for s in (1, 2, 2.5, 5, 10) if s * mag >= raw)
    digits = max(0, 2 - math.floor(math.log10(step)))
    i = math.floor(lo / step)
    ticks = [round(i * step, digits)]
    while ticks[-1] < hi:
        i += 1
        ticks.append(round(i * step, digits))
    return ticks


def _fmt(v: float) -> str:
    return f"{v:.2f}"


def _tick_label(v: float) -> str:
    if v == int(v) and abs(v) < 1e15:
        return str(int(v))
    return f"{v:.6g}"


def svg_chart(series, x_label: str = "", y_label: str = "", title: str = "",
              width: int = 720, height: int = 440) -> str:
    """SVG line chart of ``series``: a sequence of ``(name, xs, ys)``.

    A single-point series is drawn as a marker instead of a polyline.
    """
    series = [(str(name), list(map(float, xs)), list(map(float, ys))) for name, xs, ys in series]
    if not series or any(len(xs) == 0 for _, xs, _ in series):
        raise ValueError("nothing to plot")
    for name, xs, ys in series:
        if len(xs) != len(ys):
            raise ValueError(f"series {name!r}: x and y lengths differ")

    all_x = [x for _, xs, _ in series for x in xs]
    all_y = [y for _, _, ys in series for y in ys if math.isfinite(y)]
    xt = nice_ticks(min(all_x), max(all_x))
    yt = nice_ticks(min(all_y, default=0.0), max(all_y, default=1.0))
    x0, x1, y0, y1 = xt[0], xt[-1], yt[0], yt[-1]

    left, right, top, bottom = 80, 170, 40, 60
    pw, ph = width - left - right, height - top - bottom

    def sx(x):
        return left + (x - x0) / (x1 - x0) * pw

    def sy(y):
        return top + ph - (y - y0) / (y1 - y0) * ph

    out = [
        '<?xml version="1.0" encoding="UTF-8" standalone="no"?>',
        f'<svg xmlns="http://www.w3.org/2000/svg" version="1.1" width="{width}" height="{height}" '
        f'viewBox="0 0 {width} {height}" font-family="sans-serif" font-size="12">',
        f'<rect x="0" y="0" width="{width}" height="{height}" fill="white"/>',
    ]
    if title:
        out.append(f'<text x="{width / 2:.1f}" y="22" text-anchor="middle" font-size="15">{escape(title)}</text>')
    out.append('<g class="axes" stroke="#444" stroke-width="1">')
    out.append(f'<line x1="{left}" y1="{top + ph}" x2="{left + pw}" y2="{top + ph}"/>')
    out.append(f'<line x1="{left}" y1="{top}" x2="{left}" y2="{top + ph}"/>')
    out.append("</g>")
    out.append('<g class="ticks" fill="#222">')
    for t in xt:
        px = sx(t)
        out.append(f'<line x1="{_fmt(px)}" y1="{top + ph}" x2="{_fmt(px)}" y2="{top + ph + 5}" stroke="#444"/>')
        out.append(f'<line x1="{_fmt(px)}" y1="{top}" x2="{_fmt(px)}" y2="{top + ph}" stroke="#eee"/>')
        out.append(f'<text x="{_fmt(px)}" y="{top + ph + 18}" text-anchor="middle">{_tick_label(t)}</text>')
    for t in yt:
        py = sy(t)
        out.append(f'<line x1="{left - 5}" y1="{_fmt(py)}" x2="{left}" y2="{_fmt(py)}" stroke="#444"/>')
        out.append(f'<line x1="{left}" y1="{_fmt(py)}" x2="{left + pw}" y2="{_fmt(py)}" stroke="#eee"/>')
        out.append(f'<text x="{left - 8}" y="{_fmt(py + 4)}" text-anchor="end">{_tick_label(t)}</text>')
    out.append("</g>")
    if x_label:
        out.append(f'<text x="{left + pw / 2:.1f}" y="{height - 15}" text-anchor="middle">{escape(x_label)}</text>')
    if y_label:
        out.append(f'<text x="18" y="{top + ph / 2:.1f}" text-anchor="middle" '
                   f'transform="rotate(-90 18 {top + ph / 2:.1f})">{escape(y_label)}</text>')

    for i, (name, xs, ys) in enumerate(series):
        color = PALETTE[i % len(PALETTE)]
        pts = [(sx(x), sy(y)) for x, y in zip(xs, ys) if math.isfinite(y)]
        if len(pts) == 1:
            px, py = pts[0]
            out.append(f'<circle cx="{_fmt(px)}" cy="{_fmt(py)}" r="3.5" fill="{color}"/>')
        elif pts:
            coords = " ".join(f"{_fmt(px)},{_fmt(py)}" for px, py in pts)
            out.append(f'<polyline fill="none" stroke="{color}" stroke-width="1.6" points="{coords}"/>')
        ly = top + 10 + 20 * i
        lx = left + pw + 15
        out.append(f'<line x1="{lx}" y1="{ly}" x2="{lx + 22}" y2="{ly}" stroke="{color}" stroke-width="3"/>')
        out.append(f'<text x="{lx + 28}" y="{ly + 4}">{escape(name)}</text>')
    out.append("</svg>")
    return "\n".join(out) + "\n"


def emit_svg_chart(series, x_label: str, y_label: str, path, title: str = "") -> Path:
    path = Path(path)
    text = svg_chart(series, x_label, y_label, title)
    try:
        path.parent.mkdir(parents=True, exist_ok=True)
        path.write_text(text, encoding="utf-8")
    except OSError as exc:
        raise OSError(f"cannot write {path}: {exc}") from exc
    return path
