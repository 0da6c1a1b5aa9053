"""Result emission: deterministic CSV tables and SVG scatter charts."""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import IO

from .evolution import ResultSet
from .modes import ModeId


def _fmt(x: float) -> str:
    """Round-trip float formatting (17 significant digits)."""
    return format(x, ".17g")


def write_records_csv(results: ResultSet, sink: IO[str]) -> None:
    """Write the trip records as CSV, one fraction column per enabled mode
    in config order, rows sorted (year, replicate), LF line endings."""
    mode_ids = results.config.enabled_modes
    header = ["scenario", "year", "replicate", "trip_cost_usd", "n_legs"]
    header += [f"frac_{m}" for m in mode_ids]
    sink.write(",".join(header) + "\n")
    name = results.config.name
    for rec in sorted(results.records, key=lambda r: (r.year, r.replicate)):
        row = [name, str(rec.year), str(rec.replicate),
               _fmt(rec.trip_cost), str(rec.n_legs)]
        row += [_fmt(rec.mode_distance_fraction[m]) for m in mode_ids]
        sink.write(",".join(row) + "\n")


# Color ramp anchors: purple at fraction 0, teal-green at 0.5, yellow at 1.
_RAMP = ((0.0, (0x44, 0x01, 0x54)),
         (0.5, (0x21, 0x91, 0x8C)),
         (1.0, (0xFD, 0xE7, 0x25)))


def ramp_color(fraction: float) -> str:
    """Hex fill color for a distance fraction, clamped to [0, 1]."""
    f = min(1.0, max(0.0, fraction))
    for (f0, c0), (f1, c1) in zip(_RAMP, _RAMP[1:]):
        if f <= f1:
            t = (f - f0) / (f1 - f0)
            rgb = tuple(round(a + t * (b - a)) for a, b in zip(c0, c1))
            return "#{:02X}{:02X}{:02X}".format(*rgb)
    return "#{:02X}{:02X}{:02X}".format(*_RAMP[-1][1])


def cost_axis_value(cost_usd: float) -> float:
    """Vertical data coordinate of a trip cost: log10 of the cost in $M."""
    return math.log10(cost_usd / 1e6)


@dataclass(frozen=True)
class PlotSpec:
    """Scatter chart layout: points colored by one mode's distance fraction."""

    focus_mode: ModeId
    width: int = 960
    height: int = 600
    margin_left: int = 70
    margin_right: int = 20
    margin_top: int = 30
    margin_bottom: int = 50
    point_radius: float = 3.0


def _year_tick_step(span: int) -> int:
    for step in (1, 2, 5, 10):
        if span / step <= 12:
            return step
    return 20


def render_scatter_svg(results: ResultSet, plot: PlotSpec, sink: IO[str]) -> None:
    """Render one circle per trip record at (year, log10(cost in $M)),
    filled from the color ramp at the record's focus-mode distance fraction.

    The output is deterministic for a given input.
    """
    records = sorted(results.records, key=lambda r: (r.year, r.replicate))
    if not records:
        raise ValueError("cannot plot an empty result set")
    if plot.focus_mode not in results.config.enabled_modes:
        raise ValueError(f"focus mode {plot.focus_mode!r} not in scenario")

    y_vals = [cost_axis_value(r.trip_cost) for r in records]
    y_lo = math.floor(min(y_vals))
    y_hi = math.ceil(max(y_vals))
    if y_hi == y_lo:
        y_hi = y_lo + 1
    x_lo = results.config.start_year
    x_hi = results.config.end_year
    if x_hi == x_lo:
        x_lo, x_hi = x_lo - 1, x_hi + 1

    px0, px1 = plot.margin_left, plot.width - plot.margin_right
    py0, py1 = plot.height - plot.margin_bottom, plot.margin_top

    def sx(year: float) -> float:
        return px0 + (year - x_lo) / (x_hi - x_lo) * (px1 - px0)

    def sy(v: float) -> float:
        return py0 + (v - y_lo) / (y_hi - y_lo) * (py1 - py0)

    out = []
    out.append('<?xml version="1.0" encoding="UTF-8"?>')
    out.append(
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{plot.width}" '
        f'height="{plot.height}" viewBox="0 0 {plot.width} {plot.height}">')
    out.append(f'<rect width="{plot.width}" height="{plot.height}" fill="white"/>')

    # Decade grid: one horizontal line per integer log10 value.
    for v in range(y_lo, y_hi + 1):
        y = sy(v)
        out.append(f'<line x1="{px0}" y1="{y:.2f}" x2="{px1}" y2="{y:.2f}" '
                   f'stroke="#DDDDDD" stroke-width="1"/>')
        out.append(f'<text x="{px0 - 8}" y="{y + 4:.2f}" text-anchor="end" '
                   f'font-family="sans-serif" font-size="12">{v}</text>')

    step = _year_tick_step(x_hi - x_lo)
    year = x_lo
    while year <= x_hi:
        x = sx(year)
        out.append(f'<line x1="{x:.2f}" y1="{py0}" x2="{x:.2f}" y2="{py0 + 5}" '
                   f'stroke="black" stroke-width="1"/>')
        out.append(f'<text x="{x:.2f}" y="{py0 + 20}" text-anchor="middle" '
                   f'font-family="sans-serif" font-size="12">{year}</text>')
        year += step

    # Axes.
    out.append(f'<line x1="{px0}" y1="{py0}" x2="{px1}" y2="{py0}" '
               f'stroke="black" stroke-width="1"/>')
    out.append(f'<line x1="{px0}" y1="{py0}" x2="{px0}" y2="{py1}" '
               f'stroke="black" stroke-width="1"/>')
    out.append(f'<text x="{(px0 + px1) / 2:.2f}" y="{plot.height - 10}" '
               f'text-anchor="middle" font-family="sans-serif" font-size="13">'
               f'Year</text>')
    out.append(f'<text x="16" y="{(py0 + py1) / 2:.2f}" text-anchor="middle" '
               f'font-family="sans-serif" font-size="13" '
               f'transform="rotate(-90 16 {(py0 + py1) / 2:.2f})">'
               f'Trip cost (log10 $M)</text>')
    out.append(f'<text x="{(px0 + px1) / 2:.2f}" y="{plot.margin_top - 10}" '
               f'text-anchor="middle" font-family="sans-serif" font-size="13">'
               f'Distance fraction on {plot.focus_mode}</text>')

    for rec in records:
        frac = rec.mode_distance_fraction[plot.focus_mode]
        out.append(
            f'<circle cx="{sx(rec.year):.2f}" '
            f'cy="{sy(cost_axis_value(rec.trip_cost)):.2f}" '
            f'r="{plot.point_radius:g}" fill="{ramp_color(frac)}" '
            f'fill-opacity="0.6"/>')

    out.append("</svg>")
    sink.write("\n".join(out) + "\n")
