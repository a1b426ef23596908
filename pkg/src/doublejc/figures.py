"""Curve recipes for the published concurrence figures and their CSV export.

Every curve is a closed-form envelope sampled on ``g_b t in [0, 2π]`` with
g_b = 1 as the reference coupling. Shifted curves hold Q(t + π/(2 g_b)).
"""

from __future__ import annotations

import csv
import math
from dataclasses import dataclass
from pathlib import Path

import numpy as np

from .closed_form import q_envelope
from .errors import InvalidArgument
from .model import BellFamily, CouplingParams

GT_MAX = 2 * math.pi
N_POINTS = 2001  # grid step π/1000 hits every quarter period of the figure ratios
CSV_HEADER = ("t", "gt", "concurrence")


@dataclass(frozen=True)
class Curve:
    figure: str
    panel: str
    name: str
    family: BellFamily
    theta: float
    ratio: float
    rational: bool
    shift: float = 0.0

    @property
    def filename(self) -> str:
        return f"{self.figure}_{self.panel}_{self.name}.csv"

    @property
    def params(self) -> CouplingParams:
        return CouplingParams(g_a=self.ratio, g_b=1.0)


_THETAS = (("pi4", math.pi / 4), ("pi6", math.pi / 6), ("pi12", math.pi / 12))
_QUARTER = math.pi / 2
_SQRT2 = math.sqrt(2)


def _fig2():
    panels = (("a", "AB", 1.0, True), ("b", "ab", 1.0, True),
              ("c", "AB", _SQRT2, False), ("d", "ab", _SQRT2, False),
              ("e", "AB", 2.0, True), ("f", "ab", 2.0, True))
    for panel, fam, ratio, rational in panels:
        for name, theta in _THETAS:
            yield Curve("fig2", panel, name, BellFamily(fam), theta, ratio, rational)


def _fig3():
    theta = math.pi / 6
    for (raw, shifted), ratio in ((("a", "b"), 2.0), (("c", "d"), 3.0)):
        yield Curve("fig3", raw, "AB", BellFamily.AB, theta, ratio, True)
        yield Curve("fig3", raw, "ab", BellFamily.ab, theta, ratio, True)
        yield Curve("fig3", shifted, "ab", BellFamily.ab, theta, ratio, True)
        yield Curve("fig3", shifted, "AB_shift", BellFamily.AB, theta, ratio, True, _QUARTER)


def _fig4():
    theta = math.pi / 12
    ratios = (("r1", 1.0, True), ("rsqrt2", _SQRT2, False), ("r2", 2.0, True))
    for panel, fam in (("a", BellFamily.Ab), ("b", BellFamily.Ba)):
        for name, ratio, rational in ratios:
            yield Curve("fig4", panel, name, fam, theta, ratio, rational)


def _fig5():
    theta = math.pi / 12
    F = BellFamily
    for (raw, shifted), ratio in ((("a", "b"), 5.0), (("c", "d"), 4.0)):
        for fam in (F.AB, F.ab, F.Ab, F.Ba):
            yield Curve("fig5", raw, fam.value, fam, theta, ratio, True)
        # left side shifted by a quarter cycle, right side as predicted partner
        pairs = ((F.AB, F.ab), (F.Ab, F.Ba)) if int(ratio) % 2 else ((F.AB, F.Ab), (F.ab, F.Ba))
        for left, right in pairs:
            yield Curve("fig5", shifted, f"{left}_shift", left, theta, ratio, True, _QUARTER)
            yield Curve("fig5", shifted, right.value, right, theta, ratio, True)


FIGURES = {"fig2": _fig2, "fig3": _fig3, "fig4": _fig4, "fig5": _fig5}


def figure_curves(name: str) -> list[Curve]:
    try:
        return list(FIGURES[name]())
    except KeyError:
        raise InvalidArgument(
            f"unknown figure {name!r}; choose from {', '.join(FIGURES)}") from None


def curve_data(curve: Curve, n_points: int = N_POINTS, gt_max: float = GT_MAX):
    params = curve.params
    t = np.linspace(0.0, gt_max / params.g_b, n_points)
    values = q_envelope(curve.family, curve.theta, params, t + curve.shift)
    return t, params.g_b * t, values


def format_value(v: float) -> str:
    return f"{v:.17g}"


def write_csv(path, t, gt, values, meta: dict | None = None):
    """Write a time series with ``#``-prefixed metadata lines and a t,gt,concurrence header."""
    path = Path(path)
    with path.open("w", newline="", encoding="utf-8") as fh:
        _write_rows(fh, t, gt, values, meta)


def _write_rows(fh, t, gt, values, meta):
    fh.write("# g_ref=g_b\n")
    for key, value in (meta or {}).items():
        fh.write(f"# {key}={value}\n")
    writer = csv.writer(fh, lineterminator="\n")
    writer.writerow(CSV_HEADER)
    for row in zip(t, gt, values):
        writer.writerow([format_value(float(v)) for v in row])


def curve_meta(curve: Curve) -> dict:
    p = curve.params
    return {
        "family": curve.family.value,
        "theta": format_value(curve.theta),
        "g_a": format_value(p.g_a),
        "g_b": format_value(p.g_b),
        "shift": format_value(curve.shift),
    }


def write_figure(name: str, outdir) -> list[Path]:
    outdir = Path(outdir)
    outdir.mkdir(parents=True, exist_ok=True)
    written = []
    for curve in figure_curves(name):
        t, gt, values = curve_data(curve)
        path = outdir / curve.filename
        write_csv(path, t, gt, values, curve_meta(curve))
        written.append(path)
    return written
