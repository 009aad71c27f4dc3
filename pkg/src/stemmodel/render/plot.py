"""Function plots as diagram documents."""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable, Sequence

from ..errors import AllPointsInvalid, EvaluationError
from .doc import DiagramDoc, Line, Point, TextBlock

PALETTE = ("#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#ff7f0e", "#8c564b", "#e377c2", "#17becf")


@dataclass(frozen=True)
class PlotSpec:
    functions: tuple[tuple[str, Callable[[float], float]], ...]
    range: tuple[float, float]
    samples: int = 100
    x_label: str = "x"
    y_label: str = "y"
    title: str = ""
    width: float = 640.0
    height: float = 400.0

    def __post_init__(self) -> None:
        object.__setattr__(self, "functions", tuple((str(l), f) for l, f in self.functions))
        lo, hi = self.range
        object.__setattr__(self, "range", (float(lo), float(hi)))
        if not lo < hi:
            raise ValueError(f"plot range needs lo < hi, got {self.range}")
        if self.samples < 2:
            raise ValueError("a plot needs at least 2 samples")
        if not self.functions:
            raise ValueError("nothing to plot")


def sample_grid(lo: float, hi: float, n: int) -> list[float]:
    return [lo + k * (hi - lo) / (n - 1) for k in range(n)]


def _sample(f: Callable[[float], float], x: float) -> float | None:
    try:
        y = f(x)
    except (EvaluationError, ArithmeticError):
        return None
    try:
        y = float(y)
    except (TypeError, ValueError):
        return None
    return y if math.isfinite(y) else None


def sample_series(spec: PlotSpec) -> list[tuple[str, list[list[Point]]]]:
    """Per function, the polyline segments in data coordinates.

    Samples that fail (domain errors, non-finite values) split the polyline.
    """
    xs = sample_grid(*spec.range, spec.samples)
    out = []
    for label, f in spec.functions:
        segments: list[list[Point]] = []
        current: list[Point] = []
        for x in xs:
            y = _sample(f, x)
            if y is None:
                if current:
                    segments.append(current)
                current = []
            else:
                current.append((x, y))
        if current:
            segments.append(current)
        out.append((label, segments))
    if not any(seg for _, segs in out for seg in segs):
        raise AllPointsInvalid(f"every sample failed on {spec.range}")
    return out


def y_extent(series: Sequence[tuple[str, list[list[Point]]]]) -> tuple[float, float]:
    """Data y-range with a 5% margin; a flat range is padded around its value."""
    ys = [y for _, segs in series for seg in segs for _, y in seg]
    lo, hi = min(ys), max(ys)
    span = hi - lo
    if span == 0:
        span = abs(lo) or 1.0
    return lo - 0.05 * span, hi + 0.05 * span


def nice_ticks(lo: float, hi: float, target: int = 5) -> list[float]:
    """Multiples of a 1/2/2.5/5 x 10^k step in [lo, hi]; the count closest to ``target`` wins."""
    e = math.floor(math.log10((hi - lo) / max(1, target - 1)))
    best: list[float] = []
    for step in sorted(m * 10.0 ** k for m in (1, 2, 2.5, 5) for k in (e - 1, e, e + 1)):
        first = math.ceil(lo / step - 1e-9)
        last = math.floor(hi / step + 1e-9)
        # 12 significant digits strip noise like 0.30000000000000004; + 0.0 turns -0.0 into 0.0
        ticks = [float(f"{k * step:.12g}") + 0.0 for k in range(first, last + 1)]
        if not best or abs(len(ticks) - target) <= abs(len(best) - target):
            best = ticks
    return best


def _tick(v: float) -> str:
    return f"{v:.6g}"


def plot(spec: PlotSpec) -> DiagramDoc:
    series = sample_series(spec)
    x0, x1 = spec.range
    y0, y1 = y_extent(series)
    elements = []
    ax_y = 0.0 if y0 <= 0 <= y1 else y0
    ax_x = 0.0 if x0 <= 0 <= x1 else x0
    elements.append(Line("axis-x", ((x0, ax_y), (x1, ax_y)), stroke="gray", width=1.0))
    elements.append(Line("axis-y", ((ax_x, y0), (ax_x, y1)), stroke="gray", width=1.0))
    for k, xv in enumerate(nice_ticks(x0, x1)):
        elements.append(TextBlock(f"tick-x-{k}", (xv, y0), (_tick(xv),), font_size=10, fill="dimgray",
                                  anchor="middle", offset=(0, 16)))
    for k, yv in enumerate(nice_ticks(y0, y1)):
        elements.append(TextBlock(f"tick-y-{k}", (x0, yv), (_tick(yv),), font_size=10, fill="dimgray",
                                  anchor="end", offset=(-6, 4)))
    elements.append(TextBlock("label-x", (x1, y0), (spec.x_label,), font_size=11, anchor="end", offset=(0, 32)))
    elements.append(TextBlock("label-y", (x0, y1), (spec.y_label,), font_size=11, anchor="start", offset=(-60, -12)))
    for i, (label, segs) in enumerate(series):
        ink = PALETTE[i % len(PALETTE)]
        for j, seg in enumerate(segs):
            if len(seg) >= 2:
                elements.append(Line(f"series-{i}-{j}", tuple(seg), stroke=ink, width=2.0))
        elements.append(TextBlock(f"legend-{i}", (x1, y1), (label,), font_size=11, fill=ink, anchor="end",
                                  offset=(-6, 14 + 14 * i)))
    if spec.title:
        elements.append(TextBlock("title", (x0, y1), (spec.title,), font_size=13, offset=(0, -12)))
    return DiagramDoc(spec.width, spec.height, tuple(elements), view=(x0, y0, x1, y1),
                      margins=(70.0, 40.0, 30.0, 50.0), title=spec.title or "plot")
