"""Animation frames: templates evaluated against a subject at uniform times."""

from __future__ import annotations

import math
from dataclasses import dataclass
from pathlib import Path
from typing import Any, Mapping, Sequence

from ..errors import ModelError, RenderError
from ..template import K, apply_template
from .doc import Circle, DiagramDoc, Line, Shape, TextBlock, to_svg


@dataclass(frozen=True)
class AnimationSpec:
    subject: Any
    range: tuple[float, float]
    frame_count: int
    templates: tuple[Mapping[str, Any], ...]
    width: float = 480.0
    height: float = 360.0

    def __post_init__(self) -> None:
        t0, t1 = self.range
        object.__setattr__(self, "range", (float(t0), float(t1)))
        object.__setattr__(self, "templates", tuple(self.templates))
        if not t0 < t1:
            raise ValueError(f"animation range needs t0 < t1, got {self.range}")
        if self.frame_count < 2:
            raise ValueError("an animation needs at least 2 frames")
        for i, t in enumerate(self.templates):
            if K.new not in t:
                raise ValueError(f"animation template {i} has no {K.new!r} key")


def frame_times(spec: AnimationSpec) -> list[float]:
    t0, t1 = spec.range
    n = spec.frame_count
    return [t0 + k * (t1 - t0) / (n - 1) for k in range(n)]


def _xy(p: Sequence[float]) -> tuple[float, float]:
    x, y = p
    return (float(x), float(y))


def _shape(ident: str, props: Mapping[str, Any]) -> Shape:
    kind = props[K.new]
    if kind == K.shape:
        size = props.get(K.size) or [16]
        return Circle(ident, _xy(props.get(K.origin, (0, 0))), float(list(size)[0]) / 2,
                      fill=props.get(K.fill, "orange"), gradient=props.get(K.gradient_color),
                      stroke=props.get(K.stroke, "black"))
    if kind == K.line:
        return Line(ident, tuple(_xy(p) for p in props[K.point_list]), stroke=props.get(K.stroke, "black"),
                    arrow=bool(props.get(K.arrow, False)), width=2.0)
    if kind == K.label:
        text = props.get(K.text, "")
        lines = [str(s) for s in text] if isinstance(text, (list, tuple)) else [str(text)]
        return TextBlock(ident, _xy(props.get(K.origin, (0, 0))), lines,
                         font_size=float(props.get(K.font_size, 12)), fill=props.get(K.fill, "black"))
    raise ValueError(f"unknown element kind {kind!r} for {K.new!r}")


def _bounds(frames: Sequence[Sequence[Shape]], aspect: float) -> tuple[float, float, float, float]:
    pts = [p for shapes in frames for s in shapes for p in s.points()]
    xs = [p[0] for p in pts] or [0.0]
    ys = [p[1] for p in pts] or [0.0]
    xmin, xmax, ymin, ymax = min(xs), max(xs), min(ys), max(ys)
    w, h = xmax - xmin, ymax - ymin
    if w == 0 and h == 0:
        w = h = 1.0
    # equal scale on both axes, then 10% breathing room
    if h == 0 or w / h > aspect:
        h = w / aspect
    else:
        w = h * aspect
    cx, cy = (xmin + xmax) / 2, (ymin + ymax) / 2
    w, h = w * 1.1, h * 1.1
    return (cx - w / 2, cy - h / 2, cx + w / 2, cy + h / 2)


def animate(spec: AnimationSpec) -> list[DiagramDoc]:
    """``frame_count`` documents sharing one world-to-canvas view."""
    margins = (20.0, 30.0, 20.0, 20.0)
    times = frame_times(spec)
    frames: list[list[Shape]] = []
    for k, t in enumerate(times):
        shapes = []
        for i, tmpl in enumerate(spec.templates):
            try:
                props = apply_template(tmpl, spec.subject, t)
                shapes.append(_shape(f"el-{i}", props))
            except (ModelError, ValueError, TypeError, KeyError) as e:
                raise RenderError(f"frame {k} (t={t:g}), template {i}: {e}") from e
        frames.append(shapes)
    aspect = (spec.width - margins[0] - margins[2]) / (spec.height - margins[1] - margins[3])
    view = _bounds(frames, aspect)
    docs = []
    for k, (t, shapes) in enumerate(zip(times, frames)):
        stamp = TextBlock("time", (view[0], view[3]), (f"t = {t:.3f}",), font_size=12, offset=(0, -10))
        docs.append(DiagramDoc(spec.width, spec.height, tuple(shapes) + (stamp,), view=view, margins=margins,
                               title=f"frame {k}"))
    return docs


def write_frames(docs: Sequence[DiagramDoc], out_dir: str | Path) -> list[Path]:
    out = Path(out_dir)
    out.mkdir(parents=True, exist_ok=True)
    paths = []
    for k, doc in enumerate(docs):
        p = out / f"frame_{k:04d}.svg"
        p.write_text(to_svg(doc), encoding="utf-8")
        paths.append(p)
    return paths
