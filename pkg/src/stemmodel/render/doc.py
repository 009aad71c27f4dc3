"""Renderer-independent diagram document and its SVG serialization."""

from __future__ import annotations

import math
import re
from dataclasses import dataclass, field
from typing import Sequence, Union
from xml.sax.saxutils import escape, quoteattr

# CSS Color Module Level 4 named colors
CSS_COLORS = frozenset(
    """
    aliceblue antiquewhite aqua aquamarine azure beige bisque black blanchedalmond blue blueviolet
    brown burlywood cadetblue chartreuse chocolate coral cornflowerblue cornsilk crimson cyan
    darkblue darkcyan darkgoldenrod darkgray darkgreen darkgrey darkkhaki darkmagenta
    darkolivegreen darkorange darkorchid darkred darksalmon darkseagreen darkslateblue
    darkslategray darkslategrey darkturquoise darkviolet deeppink deepskyblue dimgray dimgrey
    dodgerblue firebrick floralwhite forestgreen fuchsia gainsboro ghostwhite gold goldenrod gray
    green greenyellow grey honeydew hotpink indianred indigo ivory khaki lavender lavenderblush
    lawngreen lemonchiffon lightblue lightcoral lightcyan lightgoldenrodyellow lightgray
    lightgreen lightgrey lightpink lightsalmon lightseagreen lightskyblue lightslategray
    lightslategrey lightsteelblue lightyellow lime limegreen linen magenta maroon
    mediumaquamarine mediumblue mediumorchid mediumpurple mediumseagreen mediumslateblue
    mediumspringgreen mediumturquoise mediumvioletred midnightblue mintcream mistyrose moccasin
    navajowhite navy oldlace olive olivedrab orange orangered orchid palegoldenrod palegreen
    paleturquoise palevioletred papayawhip peachpuff peru pink plum powderblue purple
    rebeccapurple red rosybrown royalblue saddlebrown salmon sandybrown seagreen seashell sienna
    silver skyblue slateblue slategray slategrey snow springgreen steelblue tan teal thistle
    tomato turquoise violet wheat white whitesmoke yellow yellowgreen
    """.split()
)
_HEX = re.compile(r"#[0-9a-fA-F]{6}")

Point = tuple[float, float]


def color(c: str | None) -> str | None:
    """Normalize a color name; raises ValueError for anything but CSS names and #rrggbb."""
    if c is None:
        return None
    if _HEX.fullmatch(c):
        return c.lower()
    if c.lower() in CSS_COLORS:
        return c.lower()
    raise ValueError(f"not a CSS color name or #rrggbb: {c!r}")


def _pt(p: Sequence[float]) -> Point:
    x, y = p
    return (float(x), float(y))


@dataclass(frozen=True)
class Box:
    id: str
    origin: Point  # top-left
    size: Point
    lines: tuple[str, ...] = ()
    corner_radius: float = 0.0
    fill: str | None = "white"
    gradient: str | None = None
    stroke: str = "black"
    font_size: float = 12.0

    def __post_init__(self) -> None:
        object.__setattr__(self, "origin", _pt(self.origin))
        object.__setattr__(self, "size", _pt(self.size))
        object.__setattr__(self, "lines", tuple(self.lines))
        object.__setattr__(self, "fill", color(self.fill))
        object.__setattr__(self, "gradient", color(self.gradient))
        object.__setattr__(self, "stroke", color(self.stroke))

    def points(self) -> list[Point]:
        return [self.origin]


@dataclass(frozen=True)
class Circle:
    id: str
    center: Point
    radius: float
    lines: tuple[str, ...] = ()
    fill: str | None = "white"
    gradient: str | None = None
    stroke: str = "black"
    font_size: float = 12.0

    def __post_init__(self) -> None:
        object.__setattr__(self, "center", _pt(self.center))
        object.__setattr__(self, "lines", tuple(self.lines))
        object.__setattr__(self, "fill", color(self.fill))
        object.__setattr__(self, "gradient", color(self.gradient))
        object.__setattr__(self, "stroke", color(self.stroke))

    def points(self) -> list[Point]:
        return [self.center]


@dataclass(frozen=True)
class Line:
    id: str
    point_list: tuple[Point, ...]
    stroke: str = "black"
    arrow: bool = False
    dashed: bool = False
    width: float = 1.5

    def __post_init__(self) -> None:
        pts = tuple(_pt(p) for p in self.point_list)
        if len(pts) < 2:
            raise ValueError(f"line {self.id!r} needs at least 2 points")
        object.__setattr__(self, "point_list", pts)
        object.__setattr__(self, "stroke", color(self.stroke))

    def points(self) -> list[Point]:
        return list(self.point_list)

    def length(self) -> float:
        return sum(math.dist(a, b) for a, b in zip(self.point_list, self.point_list[1:]))


@dataclass(frozen=True)
class TextBlock:
    id: str
    origin: Point  # baseline of the first line
    lines: tuple[str, ...]
    font_size: float = 12.0
    fill: str = "black"
    anchor: str = "start"  # start | middle | end
    offset: Point = (0.0, 0.0)  # pixel nudge applied after the view transform

    def __post_init__(self) -> None:
        object.__setattr__(self, "origin", _pt(self.origin))
        object.__setattr__(self, "offset", _pt(self.offset))
        object.__setattr__(self, "lines", tuple(self.lines))
        object.__setattr__(self, "fill", color(self.fill))
        if self.anchor not in ("start", "middle", "end"):
            raise ValueError(f"bad text anchor {self.anchor!r}")

    def points(self) -> list[Point]:
        return [self.origin]


Shape = Union[Box, Circle, Line, TextBlock]


@dataclass(frozen=True)
class DiagramDoc:
    """An ordered list of shapes on a ``width`` x ``height`` pixel canvas.

    Without ``view`` shape coordinates are pixels, y pointing down. With
    ``view = (xmin, ymin, xmax, ymax)`` positions are world coordinates,
    y pointing up, mapped onto the canvas minus ``margins``
    (left, top, right, bottom); sizes, radii and fonts stay in pixels.
    """

    width: float
    height: float
    elements: tuple[Shape, ...] = ()
    view: tuple[float, float, float, float] | None = None
    margins: tuple[float, float, float, float] = (0.0, 0.0, 0.0, 0.0)
    title: str = ""

    def __post_init__(self) -> None:
        object.__setattr__(self, "elements", tuple(self.elements))
        ids = [e.id for e in self.elements]
        if len(set(ids)) != len(ids):
            dup = sorted({i for i in ids if ids.count(i) > 1})
            raise ValueError(f"duplicate element ids {dup}")
        nums = [self.width, self.height, *self.margins, *(self.view or ())]
        for e in self.elements:
            for p in e.points():
                nums.extend(p)
        if not all(math.isfinite(v) for v in nums):
            raise ValueError("diagram coordinates must be finite")
        if self.view is not None:
            xmin, ymin, xmax, ymax = self.view
            if not (xmax > xmin and ymax > ymin):
                raise ValueError(f"degenerate view {self.view}")

    def element(self, ident: str) -> Shape:
        for e in self.elements:
            if e.id == ident:
                return e
        raise KeyError(ident)

    def to_pixels(self, p: Point) -> Point:
        if self.view is None:
            return p
        xmin, ymin, xmax, ymax = self.view
        left, top, right, bottom = self.margins
        w = self.width - left - right
        h = self.height - top - bottom
        return (left + (p[0] - xmin) / (xmax - xmin) * w, top + (ymax - p[1]) / (ymax - ymin) * h)


# ------------------------------------------------------------------ SVG


def _f(v: float) -> str:
    return f"{round(v, 6) + 0.0:.6f}"


def _attrs(**kw) -> str:
    parts = []
    for k, v in kw.items():
        if v is None:
            continue
        if isinstance(v, float):
            v = _f(v)
        parts.append(f"{k.rstrip('_').replace('_', '-')}={quoteattr(str(v))}")
    return " ".join(parts)


def _grad_id(c: str) -> str:
    return "grad-" + c.lstrip("#")


def _paint(fill: str | None, gradient: str | None) -> str:
    if gradient:
        return f"url(#{_grad_id(gradient)})"
    return fill or "none"


def _text_lines(x: float, y: float, lines: Sequence[str], size: float, fill: str, anchor: str) -> list[str]:
    out = []
    for i, line in enumerate(lines):
        a = _attrs(x=x, y=y + i * size * 1.3, font_size=float(size), font_family="monospace",
                   fill=fill, text_anchor=None if anchor == "start" else anchor)
        # keep leading spaces so code callouts stay indented
        out.append(f'  <text xml:space="preserve" {a}>{escape(line)}</text>')
    return out


def to_svg(doc: DiagramDoc) -> str:
    """Standalone SVG 1.1 text. Equal documents give byte-identical output."""
    gradients = sorted({e.gradient for e in doc.elements if isinstance(e, (Box, Circle)) and e.gradient})
    arrows = sorted({e.stroke for e in doc.elements if isinstance(e, Line) and e.arrow})
    out = [
        '<?xml version="1.0" encoding="UTF-8" standalone="no"?>',
        f'<svg xmlns="http://www.w3.org/2000/svg" version="1.1" '
        f'{_attrs(width=float(doc.width), height=float(doc.height))} '
        f'viewBox="0 0 {_f(doc.width)} {_f(doc.height)}">',
    ]
    if doc.title:
        out.append(f"  <title>{escape(doc.title)}</title>")
    if gradients or arrows:
        out.append("  <defs>")
        for g in gradients:
            out.append(f'    <linearGradient id="{_grad_id(g)}" x1="0" y1="0" x2="0" y2="1">')
            out.append('      <stop offset="0" stop-color="white"/>')
            out.append(f'      <stop offset="1" stop-color="{g}"/>')
            out.append("    </linearGradient>")
        for s in arrows:
            out.append(
                f'    <marker id="arrow-{s.lstrip("#")}" viewBox="0 0 10 10" refX="10" refY="5" '
                f'markerUnits="userSpaceOnUse" markerWidth="9" markerHeight="9" orient="auto">'
                f'<path d="M 0 0 L 10 5 L 0 10 z" fill="{s}"/></marker>'
            )
        out.append("  </defs>")
    out.append(f'  <rect {_attrs(x=0.0, y=0.0, width=float(doc.width), height=float(doc.height), fill="white")}/>')
    for e in doc.elements:
        out.extend(_element(doc, e))
    out.append("</svg>")
    return "\n".join(out) + "\n"


def _element(doc: DiagramDoc, e: Shape) -> list[str]:
    if isinstance(e, Box):
        x, y = doc.to_pixels(e.origin)
        w, h = e.size
        out = [f"  <g id={quoteattr(e.id)}>"]
        out.append("  " + "<rect " + _attrs(x=x, y=y, width=w, height=h, rx=float(e.corner_radius) or None,
                                           fill=_paint(e.fill, e.gradient), stroke=e.stroke) + "/>")
        pad = 8.0
        out += ["  " + s for s in _text_lines(x + pad, y + pad + e.font_size, e.lines, e.font_size, "black", "start")]
        out.append("  </g>")
        return out
    if isinstance(e, Circle):
        cx, cy = doc.to_pixels(e.center)
        out = [f"  <g id={quoteattr(e.id)}>"]
        out.append("  " + "<circle " + _attrs(cx=cx, cy=cy, r=float(e.radius),
                                             fill=_paint(e.fill, e.gradient), stroke=e.stroke) + "/>")
        if e.lines:
            top = cy - (len(e.lines) - 1) * e.font_size * 1.3 / 2 + e.font_size * 0.35
            out += ["  " + s for s in _text_lines(cx, top, e.lines, e.font_size, "black", "middle")]
        out.append("  </g>")
        return out
    if isinstance(e, Line):
        pts = " ".join(f"{_f(px)},{_f(py)}" for px, py in (doc.to_pixels(p) for p in e.point_list))
        marker = f"url(#arrow-{e.stroke.lstrip('#')})" if e.arrow else None
        a = _attrs(id=e.id, points=pts, fill="none", stroke=e.stroke, stroke_width=float(e.width),
                   stroke_dasharray="6,4" if e.dashed else None, marker_end=marker)
        return [f"  <polyline {a}/>"]
    if isinstance(e, TextBlock):
        x, y = doc.to_pixels(e.origin)
        x, y = x + e.offset[0], y + e.offset[1]
        out = [f"  <g id={quoteattr(e.id)}>"]
        out += ["  " + s for s in _text_lines(x, y, e.lines, e.font_size, e.fill, e.anchor)]
        out.append("  </g>")
        return out
    raise TypeError(f"unknown shape {e!r}")


def text_width(lines: Sequence[str], font_size: float) -> float:
    """Approximate rendered width of monospace text."""
    return max((len(s) for s in lines), default=0) * font_size * 0.6


def text_height(lines: Sequence[str], font_size: float) -> float:
    return len(lines) * font_size * 1.3
