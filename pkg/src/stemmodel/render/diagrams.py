"""Type and instance diagrams built from a model's templates."""

from __future__ import annotations

import math
from typing import Any, Mapping, Sequence

from ..core import (
    ComputedK,
    ConceptInstance,
    InstanceView,
    Model,
    Ref,
    ShowEval,
    ShowMethod,
    TypeView,
    format_value,
    invoke,
    get_attribute,
    _refs_in_kind,
)
from ..errors import ModelError, RenderError
from ..template import EMPTY, Fn1, K, Template, apply_template, merge_templates
from .doc import Box, Circle, DiagramDoc, Line, Point, Shape, TextBlock, text_height, text_width

MARGIN = 30.0
GAP = 70.0
PAD = 8.0
TYPE_COLUMNS = 3
INSTANCE_COLUMNS = 4


def class_label(tv: TypeView) -> list[str]:
    head = tv.name if tv.parent is None else f"{tv.name} ({tv.parent})"
    lines = [head]
    lines += [f"{n}: {k}" for n, k in tv.attributes]
    lines += [f"{f.name}({', '.join(f.params)})" for f in tv.functions if not f.name.startswith("_")]
    return lines


def instance_lines(view: InstanceView) -> list[str]:
    model, inst = view._model, view._instance
    lines = [f"{inst.id}: {inst.type_name}"]
    for name, kind in model.attributes(inst.type_name):
        value = get_attribute(model, inst, name)
        lines.append(f"{name} = {format_value(value, model, kind)}")
    return lines


DEFAULT_CLASS_TEMPLATE = Template({
    K.text: Fn1(class_label),
    K.name: "Rectangle",
    K.corner_radius: 6,
    K.gradient_color: "Snow",
    K.font_size: 12,
})

DEFAULT_INSTANCE_TEMPLATE = Template({
    K.text: Fn1(instance_lines),
    K.name: "Rectangle",
    K.corner_radius: 6,
    K.gradient_color: "Snow",
    K.font_size: 12,
})


def effective_class_template(model: Model, type_name: str) -> Template:
    t = DEFAULT_CLASS_TEMPLATE
    for ct in reversed(model.ancestors(type_name)):
        t = merge_templates(t, ct.class_template or EMPTY)
    return t


def effective_instance_template(model: Model, type_name: str) -> Template:
    """Class templates (root first), then instance templates (root first), over the default."""
    chain = list(reversed(model.ancestors(type_name)))
    t = DEFAULT_INSTANCE_TEMPLATE
    for ct in chain:
        t = merge_templates(t, ct.class_template or EMPTY)
    for ct in chain:
        t = merge_templates(t, ct.instance_template or EMPTY)
    return t


def _lines(text: Any) -> list[str]:
    if text is None:
        return []
    if isinstance(text, (list, tuple)):
        return [str(s) for s in text]
    return str(text).splitlines() or [""]


def _shape_size(props: Mapping[str, Any]) -> tuple[str, float, float]:
    kind = str(props.get(K.name, "Rectangle"))
    fs = float(props.get(K.font_size, 12))
    lines = _lines(props.get(K.text))
    w = text_width(lines, fs) + 2 * PAD
    h = text_height(lines, fs) + 2 * PAD
    size = props.get(K.size)
    if size:
        size = list(size)
        w, h = float(size[0]), float(size[-1])
    if kind == "Circle":
        d = max(w, h, 40.0)
        return kind, d, d
    if kind == "Square":
        s = max(w, h, 40.0)
        return kind, s, s
    return kind, max(w, 120.0), max(h, 30.0)


def _make_shape(ident: str, props: Mapping[str, Any], topleft: Point) -> Shape:
    kind, w, h = _shape_size(props)
    fs = float(props.get(K.font_size, 12))
    lines = _lines(props.get(K.text))
    gradient = props.get(K.gradient_color)
    fill = props.get(K.fill, "white")
    stroke = props.get(K.stroke, "black")
    if kind == "Circle":
        return Circle(ident, (topleft[0] + w / 2, topleft[1] + h / 2), w / 2, lines, fill, gradient, stroke, fs)
    radius = 0.0 if kind == "Square" else float(props.get(K.corner_radius, 0))
    return Box(ident, topleft, (w, h), lines, radius, fill, gradient, stroke, fs)


def _boundary_point(shape: Shape, toward: Point) -> Point:
    """Where the segment from the shape's center to ``toward`` leaves the shape."""
    c = _center(shape)
    dx, dy = toward[0] - c[0], toward[1] - c[1]
    dist = math.hypot(dx, dy)
    if dist == 0:
        return c
    if isinstance(shape, Circle):
        return (c[0] + dx / dist * shape.radius, c[1] + dy / dist * shape.radius)
    hw, hh = shape.size[0] / 2, shape.size[1] / 2
    scale = min(hw / abs(dx) if dx else math.inf, hh / abs(dy) if dy else math.inf)
    return (c[0] + dx * scale, c[1] + dy * scale)


def _center(shape: Shape) -> Point:
    if isinstance(shape, Circle):
        return shape.center
    x, y = shape.origin
    return (x + shape.size[0] / 2, y + shape.size[1] / 2)


def _edge(ident: str, a: Shape, b: Shape, **kw) -> Line | None:
    if a is b:
        return None
    p = _boundary_point(a, _center(b))
    q = _boundary_point(b, _center(a))
    if p == q:
        return None
    return Line(ident, (p, q), **kw)


def _grid(blocks: Sequence[tuple[float, float]], columns: int,
          layers: Sequence[int] | None = None) -> tuple[list[Point], float, float]:
    """Top-left corner per block plus the canvas size.

    Blocks fill rows left to right, wrapping after ``columns``. With
    ``layers``, each layer (ascending) starts a fresh row; order within a
    layer follows the input order.
    """
    if not blocks:
        return [], 2 * MARGIN, 2 * MARGIN
    if layers is None:
        layers = [0] * len(blocks)
    col_w = max(w for w, _ in blocks) + GAP
    rows: list[list[int]] = []
    for layer in sorted(set(layers)):
        members = [i for i, l in enumerate(layers) if l == layer]
        rows += [members[k:k + columns] for k in range(0, len(members), columns)]
    out: list[Point] = [(0.0, 0.0)] * len(blocks)
    y = MARGIN
    for row in rows:
        for j, i in enumerate(row):
            out[i] = (MARGIN + j * col_w, y)
        y += max(blocks[i][1] for i in row) + GAP
    ncols = max(len(r) for r in rows)
    return out, 2 * MARGIN + ncols * col_w - GAP, y - GAP + MARGIN


def _depths(nodes: Sequence[str], edges: Mapping[str, Sequence[str]]) -> list[int]:
    """Longest outgoing path length per node; edges into cycles count once."""
    memo: dict[str, int] = {}

    def depth(n: str, path: frozenset) -> int:
        if n in memo:
            return memo[n]
        d = 0
        for m in edges.get(n, ()):
            if m != n and m not in path:
                d = max(d, 1 + depth(m, path | {n}))
        memo[n] = d
        return d

    return [depth(n, frozenset()) for n in nodes]


def _edge_label(ident: str, line: Line, text: str) -> TextBlock:
    (x1, y1), (x2, y2) = line.point_list[0], line.point_list[-1]
    return TextBlock(ident, ((x1 + x2) / 2 + 4, (y1 + y2) / 2 - 4), (text,), font_size=10, fill="dimgray")


def type_diagram(model: Model) -> DiagramDoc:
    """One box per concept type, inheritance arrows, and reference edges."""
    if not model.types:
        return DiagramDoc(2 * MARGIN, 2 * MARGIN, (), title="types")
    props = [apply_template(effective_class_template(model, t.name), TypeView(model, t)) for t in model.types]
    sizes = [_shape_size(p)[1:] for p in props]
    depths = _depths([t.name for t in model.types], {t.name: [t.parent] if t.parent else [] for t in model.types})
    corners, width, height = _grid(sizes, TYPE_COLUMNS, depths)
    boxes = {t.name: _make_shape(f"type-{t.name}", p, xy) for t, p, xy in zip(model.types, props, corners)}
    edges: list[Shape] = []
    for t in model.types:
        if t.parent:
            line = _edge(f"inherit-{t.name}-{t.parent}", boxes[t.name], boxes[t.parent], arrow=True)
            if line:
                edges.append(line)
        for name, kind in t.attributes:
            for target in dict.fromkeys(_refs_in_kind(kind)):
                if target not in boxes:
                    continue
                ident = f"ref-{t.name}-{name}-{target}"
                line = _edge(ident, boxes[t.name], boxes[target], arrow=True, dashed=True, stroke="dimgray")
                if line:
                    edges += [line, _edge_label(ident + "-label", line, name)]
    return DiagramDoc(width, height, tuple(edges) + tuple(boxes.values()), title="types")


def _refs_in_value(v: Any) -> list[str]:
    if isinstance(v, Ref):
        return [v.id]
    if isinstance(v, tuple):
        return [r for x in v for r in _refs_in_value(x)]
    return []


def _callouts(model: Model, inst: ConceptInstance) -> list[tuple[str, list[str], str]]:
    out = []
    for k, d in enumerate(model.directives):
        if getattr(d, "instance_id", None) != inst.id:
            continue
        if isinstance(d, ShowMethod):
            try:
                fn = model.function(inst.type_name, d.function_name)
            except ModelError as e:
                raise RenderError(f"showMethod({inst.id}, {d.function_name!r}): {e}") from e
            out.append((f"method-{k}", fn.source.splitlines(), "darkslategray"))
        elif isinstance(d, ShowEval):
            try:
                result = invoke(model, inst, d.function_name, d.args)
            except ModelError as e:
                raise RenderError(f"showEval({inst.id}, {d.function_name!r}, {list(d.args)}): {e}") from e
            args = ", ".join(format_value(a, model) for a in d.args)
            out.append((f"eval-{k}", [f"{inst.id}.{d.function_name}({args}) = {format_value(result, model)}"], "navy"))
    return out


def instance_props(model: Model, inst: ConceptInstance) -> dict[str, Any]:
    t = effective_instance_template(model, inst.type_name)
    try:
        return apply_template(t, InstanceView(model, inst))
    except ModelError as e:
        raise RenderError(f"instance {inst.id!r}: {e}") from e


def instance_diagram(model: Model) -> DiagramDoc:
    """One shape per instance, reference arrows, and method/eval callouts."""
    if not model.instances:
        return DiagramDoc(2 * MARGIN, 2 * MARGIN, (), title="instances")
    fs = 11.0
    cells = []
    for inst in model.instances:
        props = instance_props(model, inst)
        _, w, h = _shape_size(props)
        notes = _callouts(model, inst)
        nw = max((text_width(lines, fs) for _, lines, _ in notes), default=0.0)
        nh = sum(text_height(lines, fs) + PAD for _, lines, _ in notes)
        cells.append((inst, props, (w, h), notes, (max(w, nw), h + nh)))
    refs = {
        inst.id: [r for name, v in inst.bindings.items() for r in _refs_in_value(v)]
        for inst in model.instances
    }
    depths = _depths([inst.id for inst in model.instances], refs)
    corners, width, height = _grid([c[-1] for c in cells], INSTANCE_COLUMNS, depths)
    shapes: dict[str, Shape] = {}
    notes_out: list[Shape] = []
    for (inst, props, (w, h), notes, _), (x, y) in zip(cells, corners):
        shapes[inst.id] = _make_shape(f"inst-{inst.id}", props, (x, y))
        ny = y + h + PAD + fs
        for ident, lines, ink in notes:
            notes_out.append(TextBlock(f"{ident}-{inst.id}", (x, ny), lines, font_size=fs, fill=ink))
            ny += text_height(lines, fs) + PAD
    edges: list[Shape] = []
    hidden = {c[0].id for c in cells if c[1].get(K.show_refs, True) is False}
    for inst in model.instances:
        if inst.id in hidden:
            continue
        for name, kind in model.attributes(inst.type_name):
            if isinstance(kind, ComputedK) or name not in inst.bindings:
                continue
            for target in dict.fromkeys(_refs_in_value(inst.bindings[name])):
                if target not in shapes:
                    continue
                ident = f"ref-{inst.id}-{name}-{target}"
                line = _edge(ident, shapes[inst.id], shapes[target], arrow=True, stroke="dimgray")
                if line:
                    edges += [line, _edge_label(ident + "-label", line, name)]
    return DiagramDoc(width, height, tuple(edges) + tuple(shapes.values()) + tuple(notes_out), title="instances")
