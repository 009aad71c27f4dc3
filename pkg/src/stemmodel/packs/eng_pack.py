"""PVC pipe geometry, ROV mass properties and a 2-D wireframe projection.

Pipe orientation is an Euler-angle triple in degrees. ``rotate`` adds angle
triples component-wise, which is not how real rotations compose; the stored
angles are only turned into a direction by :func:`direction`, which applies
Rx, then Ry, then Rz to the +z unit vector.

Mass model: a solid cylinder, ``density * pi * radius^2 * length``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, replace
from typing import Any, Iterable, Sequence

from ..core import ComputedK, ConceptType, Float, FunctionDef, InstanceView, ListOf, Model, RefTo, VectorK
from ..render.doc import DiagramDoc, Line, TextBlock
from ..template import Fn1, K

Vec3 = tuple[float, float, float]


def _vec3(v: Iterable[float]) -> Vec3:
    x, y, z = (float(c) for c in v)
    return (x, y, z)


def _add(a: Vec3, b: Vec3) -> Vec3:
    return (a[0] + b[0], a[1] + b[1], a[2] + b[2])


def _scale(a: Vec3, k: float) -> Vec3:
    return (a[0] * k, a[1] * k, a[2] * k)


@dataclass(frozen=True)
class PVCPipe:
    p0: Vec3
    length: float
    radius: float
    density: float
    axis: Vec3 = (0.0, 0.0, 0.0)

    def __post_init__(self) -> None:
        object.__setattr__(self, "p0", _vec3(self.p0))
        object.__setattr__(self, "axis", _vec3(self.axis))
        for name in ("length", "radius", "density"):
            v = getattr(self, name)
            if not (isinstance(v, (int, float)) and math.isfinite(v) and v > 0):
                raise ValueError(f"{name} must be a positive number, got {v!r}")

    @classmethod
    def of(cls, p: Any) -> "PVCPipe":
        if isinstance(p, PVCPipe):
            return p
        if isinstance(p, InstanceView):
            return cls(p.p0, p.length, p.radius, p.density, p.axis)
        raise TypeError(f"not a pipe: {p!r}")

    def shift(self, v: Iterable[float]) -> "PVCPipe":
        return replace(self, p0=_add(self.p0, _vec3(v)))

    def rotate(self, a: Iterable[float]) -> "PVCPipe":
        return replace(self, axis=_add(self.axis, _vec3(a)))

    @property
    def p1(self) -> Vec3:
        return _add(self.p0, _scale(direction(self.axis), self.length))


def direction(axis: Iterable[float]) -> Vec3:
    """Unit vector: +z rotated about x, then y, then z (degrees)."""
    ax, ay, az = (math.radians(a) for a in axis)
    # Rx applied to (0, 0, 1)
    x, y, z = 0.0, -math.sin(ax), math.cos(ax)
    # Ry
    x, z = x * math.cos(ay) + z * math.sin(ay), -x * math.sin(ay) + z * math.cos(ay)
    # Rz
    x, y = x * math.cos(az) - y * math.sin(az), x * math.sin(az) + y * math.cos(az)
    return (_clean(x), _clean(y), _clean(z))


def _clean(v: float) -> float:
    # cos(90 deg) is 6e-17, not 0; snap so goldens and equality checks stay exact
    return 0.0 if abs(v) < 1e-15 else v


def pipe_mass(p: Any) -> float:
    p = PVCPipe.of(p)
    return p.density * math.pi * p.radius ** 2 * p.length


def pipe_center(p: Any) -> Vec3:
    p = PVCPipe.of(p)
    return _add(p.p0, _scale(direction(p.axis), p.length / 2))


def _pipes(body: Any) -> list[PVCPipe]:
    if isinstance(body, InstanceView):
        body = body.body
    pipes = [PVCPipe.of(p) for p in body]
    if not pipes:
        raise ValueError("an ROV needs at least one pipe")
    return pipes


def rov_mass(body: Any) -> float:
    return math.fsum(pipe_mass(p) for p in _pipes(body))


def center_of_mass(body: Any) -> Vec3:
    pipes = _pipes(body)
    total = rov_mass(pipes)
    return tuple(
        math.fsum(pipe_mass(p) * pipe_center(p)[i] for p in pipes) / total for i in range(3)
    )  # type: ignore[return-value]


def moment_of_inertia(body: Any) -> float:
    """About the vertical (z) axis through the center of mass; pipes are thin rods."""
    pipes = _pipes(body)
    cx, cy, _ = center_of_mass(pipes)
    total = 0.0
    for p in pipes:
        m = pipe_mass(p)
        dz = direction(p.axis)[2]
        sin2 = max(0.0, 1.0 - dz * dz)
        px, py, _ = pipe_center(p)
        d2 = (px - cx) ** 2 + (py - cy) ** 2
        total += m * p.length ** 2 / 12 * sin2 + m * d2
    return total


# ------------------------------------------------------------------ wireframe


def project(p: Sequence[float]) -> tuple[float, float]:
    """Cavalier projection onto the drawing plane."""
    x, y, z = p
    return (x - 0.5 * z, y - 0.25 * z)


TICK = 6.0  # px, half-length of the end ticks


def project_wireframe(body: Any, width: float = 480.0, height: float = 360.0) -> DiagramDoc:
    """Each pipe as its projected axis line plus a short tick at both ends."""
    pipes = _pipes(body)
    segs = [(project(p.p0), project(p.p1)) for p in pipes]
    xs = [c[0] for s in segs for c in s]
    ys = [c[1] for s in segs for c in s]
    margins = (30.0, 30.0, 30.0, 30.0)
    aspect = (width - margins[0] - margins[2]) / (height - margins[1] - margins[3])
    w, h = max(xs) - min(xs), max(ys) - min(ys)
    if w == 0 and h == 0:
        w = h = 1.0
    if h == 0 or w / h > aspect:
        h = w / aspect
    else:
        w = h * aspect
    cx, cy = (min(xs) + max(xs)) / 2, (min(ys) + max(ys)) / 2
    w, h = w * 1.1, h * 1.1
    view = (cx - w / 2, cy - h / 2, cx + w / 2, cy + h / 2)
    scale = (width - margins[0] - margins[2]) / w  # px per world unit
    elements: list = []
    for i, (a, b) in enumerate(segs):
        elements.append(Line(f"pipe-{i}", (a, b), stroke="steelblue", width=3.0))
        dx, dy = b[0] - a[0], b[1] - a[1]
        n = math.hypot(dx, dy)
        # ticks perpendicular to the projected axis; vertical if the axis projects to a point
        ux, uy = (-dy / n, dx / n) if n else (0.0, 1.0)
        t = TICK / scale
        for j, c in enumerate((a, b)):
            elements.append(Line(f"pipe-{i}-end-{j}", ((c[0] - ux * t, c[1] - uy * t), (c[0] + ux * t, c[1] + uy * t)),
                                 stroke="black", width=1.5))
        mid = ((a[0] + b[0]) / 2, (a[1] + b[1]) / 2)
        elements.append(TextBlock(f"pipe-{i}-label", mid, (f"{i}",), font_size=10, fill="dimgray", offset=(4, -4)))
    return DiagramDoc(width, height, tuple(elements), view=view, margins=margins, title="wireframe")


# ------------------------------------------------------------------ concepts


def _fn(name, params, body, source) -> FunctionDef:
    return FunctionDef(name, tuple(params), body, source)


PVCPipeType = ConceptType(
    "PVCPipe",
    attributes=(
        ("p0", VectorK(3)),
        ("length", Float),
        ("radius", Float),
        ("density", Float),
        ("axis", VectorK(3)),
        ("mass", ComputedK(Float, "_get_mass")),
        ("center", ComputedK(VectorK(3), "_get_center")),
    ),
    functions=(
        _fn("_get_mass", [], pipe_mass,
            "def _get_mass(self):\n    return self.density * pi * self.radius**2 * self.length"),
        _fn("_get_center", [], pipe_center,
            "def _get_center(self):\n    return self.p0 + self.length / 2 * direction(self.axis)"),
    ),
    class_template={K.gradient_color: "LightSteelBlue"},
    narrative_template="{id} is a pipe of length {length} m and radius {radius} m weighing {mass} kg.",
    invariants=(
        ("positive length, radius and density", lambda p: p.length > 0 and p.radius > 0 and p.density > 0),
    ),
)

ROVType = ConceptType(
    "ROV",
    attributes=(
        ("body", ListOf(RefTo("PVCPipe"))),
        ("mass", ComputedK(Float, "_get_mass")),
        ("center_of_mass", ComputedK(VectorK(3), "_get_center_of_mass")),
        ("moment_of_inertia", ComputedK(Float, "_get_moment_of_inertia")),
    ),
    functions=(
        _fn("_get_mass", [], rov_mass, "def _get_mass(self):\n    return sum(p.mass for p in self.body)"),
        _fn("_get_center_of_mass", [], center_of_mass,
            "def _get_center_of_mass(self):\n    return sum(p.mass * p.center for p in self.body) / self.mass"),
        _fn("_get_moment_of_inertia", [], moment_of_inertia,
            "def _get_moment_of_inertia(self):\n    # thin rods about the vertical axis through the COM"),
    ),
    class_template={K.gradient_color: "Gold"},
    instance_template={K.text: Fn1(lambda r: [
        f"{r._instance.id}: ROV", f"mass = {r.mass:.4g} kg",
        "com = (" + ", ".join(f"{c:.3g}" for c in r.center_of_mass) + ")",
        f"moi = {r.moment_of_inertia:.4g} kg m^2",
    ])},
    narrative_template="{id} is an ROV of {mass} kg.",
    invariants=(("a non-empty body", lambda r: len(r.body) > 0),),
)


def demo_pipes() -> list[PVCPipe]:
    """Two rails along x and two cross pieces along y, 3 m apart in z."""
    p1 = PVCPipe((0, 0, 0), 3.0, 0.02, 1400.0, (0, 90, 0))
    p2 = p1.shift((0, 0, 3))
    c1 = p1.rotate((0, 0, 90))
    c2 = c1.shift((0, 0, 3))
    return [p1, p2, c1, c2]


def rov_model() -> Model:
    m = Model().with_types(PVCPipeType, ROVType)
    names = ["p1", "p2", "c1", "c2"]
    for name, p in zip(names, demo_pipes()):
        m = m.define("PVCPipe", name, p0=list(p.p0), length=p.length, radius=p.radius, density=p.density,
                     axis=list(p.axis))
    return m.define("ROV", "rov", body=[m.view(n) for n in names])
