"""Point-mass kinematics under constant forces.

Velocity and position are obtained by integrating numerically (composite
Simpson, 200 subintervals) rather than from the closed form, so position
integrates velocity which itself integrates acceleration. Results are
memoized per ``(Ball, t)``; a :class:`Ball` is immutable and hashable, so the
cache is a pure function cache.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import lru_cache
from typing import Any, Iterable, Sequence

from ..core import ConceptType, Float, FunctionDef, InstanceView, ListOf, Model, VectorK
from ..errors import EvaluationError
from ..numeric import SIMPSON_INTERVALS, simpson_vec
from ..template import Fn2, K

GRAVITY = 9.8
VELOCITY_SCALE = 2.0  # seconds; arrow length = speed * scale


@dataclass(frozen=True)
class Vec2:
    x: float
    y: float

    def __post_init__(self) -> None:
        if not (math.isfinite(self.x) and math.isfinite(self.y)):
            raise ValueError(f"non-finite vector ({self.x}, {self.y})")

    @classmethod
    def of(cls, v: Any) -> "Vec2":
        if isinstance(v, Vec2):
            return v
        x, y = v
        return cls(float(x), float(y))

    def __add__(self, o: "Vec2") -> "Vec2":
        return Vec2(self.x + o.x, self.y + o.y)

    def __sub__(self, o: "Vec2") -> "Vec2":
        return Vec2(self.x - o.x, self.y - o.y)

    def __mul__(self, k: float) -> "Vec2":
        return Vec2(self.x * k, self.y * k)

    __rmul__ = __mul__

    def __truediv__(self, k: float) -> "Vec2":
        return Vec2(self.x / k, self.y / k)

    def __iter__(self):
        yield self.x
        yield self.y

    def norm(self) -> float:
        return math.hypot(self.x, self.y)


ZERO = Vec2(0.0, 0.0)


@dataclass(frozen=True)
class Ball:
    mass: float
    p0: Vec2
    v0: Vec2
    forces: tuple[Vec2, ...] = ()

    def __post_init__(self) -> None:
        object.__setattr__(self, "p0", Vec2.of(self.p0))
        object.__setattr__(self, "v0", Vec2.of(self.v0))
        object.__setattr__(self, "forces", tuple(Vec2.of(f) for f in self.forces))
        if not self.mass > 0:
            raise ValueError("mass must be positive")
        # hashed on every memo lookup in the integrators, so compute it once
        object.__setattr__(self, "_hash", hash((self.mass, self.p0, self.v0, self.forces)))

    def __hash__(self) -> int:
        return self._hash

    @classmethod
    def of(cls, b: Any) -> "Ball":
        """Accept a Ball or a view of a ``Ball`` concept instance."""
        if isinstance(b, Ball):
            return b
        if isinstance(b, InstanceView):
            return cls(b.mass, b.p0, b.v0, tuple(b.forces))
        raise TypeError(f"not a ball: {b!r}")


def _check_time(t: float) -> float:
    t = float(t)
    if not t >= 0:
        raise EvaluationError(f"time must be >= 0, got {t}")
    return t


def net_force(b: Any) -> Vec2:
    total = ZERO
    for f in Ball.of(b).forces:
        total = total + f
    return total


@lru_cache(maxsize=256)
def _net_acceleration(b: Ball) -> Vec2:
    return net_force(b) / b.mass


def _acceleration(b: Ball, t: float) -> Vec2:
    # constant forces only, so t does not enter
    return _net_acceleration(b)


@lru_cache(maxsize=65536)
def _velocity(b: Ball, t: float) -> Vec2:
    dv = simpson_vec(lambda s: _acceleration(b, s), 0.0, t, SIMPSON_INTERVALS)
    return b.v0 + Vec2(*dv)


@lru_cache(maxsize=4096)
def _position(b: Ball, t: float) -> Vec2:
    dp = simpson_vec(lambda s: _velocity(b, s), 0.0, t, SIMPSON_INTERVALS)
    return b.p0 + Vec2(*dp)


def acceleration(b: Any, t: float) -> Vec2:
    return _acceleration(Ball.of(b), _check_time(t))


def velocity(b: Any, t: float) -> Vec2:
    """``v0 + integral of acceleration over [0, t]``."""
    return _velocity(Ball.of(b), _check_time(t))


def position(b: Any, t: float) -> Vec2:
    """``p0 + integral of velocity over [0, t]``."""
    return _position(Ball.of(b), _check_time(t))


def p_x(b: Any, t: float) -> float:
    return position(b, t).x


def p_y(b: Any, t: float) -> float:
    return position(b, t).y


def v_x(b: Any, t: float) -> float:
    return velocity(b, t).x


def v_y(b: Any, t: float) -> float:
    return velocity(b, t).y


def a_x(b: Any, t: float) -> float:
    return acceleration(b, t).x


def a_y(b: Any, t: float) -> float:
    return acceleration(b, t).y


def apex_time(b: Any) -> float:
    """Closed-form time at which v_y = 0 (only meaningful for a constant downward force)."""
    b = Ball.of(b)
    a = net_force(b).y / b.mass
    if a >= 0:
        raise EvaluationError("no apex without a downward net force")
    return -b.v0.y / a


# ------------------------------------------------------------------ concept


def _fn(name: str, params: Sequence[str], body, source: str) -> FunctionDef:
    return FunctionDef(name, tuple(params), body, source)


def _vector_fn(name: str, fn, source: str) -> FunctionDef:
    return _fn(name, ["time"], lambda self, t: tuple(fn(self, t)), source)


BallType = ConceptType(
    "Ball",
    attributes=(
        ("mass", Float),
        ("p0", VectorK(2)),
        ("v0", VectorK(2)),
        ("forces", ListOf(VectorK(2))),
    ),
    functions=(
        _fn("net_force", [], lambda self: tuple(net_force(self)), "def net_force(self):\n    return v_sum(self.forces)"),
        _vector_fn("acceleration", acceleration,
                   "def acceleration(self, time):\n    return self.net_force() / self.mass"),
        _vector_fn("velocity", velocity,
                   "def velocity(self, time):\n    return self.v0 + v_integrate(self.acceleration, time)"),
        _vector_fn("position", position,
                   "def position(self, time):\n    return self.p0 + v_integrate(self.velocity, time)"),
        _fn("p_x", ["time"], p_x, "def p_x(self, time):\n    return self.position(time)[0]"),
        _fn("p_y", ["time"], p_y, "def p_y(self, time):\n    return self.position(time)[1]"),
        _fn("v_x", ["time"], v_x, "def v_x(self, time):\n    return self.velocity(time)[0]"),
        _fn("v_y", ["time"], v_y, "def v_y(self, time):\n    return self.velocity(time)[1]"),
        _fn("a_x", ["time"], a_x, "def a_x(self, time):\n    return self.acceleration(time)[0]"),
        _fn("a_y", ["time"], a_y, "def a_y(self, time):\n    return self.acceleration(time)[1]"),
    ),
    class_template={K.gradient_color: "Orange"},
    instance_template={K.name: "Rectangle"},
    narrative_template="{id} is a Ball of mass {mass} kg starting at {p0} with velocity {v0}.",
    invariants=(("mass > 0", lambda b: b.mass > 0),),
)


def _xy(b: Any, t: float) -> list[float]:
    p = position(b, t)
    return [p.x, p.y]


def _velocity_x_line(b: Any, t: float) -> list[list[float]]:
    p, v = position(b, t), velocity(b, t)
    return [[p.x, p.y], [p.x + VELOCITY_SCALE * v.x, p.y]]


def _velocity_y_line(b: Any, t: float) -> list[list[float]]:
    p, v = position(b, t), velocity(b, t)
    return [[p.x, p.y], [p.x, p.y + VELOCITY_SCALE * v.y]]


# index 2 is the vertical velocity arrow; it shrinks to nothing at the apex
BALL_ANIMATION = (
    {K.new: K.shape, K.origin: Fn2(_xy), K.fill: "orange", K.size: [16]},
    {K.new: K.line, K.point_list: Fn2(_velocity_x_line), K.stroke: "blue", K.arrow: True},
    {K.new: K.line, K.point_list: Fn2(_velocity_y_line), K.stroke: "red", K.arrow: True},
)
VERTICAL_VELOCITY = 2


def ball_model(
    p0: Iterable[float] = (0.0, 0.0),
    v0: Iterable[float] = (3.0, 10.0),
    mass: float = 1.0,
    forces: Iterable[Iterable[float]] = ((0.0, -GRAVITY),),
) -> Model:
    m = Model().with_type(BallType)
    m = m.define("Ball", "b", mass=mass, p0=list(p0), v0=list(v0), forces=[list(f) for f in forces])
    m = m.show_graph("b", ["a_y", "v_y", "p_y"], (0, 10))
    return m.animate("b", (0, 10), BALL_ANIMATION)


__all__ = [
    "Vec2", "Ball", "net_force", "acceleration", "velocity", "position",
    "p_x", "p_y", "v_x", "v_y", "a_x", "a_y", "apex_time",
    "BallType", "BALL_ANIMATION", "VERTICAL_VELOCITY", "ball_model", "GRAVITY", "VELOCITY_SCALE",
]
