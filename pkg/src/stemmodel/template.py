"""Visual-property templates: apply to an object (and time), and merge.

A template is a mapping from property keys to values. A value may be a
literal, a list of values, a nested template, or a function wrapped in
:class:`Fn1` (called with the object) or :class:`Fn2` (called with the
object and a time). :func:`apply_template` returns a function-free copy.

Property-key vocabulary understood by the renderer (others pass through
and are ignored when drawing):

``text``            label text; a string or a list of lines
``name``            shape kind: ``Rectangle``, ``Square``, ``Circle``
``corner_radius``   rounded-corner radius in pixels
``gradient_color``  fill as a white-to-color vertical gradient
``fill``            flat fill color
``stroke``          outline / line color
``font_size``       text size in pixels
``origin``          ``[x, y]`` position (center for circles)
``point_list``      ``[[x, y], ...]`` polyline vertices
``new``             element to create in an animation frame: ``shape``, ``line``, ``text``
``size``            ``[w, h]`` box size or ``[d]`` circle diameter, in pixels
``arrow``           draw an arrowhead at the end of a line
"""

from __future__ import annotations

from dataclasses import dataclass
from types import MappingProxyType
from typing import Any, Callable, Iterator, Mapping

from .errors import FnFailure, MissingTime


class K:
    """Property-key names, spelled like the attribute access used in pack code."""

    text = "text"
    name = "name"
    corner_radius = "corner_radius"
    gradient_color = "gradient_color"
    fill = "fill"
    stroke = "stroke"
    font_size = "font_size"
    origin = "origin"
    point_list = "point_list"
    new = "new"
    size = "size"
    arrow = "arrow"
    show_refs = "show_refs"  # False hides an instance's outgoing reference edges
    # values for K.new
    shape = "shape"
    line = "line"
    label = "label"


VOCABULARY = frozenset(
    v for k, v in vars(K).items() if not k.startswith("_") and k not in ("shape", "line", "label")
)


@dataclass(frozen=True)
class Fn1:
    """Template value computed from the target object."""

    fn: Callable[[Any], Any]

    def __call__(self, obj: Any) -> Any:
        return self.fn(obj)


@dataclass(frozen=True)
class Fn2:
    """Template value computed from the target object and a time."""

    fn: Callable[[Any, float], Any]

    def __call__(self, obj: Any, time: float) -> Any:
        return self.fn(obj, time)


class Template(Mapping[str, Any]):
    """Immutable property map."""

    __slots__ = ("_entries",)

    def __init__(self, entries: Mapping[str, Any] | None = None, **kw: Any):
        d = dict(entries or {})
        d.update(kw)
        object.__setattr__(self, "_entries", MappingProxyType(d))

    def __getitem__(self, key: str) -> Any:
        return self._entries[key]

    def __iter__(self) -> Iterator[str]:
        return iter(self._entries)

    def __len__(self) -> int:
        return len(self._entries)

    def __setattr__(self, name: str, value: Any) -> None:
        raise AttributeError("templates are immutable")

    def __repr__(self) -> str:
        return f"Template({dict(self._entries)!r})"

    def __eq__(self, other: object) -> bool:
        if isinstance(other, Mapping):
            return dict(self._entries) == dict(other)
        return NotImplemented

    __hash__ = None  # type: ignore[assignment]


EMPTY = Template()


def apply_template(t: Any, obj: Any, time: float | None = None, _path: tuple = ()) -> Any:
    """Copy of ``t`` with every function replaced by its value for ``obj``.

    Mappings and lists are rebuilt element by element; ``Fn1`` becomes
    ``fn(obj)`` and ``Fn2`` becomes ``fn(obj, time)``. Anything else is
    returned unchanged.
    """
    if isinstance(t, Mapping):
        return {k: apply_template(v, obj, time, _path + (k,)) for k, v in t.items()}
    if isinstance(t, (list, tuple)):
        return [apply_template(v, obj, time, _path + (i,)) for i, v in enumerate(t)]
    if isinstance(t, Fn2):
        if time is None:
            where = ".".join(str(p) for p in _path) or "<root>"
            raise MissingTime(f"template value at {where} needs a time")
        return _run(t.fn, _path, obj, time)
    if isinstance(t, Fn1):
        return _run(t.fn, _path, obj)
    return t


def _run(fn: Callable, path: tuple, *args: Any) -> Any:
    try:
        return fn(*args)
    except Exception as e:  # noqa: BLE001 - re-raised with the key path
        raise FnFailure(path, e) from e


def merge_templates(base: Mapping[str, Any], overlay: Mapping[str, Any]) -> Template:
    """Union of keys; ``overlay`` wins. Nested templates are replaced, not merged."""
    merged = dict(base)
    merged.update(overlay)
    return Template(merged)


def needs_time(t: Any) -> bool:
    if isinstance(t, Mapping):
        return any(needs_time(v) for v in t.values())
    if isinstance(t, (list, tuple)):
        return any(needs_time(v) for v in t)
    return isinstance(t, Fn2)
