"""Concept schemas, immutable instances, and the model that holds them.

A :class:`ConceptType` lists typed attributes and pure functions. A
:class:`ConceptInstance` binds a value to every stored attribute; computed
attributes are produced on demand by a getter function registered on the
type. Everything here is immutable: operations that "add" return a new
:class:`Model`.

Stored values use plain Python data, frozen on the way in:

=================  ==========================================
kind               accepted / stored as
=================  ==========================================
IntK               ``int`` (not ``bool``)
FloatK             ``int`` or ``float``
StringK            ``str``
BoolK              ``bool``
VectorK(n)         sequence of n numbers -> tuple of floats
ListOf(k)          sequence -> tuple
TupleOf(k1..kn)    sequence of length n -> tuple
RefTo(T)           ``Ref``, ``ConceptInstance`` or view -> ``Ref``
ExprK              ``Expr`` or expression text -> ``Expr``
=================  ==========================================
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from functools import cached_property
from types import MappingProxyType
from typing import Any, Callable, Iterable, Mapping, Sequence, Union

from . import expr as _expr
from .errors import (
    ArityMismatch,
    DanglingReference,
    DuplicateAttribute,
    DuplicateInstance,
    DuplicateType,
    InvariantViolation,
    KindMismatch,
    MissingAttribute,
    ModelError,
    UnknownAttribute,
    UnknownFunction,
    UnknownInstance,
    UnknownParent,
    UnknownType,
)

# ------------------------------------------------------------------ kinds


@dataclass(frozen=True)
class IntK:
    def __str__(self) -> str:
        return "Int"


@dataclass(frozen=True)
class FloatK:
    def __str__(self) -> str:
        return "Float"


@dataclass(frozen=True)
class StringK:
    def __str__(self) -> str:
        return "String"


@dataclass(frozen=True)
class BoolK:
    def __str__(self) -> str:
        return "Bool"


@dataclass(frozen=True)
class VectorK:
    dimension: int

    def __str__(self) -> str:
        return f"Vector{self.dimension}"


@dataclass(frozen=True)
class ListOf:
    element: "AttributeKind"

    def __str__(self) -> str:
        return f"List({self.element})"


@dataclass(frozen=True)
class TupleOf:
    elements: tuple

    def __init__(self, *elements: "AttributeKind"):
        object.__setattr__(self, "elements", tuple(elements))

    def __str__(self) -> str:
        return "Tuple(" + ", ".join(str(k) for k in self.elements) + ")"


@dataclass(frozen=True)
class RefTo:
    concept_name: str

    def __str__(self) -> str:
        return self.concept_name


@dataclass(frozen=True)
class ExprK:
    def __str__(self) -> str:
        return "Expr"


@dataclass(frozen=True)
class ComputedK:
    result: "AttributeKind"
    getter_name: str

    def __str__(self) -> str:
        return f"Property({self.result})"


AttributeKind = Union[IntK, FloatK, StringK, BoolK, VectorK, ListOf, TupleOf, RefTo, ExprK, ComputedK]

Int, Float, String, Bool, Expr = IntK(), FloatK(), StringK(), BoolK(), ExprK()


@dataclass(frozen=True)
class Ref:
    """Stored reference to another instance of the same model."""

    id: str

    def __str__(self) -> str:
        return self.id


# ------------------------------------------------------------------ schema


@dataclass(frozen=True)
class FunctionDef:
    """A pure function on a concept type.

    ``body`` is either a Python callable ``body(self_view, *args)`` or an
    :data:`~stemmodel.expr.Expr` whose variables are named by ``params``.
    ``source`` is the text shown when a diagram asks to display the method.
    """

    name: str
    params: tuple[str, ...]
    body: Any
    source: str

    def __post_init__(self) -> None:
        object.__setattr__(self, "params", tuple(self.params))
        if isinstance(self.body, str):
            object.__setattr__(self, "body", _expr.parse_expr(self.body))
        if not self.source or not self.source.strip():
            raise ValueError(f"function {self.name!r} needs non-empty source text")
        if not callable(self.body):
            unknown = _expr.free_vars(self.body) - set(self.params)
            if unknown:
                raise ValueError(f"function {self.name!r} uses unbound variables {sorted(unknown)}")


def expr_function(name: str, params: Sequence[str], text: str) -> FunctionDef:
    return FunctionDef(name, tuple(params), _expr.parse_expr(text), f"def {name}({', '.join(params)}): {text}")


@dataclass(frozen=True)
class ConceptType:
    name: str
    attributes: tuple[tuple[str, AttributeKind], ...] = ()
    functions: tuple[FunctionDef, ...] = ()
    parent: str | None = None
    class_template: Mapping = field(default_factory=dict, compare=False)
    instance_template: Mapping = field(default_factory=dict, compare=False)
    narrative_template: str | None = None
    invariants: tuple[tuple[str, Callable[["InstanceView"], bool]], ...] = field(default=(), compare=False)
    doc: str = ""

    def __post_init__(self) -> None:
        object.__setattr__(self, "attributes", tuple((n, k) for n, k in self.attributes))
        object.__setattr__(self, "functions", tuple(self.functions))
        names = [n for n, _ in self.attributes]
        dup = {n for n in names if names.count(n) > 1}
        if dup:
            raise DuplicateAttribute(f"{self.name}: attribute(s) {sorted(dup)} declared twice")
        fnames = [f.name for f in self.functions]
        if len(set(fnames)) != len(fnames):
            raise DuplicateAttribute(f"{self.name}: function declared twice")


@dataclass(frozen=True, eq=False)
class ConceptInstance:
    id: str
    type_name: str
    bindings: Mapping[str, Any]

    def __post_init__(self) -> None:
        object.__setattr__(self, "bindings", MappingProxyType(dict(self.bindings)))

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, ConceptInstance):
            return NotImplemented
        return (self.id, self.type_name, dict(self.bindings)) == (other.id, other.type_name, dict(other.bindings))

    def __hash__(self) -> int:
        return hash((self.id, self.type_name))


# ------------------------------------------------------------------ directives


@dataclass(frozen=True)
class ShowMethod:
    instance_id: str
    function_name: str


@dataclass(frozen=True)
class ShowEval:
    instance_id: str
    function_name: str
    args: tuple = ()

    def __post_init__(self) -> None:
        object.__setattr__(self, "args", tuple(self.args))


@dataclass(frozen=True)
class ShowGraph:
    instance_id: str
    function_names: tuple[str, ...]
    range: tuple[float, float]

    def __post_init__(self) -> None:
        object.__setattr__(self, "function_names", tuple(self.function_names))
        object.__setattr__(self, "range", tuple(self.range))


@dataclass(frozen=True)
class Animate:
    instance_id: str
    range: tuple[float, float]
    templates: tuple = field(compare=False, default=())

    def __post_init__(self) -> None:
        object.__setattr__(self, "range", tuple(self.range))
        object.__setattr__(self, "templates", tuple(self.templates))


DisplayDirective = Union[ShowMethod, ShowEval, ShowGraph, Animate]


# ------------------------------------------------------------------ violations


@dataclass(frozen=True)
class Violation:
    kind: str  # name of the matching exception class
    instance_id: str
    path: str
    message: str

    def to_error(self) -> ModelError:
        cls = {
            "MissingAttribute": MissingAttribute,
            "KindMismatch": KindMismatch,
            "DanglingReference": DanglingReference,
            "UnknownType": UnknownType,
            "UnknownAttribute": UnknownAttribute,
            "InvariantViolation": InvariantViolation,
        }[self.kind]
        where = f"{self.instance_id}.{self.path}" if self.path else self.instance_id
        return cls(f"{where}: {self.message}")


# ------------------------------------------------------------------ model


@dataclass(frozen=True)
class Model:
    types: tuple[ConceptType, ...] = ()
    instances: tuple[ConceptInstance, ...] = ()
    directives: tuple = ()

    @cached_property
    def _types(self) -> Mapping[str, ConceptType]:
        return {t.name: t for t in self.types}

    @cached_property
    def _instances(self) -> Mapping[str, ConceptInstance]:
        return {i.id: i for i in self.instances}

    @cached_property
    def _memo(self) -> dict:
        # per-model lookup cache; safe because the model never changes
        return {}

    # -- lookup

    def type(self, name: str) -> ConceptType:
        try:
            return self._types[name]
        except KeyError:
            raise UnknownType(f"no concept type named {name!r}") from None

    def has_type(self, name: str) -> bool:
        return name in self._types

    def instance(self, ident: str) -> ConceptInstance:
        try:
            return self._instances[ident]
        except KeyError:
            raise UnknownInstance(f"no instance with id {ident!r}") from None

    def has_instance(self, ident: str) -> bool:
        return ident in self._instances

    def view(self, ident: str) -> "InstanceView":
        return InstanceView(self, self.instance(ident))

    def ancestors(self, name: str) -> list[ConceptType]:
        """The type itself followed by its parents, nearest first."""
        chain = []
        seen = set()
        t: ConceptType | None = self.type(name)
        while t is not None:
            if t.name in seen:
                raise UnknownParent(f"inheritance cycle through {t.name!r}")
            seen.add(t.name)
            chain.append(t)
            t = self.type(t.parent) if t.parent else None
        return chain

    def is_subtype(self, name: str, ancestor: str) -> bool:
        return any(t.name == ancestor for t in self.ancestors(name))

    def attributes(self, type_name: str) -> list[tuple[str, AttributeKind]]:
        """Reflected attribute list: inherited first, each name exactly once.

        A subtype may re-declare an inherited stored attribute as computed;
        the re-declared kind takes the inherited attribute's slot.
        """
        key = ("attrs", type_name)
        if key not in self._memo:
            out: dict[str, AttributeKind] = {}
            for t in reversed(self.ancestors(type_name)):
                for name, kind in t.attributes:
                    out[name] = kind
            self._memo[key] = tuple(out.items())
        return list(self._memo[key])

    def stored_attributes(self, type_name: str) -> list[tuple[str, AttributeKind]]:
        return [(n, k) for n, k in self.attributes(type_name) if not isinstance(k, ComputedK)]

    def attribute_kind(self, type_name: str, name: str) -> AttributeKind:
        key = ("kinds", type_name)
        if key not in self._memo:
            self._memo[key] = dict(self.attributes(type_name))
        try:
            return self._memo[key][name]
        except KeyError:
            raise UnknownAttribute(f"{type_name} has no attribute {name!r}") from None

    def has_attribute(self, type_name: str, name: str) -> bool:
        try:
            self.attribute_kind(type_name, name)
        except UnknownAttribute:
            return False
        return True

    def _functions(self, type_name: str) -> dict[str, FunctionDef]:
        key = ("fns", type_name)
        if key not in self._memo:
            fns: dict[str, FunctionDef] = {}
            for t in reversed(self.ancestors(type_name)):
                for f in t.functions:
                    fns[f.name] = f
            self._memo[key] = fns
        return self._memo[key]

    def function(self, type_name: str, name: str) -> FunctionDef:
        try:
            return self._functions(type_name)[name]
        except KeyError:
            raise UnknownFunction(f"{type_name} has no function {name!r}") from None

    def has_function(self, type_name: str, name: str) -> bool:
        try:
            self.function(type_name, name)
        except UnknownFunction:
            return False
        return True

    def function_names(self, type_name: str) -> list[str]:
        return list(self._functions(type_name))

    def instances_of(self, type_name: str) -> list[ConceptInstance]:
        return [i for i in self.instances if self.has_type(i.type_name) and self.is_subtype(i.type_name, type_name)]

    # -- functional updates

    def with_type(self, t: ConceptType) -> "Model":
        return register_type(self, t)

    def with_types(self, *ts: ConceptType) -> "Model":
        m = self
        for t in ts:
            m = register_type(m, t)
        return m

    def with_instance(self, inst: ConceptInstance) -> "Model":
        if inst.id in self._instances:
            raise DuplicateInstance(f"instance id {inst.id!r} already used")
        return Model(self.types, self.instances + (inst,), self.directives)

    def define(self, type_name: str, ident: str, **bindings: Any) -> "Model":
        """Construct, validate and add an instance in one step."""
        return self.with_instance(new_instance(self, type_name, ident, bindings))

    def with_directive(self, d: DisplayDirective) -> "Model":
        self.instance(d.instance_id)
        return Model(self.types, self.instances, self.directives + (d,))

    def show_method(self, ident: str, fn: str) -> "Model":
        return self.with_directive(ShowMethod(ident, fn))

    def show_eval(self, ident: str, fn: str, args: Sequence = ()) -> "Model":
        return self.with_directive(ShowEval(ident, fn, tuple(args)))

    def show_graph(self, ident: str, fns: Sequence[str], rng: tuple[float, float]) -> "Model":
        return self.with_directive(ShowGraph(ident, tuple(fns), rng))

    def animate(self, ident: str, rng: tuple[float, float], templates: Sequence) -> "Model":
        return self.with_directive(Animate(ident, rng, tuple(templates)))

    def merge(self, other: "Model") -> "Model":
        """Extend this model with the types, instances and directives of ``other``."""
        m = self
        for t in other.types:
            if not m.has_type(t.name):
                m = register_type(m, t)
        for i in other.instances:
            if not m.has_instance(i.id):
                m = m.with_instance(i)
        for d in other.directives:
            if d not in m.directives:
                m = m.with_directive(d)
        return m


# ------------------------------------------------------------------ operations


def register_type(model: Model, t: ConceptType) -> Model:
    if model.has_type(t.name):
        raise DuplicateType(f"concept type {t.name!r} already registered")
    if t.parent is not None and not model.has_type(t.parent):
        raise UnknownParent(f"{t.name}: parent {t.parent!r} is not registered")
    if t.parent is not None:
        inherited = dict(model.attributes(t.parent))
        for name, kind in t.attributes:
            if name not in inherited:
                continue
            old = inherited[name]
            stored_to_computed = isinstance(kind, ComputedK) and not isinstance(old, ComputedK)
            if not stored_to_computed:
                raise DuplicateAttribute(
                    f"{t.name}.{name}: only a stored attribute may be overridden, and only by a computed one"
                )
    m = Model(model.types + (t,), model.instances, model.directives)
    for name, kind in t.attributes:
        if isinstance(kind, ComputedK) and not m.has_function(t.name, kind.getter_name):
            raise UnknownFunction(f"{t.name}.{name}: getter {kind.getter_name!r} is not defined")
    return m


def _is_number(v: Any) -> bool:
    return isinstance(v, (int, float)) and not isinstance(v, bool)


def _check(model: Model, kind: AttributeKind, value: Any, path: str, out: list) -> Any:
    """Return the frozen form of ``value``; append (kind, path, message) problems to ``out``."""

    def bad(msg: str, what: str = "KindMismatch") -> Any:
        out.append((what, path, msg))
        return value

    if isinstance(kind, IntK):
        if isinstance(value, int) and not isinstance(value, bool):
            return value
        return bad(f"expected Int, got {value!r}")
    if isinstance(kind, FloatK):
        if _is_number(value):
            if not math.isfinite(value):
                return bad(f"expected finite Float, got {value!r}")
            return value
        return bad(f"expected Float, got {value!r}")
    if isinstance(kind, StringK):
        return value if isinstance(value, str) else bad(f"expected String, got {value!r}")
    if isinstance(kind, BoolK):
        return value if isinstance(value, bool) else bad(f"expected Bool, got {value!r}")
    if isinstance(kind, VectorK):
        if isinstance(value, (str, bytes)) or not isinstance(value, Iterable):
            return bad(f"expected Vector{kind.dimension}, got {value!r}")
        comps = tuple(value)
        if len(comps) != kind.dimension or not all(_is_number(c) and math.isfinite(c) for c in comps):
            return bad(f"expected {kind.dimension} finite numbers, got {value!r}")
        return tuple(float(c) for c in comps)
    if isinstance(kind, ListOf):
        if isinstance(value, (str, bytes, Mapping)) or not isinstance(value, Iterable):
            return bad(f"expected List, got {value!r}")
        return tuple(_check(model, kind.element, v, f"{path}[{i}]", out) for i, v in enumerate(value))
    if isinstance(kind, TupleOf):
        if isinstance(value, (str, bytes, Mapping)) or not isinstance(value, Iterable):
            return bad(f"expected {kind}, got {value!r}")
        items = tuple(value)
        if len(items) != len(kind.elements):
            return bad(f"expected {len(kind.elements)}-tuple, got {len(items)} items")
        return tuple(_check(model, k, v, f"{path}[{i}]", out) for i, (k, v) in enumerate(zip(kind.elements, items)))
    if isinstance(kind, RefTo):
        if isinstance(value, InstanceView):
            value = Ref(value._instance.id)
        elif isinstance(value, ConceptInstance):
            value = Ref(value.id)
        if not isinstance(value, Ref):
            return bad(f"expected reference to {kind.concept_name}, got {value!r}")
        if not model.has_type(kind.concept_name):
            return bad(f"referenced type {kind.concept_name!r} is not registered", "UnknownType")
        if not model.has_instance(value.id):
            return bad(f"reference to missing instance {value.id!r}", "DanglingReference")
        target = model.instance(value.id)
        if not model.has_type(target.type_name) or not model.is_subtype(target.type_name, kind.concept_name):
            return bad(f"{value.id!r} is a {target.type_name}, not a {kind.concept_name}")
        return value
    if isinstance(kind, ExprK):
        if isinstance(value, str):
            try:
                return _expr.parse_expr(value)
            except ModelError as e:
                return bad(f"bad expression: {e}")
        if isinstance(value, (_expr.Const, _expr.Var, _expr.Neg, _expr.Binary, _expr.Call)):
            return value
        return bad(f"expected Expr, got {value!r}")
    if isinstance(kind, ComputedK):
        return bad("computed attribute cannot be bound")
    raise TypeError(f"unknown attribute kind {kind!r}")


def _check_instance(model: Model, type_name: str, ident: str, bindings: Mapping[str, Any]):
    problems: list = []
    if not model.has_type(type_name):
        return {}, [Violation("UnknownType", ident, "", f"no concept type {type_name!r}")]
    frozen: dict[str, Any] = {}
    declared = dict(model.attributes(type_name))
    for name, kind in model.attributes(type_name):
        if isinstance(kind, ComputedK):
            if name in bindings:
                problems.append(("KindMismatch", name, "computed attribute cannot be bound"))
            continue
        if name not in bindings:
            problems.append(("MissingAttribute", name, f"no value for {type_name}.{name}"))
            continue
        frozen[name] = _check(model, kind, bindings[name], name, problems)
    for name in bindings:
        if name not in declared:
            problems.append(("UnknownAttribute", name, f"{type_name} has no attribute {name!r}"))
    if not problems:
        problems += _check_invariants(model, ConceptInstance(ident, type_name, frozen))
    return frozen, [Violation(k, ident, p, msg) for k, p, msg in problems]


def _check_invariants(model: Model, inst: ConceptInstance) -> list:
    if not model.has_instance(inst.id) or model.instance(inst.id) is not inst:
        model = Model(model.types, tuple(i for i in model.instances if i.id != inst.id) + (inst,), ())
    view = InstanceView(model, inst)
    out = []
    for t in reversed(model.ancestors(inst.type_name)):
        for description, predicate in t.invariants:
            try:
                ok = predicate(view)
            except ModelError as e:
                ok, description = False, f"{description} ({e})"
            if not ok:
                out.append(("InvariantViolation", "", f"{t.name} requires {description}"))
    return out


def new_instance(model: Model, type_name: str, ident: str, bindings: Mapping[str, Any]) -> ConceptInstance:
    """Build a validated instance. The instance is not added to ``model``."""
    frozen, problems = _check_instance(model, type_name, ident, bindings)
    if problems:
        raise problems[0].to_error()
    return ConceptInstance(ident, type_name, frozen)


def validate(model: Model) -> list[Violation]:
    out: list[Violation] = []
    for t in model.types:
        try:
            model.ancestors(t.name)
        except ModelError as e:
            out.append(Violation("UnknownType", t.name, "", str(e)))
            continue
        for name, kind in t.attributes:
            for ref in _refs_in_kind(kind):
                if not model.has_type(ref):
                    out.append(Violation("UnknownType", t.name, name, f"RefTo unknown type {ref!r}"))
    seen: set[str] = set()
    for inst in model.instances:
        if inst.id in seen:
            out.append(Violation("KindMismatch", inst.id, "", "duplicate instance id"))
        seen.add(inst.id)
        _, problems = _check_instance(model, inst.type_name, inst.id, inst.bindings)
        out.extend(problems)
    return out


def _refs_in_kind(kind: AttributeKind) -> list[str]:
    if isinstance(kind, RefTo):
        return [kind.concept_name]
    if isinstance(kind, ListOf):
        return _refs_in_kind(kind.element)
    if isinstance(kind, TupleOf):
        return [r for k in kind.elements for r in _refs_in_kind(k)]
    if isinstance(kind, ComputedK):
        return _refs_in_kind(kind.result)
    return []


def get_attribute(model: Model, instance: ConceptInstance | str, name: str) -> Any:
    """Stored value, or the getter's result for a computed attribute.

    References come back as :class:`Ref`; use :meth:`Model.view` for
    navigation that follows references.
    """
    inst = model.instance(instance) if isinstance(instance, str) else instance
    kind = model.attribute_kind(inst.type_name, name)
    if not isinstance(kind, ComputedK):
        return inst.bindings[name]
    getter = model.function(inst.type_name, kind.getter_name)
    raw = _call(model, inst, getter, ())
    problems: list = []
    value = _check(model, kind.result, _unview(raw), name, problems)
    if problems:
        what, path, msg = problems[0]
        raise Violation(what, inst.id, path, f"getter {kind.getter_name!r}: {msg}").to_error()
    return value


def invoke(model: Model, instance: ConceptInstance | str, function_name: str, args: Sequence = ()) -> Any:
    inst = model.instance(instance) if isinstance(instance, str) else instance
    fn = model.function(inst.type_name, function_name)
    args = tuple(args)
    if len(args) != len(fn.params):
        raise ArityMismatch(
            f"{inst.type_name}.{function_name} takes {len(fn.params)} argument(s), got {len(args)}"
        )
    return _call(model, inst, fn, args)


def _call(model: Model, inst: ConceptInstance, fn: FunctionDef, args: tuple) -> Any:
    if callable(fn.body):
        return fn.body(InstanceView(model, inst), *args)
    return _expr.eval_expr(fn.body, dict(zip(fn.params, args)))


def _unview(v: Any) -> Any:
    if isinstance(v, InstanceView):
        return Ref(v._instance.id)
    if isinstance(v, (list, tuple)):
        return tuple(_unview(x) for x in v)
    return v


# ------------------------------------------------------------------ views


class InstanceView:
    """Read-only navigation over an instance, the ``self`` seen by function bodies.

    Attribute access returns values with references resolved to further
    views; function names return bound callables::

        tf.points          # ((1, 10), (2, 15))
        inv.inverts.eval(10)
    """

    __slots__ = ("_model", "_instance")

    def __init__(self, model: Model, instance: ConceptInstance):
        object.__setattr__(self, "_model", model)
        object.__setattr__(self, "_instance", instance)

    def __getattr__(self, name: str) -> Any:
        if name.startswith("__"):
            raise AttributeError(name)
        model, inst = self._model, self._instance
        if any(n == name for n, _ in model.attributes(inst.type_name)):
            return self._resolve(get_attribute(model, inst, name))
        if model.has_function(inst.type_name, name):
            return lambda *args: invoke(model, inst, name, args)
        raise UnknownAttribute(f"{inst.type_name} {inst.id!r} has no attribute or function {name!r}")

    def __setattr__(self, name: str, value: Any) -> None:
        raise AttributeError("concept instances are immutable")

    def _resolve(self, v: Any) -> Any:
        if isinstance(v, Ref):
            return self._model.view(v.id)
        if isinstance(v, tuple):
            return tuple(self._resolve(x) for x in v)
        return v

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, InstanceView):
            return NotImplemented
        return self._model is other._model and self._instance == other._instance

    def __hash__(self) -> int:
        return hash(self._instance)

    def __repr__(self) -> str:
        return f"<{self._instance.type_name} {self._instance.id}>"


@dataclass(frozen=True, eq=False)
class TypeView:
    """What class-template functions receive: a type plus its reflected members."""

    model: Model
    type: ConceptType

    @property
    def name(self) -> str:
        return self.type.name

    @property
    def parent(self) -> str | None:
        return self.type.parent

    @property
    def attributes(self) -> list[tuple[str, AttributeKind]]:
        return self.model.attributes(self.type.name)

    @property
    def functions(self) -> list[FunctionDef]:
        return [self.model.function(self.type.name, n) for n in self.model.function_names(self.type.name)]


def instance_of(obj: InstanceView | ConceptInstance) -> ConceptInstance:
    return obj._instance if isinstance(obj, InstanceView) else obj


def model_of(view: InstanceView) -> Model:
    return view._model


def label_of(model: Model, inst: ConceptInstance) -> str:
    """Display label: a ``label`` attribute when the type has one, else the id."""
    if any(n == "label" for n, _ in model.attributes(inst.type_name)):
        v = get_attribute(model, inst, "label")
        if isinstance(v, str):
            return v
    return inst.id


def format_value(v: Any, model: Model | None = None, kind: AttributeKind | None = None) -> str:
    """Compact text for a value, as shown in diagrams, narratives and the CLI.

    Lists and tuples are both stored as Python tuples; pass ``kind`` to get
    ``[...]`` for list attributes.
    """
    if isinstance(kind, ComputedK):
        kind = kind.result
    if isinstance(v, InstanceView):
        return label_of(v._model, v._instance)
    if isinstance(v, Ref):
        if model is not None and model.has_instance(v.id):
            return label_of(model, model.instance(v.id))
        return v.id
    if isinstance(v, bool):
        return "True" if v else "False"
    if isinstance(v, float):
        if math.isfinite(v) and v == round(v) and abs(v) < 1e15:
            return str(int(v))
        return f"{v:.6g}"
    if isinstance(v, int):
        return str(v)
    if isinstance(v, (_expr.Const, _expr.Var, _expr.Neg, _expr.Binary, _expr.Call)):
        return _expr.print_expr(v)
    if isinstance(v, (list, tuple)):
        if isinstance(kind, ListOf):
            return "[" + ", ".join(format_value(x, model, kind.element) for x in v) + "]"
        if isinstance(kind, TupleOf):
            return "(" + ", ".join(format_value(x, model, k) for x, k in zip(v, kind.elements)) + ")"
        if isinstance(v, list):
            return "[" + ", ".join(format_value(x, model) for x in v) + "]"
        return "(" + ", ".join(format_value(x, model) for x in v) + ")"
    return str(v)


ViewLike = Union[InstanceView, ConceptInstance]
Getter = Callable[[InstanceView], Any]
