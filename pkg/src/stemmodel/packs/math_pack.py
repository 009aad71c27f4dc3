"""Functions as concepts: rule and table functions, inverses, graph transforms, calculus.

Every function concept answers ``eval(x)`` and has a ``domain``. The
transforms (``InverseFunction``, ``ShiftX``, ``Bump``, ``Derivative``,
``Integral``) hold a reference to a source function and are functions
themselves, so they nest.

For use outside a model, :func:`derivative`, :func:`integral` and
:func:`limit` work on anything evaluable: an instance view, an object with
``eval``, or a plain callable.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Any, Callable

from ..core import (
    ComputedK,
    ConceptType,
    Expr,
    Float,
    FunctionDef,
    Int,
    InstanceView,
    ListOf,
    Model,
    RefTo,
    String,
    TupleOf,
)
from ..errors import EvaluationError, NoConvergence, NotInDomain
from ..expr import eval_expr, print_expr
from ..numeric import SIMPSON_INTERVALS, central_difference, simpson
from ..template import K

# ------------------------------------------------------------------ numeric operators


def as_callable(f: Any) -> Callable[[float], float]:
    if hasattr(f, "eval") and callable(getattr(f, "eval")):
        return f.eval
    if callable(f):
        return f
    raise TypeError(f"cannot evaluate {f!r}")


@dataclass(frozen=True)
class NumericFunction:
    """A function value produced by a calculus operator; composable and plottable."""

    fn: Callable[[float], float]
    label: str = "f"

    def eval(self, x: float) -> float:
        return self.fn(x)

    __call__ = eval


def derivative(f: Any) -> NumericFunction:
    """Central difference with step ``1e-5 * max(1, |x|)``."""
    g = as_callable(f)
    return NumericFunction(lambda x: central_difference(g, x), f"d/dx {getattr(f, 'label', 'f')}")


def integral(f: Any, a: float) -> NumericFunction:
    """``x -> integral of f from a to x`` by composite Simpson, 200 subintervals."""
    g = as_callable(f)
    return NumericFunction(lambda x: simpson(g, a, x, SIMPSON_INTERVALS), f"int_{a:g} {getattr(f, 'label', 'f')}")


LIMIT_STEPS = tuple(10.0 ** -k for k in range(1, 9))
LIMIT_TOL = 1e-6


def limit(f: Any, x0: float) -> float:
    """Two-sided numeric limit at ``x0`` (``x0`` itself is never evaluated)."""
    g = as_callable(f)
    prev_left = prev_right = None
    for h in LIMIT_STEPS:
        left, right = g(x0 - h), g(x0 + h)
        if (
            prev_left is not None
            and abs(left - prev_left) < LIMIT_TOL
            and abs(right - prev_right) < LIMIT_TOL
            and abs(left - right) < LIMIT_TOL
        ):
            return (left + right) / 2
        prev_left, prev_right = left, right
    raise NoConvergence(f"no two-sided limit at {x0!r}")


# ------------------------------------------------------------------ concept bodies


def _abstract_eval(self: InstanceView, x: float) -> float:
    raise EvaluationError(f"{self!r}: eval is defined by subtypes of Function")


def _rule_eval(self: InstanceView, x: float) -> float:
    return eval_expr(self.rule, {"x": x})


def _table_domain(self: InstanceView) -> list:
    return [x for x, y in self.points]


def _table_eval(self: InstanceView, x: float) -> Any:
    for x1, y1 in self.points:
        if x1 == x:
            return y1
    raise NotInDomain(f"{x!r} is not in the domain of table function")


def _inverse_pairs(self: InstanceView) -> list[tuple[Any, Any]]:
    f = self.inverts
    return [(x, f.eval(x)) for x in f.domain]


def _inverse_domain(self: InstanceView) -> list:
    return [y for _, y in _inverse_pairs(self)]


def _inverse_eval(self: InstanceView, y: float) -> Any:
    for x1, y1 in _inverse_pairs(self):
        if y1 == y:
            return x1
    raise NotInDomain(f"{y!r} is not a value of the inverted function")


def _inverse_warnings(self: InstanceView) -> list[str]:
    seen: dict = {}
    out = []
    for x, y in _inverse_pairs(self):
        if y in seen:
            out.append(f"not injective: {seen[y]!r} and {x!r} both map to {y!r}; eval({y!r}) returns {seen[y]!r}")
        else:
            seen[y] = x
    return out


def _shift_domain(self: InstanceView) -> list:
    return [x + self.by for x in self.source.domain]


def _shift_eval(self: InstanceView, x: float) -> float:
    return self.source.eval(x - self.by)


def _source_domain(self: InstanceView) -> list:
    return list(self.source.domain)


def _bump_eval(self: InstanceView, x: float) -> float:
    if self.start <= x <= self.end:
        return self.val
    return self.source.eval(x)


def _derivative_eval(self: InstanceView, x: float) -> float:
    return central_difference(self.source.eval, x)


def _integral_eval(self: InstanceView, x: float) -> float:
    return simpson(self.source.eval, self.lower, x, SIMPSON_INTERVALS)


def _fn(name, params, body, source) -> FunctionDef:
    return FunctionDef(name, tuple(params), body, source)


Function = ConceptType(
    "Function",
    attributes=(("domain", ListOf(Int)),),
    functions=(_fn("eval", ["x"], _abstract_eval, "def eval(self, x): pass"),),
    class_template={K.gradient_color: "Green"},
    narrative_template="{id} is a {type} with domain {domain}.",
)

RuleFunction = ConceptType(
    "RuleFunction",
    parent="Function",
    attributes=(("rule", Expr),),
    functions=(_fn("eval", ["x"], _rule_eval, "def eval(self, x):\n    return self.rule(x)"),),
    class_template={K.gradient_color: "Yellow"},
    narrative_template="{id} is a RuleFunction with rule {rule} on domain {domain}.",
)

TableFunction = ConceptType(
    "TableFunction",
    parent="Function",
    attributes=(
        ("points", ListOf(TupleOf(Int, Int))),
        ("domain", ComputedK(ListOf(Int), "_get_domain")),
    ),
    functions=(
        _fn("_get_domain", [], _table_domain, "def _get_domain(self):\n    return [x for x, y in self.points]"),
        _fn("eval", ["x"], _table_eval,
            "def eval(self, x):\n    return find(y1 for x1, y1 in self.points\n                if x1 == x)"),
    ),
    class_template={K.gradient_color: "Maroon"},
    instance_template={K.name: "Circle"},
    narrative_template="{id} is a TableFunction with points {points} and domain {domain}.",
    invariants=(("unique x values in points", lambda s: len({x for x, _ in s.points}) == len(s.points)),),
)

InverseFunction = ConceptType(
    "InverseFunction",
    parent="Function",
    attributes=(
        ("inverts", RefTo("Function")),
        ("domain", ComputedK(ListOf(Float), "_get_domain")),
        ("warnings", ComputedK(ListOf(String), "_get_warnings")),
    ),
    functions=(
        _fn("_get_domain", [], _inverse_domain,
            "def _get_domain(self):\n    return [self.inverts.eval(x) for x in self.inverts.domain]"),
        _fn("_get_warnings", [], _inverse_warnings, "def _get_warnings(self):\n    # repeated y values"),
        _fn("eval", ["y"], _inverse_eval,
            "def eval(self, y):\n    return find(x1 for x1 in self.inverts.domain\n"
            "                if self.inverts.eval(x1) == y)"),
    ),
    class_template={K.gradient_color: "RoyalBlue"},
    instance_template={K.name: "Square"},
    narrative_template="{id} is the inverse of {inverts}, with domain {domain}.",
)

ShiftX = ConceptType(
    "ShiftX",
    parent="Function",
    attributes=(
        ("source", RefTo("Function")),
        ("by", Float),
        ("domain", ComputedK(ListOf(Float), "_get_domain")),
    ),
    functions=(
        _fn("_get_domain", [], _shift_domain, "def _get_domain(self):\n    return [x + self.by for x in self.source.domain]"),
        _fn("eval", ["x"], _shift_eval, "def eval(self, x):\n    return self.source.eval(x - self.by)"),
    ),
    class_template={K.gradient_color: "Orange"},
    narrative_template="{id} shifts {source} right by {by}.",
)

Bump = ConceptType(
    "Bump",
    parent="Function",
    attributes=(
        ("source", RefTo("Function")),
        ("start", Float),
        ("end", Float),
        ("val", Float),
        ("domain", ComputedK(ListOf(Float), "_get_domain")),
    ),
    functions=(
        _fn("_get_domain", [], _source_domain, "def _get_domain(self):\n    return self.source.domain"),
        _fn("eval", ["x"], _bump_eval,
            "def eval(self, x):\n    if self.start <= x <= self.end:\n        return self.val\n"
            "    return self.source.eval(x)"),
    ),
    class_template={K.gradient_color: "Orchid"},
    narrative_template="{id} replaces {source} by {val} on [{start}, {end}].",
    invariants=(("start <= end", lambda s: s.start <= s.end),),
)

Derivative = ConceptType(
    "Derivative",
    parent="Function",
    attributes=(
        ("source", RefTo("Function")),
        ("domain", ComputedK(ListOf(Float), "_get_domain")),
    ),
    functions=(
        _fn("_get_domain", [], _source_domain, "def _get_domain(self):\n    return self.source.domain"),
        _fn("eval", ["x"], _derivative_eval,
            "def eval(self, x):\n    h = 1e-5 * max(1, abs(x))\n"
            "    return (self.source.eval(x + h) - self.source.eval(x - h)) / (2 * h)"),
    ),
    class_template={K.gradient_color: "LightSeaGreen"},
    narrative_template="{id} is the derivative of {source}.",
)

Integral = ConceptType(
    "Integral",
    parent="Function",
    attributes=(
        ("source", RefTo("Function")),
        ("lower", Float),
        ("domain", ComputedK(ListOf(Float), "_get_domain")),
    ),
    functions=(
        _fn("_get_domain", [], _source_domain, "def _get_domain(self):\n    return self.source.domain"),
        _fn("eval", ["x"], _integral_eval,
            "def eval(self, x):\n    return simpson(self.source.eval, self.lower, x, 200)"),
    ),
    class_template={K.gradient_color: "LightSteelBlue"},
    narrative_template="{id} is the integral of {source} from {lower}.",
)


# ------------------------------------------------------------------ pure entry points


def evaluate(f: InstanceView, x: float) -> Any:
    return f.eval(x)


def domain(f: InstanceView) -> list:
    return list(f.domain)


def rule_label(f: InstanceView) -> str:
    return print_expr(f.rule)


# ------------------------------------------------------------------ models


def function_types() -> Model:
    return Model().with_types(Function, RuleFunction, TableFunction)


def functions_model() -> Model:
    m = function_types().define("TableFunction", "tf", points=[(1, 10), (2, 15)])
    return m.show_method("tf", "eval").show_eval("tf", "eval", [1])


def inverse_model() -> Model:
    m = functions_model().with_type(InverseFunction)
    m = m.define("InverseFunction", "inv", inverts=m.view("tf"))
    return m.show_eval("inv", "eval", [15])


def transforms_model() -> Model:
    m = function_types().with_types(ShiftX, Bump, Derivative, Integral)
    m = m.define("RuleFunction", "square", rule="x^2", domain=list(range(0, 6)))
    m = m.define("ShiftX", "shifted", source=m.view("square"), by=3)
    m = m.define("Bump", "bumped", source=m.view("shifted"), start=0, end=5, val=100)
    m = m.define("Derivative", "dsquare", source=m.view("square"))
    m = m.define("Integral", "isquare", source=m.view("square"), lower=0)
    for ident in ("square", "shifted", "bumped"):
        m = m.show_graph(ident, ["eval"], (-2, 10))
    return m.show_eval("bumped", "eval", [2]).show_eval("bumped", "eval", [6])
