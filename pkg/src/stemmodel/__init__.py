"""Executable concept models with generated diagrams, narratives, plots and animations."""

from .core import (
    Animate,
    Bool,
    ComputedK,
    ConceptInstance,
    ConceptType,
    Expr,
    Float,
    FunctionDef,
    InstanceView,
    Int,
    ListOf,
    Model,
    Ref,
    RefTo,
    ShowEval,
    ShowGraph,
    ShowMethod,
    String,
    TupleOf,
    VectorK,
    get_attribute,
    invoke,
    new_instance,
    register_type,
    validate,
)
from .expr import eval_expr, parse_expr, print_expr
from .registry import MODEL_IDS, load_model
from .template import EMPTY, Fn1, Fn2, K, Template, apply_template, merge_templates

__version__ = "0.1.0"
