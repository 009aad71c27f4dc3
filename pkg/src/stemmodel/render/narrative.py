"""English narrative from per-type sentence patterns."""

from __future__ import annotations

import string
from typing import Any, Iterable

from ..core import ConceptInstance, InstanceView, Model, format_value, get_attribute, label_of
from ..errors import MissingNarrativeTemplate


def narrative_template(model: Model, type_name: str) -> str | None:
    for t in model.ancestors(type_name):
        if t.narrative_template:
            return t.narrative_template
    return None


class _Fields(string.Formatter):
    """``{attr}`` fields resolve to formatted attribute values of the instance.

    ``{id}``, ``{type}`` and ``{label}`` are always available; a field naming
    a zero-argument function calls it.
    """

    def __init__(self, model: Model, inst: ConceptInstance):
        self.model = model
        self.inst = inst

    def get_value(self, key: Any, args: Any, kwargs: Any) -> Any:
        model, inst = self.model, self.inst
        if key == "id":
            return inst.id
        if key == "type":
            return inst.type_name
        attrs = dict(model.attributes(inst.type_name))
        if key in attrs:
            return format_value(get_attribute(model, inst, key), model, attrs[key])
        if key == "label":
            return label_of(model, inst)
        if model.has_function(inst.type_name, key):
            return format_value(getattr(InstanceView(model, inst), key)(), model)
        raise MissingNarrativeTemplate(f"narrative field {{{key}}} is not an attribute of {inst.type_name}")


def sentence(model: Model, inst: ConceptInstance) -> str:
    pattern = narrative_template(model, inst.type_name)
    if pattern is None:
        raise MissingNarrativeTemplate(f"{inst.type_name} (instance {inst.id!r}) has no narrative template")
    return _Fields(model, inst).format(pattern)


def narrative(model: Model, ids: Iterable[str] | None = None) -> str:
    """One sentence per line, in registration order.

    With ``ids`` every listed instance must have a narrative template.
    Without, instances whose type has no template are skipped, and a model
    where no instance can be narrated is an error.
    """
    if ids is not None:
        chosen = [model.instance(i) for i in ids]
    else:
        chosen = [i for i in model.instances if narrative_template(model, i.type_name) is not None]
        if not chosen:
            raise MissingNarrativeTemplate("no instance in the model has a narrative template")
    return "\n".join(sentence(model, i) for i in chosen) + "\n"
