"""Named constructors for the built-in models."""

from __future__ import annotations

from typing import Callable, Mapping

from .core import Model
from .errors import ModelError
from .packs import chem_pack, eng_pack, math_pack, phys_pack


class UnknownModel(ModelError, KeyError):
    def __str__(self) -> str:
        return self.args[0] if self.args else "unknown model"


def _registry(elements: Mapping[str, float] | None) -> dict[str, Callable[[], Model]]:
    table = chem_pack.TEXTBOOK_MASSES if elements is None else {**chem_pack.TEXTBOOK_MASSES, **elements}
    return {
        "functions": math_pack.functions_model,
        "inverse": math_pack.inverse_model,
        "transforms": math_pack.transforms_model,
        "reactions": lambda: chem_pack.reactions_model(table),
        "network": lambda: chem_pack.network_model(table),
        "ball": phys_pack.ball_model,
        "rov": eng_pack.rov_model,
    }


MODEL_IDS = tuple(_registry(None))


def load_model(model_id: str, elements: Mapping[str, float] | None = None) -> Model:
    """Build a fresh built-in model; ``elements`` overrides atomic masses for the chemistry models."""
    ctors = _registry(elements)
    if model_id not in ctors:
        raise UnknownModel(f"unknown model {model_id!r}; choose from {', '.join(MODEL_IDS)}")
    return ctors[model_id]()
