"""Exception hierarchy shared by the engine and the model packs."""

from __future__ import annotations


class ModelError(Exception):
    """Base class for every error raised by the engine."""


class DuplicateType(ModelError):
    pass


class UnknownParent(ModelError):
    pass


class UnknownType(ModelError):
    pass


class DuplicateAttribute(ModelError):
    pass


class DuplicateInstance(ModelError):
    pass


class UnknownInstance(ModelError):
    pass


class MissingAttribute(ModelError):
    pass


class KindMismatch(ModelError):
    pass


class DanglingReference(ModelError):
    pass


class InvariantViolation(ModelError):
    pass


class UnknownAttribute(ModelError, AttributeError):
    pass


class UnknownFunction(ModelError, AttributeError):
    pass


class ArityMismatch(ModelError, TypeError):
    pass


class EvaluationError(ModelError):
    """A function body failed for a reason that depends on its inputs."""


class NotInDomain(EvaluationError):
    pass


class MathDomain(EvaluationError):
    pass


class UnboundVariable(EvaluationError):
    pass


class NoConvergence(EvaluationError):
    pass


class Infeasible(ModelError):
    pass


class UnknownElement(ModelError):
    pass


class ParseError(ModelError, ValueError):
    """Malformed input text. ``position`` is the 0-based character offset."""

    def __init__(self, message: str, text: str = "", position: int = 0):
        self.message = message
        self.text = text
        self.position = position
        super().__init__(f"{message} at offset {position}")


class MissingTime(ModelError):
    pass


class FnFailure(ModelError):
    """A template function raised; ``path`` locates it inside the template."""

    def __init__(self, path: tuple, cause: BaseException):
        self.path = path
        self.cause = cause
        where = ".".join(str(p) for p in path) or "<root>"
        super().__init__(f"template function at {where} failed: {cause!r}")


class MissingNarrativeTemplate(ModelError):
    pass


class AllPointsInvalid(ModelError):
    pass


class RenderError(ModelError):
    pass
