"""Exception hierarchy shared by every module."""

from __future__ import annotations


class GFDError(ValueError):
    """Base class for all errors raised by the package."""


class ParseError(GFDError):
    def __init__(self, position: int, message: str):
        self.position = position
        self.message = message
        super().__init__(f"{message} (at offset {position})")


class DomainError(GFDError):
    """An expression was evaluated outside its domain."""

    def __init__(self, message: str, node=None, bindings=None):
        self.node = node
        self.bindings = dict(bindings) if bindings is not None else None
        detail = message
        if node is not None:
            detail += f" in {node}"
        if bindings:
            detail += " with " + ", ".join(f"{k}={v!r}" for k, v in sorted(bindings.items()))
        super().__init__(detail)


class StepError(GFDError):
    """A difference-quotient or integrator step is invalid."""


class PositivityError(GFDError):
    """Guebbai-Ghiat / Camrud preconditions (f > 0, f' >= 0) do not hold."""


class SingularError(GFDError):
    pass


class AlphaError(GFDError):
    pass


class GridError(GFDError):
    pass


class WeightClassError(GFDError):
    """A weight depending on t was passed where a t-constant weight is required."""


class NoWitnessError(GFDError):
    pass


class ParameterError(GFDError):
    pass


class BlowupError(GFDError):
    pass
