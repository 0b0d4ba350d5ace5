"""Exception taxonomy shared across the toolkit.

The CLI maps these onto exit codes, so library code raises the most
specific class that applies instead of bare ValueError/RuntimeError.
"""


class EasyTLError(Exception):
    """Base class for all toolkit errors."""


class InvalidInputError(EasyTLError, ValueError):
    """Malformed or incompatible input data (shape, sign, finiteness)."""


class NotFittedError(EasyTLError, RuntimeError):
    """A transform was applied before it was fitted."""


class InfeasibleProblemError(EasyTLError):
    """The assignment problem has no feasible solution (fewer targets than classes)."""


class MissingClassError(InvalidInputError):
    """A class index in [0, C) has no source samples."""

    def __init__(self, class_index: int):
        self.class_index = class_index
        super().__init__(f"class {class_index} has no source samples")


class CapacityError(EasyTLError):
    """An exhaustive computation would exceed its enumeration guard."""


class ParseError(EasyTLError):
    """A data file could not be parsed; the message carries the location."""
