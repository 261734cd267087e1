"""
Exception hierarchy for the PC+ reasoner.

Every error raised on purpose by the engines derives from PCPlusError and from
the closest builtin, so callers may catch either. Undefined histories are not
errors: the belief engine signals them with None.
"""

from typing import List, Optional


class PCPlusError(Exception):
    """Base class for all reasoner errors."""


class SignatureError(PCPlusError, ValueError):
    """Variable declarations violate a signature invariant."""


class UndeclaredVariableError(PCPlusError, LookupError):
    """A variable name is not declared in the signature."""

    def __init__(self, name: str):
        super().__init__(f"undeclared variable: {name}")
        self.name = name


class UnscopedVariableError(PCPlusError, LookupError):
    """A formula mentions variables outside the interpretation's scope."""

    def __init__(self, names):
        missing = sorted(names)
        super().__init__(f"variables outside scope: {', '.join(missing)}")
        self.names = missing


class PreconditionViolatedError(PCPlusError, ValueError):
    """A labeled step was applied to a state set that does not admit it."""


class InconsistentDomainError(PCPlusError):
    """The initial database or action description produced an empty state set."""


class SubsequenceMismatchError(PCPlusError, ValueError):
    """The occurred sequence does not arise from the hypothesis by removing observations."""


class StepSyntaxError(PCPlusError, ValueError):
    """A query step or history string could not be parsed."""


class StateSpaceLimitError(PCPlusError):
    """The rigid and fluent interpretations exceed the configured cap."""


class DomainLoadError(PCPlusError):
    """
    A domain file failed to parse or validate.

    Attributes:
        diagnostics: The diagnostics explaining the failure
    """

    def __init__(self, message: str, diagnostics: Optional[List] = None):
        super().__init__(message)
        self.diagnostics = list(diagnostics or [])
