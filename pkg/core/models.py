"""
Data models for PC+ descriptions and their semantics.

Provides the law types of action descriptions and initial databases, the
diagnostics reported about them, and the value types the transition
semantics works with: contexts, state sets, actions, observations and
modality-labeled steps.
"""

from dataclasses import dataclass, field
from enum import Enum
from fractions import Fraction
from functools import cached_property
from typing import Callable, Iterable, Optional, Tuple, Union

from core.formula import (
    FALSE,
    TRUE,
    Formula,
    Interpretation,
    Signature,
    VariableClass,
)


# ============================================================================
# LAWS
# ============================================================================

@dataclass(frozen=True)
class StaticLaw:
    """
    caused F if G.

    Attributes:
        head: F
        condition: G
        line: Source line, ignored by equality
        column: Source column, ignored by equality
    """
    head: Formula
    condition: Formula = TRUE
    line: Optional[int] = field(default=None, compare=False)
    column: Optional[int] = field(default=None, compare=False)

    @property
    def variables(self):
        return self.head.variables | self.condition.variables


@dataclass(frozen=True)
class DynamicLaw:
    """
    caused F if G after H.

    An execution denial (nonexecutable H) is the instance F = false, G = true.
    """
    head: Formula
    condition: Formula
    trigger: Formula
    line: Optional[int] = field(default=None, compare=False)
    column: Optional[int] = field(default=None, compare=False)

    @property
    def is_denial(self) -> bool:
        return self.head == FALSE and self.condition == TRUE

    @property
    def variables(self):
        return self.head.variables | self.condition.variables | self.trigger.variables


@dataclass(frozen=True)
class ContextLaw:
    """
    X = (x1: p1, ..., xn: pn) after A.

    Static context laws have trigger true.
    """
    variable: str
    distribution: Tuple[Tuple[str, Fraction], ...]
    trigger: Formula = TRUE
    line: Optional[int] = field(default=None, compare=False)
    column: Optional[int] = field(default=None, compare=False)

    def probability(self, value: str) -> Fraction:
        for outcome, probability in self.distribution:
            if outcome == value:
                return probability
        raise KeyError(f"{value} has no probability in the law for {self.variable}")

    @property
    def values(self) -> Tuple[str, ...]:
        return tuple(outcome for outcome, _ in self.distribution)

    @property
    def total(self) -> Fraction:
        return sum((p for _, p in self.distribution), Fraction(0))


CausalLaw = Union[StaticLaw, DynamicLaw]


@dataclass(frozen=True)
class _Description:
    signature: Signature
    static_laws: Tuple[StaticLaw, ...] = ()
    dynamic_laws: Tuple[DynamicLaw, ...] = ()
    context_laws: Tuple[ContextLaw, ...] = ()

    @property
    def causal_laws(self) -> Tuple[CausalLaw, ...]:
        return self.static_laws + self.dynamic_laws

    @cached_property
    def context_variables(self) -> Tuple[str, ...]:
        """Context variables occurring in some causal law, in declaration order."""
        found = set()
        for law in self.causal_laws:
            found |= law.variables
        return tuple(name for name in self.signature.contexts if name in found)

    @cached_property
    def static_context_variables(self) -> Tuple[str, ...]:
        found = set()
        for law in self.static_laws:
            found |= law.variables
        return tuple(name for name in self.signature.contexts if name in found)

    def context_law(self, variable: str) -> ContextLaw:
        for law in self.context_laws:
            if law.variable == variable:
                return law
        raise KeyError(f"no context law for {variable}")


@dataclass(frozen=True)
class ActionDescription(_Description):
    """A probabilistic action description D."""

    @cached_property
    def denials(self) -> Tuple[DynamicLaw, ...]:
        return tuple(law for law in self.dynamic_laws if law.is_denial)


@dataclass(frozen=True)
class InitialDatabase(_Description):
    """A probabilistic initial database D0; valid ones hold static laws only."""

    @cached_property
    def distribution_variables(self) -> Tuple[str, ...]:
        """Every context variable of D0: those occurring in laws and those given a distribution."""
        names = set(self.context_variables) | {law.variable for law in self.context_laws}
        return self.signature.order(names)


# ============================================================================
# DIAGNOSTICS
# ============================================================================

class Severity(Enum):
    ERROR = "error"
    WARNING = "warning"


@dataclass(frozen=True)
class Diagnostic:
    """
    A problem found while parsing, validating or checking a domain.

    Attributes:
        severity: Error or warning
        rule: Slug naming the violated rule, e.g. 'dynamic-law/head-simple-fluent'
        message: Human-readable explanation
        line: 1-based source line, when known
        column: 1-based source column, when known
        phase: 'syntax', 'semantic' or 'consistency'
    """
    severity: Severity
    rule: str
    message: str
    line: Optional[int] = None
    column: Optional[int] = None
    phase: str = "semantic"

    @property
    def is_error(self) -> bool:
        return self.severity is Severity.ERROR

    def __str__(self) -> str:
        where = f"{self.line}:{self.column}: " if self.line is not None else ""
        return f"{where}{self.severity.value} [{self.rule}] {self.message}"


# ============================================================================
# SEMANTIC VALUES
# ============================================================================

@dataclass(frozen=True)
class Context:
    """
    An interpretation of context variables with its product probability.

    Attributes:
        assignment: Values of the context variables
        probability: Product of the per-variable law probabilities
    """
    assignment: Interpretation
    probability: Fraction


EMPTY_CONTEXT = Context(Interpretation(), Fraction(1))


@dataclass(frozen=True)
class StateSet:
    """
    A canonically sorted, duplicate-free set of states.

    Equality is element-wise, so state sets work as aggregation keys.
    Build instances with StateSet.of() to get the canonical order.
    """
    states: Tuple[Interpretation, ...] = ()

    @classmethod
    def of(cls, signature: Signature, states: Iterable[Interpretation]) -> "StateSet":
        return cls(tuple(signature.sort(states)))

    def __len__(self) -> int:
        return len(self.states)

    def __iter__(self):
        return iter(self.states)

    def __contains__(self, state: object) -> bool:
        return state in self.states

    def filter(self, keep: Callable[[Interpretation], bool]) -> "StateSet":
        """Subset in the same (canonical) order."""
        return StateSet(tuple(s for s in self.states if keep(s)))

    def issubset(self, other: "StateSet") -> bool:
        return set(self.states) <= set(other.states)


EMPTY_STATES = StateSet()


@dataclass(frozen=True)
class Action:
    """
    An interpretation of all action variables.

    Attributes:
        assignment: Value of every action variable
    """
    assignment: Interpretation

    @classmethod
    def of(cls, signature: Signature, performed: Iterable[str] = ()) -> "Action":
        """The action making exactly the given action variables true."""
        performed = set(performed)
        unknown = [name for name in performed if signature[name].kind is not VariableClass.ACTION]
        if unknown:
            raise ValueError(f"not action variables: {', '.join(sorted(unknown))}")
        return cls(Interpretation({
            name: "true" if name in performed else "false" for name in signature.actions
        }))

    @property
    def performed(self) -> Tuple[str, ...]:
        return tuple(sorted(n for n, v in self.assignment.items() if v == "true"))

    @property
    def label(self) -> str:
        return "{" + ", ".join(self.performed) + "}"

    def __str__(self) -> str:
        return self.label


@dataclass(frozen=True)
class Observation:
    """
    An observed formula over rigid variables and fluents.

    Attributes:
        formula: The observed formula
        text: Source text, kept for display and ignored by equality
    """
    formula: Formula
    text: Optional[str] = field(default=None, compare=False)

    def __str__(self) -> str:
        if self.text is not None:
            return self.text
        from lang.printer import format_formula
        return format_formula(self.formula)


Step = Union[Action, Observation]


class Modality(Enum):
    """Existential (some state) or universal (every state) precondition."""
    POSSIBLY = "<>"
    CERTAINLY = "[]"


@dataclass(frozen=True)
class LabeledStep:
    """A modality-labeled action or observation."""
    modality: Modality
    step: Step

    @property
    def is_action(self) -> bool:
        return isinstance(self.step, Action)

    def __str__(self) -> str:
        return f"{self.modality.value} {self.step}"


def possibly(step: Step) -> LabeledStep:
    return LabeledStep(Modality.POSSIBLY, step)


def certainly(step: Step) -> LabeledStep:
    return LabeledStep(Modality.CERTAINLY, step)
