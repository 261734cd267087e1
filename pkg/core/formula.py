"""
Variable signatures, multi-valued formulas and interpretations.

Formulas are built from the constants true and false, atoms X = x, negation
and conjunction. Disjunction and X != x are lowered by the parser before they
reach this module, so every consumer sees one canonical tree shape.
"""

import itertools
import logging
from dataclasses import dataclass
from enum import Enum
from functools import cached_property
from typing import (
    Dict,
    FrozenSet,
    Iterable,
    Iterator,
    List,
    Mapping,
    Optional,
    Sequence,
    Tuple,
)

from core.errors import SignatureError, UndeclaredVariableError, UnscopedVariableError

logger = logging.getLogger(__name__)

# Action variables always range over this domain, false first.
ACTION_DOMAIN: Tuple[str, str] = ("false", "true")


# ============================================================================
# SIGNATURES
# ============================================================================

class VariableClass(Enum):
    """The five variable classes of a PC+ signature."""
    RIGID = "rigid"
    SIMPLE_FLUENT = "simple-fluent"
    SDET_FLUENT = "sdet-fluent"
    ACTION = "action"
    CONTEXT = "context"

    @property
    def is_fluent(self) -> bool:
        return self in (VariableClass.SIMPLE_FLUENT, VariableClass.SDET_FLUENT)

    @property
    def is_world(self) -> bool:
        """Rigid variables and fluents make up states."""
        return self is VariableClass.RIGID or self.is_fluent


@dataclass(frozen=True)
class Variable:
    """
    A declared variable.

    Attributes:
        name: Identifier, possibly with a parenthesised suffix like goto(a)
        kind: Variable class
        domain: Ordered, duplicate-free value identifiers
    """
    name: str
    kind: VariableClass
    domain: Tuple[str, ...]

    @property
    def is_boolean(self) -> bool:
        return tuple(self.domain) == ACTION_DOMAIN


@dataclass(frozen=True)
class Signature:
    """
    Ordered variable declarations.

    Declaration order fixes the canonical order of interpretations: variables
    compare in declaration order, values in domain order.

    Example:
        sig = Signature((
            Variable("holds", VariableClass.SIMPLE_FLUENT, ("o1", "o2", "nil")),
            Variable("pickup", VariableClass.ACTION, ACTION_DOMAIN),
        ))
        sig.world_variables  # ("holds",)
    """
    variables: Tuple[Variable, ...]

    def __post_init__(self) -> None:
        seen = set()
        for var in self.variables:
            if var.name in seen:
                raise SignatureError(f"variable declared twice: {var.name}")
            seen.add(var.name)
            if not var.domain:
                raise SignatureError(f"empty domain for {var.name}")
            if len(set(var.domain)) != len(var.domain):
                raise SignatureError(f"duplicate domain values for {var.name}")
            if var.kind is VariableClass.ACTION and tuple(var.domain) != ACTION_DOMAIN:
                raise SignatureError(f"action variable {var.name} must range over {{false, true}}")

    @cached_property
    def _index(self) -> Dict[str, int]:
        return {var.name: i for i, var in enumerate(self.variables)}

    @cached_property
    def _value_index(self) -> Dict[str, Dict[str, int]]:
        return {var.name: {v: i for i, v in enumerate(var.domain)} for var in self.variables}

    def __contains__(self, name: object) -> bool:
        return name in self._index

    def __getitem__(self, name: str) -> Variable:
        try:
            return self.variables[self._index[name]]
        except KeyError:
            raise UndeclaredVariableError(name) from None

    def __iter__(self) -> Iterator[Variable]:
        return iter(self.variables)

    def __len__(self) -> int:
        return len(self.variables)

    def names(self, *kinds: VariableClass) -> Tuple[str, ...]:
        """Names of the variables of the given classes, in declaration order."""
        return tuple(var.name for var in self.variables if var.kind in kinds)

    @cached_property
    def world_variables(self) -> Tuple[str, ...]:
        return tuple(var.name for var in self.variables if var.kind.is_world)

    @cached_property
    def fluents(self) -> Tuple[str, ...]:
        return tuple(var.name for var in self.variables if var.kind.is_fluent)

    @cached_property
    def simple_fluents(self) -> Tuple[str, ...]:
        return self.names(VariableClass.SIMPLE_FLUENT)

    @cached_property
    def rigids(self) -> Tuple[str, ...]:
        return self.names(VariableClass.RIGID)

    @cached_property
    def actions(self) -> Tuple[str, ...]:
        return self.names(VariableClass.ACTION)

    @cached_property
    def contexts(self) -> Tuple[str, ...]:
        return self.names(VariableClass.CONTEXT)

    def kind_of(self, name: str) -> VariableClass:
        return self[name].kind

    def order(self, names: Iterable[str]) -> Tuple[str, ...]:
        """Sort variable names into declaration order."""
        names = set(names)
        for name in names:
            if name not in self._index:
                raise UndeclaredVariableError(name)
        return tuple(sorted(names, key=self._index.__getitem__))

    def has_value(self, name: str, value: str) -> bool:
        return value in self._value_index[self[name].name]

    def interpretation(self, values: Mapping[str, str]) -> "Interpretation":
        """Build an interpretation, checking every value against its domain."""
        for name, value in values.items():
            if not self.has_value(name, value):
                raise SignatureError(f"{value} is not in the domain of {name}")
        return Interpretation(values)

    def rank(self, interpretation: "Interpretation") -> Tuple[Tuple[int, int], ...]:
        """Sort key realising the canonical order of interpretations."""
        return tuple(
            (self._index[name], self._value_index[name][interpretation[name]])
            for name in self.order(interpretation.scope)
        )

    def sort(self, interpretations: Iterable["Interpretation"]) -> List["Interpretation"]:
        return sorted(set(interpretations), key=self.rank)


# ============================================================================
# FORMULAS
# ============================================================================

class Formula:
    """
    Base class of the formula tree.

    evaluate() is three-valued: it returns None when the assignment leaves
    the truth value open, which the pruning model finder relies on.
    """

    def evaluate(self, assignment: Mapping[str, str]) -> Optional[bool]:
        raise NotImplementedError

    def substitute(self, assignment: Mapping[str, str]) -> "Formula":
        raise NotImplementedError

    @cached_property
    def variables(self) -> FrozenSet[str]:
        return frozenset(self._collect())

    def _collect(self) -> Iterator[str]:
        raise NotImplementedError

    def __and__(self, other: "Formula") -> "Formula":
        return Conjunction(self, other)

    def __invert__(self) -> "Formula":
        return Negation(self)


@dataclass(frozen=True, eq=True)
class Constant(Formula):
    value: bool

    def evaluate(self, assignment: Mapping[str, str]) -> Optional[bool]:
        return self.value

    def substitute(self, assignment: Mapping[str, str]) -> Formula:
        return self

    def _collect(self) -> Iterator[str]:
        return iter(())


@dataclass(frozen=True, eq=True)
class Atom(Formula):
    variable: str
    value: str

    def evaluate(self, assignment: Mapping[str, str]) -> Optional[bool]:
        current = assignment.get(self.variable)
        if current is None:
            return None
        return current == self.value

    def substitute(self, assignment: Mapping[str, str]) -> Formula:
        current = assignment.get(self.variable)
        if current is None:
            return self
        return TRUE if current == self.value else FALSE

    def _collect(self) -> Iterator[str]:
        yield self.variable


@dataclass(frozen=True, eq=True)
class Negation(Formula):
    operand: Formula

    def evaluate(self, assignment: Mapping[str, str]) -> Optional[bool]:
        inner = self.operand.evaluate(assignment)
        return None if inner is None else not inner

    def substitute(self, assignment: Mapping[str, str]) -> Formula:
        return Negation(self.operand.substitute(assignment))

    def _collect(self) -> Iterator[str]:
        return iter(self.operand.variables)


@dataclass(frozen=True, eq=True)
class Conjunction(Formula):
    left: Formula
    right: Formula

    def evaluate(self, assignment: Mapping[str, str]) -> Optional[bool]:
        left = self.left.evaluate(assignment)
        if left is False:
            return False
        right = self.right.evaluate(assignment)
        if right is False:
            return False
        if left is None or right is None:
            return None
        return True

    def substitute(self, assignment: Mapping[str, str]) -> Formula:
        return Conjunction(self.left.substitute(assignment), self.right.substitute(assignment))

    def _collect(self) -> Iterator[str]:
        yield from self.left.variables
        yield from self.right.variables


TRUE = Constant(True)
FALSE = Constant(False)


def conjoin(formulas: Sequence[Formula]) -> Formula:
    """Right-nested conjunction; the empty conjunction is true."""
    formulas = list(formulas)
    if not formulas:
        return TRUE
    result = formulas[-1]
    for formula in reversed(formulas[:-1]):
        result = Conjunction(formula, result)
    return result


def disjoin(formulas: Sequence[Formula]) -> Formula:
    """Disjunction lowered to ~(~f1 & ~f2 & ...); the empty disjunction is false."""
    formulas = list(formulas)
    if not formulas:
        return FALSE
    if len(formulas) == 1:
        return formulas[0]
    return Negation(conjoin([Negation(f) for f in formulas]))


def differs(variable: str, value: str) -> Formula:
    """X != x, lowered to ~(X = x)."""
    return Negation(Atom(variable, value))


# ============================================================================
# INTERPRETATIONS
# ============================================================================

class Interpretation(Mapping[str, str]):
    """
    An immutable finite map from variables to values.

    Two interpretations are equal iff their assignment maps are equal, so they
    can be used as set elements and dictionary keys.
    """

    __slots__ = ("_values", "_key")

    def __init__(self, values: Optional[Mapping[str, str]] = None):
        self._values: Dict[str, str] = dict(values or {})
        self._key = frozenset(self._values.items())

    def __getitem__(self, name: str) -> str:
        return self._values[name]

    def get(self, name, default=None):
        return self._values.get(name, default)

    def __contains__(self, name: object) -> bool:
        return name in self._values

    def __iter__(self) -> Iterator[str]:
        return iter(self._values)

    def __len__(self) -> int:
        return len(self._values)

    def __hash__(self) -> int:
        return hash(self._key)

    def __eq__(self, other: object) -> bool:
        if isinstance(other, Interpretation):
            return self._key == other._key
        return NotImplemented

    def __repr__(self) -> str:
        body = ", ".join(f"{k}={v}" for k, v in sorted(self._values.items()))
        return f"Interpretation({body})"

    @property
    def scope(self) -> FrozenSet[str]:
        return frozenset(self._values)

    def union(self, other: Mapping[str, str]) -> "Interpretation":
        """Combine two interpretations that agree on shared variables."""
        merged = dict(self._values)
        for name, value in other.items():
            if merged.setdefault(name, value) != value:
                raise ValueError(f"conflicting values for {name}")
        return Interpretation(merged)

    def restrict(self, names: Iterable[str]) -> "Interpretation":
        return Interpretation({n: self._values[n] for n in names if n in self._values})

    def agrees_with(self, other: Mapping[str, str], names: Iterable[str]) -> bool:
        return all(self._values.get(n) == other.get(n) for n in names)


EMPTY = Interpretation()


def satisfies(interpretation: Interpretation, formula: Formula) -> bool:
    """
    Truth of a formula under an interpretation.

    Raises:
        UnscopedVariableError: If the formula mentions a variable outside
            the interpretation's scope
    """
    missing = formula.variables - interpretation.scope
    if missing:
        raise UnscopedVariableError(missing)
    return bool(formula.evaluate(interpretation))


def partial_eval(interpretation: Mapping[str, str], formula: Formula) -> Formula:
    """Replace atoms over assigned variables by true or false; nothing else changes."""
    return formula.substitute(interpretation)


def enumerate_interpretations(signature: Signature, names: Iterable[str]) -> Iterator[Interpretation]:
    """
    Every interpretation of the given variables exactly once.

    Order is lexicographic by declaration order, then domain order. The empty
    variable set yields the single empty interpretation.

    Raises:
        UndeclaredVariableError: If a name is not declared
    """
    ordered = signature.order(names)
    domains = [signature[name].domain for name in ordered]
    for values in itertools.product(*domains):
        yield Interpretation(dict(zip(ordered, values)))


def count_interpretations(signature: Signature, names: Iterable[str]) -> int:
    total = 1
    for name in signature.order(names):
        total *= len(signature[name].domain)
    return total
