"""
Nonmonotonic causal theories.

A rule F <= G reads "if G holds there is a cause for F". An interpretation I
is a model of a theory T iff I is the unique model (over T's scope) of the
reduct T^I, the heads of the rules whose bodies I satisfies.

Model finding itself lives in the solvers package; this module holds the
theory types, the reduct and thin wrappers that pick a finder.
"""

import logging
from dataclasses import dataclass
from typing import TYPE_CHECKING, Iterable, List, Optional, Tuple

from core.errors import UnscopedVariableError
from core.formula import TRUE, Formula, Interpretation, Signature

if TYPE_CHECKING:
    from solvers.base import ModelFinder

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class CausalRule:
    """F <= G."""
    head: Formula
    body: Formula = TRUE


@dataclass(frozen=True)
class CausalTheory:
    """
    A finite causal theory with an explicit scope.

    Attributes:
        signature: Declarations supplying the domains of the scope
        rules: The rules, order and duplicates preserved
        scope: Variables the unique-model test quantifies over, in
            declaration order

    Raises:
        UnscopedVariableError: If a head or body mentions a variable outside
            the scope (context variables must be substituted away first)
    """
    signature: Signature
    rules: Tuple[CausalRule, ...]
    scope: Tuple[str, ...]

    def __post_init__(self) -> None:
        object.__setattr__(self, "rules", tuple(self.rules))
        object.__setattr__(self, "scope", self.signature.order(self.scope))
        allowed = frozenset(self.scope)
        for rule in self.rules:
            missing = (rule.head.variables | rule.body.variables) - allowed
            if missing:
                raise UnscopedVariableError(missing)

    @classmethod
    def build(
        cls,
        signature: Signature,
        rules: Iterable[CausalRule],
        scope: Iterable[str],
    ) -> "CausalTheory":
        return cls(signature=signature, rules=tuple(rules), scope=tuple(scope))


def reduct(theory: CausalTheory, interpretation: Interpretation) -> List[Formula]:
    """
    Heads of the rules whose bodies the interpretation satisfies.

    Order is preserved and duplicates are kept.

    Raises:
        UnscopedVariableError: If the interpretation does not cover the theory
    """
    missing = frozenset(theory.scope) - interpretation.scope
    if missing:
        raise UnscopedVariableError(missing)
    return [rule.head for rule in theory.rules if rule.body.evaluate(interpretation)]


def _finder(finder: Optional["ModelFinder"]) -> "ModelFinder":
    if finder is not None:
        return finder
    from solvers import get_model_finder
    return get_model_finder("pruned")


def is_model(
    theory: CausalTheory,
    interpretation: Interpretation,
    finder: Optional["ModelFinder"] = None,
) -> bool:
    """True iff the interpretation is the unique model of its own reduct."""
    return _finder(finder).is_model(theory, interpretation)


def models(theory: CausalTheory, finder: Optional["ModelFinder"] = None) -> List[Interpretation]:
    """All models of the theory in canonical order."""
    return _finder(finder).models(theory)


def is_consistent(theory: CausalTheory, finder: Optional["ModelFinder"] = None) -> bool:
    """A theory is consistent iff it has a model."""
    return bool(models(theory, finder))
