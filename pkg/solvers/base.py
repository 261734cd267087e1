"""
Abstract base class for causal-theory model finders.

Every finder decides the same question, whether an interpretation is the
unique model of its own reduct, so implementations are interchangeable and
can be differential-tested against each other.
"""

from abc import ABC, abstractmethod
from typing import List

from core.causal import CausalTheory, reduct
from core.errors import UnscopedVariableError
from core.formula import Interpretation, enumerate_interpretations


class ModelFinder(ABC):
    """
    Decides models of causal theories.

    Example:
        finder = get_model_finder("bruteforce")
        for model in finder.models(theory):
            ...

    Attributes:
        name: Identifier used by configuration
    """

    name: str = "abstract"

    @abstractmethod
    def is_model(self, theory: CausalTheory, interpretation: Interpretation) -> bool:
        """
        Decide whether the interpretation is a model of the theory.

        Args:
            theory: Theory whose rules only mention scope variables
            interpretation: Interpretation over exactly the theory's scope

        Returns:
            True iff the interpretation satisfies its reduct and no other
            interpretation of the scope does

        Raises:
            UnscopedVariableError: If the interpretation's scope differs from
                the theory's
        """
        pass

    def models(self, theory: CausalTheory) -> List[Interpretation]:
        """
        All models of the theory, in canonical order.

        Default implementation tests every interpretation of the scope.
        Finders with a cheaper candidate generator should override.
        """
        return [
            candidate
            for candidate in enumerate_interpretations(theory.signature, theory.scope)
            if self.is_model(theory, candidate)
        ]

    def _heads(self, theory: CausalTheory, interpretation: Interpretation):
        if interpretation.scope != frozenset(theory.scope):
            raise UnscopedVariableError(interpretation.scope.symmetric_difference(theory.scope))
        return reduct(theory, interpretation)
