"""
Reference model finder.

Enumerates every interpretation of the scope and, for each candidate that
satisfies its reduct, enumerates them all again to check uniqueness. Slow but
a literal reading of the definition, which makes it the oracle the faster
finder is tested against.
"""

import logging

from core.causal import CausalTheory
from core.formula import Interpretation, enumerate_interpretations
from solvers.base import ModelFinder

logger = logging.getLogger(__name__)


class BruteForceModelFinder(ModelFinder):
    """Quadratic double enumeration."""

    name = "bruteforce"

    def is_model(self, theory: CausalTheory, interpretation: Interpretation) -> bool:
        heads = self._heads(theory, interpretation)
        if not all(head.evaluate(interpretation) for head in heads):
            return False
        for other in enumerate_interpretations(theory.signature, theory.scope):
            if other == interpretation:
                continue
            if all(head.evaluate(other) for head in heads):
                return False
        return True
