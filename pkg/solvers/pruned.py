"""
Backtracking model finder.

Candidates are generated variable by variable in declaration order. A partial
assignment is abandoned as soon as some rule's body is already true and its
head already false, since every completion would violate its own reduct. The
uniqueness check is a second backtracking search for another model of the
reduct that prunes on any reduct formula already false.

Definite theories, whose heads are atoms, conjunctions of atoms or constants,
take a faster path: their reduct is a set of atoms, so an interpretation is a
model iff it satisfies every rule and each variable with more than one value
is the head of some rule whose body holds. That support condition also
prunes partial assignments.
"""

import logging
from typing import Callable, Dict, Iterator, List, Optional, Sequence, Tuple

from core.causal import CausalRule, CausalTheory
from core.formula import Atom, Conjunction, Constant, Formula, Interpretation
from solvers.base import ModelFinder

logger = logging.getLogger(__name__)

Partial = Dict[str, str]


def _complete(
    variables: Sequence[str],
    domains: Sequence[Tuple[str, ...]],
    partial: Partial,
    admissible: Callable[[Partial, str], bool],
) -> Iterator[Partial]:
    """Yield every admissible total extension of a partial assignment."""
    depth = len(partial)
    if depth == len(variables):
        yield dict(partial)
        return
    name = variables[depth]
    for value in domains[depth]:
        partial[name] = value
        if admissible(partial, name):
            yield from _complete(variables, domains, partial, admissible)
        del partial[name]


def _literals(head: Formula) -> Optional[List[Formula]]:
    """Split a head into atoms and constants; None if it is not definite."""
    if isinstance(head, (Atom, Constant)):
        return [head]
    if isinstance(head, Conjunction):
        left, right = _literals(head.left), _literals(head.right)
        if left is None or right is None:
            return None
        return left + right
    return None


class _DefiniteTheory:
    """A theory whose reduct is always a set of atoms (and possibly false)."""

    def __init__(self, theory: CausalTheory, rules: List[Tuple[Formula, Formula]]):
        self.theory = theory
        self.rules = [(h, b) for h, b in rules if h != Constant(True)]
        self.support: Dict[Tuple[str, str], List[Formula]] = {}
        for head, body in self.rules:
            if isinstance(head, Atom):
                self.support.setdefault((head.variable, head.value), []).append(body)
        self.free = {
            name for name in theory.scope if len(theory.signature[name].domain) == 1
        }

    @classmethod
    def of(cls, theory: CausalTheory) -> Optional["_DefiniteTheory"]:
        rules = []
        for rule in theory.rules:
            literals = _literals(rule.head)
            if literals is None:
                return None
            rules.extend((literal, rule.body) for literal in literals)
        return cls(theory, rules)

    def admissible(self, partial: Partial, assigned: str) -> bool:
        for head, body in self.rules:
            if body.evaluate(partial) is True and head.evaluate(partial) is False:
                return False
        if assigned in self.free:
            return True
        bodies = self.support.get((assigned, partial[assigned]), ())
        return any(body.evaluate(partial) is not False for body in bodies)

    def is_model(self, interpretation: Interpretation) -> bool:
        for head, body in self.rules:
            if body.evaluate(interpretation) and not head.evaluate(interpretation):
                return False
        for name in self.theory.scope:
            if name in self.free:
                continue
            bodies = self.support.get((name, interpretation[name]), ())
            if not any(body.evaluate(interpretation) for body in bodies):
                return False
        return True


class PrunedModelFinder(ModelFinder):
    """Candidate generation and uniqueness check with three-valued pruning."""

    name = "pruned"

    def is_model(self, theory: CausalTheory, interpretation: Interpretation) -> bool:
        heads = self._heads(theory, interpretation)
        definite = _DefiniteTheory.of(theory)
        if definite is not None:
            return definite.is_model(interpretation)
        if not all(head.evaluate(interpretation) for head in heads):
            return False
        return not self._has_other_model(theory, heads, interpretation)

    def models(self, theory: CausalTheory) -> List[Interpretation]:
        variables = theory.scope
        domains = [theory.signature[name].domain for name in variables]

        definite = _DefiniteTheory.of(theory)
        if definite is not None:
            return [
                Interpretation(total)
                for total in _complete(variables, domains, {}, definite.admissible)
                if definite.is_model(Interpretation(total))
            ]

        rules = theory.rules

        def admissible(partial: Partial, assigned: str) -> bool:
            return not any(_violated(rule, partial) for rule in rules)

        found = []
        for total in _complete(variables, domains, {}, admissible):
            candidate = Interpretation(total)
            heads = self._heads(theory, candidate)
            if all(head.evaluate(candidate) for head in heads) and not self._has_other_model(
                theory, heads, candidate
            ):
                found.append(candidate)
        return found

    def _has_other_model(
        self,
        theory: CausalTheory,
        heads: List[Formula],
        interpretation: Interpretation,
    ) -> bool:
        variables = theory.scope
        domains = [theory.signature[name].domain for name in variables]

        def admissible(partial: Partial, assigned: str) -> bool:
            return all(head.evaluate(partial) is not False for head in heads)

        for total in _complete(variables, domains, {}, admissible):
            if Interpretation(total) != interpretation:
                return True
        return False


def _violated(rule: CausalRule, partial: Partial) -> bool:
    return rule.body.evaluate(partial) is True and rule.head.evaluate(partial) is False
