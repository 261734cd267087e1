"""
Histories and belief states.

A belief state (p, S, Pr) records the probability p of the history so far
and a distribution Pr over sets of states: the sets carry qualitative
uncertainty, Pr the quantitative part. The initial belief comes from the
initial database; every labeled step updates it, and a step that no
supported set admits leaves the history undefined (None).
"""

import logging
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Dict, Iterator, List, Optional, Tuple

from core.errors import InconsistentDomainError
from core.models import LabeledStep, Modality, Observation, StateSet
from reasoning.transitions import TransitionModel

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class History:
    """A finite sequence of labeled actions and observations."""
    steps: Tuple[LabeledStep, ...] = ()

    def __post_init__(self) -> None:
        object.__setattr__(self, "steps", tuple(self.steps))

    @property
    def action_length(self) -> int:
        """Number of action steps."""
        return sum(1 for step in self.steps if step.is_action)

    def __len__(self) -> int:
        return len(self.steps)

    def __iter__(self) -> Iterator[LabeledStep]:
        return iter(self.steps)

    def __add__(self, other: "History") -> "History":
        return History(self.steps + tuple(other.steps))

    def then(self, *steps: LabeledStep) -> "History":
        return History(self.steps + steps)

    def __str__(self) -> str:
        return "; ".join(str(step) for step in self.steps) or "(empty history)"


EMPTY_HISTORY = History()


def _support_key(entry: Tuple[StateSet, Fraction]):
    return tuple(tuple(sorted(state.items())) for state in entry[0])


@dataclass(frozen=True)
class BeliefState:
    """
    The belief after a defined history.

    Attributes:
        probability: p_h, the probability of the history
        support: (state set, probability) pairs, distinct nonempty sets with
            positive masses summing to 1, in a canonical order

    Raises:
        ValueError: If an invariant is violated
    """
    probability: Fraction
    support: Tuple[Tuple[StateSet, Fraction], ...] = field(default=())

    def __post_init__(self) -> None:
        support = tuple(sorted(self.support, key=_support_key))
        object.__setattr__(self, "support", support)

        if not 0 <= self.probability <= 1:
            raise ValueError(f"history probability {self.probability} outside [0, 1]")
        sets = [states for states, _ in support]
        if len(set(sets)) != len(sets):
            raise ValueError("state sets in the support must be distinct")
        for states, mass in support:
            if not states:
                raise ValueError("supported state sets must be nonempty")
            if mass <= 0:
                raise ValueError(f"support mass {mass} is not positive")
        total = sum((mass for _, mass in support), Fraction(0))
        if total != 1:
            raise ValueError(f"support masses sum to {total}, not 1")

    @classmethod
    def aggregate(cls, probability: Fraction, masses: Dict[StateSet, Fraction]) -> "BeliefState":
        return cls(probability, tuple(masses.items()))

    @property
    def sets(self) -> List[StateSet]:
        return [states for states, _ in self.support]

    def mass(self, states: StateSet) -> Fraction:
        for candidate, mass in self.support:
            if candidate == states:
                return mass
        return Fraction(0)

    def __len__(self) -> int:
        return len(self.support)


def _add(masses: Dict[StateSet, Fraction], states: StateSet, mass: Fraction) -> None:
    masses[states] = masses.get(states, Fraction(0)) + mass


def initial_belief(model: TransitionModel) -> BeliefState:
    """
    The belief of the empty history: probability 1, initial contexts grouped by state set.

    Raises:
        InconsistentDomainError: If some initial context allows no state
    """
    masses: Dict[StateSet, Fraction] = {}
    for context in model.initial_contexts():
        states = model.initial_state_set(context)
        if not states:
            raise InconsistentDomainError(
                f"initial context {dict(context.assignment)} allows no state"
            )
        _add(masses, states, context.probability)
    return BeliefState.aggregate(Fraction(1), masses)


def update(model: TransitionModel, belief: BeliefState, labeled: LabeledStep) -> Optional[BeliefState]:
    """
    Extend a belief by one labeled step.

    Sets that do not admit the step drop out; the history's probability is
    scaled by the mass that remains and the surviving transitions are
    renormalised over it.

    Returns:
        The new belief, or None if no supported set admits the step

    Raises:
        InconsistentDomainError: If an admitted step leads to an empty set
    """
    passing = [(states, mass) for states, mass in belief.support
               if model.step_precondition(states, labeled)]
    if not passing:
        logger.debug(f"{labeled}: no supported set admits the step")
        return None

    remaining = sum((mass for _, mass in passing), Fraction(0))
    masses: Dict[StateSet, Fraction] = {}
    for states, mass in passing:
        for target, probability in model.transition_distribution(states, labeled).items():
            if not target:
                raise InconsistentDomainError(f"{labeled} leads to an empty state set")
            _add(masses, target, probability * mass)

    result = BeliefState.aggregate(
        belief.probability * remaining,
        {states: mass / remaining for states, mass in masses.items()},
    )
    logger.debug(f"{labeled}: p={result.probability}, {len(result)} supported set(s)")
    return result


def belief(model: TransitionModel, history: History) -> Optional[BeliefState]:
    """The belief after a history, or None if the history is undefined."""
    current: Optional[BeliefState] = initial_belief(model)
    for labeled in history:
        current = update(model, current, labeled)
        if current is None:
            return None
    return current


def observe_fast(belief: BeliefState, labeled: LabeledStep) -> Optional[BeliefState]:
    """
    Condition a belief on a labeled observation without the transition machinery.

    Keeps the sets that admit the observation, narrows them to the states
    satisfying it and rescales. Agrees exactly with update().

    Raises:
        TypeError: If the step is an action
    """
    observation = labeled.step
    if not isinstance(observation, Observation):
        raise TypeError("observe_fast only handles observations")

    def holds(state) -> bool:
        return bool(observation.formula.evaluate(state))

    passing = []
    for states, mass in belief.support:
        admitted = [holds(s) for s in states]
        if any(admitted) if labeled.modality is Modality.POSSIBLY else all(admitted):
            passing.append((states, mass))
    if not passing:
        return None

    remaining = sum((mass for _, mass in passing), Fraction(0))
    masses: Dict[StateSet, Fraction] = {}
    for states, mass in passing:
        _add(masses, states.filter(holds), mass / remaining)
    return BeliefState.aggregate(belief.probability * remaining, masses)


@dataclass(frozen=True)
class Trace:
    """
    Every belief along a history.

    Attributes:
        history: The traced history
        beliefs: The initial belief followed by one belief per defined step
        undefined_at: Index of the first step that left the history
            undefined, or None
    """
    history: History
    beliefs: Tuple[BeliefState, ...]
    undefined_at: Optional[int] = None

    @property
    def defined(self) -> bool:
        return self.undefined_at is None

    @property
    def final(self) -> Optional[BeliefState]:
        return self.beliefs[-1] if self.defined else None


def trace(model: TransitionModel, history: History) -> Trace:
    """Fold a history like belief() but keep every intermediate belief."""
    beliefs = [initial_belief(model)]
    for index, labeled in enumerate(history):
        following = update(model, beliefs[-1], labeled)
        if following is None:
            return Trace(history, tuple(beliefs), index)
        beliefs.append(following)
    return Trace(history, tuple(beliefs))
