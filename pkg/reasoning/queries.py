"""
Prediction, postdiction and planning queries.

Every query is a ratio of two history probabilities. The denominator is the
history that is known to have happened, with every step labeled <>; the
numerator extends or annotates it with []-labeled steps that must certainly
hold. An undefined numerator over a defined denominator yields 0, an
undefined denominator leaves the query undefined.
"""

import logging
from dataclasses import dataclass, field
from fractions import Fraction
from typing import List, Optional, Sequence, Tuple

from core.errors import SubsequenceMismatchError
from core.models import Action, Observation, Step, certainly, possibly
from reasoning.belief import BeliefState, History, Trace, belief, trace, update
from reasoning.transitions import TransitionModel

logger = logging.getLogger(__name__)

UNDEFINED_PRIOR = "prior history has probability 0"


@dataclass(frozen=True)
class QueryResult:
    """
    Outcome of a ratio query.

    Attributes:
        value: Pr(numerator) / Pr(denominator), or None when undefined
        numerator_history: The history whose probability is the numerator
        denominator_history: The history whose probability is the denominator
        numerator_probability: Pr(numerator), None if that history is undefined
        denominator_probability: Pr(denominator), None if undefined
        reason: Why the value is undefined or forced to 0
        trace: Beliefs along the numerator history
    """
    value: Optional[Fraction]
    numerator_history: History
    denominator_history: History
    numerator_probability: Optional[Fraction] = None
    denominator_probability: Optional[Fraction] = None
    reason: Optional[str] = None
    trace: Optional[Trace] = field(default=None, compare=False)

    @property
    def defined(self) -> bool:
        return self.value is not None


def _ratio(
    model: TransitionModel,
    numerator: History,
    denominator: History,
    numerator_trace: Optional[Trace] = None,
) -> QueryResult:
    below = belief(model, denominator)
    if below is None or below.probability == 0:
        return QueryResult(None, numerator, denominator, reason=UNDEFINED_PRIOR)

    steps = numerator_trace if numerator_trace is not None else trace(model, numerator)
    above = steps.final
    if above is None:
        return QueryResult(
            Fraction(0), numerator, denominator,
            denominator_probability=below.probability,
            reason=f"step {steps.undefined_at + 1} of the query history is impossible",
            trace=steps,
        )
    return QueryResult(
        above.probability / below.probability, numerator, denominator,
        numerator_probability=above.probability,
        denominator_probability=below.probability,
        trace=steps,
    )


def pred(model: TransitionModel, prior: Sequence[Step], query: Sequence[Step]) -> QueryResult:
    """
    Probability that the query steps are certainly possible after the prior.

    Prior steps are labeled <>, query steps []; an empty prior makes the
    denominator the empty history of probability 1.
    """
    denominator = History(tuple(possibly(s) for s in prior))
    numerator = denominator.then(*(certainly(s) for s in query))
    result = _ratio(model, numerator, denominator)
    logger.info(f"Pred over {len(prior)} prior and {len(query)} query step(s): {result.value}")
    return result


def match_removed(occurred: Sequence[Step], hypothesis: Sequence[Step]) -> List[bool]:
    """
    Flag the hypothesis steps that are absent from the occurred sequence.

    Occurred steps are matched leftmost-first; only observations may be
    missing from the occurred sequence.

    Raises:
        SubsequenceMismatchError: If the occurred sequence does not arise
            from the hypothesis by removing observations
    """
    removed = []
    position = 0
    for step in hypothesis:
        if position < len(occurred) and occurred[position] == step:
            removed.append(False)
            position += 1
        elif isinstance(step, Observation):
            removed.append(True)
        else:
            raise SubsequenceMismatchError(f"action {step} of the hypothesis did not occur")
    if position != len(occurred):
        raise SubsequenceMismatchError(
            f"occurred step {occurred[position]} is not part of the hypothesis"
        )
    return removed


def post(model: TransitionModel, occurred: Sequence[Step], hypothesis: Sequence[Step]) -> QueryResult:
    """
    Probability that the hypothesised observations certainly held along what occurred.

    The hypothesis must extend the occurred sequence by observations only.
    Those extra observations are labeled [], everything else <>.

    Raises:
        SubsequenceMismatchError: See match_removed()
    """
    removed = match_removed(occurred, hypothesis)
    denominator = History(tuple(possibly(s) for s in occurred))
    numerator = History(tuple(
        certainly(step) if extra else possibly(step)
        for step, extra in zip(hypothesis, removed)
    ))
    result = _ratio(model, numerator, denominator)
    logger.info(f"Post with {sum(removed)} hypothesised observation(s): {result.value}")
    return result


def plan_goodness(
    model: TransitionModel,
    prior: Sequence[Step],
    plan: Sequence[Action],
    goal: Observation,
) -> QueryResult:
    """
    Goodness of a plan for a goal: Pred(prior |> plan, goal).

    Raises:
        TypeError: If the plan contains a non-action or the goal is not an observation
    """
    if not all(isinstance(step, Action) for step in plan):
        raise TypeError("plans consist of actions only")
    if not isinstance(goal, Observation):
        raise TypeError("the goal must be an observation")
    return pred(model, prior, list(plan) + [goal])


@dataclass(frozen=True)
class PlanSearchResult:
    """
    Plans meeting a goodness threshold.

    Attributes:
        plans: (plan, goodness) pairs by goodness descending, then by labels
        explored: Number of plan prefixes whose belief was computed
    """
    plans: Tuple[Tuple[Tuple[Action, ...], Fraction], ...]
    explored: int

    def __iter__(self):
        return iter(self.plans)

    def __len__(self) -> int:
        return len(self.plans)


def plan_search(
    model: TransitionModel,
    prior: Sequence[Step],
    goal: Observation,
    horizon: int,
    threshold: Fraction,
) -> PlanSearchResult:
    """
    Every plan of at most `horizon` actions whose goodness reaches the threshold.

    Depth-first over the actions executable in some state, the no-op
    included. A prefix that makes the history undefined is not extended,
    since all its extensions have goodness 0.

    Raises:
        ValueError: If horizon is negative or threshold is not positive
    """
    if horizon < 0:
        raise ValueError("horizon must not be negative")
    threshold = Fraction(threshold)
    if threshold <= 0:
        raise ValueError("threshold must be positive")

    start = belief(model, History(tuple(possibly(s) for s in prior)))
    if start is None:
        logger.info("Plan search: the prior is impossible")
        return PlanSearchResult((), 0)

    actions = model.candidate_actions()
    goal_step = certainly(goal)
    found: List[Tuple[Tuple[Action, ...], Fraction]] = []
    explored = 0

    def visit(plan: Tuple[Action, ...], current: BeliefState) -> None:
        nonlocal explored
        explored += 1
        reached = update(model, current, goal_step)
        if reached is not None:
            goodness = reached.probability / start.probability
            if goodness >= threshold:
                found.append((plan, goodness))
        if len(plan) == horizon:
            return
        for action in actions:
            following = update(model, current, certainly(action))
            if following is not None:
                visit(plan + (action,), following)

    visit((), start)
    found.sort(key=lambda entry: (-entry[1], tuple(a.label for a in entry[0])))
    logger.info(f"Plan search explored {explored} prefix(es), {len(found)} plan(s) qualify")
    return PlanSearchResult(tuple(found), explored)
