"""
Reasoning over PC+ domains: transitions, belief states and queries.
"""

from reasoning.transitions import TransitionModel
from reasoning.belief import History, BeliefState, Trace, initial_belief, update, belief, trace
from reasoning.queries import QueryResult, PlanSearchResult, pred, post, plan_goodness, plan_search

__all__ = [
    "TransitionModel",
    "History",
    "BeliefState",
    "Trace",
    "initial_belief",
    "update",
    "belief",
    "trace",
    "QueryResult",
    "PlanSearchResult",
    "pred",
    "post",
    "plan_goodness",
    "plan_search",
]
