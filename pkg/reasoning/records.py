"""
Text and JSON renderings of results.

Probabilities stay exact fractions; decimals are derived for display only,
rounded to a fixed number of significant digits.
"""

from decimal import Decimal, localcontext
from fractions import Fraction
from typing import Any, Dict, List, Optional, Sequence

from core.formula import Interpretation, Signature
from core.models import Diagnostic
from reasoning.belief import BeliefState, Trace
from reasoning.queries import PlanSearchResult, QueryResult


def to_decimal(value: Fraction, digits: int = 6) -> str:
    """Round to `digits` significant digits, without exponent or trailing zeros."""
    with localcontext() as ctx:
        ctx.prec = digits
        rounded = Decimal(value.numerator) / Decimal(value.denominator)
    text = format(rounded.normalize(), "f")
    return "0" if text in ("-0", "0") else text


def render_fraction(value: Optional[Fraction], digits: int = 6) -> str:
    """'171/200 = 0.855', or 'undefined'."""
    if value is None:
        return "undefined"
    if value.denominator == 1:
        return str(value.numerator)
    return f"{value.numerator}/{value.denominator} = {to_decimal(value, digits)}"


def fraction_record(value: Optional[Fraction], digits: int = 6) -> Optional[Dict[str, str]]:
    if value is None:
        return None
    return {"fraction": str(value), "decimal": to_decimal(value, digits)}


def state_record(state: Interpretation, signature: Signature) -> Dict[str, str]:
    return {name: state[name] for name in signature.order(state.scope)}


def render_state(state: Interpretation, signature: Signature) -> str:
    return ", ".join(f"{k}={v}" for k, v in state_record(state, signature).items())


def belief_record(
    belief: BeliefState,
    signature: Signature,
    digits: int = 6,
    show_states: bool = False,
) -> Dict[str, Any]:
    support = []
    for states, mass in belief.support:
        entry: Dict[str, Any] = {"mass": fraction_record(mass, digits), "size": len(states)}
        if show_states:
            entry["states"] = [state_record(s, signature) for s in states]
        support.append(entry)
    return {"probability": fraction_record(belief.probability, digits), "support": support}


def render_belief(
    belief: BeliefState,
    signature: Signature,
    digits: int = 6,
    show_states: bool = False,
) -> List[str]:
    lines = [f"p = {render_fraction(belief.probability, digits)}"]
    for index, (states, mass) in enumerate(belief.support, 1):
        lines.append(f"  set {index}: mass {render_fraction(mass, digits)}, {len(states)} state(s)")
        if show_states:
            lines.extend(f"    {render_state(s, signature)}" for s in states)
    return lines


def trace_record(
    result: Trace,
    signature: Signature,
    digits: int = 6,
    show_states: bool = False,
) -> Dict[str, Any]:
    steps = ["(initial)"] + [str(step) for step in result.history]
    return {
        "history": str(result.history),
        "defined": result.defined,
        "undefined_at": None if result.undefined_at is None else result.undefined_at + 1,
        "beliefs": [
            {"step": steps[i], **belief_record(b, signature, digits, show_states)}
            for i, b in enumerate(result.beliefs)
        ],
    }


def query_record(kind: str, result: QueryResult, digits: int = 6) -> Dict[str, Any]:
    return {
        "query": kind,
        "value": fraction_record(result.value, digits),
        "numerator": {
            "history": str(result.numerator_history),
            "probability": fraction_record(result.numerator_probability, digits),
        },
        "denominator": {
            "history": str(result.denominator_history),
            "probability": fraction_record(result.denominator_probability, digits),
        },
        "reason": result.reason,
    }


def plans_record(result: PlanSearchResult, digits: int = 6) -> Dict[str, Any]:
    return {
        "query": "plan-search",
        "explored": result.explored,
        "plans": [
            {"plan": [a.label for a in plan], "goodness": fraction_record(goodness, digits)}
            for plan, goodness in result.plans
        ],
    }


def diagnostics_record(diagnostics: Sequence[Diagnostic]) -> List[Dict[str, Any]]:
    return [
        {
            "severity": d.severity.value,
            "rule": d.rule,
            "message": d.message,
            "line": d.line,
            "column": d.column,
            "phase": d.phase,
        }
        for d in diagnostics
    ]
