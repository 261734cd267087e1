"""
Canonical pretty-printer for domains and formulas.

The output re-parses to the same core structures: laws are printed in
their desugared form, conjunctions keep their nesting and lowered
disjunctions are printed back with `|`.
"""

from fractions import Fraction
from itertools import groupby
from typing import List, Optional

from core.formula import (
    TRUE,
    Atom,
    Conjunction,
    Constant,
    Formula,
    Negation,
    Signature,
    VariableClass,
)
from core.models import ActionDescription, ContextLaw, DynamicLaw, InitialDatabase, StaticLaw

_CLASS_KEYWORDS = {
    VariableClass.RIGID: "rigid",
    VariableClass.SIMPLE_FLUENT: "fluent simple",
    VariableClass.SDET_FLUENT: "fluent sdet",
    VariableClass.ACTION: "action",
    VariableClass.CONTEXT: "context",
}

INDENT = "    "


def _right_spine(formula: Conjunction) -> List[Formula]:
    operands = []
    while isinstance(formula, Conjunction):
        operands.append(formula.left)
        formula = formula.right
    operands.append(formula)
    return operands


def _disjuncts(formula: Formula) -> Optional[List[Formula]]:
    """The disjuncts of ~(~f1 & ... & ~fn), or None for any other shape."""
    if not isinstance(formula, Negation) or not isinstance(formula.operand, Conjunction):
        return None
    operands = _right_spine(formula.operand)
    if not all(isinstance(f, Negation) for f in operands):
        return None
    return [f.operand for f in operands]


def format_formula(formula: Formula, signature: Optional[Signature] = None) -> str:
    """
    Render a formula in surface syntax.

    With a signature, X = true over a Boolean variable prints as bare X.
    """
    disjuncts = _disjuncts(formula)
    if disjuncts is not None:
        return " | ".join(_operand(d, signature, in_disjunction=True) for d in disjuncts)

    if isinstance(formula, Constant):
        return "true" if formula.value else "false"

    if isinstance(formula, Atom):
        if (formula.value == "true" and signature is not None
                and formula.variable in signature and signature[formula.variable].is_boolean):
            return formula.variable
        return f"{formula.variable} = {formula.value}"

    if isinstance(formula, Negation):
        inner = formula.operand
        if isinstance(inner, Atom):
            return f"{inner.variable} != {inner.value}"
        if isinstance(inner, Conjunction) or _disjuncts(inner) is not None:
            return f"~({format_formula(inner, signature)})"
        return f"~{format_formula(inner, signature)}"

    if isinstance(formula, Conjunction):
        operands = _right_spine(formula)
        rendered = [_operand(f, signature, in_disjunction=False) for f in operands[:-1]]
        last = operands[-1]
        rendered.append(f"({format_formula(last, signature)})" if _disjuncts(last) is not None
                        else format_formula(last, signature))
        return " & ".join(rendered)

    raise TypeError(f"not a formula: {formula!r}")


def _operand(formula: Formula, signature: Optional[Signature], in_disjunction: bool) -> str:
    text = format_formula(formula, signature)
    if _disjuncts(formula) is not None:
        return f"({text})"
    if isinstance(formula, Conjunction) and not in_disjunction:
        return f"({text})"
    return text


def format_probability(probability: Fraction) -> str:
    """Exact decimal when one exists, p/q otherwise."""
    denominator = probability.denominator
    digits = 0
    while (10 ** digits) % denominator and digits < 64:
        digits += 1
    if (10 ** digits) % denominator:
        return f"{probability.numerator}/{probability.denominator}"
    if digits == 0:
        return str(probability.numerator)
    scaled = probability.numerator * (10 ** digits // denominator)
    sign = "-" if scaled < 0 else ""
    whole, frac = divmod(abs(scaled), 10 ** digits)
    return f"{sign}{whole}.{frac:0{digits}d}"


def format_law(law, signature: Optional[Signature] = None) -> str:
    """Render a core law as one statement."""
    def f(formula):
        return format_formula(formula, signature)

    if isinstance(law, StaticLaw):
        condition = "" if law.condition == TRUE else f" if {f(law.condition)}"
        return f"caused {f(law.head)}{condition}."

    if isinstance(law, DynamicLaw):
        if law.is_denial:
            return f"nonexecutable {f(law.trigger)}."
        condition = "" if law.condition == TRUE else f" if {f(law.condition)}"
        return f"caused {f(law.head)}{condition} after {f(law.trigger)}."

    if isinstance(law, ContextLaw):
        outcomes = ", ".join(f"{v}: {format_probability(p)}" for v, p in law.distribution)
        trigger = "" if law.trigger == TRUE else f" after {f(law.trigger)}"
        return f"context-law {law.variable} = ({outcomes}){trigger}."

    raise TypeError(f"not a law: {law!r}")


def format_signature(signature: Signature) -> List[str]:
    """One declaration per run of consecutive variables sharing class and domain."""
    lines = []
    for (kind, domain), group in groupby(signature, key=lambda v: (v.kind, v.domain)):
        names = ", ".join(v.name for v in group)
        if kind is VariableClass.ACTION:
            lines.append(f"action {names}.")
        else:
            lines.append(f"{_CLASS_KEYWORDS[kind]} {names} : {{{', '.join(domain)}}}.")
    return lines


def _section(keyword: str, description, signature: Signature) -> List[str]:
    laws = list(description.static_laws) + list(description.dynamic_laws) + list(description.context_laws)
    return [f"{keyword} {{"] + [INDENT + format_law(law, signature) for law in laws] + ["}"]


def format_domain(initial: InitialDatabase, dynamics: ActionDescription) -> str:
    """Render a whole domain file in canonical form."""
    signature = dynamics.signature
    lines = format_signature(signature)
    lines.append("")
    lines.extend(_section("initially", initial, signature))
    lines.append("")
    lines.extend(_section("dynamics", dynamics, signature))
    return "\n".join(lines) + "\n"
