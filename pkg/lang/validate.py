"""
Semantic checks for a parsed initial database and action description.

Every check contributes Diagnostic values; an empty error list means the
pair is a legal PC+ domain. Unused context variables only warn.
"""

import logging
from collections import Counter
from fractions import Fraction
from typing import Iterable, List

from core.formula import TRUE, Signature, VariableClass
from core.models import (
    ActionDescription,
    ContextLaw,
    Diagnostic,
    DynamicLaw,
    InitialDatabase,
    Severity,
    StaticLaw,
)

logger = logging.getLogger(__name__)


def _error(rule: str, message: str, law=None) -> Diagnostic:
    return Diagnostic(Severity.ERROR, rule, message,
                      getattr(law, "line", None), getattr(law, "column", None))


def _warning(rule: str, message: str, law=None) -> Diagnostic:
    return Diagnostic(Severity.WARNING, rule, message,
                      getattr(law, "line", None), getattr(law, "column", None))


def _kinds(signature: Signature, names: Iterable[str]) -> List[VariableClass]:
    return [signature.kind_of(n) for n in names]


# ============================================================================
# PER-LAW CHECKS
# ============================================================================

def check_static_law(signature: Signature, law: StaticLaw) -> List[Diagnostic]:
    """Either a fluent head with an action-free condition, or rigid throughout."""
    head = _kinds(signature, law.head.variables)
    condition = _kinds(signature, law.condition.variables)

    fluent_form = all(k.is_fluent for k in head) and VariableClass.ACTION not in condition
    rigid_form = all(k is VariableClass.RIGID for k in head + condition)
    if fluent_form or rigid_form:
        return []
    return [_error(
        "static-law/variable-classes",
        "static law needs a fluent head and no action in its condition, "
        "or rigid variables only",
        law,
    )]


def check_dynamic_law(signature: Signature, law: DynamicLaw) -> List[Diagnostic]:
    found = []
    bad_head = [n for n in sorted(law.head.variables)
                if signature.kind_of(n) is not VariableClass.SIMPLE_FLUENT]
    if bad_head:
        found.append(_error(
            "dynamic-law/head-simple-fluent",
            f"dynamic law head may only mention simple fluents, not {', '.join(bad_head)}",
            law,
        ))
    actions = [n for n in sorted(law.condition.variables)
               if signature.kind_of(n) is VariableClass.ACTION]
    if actions:
        found.append(_error(
            "dynamic-law/condition-no-action",
            f"dynamic law condition mentions action variables {', '.join(actions)}",
            law,
        ))
    contexts = [n for n in sorted(law.trigger.variables)
                if signature.kind_of(n) is VariableClass.CONTEXT]
    if contexts:
        found.append(_error(
            "dynamic-law/trigger-no-context",
            f"dynamic law trigger mentions context variables {', '.join(contexts)}",
            law,
        ))
    return found


def check_context_law(signature: Signature, law: ContextLaw) -> List[Diagnostic]:
    name = law.variable
    if signature.kind_of(name) is not VariableClass.CONTEXT:
        return [_error("context-law/not-context", f"{name} is not a context variable", law)]

    found = []
    values = law.values
    if len(set(values)) != len(values) or set(values) != set(signature[name].domain):
        found.append(_error(
            "context-law/values",
            f"outcomes of {name} must list each of {{{', '.join(signature[name].domain)}}} once",
            law,
        ))
    for value, probability in law.distribution:
        if probability <= 0:
            found.append(_error(
                "context-law/positive-probability",
                f"probability of {name} = {value} must be positive, got {probability}",
                law,
            ))
    total = law.total
    if total != Fraction(1):
        found.append(_error(
            "context-law/sum",
            f"probabilities for {name} sum to {total} instead of 1",
            law,
        ))
    others = [n for n in sorted(law.trigger.variables)
              if signature.kind_of(n) is not VariableClass.ACTION]
    if others:
        found.append(_error(
            "context-law/trigger-actions",
            f"context law trigger may only mention action variables, not {', '.join(others)}",
            law,
        ))
    return found


# ============================================================================
# DESCRIPTION CHECKS
# ============================================================================

def _one_law_per_variable(description, required, label: str) -> List[Diagnostic]:
    found = []
    counts = Counter(law.variable for law in description.context_laws)
    for name in required:
        if counts[name] == 0:
            found.append(_error(
                "context-law/missing",
                f"context variable {name} occurs in the {label} but has no context law",
            ))
    for law in description.context_laws:
        if counts[law.variable] > 1:
            found.append(_error(
                "context-law/duplicate",
                f"{label} has {counts[law.variable]} context laws for {law.variable}",
                law,
            ))
            counts[law.variable] = 1
    return found


def validate(initial: InitialDatabase, dynamics: ActionDescription) -> List[Diagnostic]:
    """
    Check every law and the description-level rules.

    Args:
        initial: The initial database D0
        dynamics: The action description D, over the same signature

    Returns:
        Diagnostics, errors before warnings in the order found
    """
    signature = dynamics.signature
    found: List[Diagnostic] = []

    for description in (initial, dynamics):
        for law in description.static_laws:
            found.extend(check_static_law(signature, law))
        for law in description.dynamic_laws:
            found.extend(check_dynamic_law(signature, law))
        for law in description.context_laws:
            found.extend(check_context_law(signature, law))

    found.extend(_one_law_per_variable(dynamics, dynamics.context_variables, "action description"))
    found.extend(_one_law_per_variable(initial, initial.context_variables, "initial database"))

    for law in initial.dynamic_laws:
        found.append(_error(
            "initial-database/static-only",
            "the initial database may only hold static laws",
            law,
        ))
    for law in initial.context_laws:
        if law.trigger != TRUE:
            found.append(_error(
                "initial-database/static-only",
                f"context law for {law.variable} in the initial database must not have a trigger",
                law,
            ))

    rigid = set(signature.rigids)
    initial_laws = set(initial.static_laws)
    for law in dynamics.static_laws:
        if law.variables and law.variables <= rigid and law not in initial_laws:
            found.append(_error(
                "static-law/rigid-in-initial",
                "static laws over rigid variables must also appear in the initial database",
                law,
            ))

    used = set(dynamics.context_variables) | set(initial.context_variables)
    for law in dynamics.context_laws:
        if law.variable not in dynamics.context_variables:
            found.append(_warning(
                "context-variable/unused",
                f"context variable {law.variable} is never mentioned by a causal law of the action description",
                law,
            ))
    for law in initial.context_laws:
        if law.variable not in initial.context_variables:
            found.append(_warning(
                "context-variable/unused",
                f"context variable {law.variable} is never mentioned by a causal law of the initial database",
                law,
            ))
    with_law = {law.variable for law in dynamics.context_laws + initial.context_laws}
    for name in signature.contexts:
        if name not in used and name not in with_law:
            found.append(_warning(
                "context-variable/unused", f"context variable {name} is declared but never used"
            ))

    found.sort(key=lambda d: not d.is_error)
    if found:
        logger.debug(f"Validation found {len(found)} diagnostic(s)")
    return found
