"""
Query-step syntax.

Steps are separated by `;`. An action is a braced set of performed action
variables, `{goto(b)}` or `{}` for doing nothing; anything else is an
observed formula over rigid variables and fluents. Histories prefix every
step with a modality, `<>` (possibly) or `[]` (certainly):

    <> at(r)=a & holds=nil; [] {goto(b)}; [] {pickup}
"""

from typing import List

from lark import Tree
from lark.exceptions import UnexpectedInput

from core.errors import StepSyntaxError
from core.formula import Signature, VariableClass
from core.models import Action, LabeledStep, Modality, Observation, Step
from lang.grammar import get_parser
from lang.parser import LoweringError, ident_text, lower_formula


def _parse(text: str, start: str) -> Tree:
    try:
        return get_parser().parse(text, start=start)
    except UnexpectedInput as exc:
        raise StepSyntaxError(
            f"cannot parse {start} at {exc.line}:{exc.column}: {text!r}"
        ) from exc


def _step(node: Tree, text: str, signature: Signature) -> Step:
    if node.data == "action_step":
        names = [ident_text(i) for i in node.children if isinstance(i, Tree)]
        for name in names:
            if name not in signature or signature.kind_of(name) is not VariableClass.ACTION:
                raise StepSyntaxError(f"{name} is not an action variable")
        return Action.of(signature, names)

    try:
        formula = lower_formula(node, signature)
    except LoweringError as exc:
        raise StepSyntaxError(exc.message) from exc
    foreign = sorted(n for n in formula.variables if not signature.kind_of(n).is_world)
    if foreign:
        raise StepSyntaxError(
            f"observations may only mention rigid variables and fluents, not {', '.join(foreign)}"
        )
    source = None
    meta = node.meta
    if not meta.empty:
        source = text[meta.start_pos:meta.end_pos].strip()
    return Observation(formula, source)


def parse_step(text: str, signature: Signature) -> Step:
    """Parse exactly one unlabeled step."""
    steps = parse_steps(text, signature)
    if len(steps) != 1:
        raise StepSyntaxError(f"expected one step, got {len(steps)}: {text!r}")
    return steps[0]


def parse_steps(text: str, signature: Signature) -> List[Step]:
    """
    Parse a `;`-separated sequence of unlabeled steps.

    Raises:
        StepSyntaxError: On malformed text, unknown variables or values,
            non-action names in braces, or observations over action or
            context variables
    """
    tree = _parse(text, "steps")
    return [_step(node, text, signature) for node in tree.children if isinstance(node, Tree)]


def parse_labeled_steps(text: str, signature: Signature) -> List[LabeledStep]:
    tree = _parse(text, "history")
    labeled = []
    for node in tree.children:
        if not isinstance(node, Tree):
            continue
        marker, payload = node.children
        modality = Modality.POSSIBLY if marker.type == "DIAMOND" else Modality.CERTAINLY
        labeled.append(LabeledStep(modality, _step(payload, text, signature)))
    return labeled


def parse_history(text: str, signature: Signature):
    """Parse a modality-labeled history."""
    from reasoning.belief import History
    return History(tuple(parse_labeled_steps(text, signature)))
