"""
Parser and desugarer for PC+ domain files.

A domain file declares variables and holds an `initially { ... }` section
(the initial database D0) and a `dynamics { ... }` section (the action
description D). Parsing runs in three passes over the lark tree:

1. schemas are grounded: `forall L in {a,b,c}: ...` blocks are expanded
   into one statement per binding that satisfies the `where` constraints;
2. declarations are collected into a Signature;
3. laws are lowered to core formulas and desugared into static, dynamic
   and context laws.

Problems are reported as Diagnostic values, never raised. load_domain()
is the raising convenience for callers that only want a valid domain.
"""

import itertools
import logging
from dataclasses import dataclass, field
from fractions import Fraction
from pathlib import Path
from typing import Dict, Iterator, List, Mapping, Optional, Tuple, Union

from lark import Token, Tree
from lark.exceptions import UnexpectedCharacters, UnexpectedEOF, UnexpectedInput, UnexpectedToken

from core.errors import DomainLoadError, SignatureError, UndeclaredVariableError
from core.formula import (
    ACTION_DOMAIN,
    FALSE,
    TRUE,
    Atom,
    Formula,
    Negation,
    Signature,
    Variable,
    VariableClass,
    conjoin,
    differs,
    disjoin,
)
from core.models import (
    ActionDescription,
    ContextLaw,
    Diagnostic,
    DynamicLaw,
    InitialDatabase,
    Severity,
    StaticLaw,
)
from lang.grammar import get_parser

logger = logging.getLogger(__name__)

INITIALLY = "initially"
DYNAMICS = "dynamics"

Env = Mapping[str, str]
CoreLaw = Union[StaticLaw, DynamicLaw, ContextLaw]

_CLASSES = {
    "rigid_class": VariableClass.RIGID,
    "simple_class": VariableClass.SIMPLE_FLUENT,
    "sdet_class": VariableClass.SDET_FLUENT,
    "action_class": VariableClass.ACTION,
    "context_class": VariableClass.CONTEXT,
}

_LAWS = ("caused_law", "denial_law", "inertial_law", "context_law")


# ============================================================================
# RESULT TYPES
# ============================================================================

@dataclass(frozen=True)
class SurfaceLaw:
    """
    A grounded law as written, before desugaring.

    Formulas are already lowered to core shape; what remains is the sugar
    of the law forms themselves (`inertial`, `nonexecutable`, omitted
    `if` and `after` parts).

    Attributes:
        kind: 'caused', 'nonexecutable', 'inertial' or 'context'
        section: 'initially' or 'dynamics'
        head: F of a caused law
        condition: G of a caused law, None when omitted
        trigger: H of a caused or nonexecutable law, A of a context law
        names: Variables of an inertial law
        variable: Variable of a context law
        distribution: Outcomes of a context law
    """
    kind: str
    section: str
    head: Optional[Formula] = None
    condition: Optional[Formula] = None
    trigger: Optional[Formula] = None
    names: Tuple[str, ...] = ()
    variable: Optional[str] = None
    distribution: Tuple[Tuple[str, Fraction], ...] = ()
    line: Optional[int] = None
    column: Optional[int] = None


@dataclass
class ParseOutcome:
    """
    Result of parsing a domain file.

    initial and dynamics are None when a syntax or declaration error
    prevented building them. They are built, but not trustworthy, when
    diagnostics holds semantic errors.
    """
    initial: Optional[InitialDatabase] = None
    dynamics: Optional[ActionDescription] = None
    diagnostics: List[Diagnostic] = field(default_factory=list)

    @property
    def errors(self) -> List[Diagnostic]:
        return [d for d in self.diagnostics if d.is_error]

    @property
    def warnings(self) -> List[Diagnostic]:
        return [d for d in self.diagnostics if not d.is_error]

    @property
    def ok(self) -> bool:
        return self.initial is not None and not self.errors


class LoweringError(Exception):
    """A surface formula or law cannot be expressed over the signature."""

    def __init__(self, rule: str, message: str, line: Optional[int] = None, column: Optional[int] = None):
        super().__init__(message)
        self.rule = rule
        self.message = message
        self.line = line
        self.column = column

    def to_diagnostic(self, phase: str = "semantic") -> Diagnostic:
        return Diagnostic(Severity.ERROR, self.rule, self.message, self.line, self.column, phase)


# ============================================================================
# TREE HELPERS
# ============================================================================

def _position(node) -> Tuple[Optional[int], Optional[int]]:
    meta = getattr(node, "meta", None)
    if meta is None or getattr(meta, "empty", True):
        if isinstance(node, Token):
            return node.line, node.column
        return None, None
    return meta.line, meta.column


def _subtrees(tree: Tree, *names: str) -> List[Tree]:
    return [c for c in tree.children if isinstance(c, Tree) and (not names or c.data in names)]


def ident_text(tree: Tree, env: Optional[Env] = None) -> str:
    """
    Canonical text of an identifier with schematic variables replaced.

    A plain name bound in env is replaced by its value; arguments are
    resolved recursively, so goto(L) under L=b reads "goto(b)".
    """
    env = env or {}
    name = str(tree.children[0])
    args = [c for c in tree.children[1:] if isinstance(c, Tree)]
    if not args:
        return env.get(name, name)
    return f"{name}({','.join(ident_text(a, env) for a in args)})"


def value_text(tree: Tree, env: Optional[Env] = None) -> str:
    if tree.data == "true_value":
        return "true"
    if tree.data == "false_value":
        return "false"
    return ident_text(tree.children[0], env)


def _value_list(tree: Tree, env: Env) -> List[str]:
    return [value_text(v, env) for v in _subtrees(tree)]


def _ident_list(tree: Tree, env: Env) -> List[str]:
    return [ident_text(i, env) for i in _subtrees(tree)]


def lower_formula(tree: Tree, signature: Signature, env: Optional[Env] = None) -> Formula:
    """
    Lower a formula parse tree to the core connectives.

    Disjunction becomes a negated conjunction of negations, X != x becomes
    ~(X = x) and a bare Boolean variable X becomes X = true.

    Raises:
        LoweringError: On an undeclared variable, a value outside the
            variable's domain or a bare non-Boolean variable
    """
    env = env or {}
    data = tree.data
    if data == "true_const":
        return TRUE
    if data == "false_const":
        return FALSE
    if data == "negated":
        return Negation(lower_formula(_subtrees(tree)[0], signature, env))
    if data == "conjunction":
        return conjoin([lower_formula(c, signature, env) for c in _subtrees(tree)])
    if data == "disjunction":
        return disjoin([lower_formula(c, signature, env) for c in _subtrees(tree)])

    line, column = _position(tree)
    name = ident_text(tree.children[0], env)
    if name not in signature:
        raise LoweringError("formula/undeclared-variable", f"undeclared variable {name}", line, column)

    if data == "bare":
        if set(signature[name].domain) != set(ACTION_DOMAIN):
            raise LoweringError(
                "formula/bare-non-boolean",
                f"{name} is not Boolean and needs an explicit value",
                line, column,
            )
        return Atom(name, "true")

    value = value_text(tree.children[1], env)
    if not signature.has_value(name, value):
        raise LoweringError(
            "formula/unknown-value", f"{value} is not in the domain of {name}", line, column
        )
    if data == "equals":
        return Atom(name, value)
    if data == "not_equals":
        return differs(name, value)
    raise ValueError(f"not a formula node: {data}")


# ============================================================================
# DESUGARING
# ============================================================================

def desugar(law: SurfaceLaw, signature: Signature) -> List[CoreLaw]:
    """
    Expand a surface law into core laws.

    inertial X gives caused X=x if X=x after X=x for each x in the domain;
    nonexecutable H gives caused false if true after H; an omitted `if`
    defaults to true. A caused law without `after` is static.

    Raises:
        UndeclaredVariableError: If an inertial law names an undeclared variable
    """
    where = dict(line=law.line, column=law.column)

    if law.kind == "caused":
        condition = law.condition if law.condition is not None else TRUE
        if law.trigger is None:
            return [StaticLaw(law.head, condition, **where)]
        return [DynamicLaw(law.head, condition, law.trigger, **where)]

    if law.kind == "nonexecutable":
        return [DynamicLaw(FALSE, TRUE, law.trigger, **where)]

    if law.kind == "inertial":
        laws = []
        for name in law.names:
            for value in signature[name].domain:
                atom = Atom(name, value)
                laws.append(DynamicLaw(atom, atom, atom, **where))
        return laws

    if law.kind == "context":
        trigger = law.trigger if law.trigger is not None else TRUE
        return [ContextLaw(law.variable, law.distribution, trigger, **where)]

    raise ValueError(f"unknown law kind: {law.kind}")


# ============================================================================
# TREE WALKER
# ============================================================================

@dataclass
class _Statement:
    section: Optional[str]
    tree: Tree
    env: Dict[str, str]


class _DomainBuilder:
    """Walks one domain tree; collects diagnostics instead of raising."""

    def __init__(self):
        self.diagnostics: List[Diagnostic] = []

    def error(self, rule: str, message: str, node=None) -> None:
        line, column = _position(node) if node is not None else (None, None)
        self.diagnostics.append(Diagnostic(Severity.ERROR, rule, message, line, column))

    # ---------------------------------------------------------------- pass 1: grounding

    def statements(self, tree: Tree) -> List[_Statement]:
        found: List[_Statement] = []
        for child in _subtrees(tree):
            if child.data == "initially_section":
                self._collect(child, INITIALLY, {}, found)
            elif child.data == "dynamics_section":
                self._collect(child, DYNAMICS, {}, found)
            else:
                self._collect(Tree("block", [child]), None, {}, found)
        return found

    def _collect(self, block: Tree, section: Optional[str], env: Dict[str, str], out: List[_Statement]) -> None:
        for child in _subtrees(block):
            if child.data == "schema":
                body = _subtrees(child, "schema_body")[0]
                for bound in self._ground(child, env):
                    self._collect(body, section, bound, out)
            else:
                out.append(_Statement(section, child, env))

    def _ground(self, schema: Tree, env: Dict[str, str]) -> Iterator[Dict[str, str]]:
        bindings = _subtrees(schema, "binding")
        names = [str(b.children[0]) for b in bindings]
        ranges = [_value_list(_subtrees(b, "value_list")[0], env) for b in bindings]
        constraints = _subtrees(schema, "distinct", "same")

        for values in itertools.product(*ranges):
            bound = dict(env)
            bound.update(zip(names, values))
            if all(self._holds(c, bound) for c in constraints):
                yield bound

    @staticmethod
    def _holds(constraint: Tree, env: Env) -> bool:
        left, right = (ident_text(i, env) for i in _subtrees(constraint))
        return (left != right) if constraint.data == "distinct" else (left == right)

    # ---------------------------------------------------------------- pass 2: declarations

    def signature(self, statements: List[_Statement]) -> Optional[Signature]:
        variables: List[Variable] = []
        seen = set()

        for statement in statements:
            tree = statement.tree
            if tree.data != "declaration":
                continue
            kind = _CLASSES[_subtrees(tree)[0].data]
            names = _ident_list(_subtrees(tree, "ident_list")[0], statement.env)
            domain_lists = _subtrees(tree, "value_list")

            if kind is VariableClass.ACTION:
                if domain_lists:
                    self.error("declaration/action-domain",
                               "action variables range over {false, true} and take no domain", tree)
                domain = ACTION_DOMAIN
            elif not domain_lists:
                self.error("declaration/missing-domain",
                           f"{kind.value} variables need a domain: {', '.join(names)}", tree)
                continue
            else:
                domain = tuple(_value_list(domain_lists[0], statement.env))
                if len(set(domain)) != len(domain):
                    self.error("declaration/duplicate-value",
                               f"repeated value in the domain of {', '.join(names)}", tree)
                    continue

            for name in names:
                if name in seen:
                    self.error("declaration/duplicate", f"{name} is declared twice", tree)
                    continue
                seen.add(name)
                variables.append(Variable(name, kind, domain))

        try:
            return Signature(tuple(variables))
        except SignatureError as exc:
            self.error("declaration/invalid", str(exc))
            return None

    # ---------------------------------------------------------------- pass 3: laws

    def surface_laws(self, statements: List[_Statement], signature: Signature) -> List[SurfaceLaw]:
        laws = []
        for statement in statements:
            tree = statement.tree
            if tree.data not in _LAWS:
                continue
            if statement.section is None:
                self.error("law/outside-section",
                           "laws belong in an initially or dynamics section", tree)
                continue
            try:
                laws.append(self._surface(tree, statement.section, statement.env, signature))
            except LoweringError as exc:
                self.diagnostics.append(exc.to_diagnostic())
        return laws

    def _surface(self, tree: Tree, section: str, env: Env, signature: Signature) -> SurfaceLaw:
        line, column = _position(tree)

        def lower(node):
            return None if node is None else lower_formula(node, signature, env)

        if tree.data == "caused_law":
            head, condition, trigger = tree.children
            return SurfaceLaw("caused", section, head=lower(head), condition=lower(condition),
                              trigger=lower(trigger), line=line, column=column)

        if tree.data == "denial_law":
            return SurfaceLaw("nonexecutable", section, trigger=lower(_subtrees(tree)[0]),
                              line=line, column=column)

        if tree.data == "inertial_law":
            names = tuple(_ident_list(_subtrees(tree, "ident_list")[0], env))
            for name in names:
                if name not in signature:
                    raise LoweringError("inertial/undeclared-variable",
                                        f"inertial names undeclared variable {name}", line, column)
            return SurfaceLaw("inertial", section, names=names, line=line, column=column)

        # context_law
        variable = ident_text(_subtrees(tree, "ident")[0], env)
        if variable not in signature:
            raise LoweringError("context-law/undeclared-variable",
                                f"context law for undeclared variable {variable}", line, column)
        distribution = []
        for outcome in _subtrees(tree, "outcome"):
            value_node, probability = outcome.children
            value = value_text(value_node, env)
            try:
                distribution.append((value, Fraction(str(probability))))
            except (ValueError, ZeroDivisionError):
                raise LoweringError("context-law/probability",
                                    f"probability {probability} is not a valid fraction",
                                    *_position(probability)) from None
        last = tree.children[-1]
        trigger = last if isinstance(last, Tree) and last.data != "outcome" else None
        return SurfaceLaw("context", section, trigger=lower(trigger), variable=variable,
                          distribution=tuple(distribution), line=line, column=column)


# ============================================================================
# ENTRY POINTS
# ============================================================================

def _syntax_diagnostic(exc: UnexpectedInput) -> Diagnostic:
    if isinstance(exc, UnexpectedToken):
        if exc.token.type == "$END":
            message = "unexpected end of input"
        else:
            message = f"unexpected {exc.token!s}"
        expected = sorted(exc.expected)[:8]
        if expected:
            message += f", expected one of: {', '.join(expected)}"
    elif isinstance(exc, UnexpectedCharacters):
        message = f"unexpected character {exc.char!r}"
    elif isinstance(exc, UnexpectedEOF):
        message = "unexpected end of input"
    else:
        message = str(exc).splitlines()[0]
    return Diagnostic(Severity.ERROR, "syntax/unexpected-input", message,
                      getattr(exc, "line", None), getattr(exc, "column", None), phase="syntax")


def parse(text: str) -> ParseOutcome:
    """
    Parse, desugar and validate a domain.

    Args:
        text: Contents of a domain file

    Returns:
        ParseOutcome with both descriptions and every diagnostic found
    """
    from lang.validate import validate

    try:
        tree = get_parser().parse(text, start="domain")
    except UnexpectedInput as exc:
        return ParseOutcome(diagnostics=[_syntax_diagnostic(exc)])

    builder = _DomainBuilder()
    statements = builder.statements(tree)
    signature = builder.signature(statements)
    if signature is None or builder.diagnostics:
        return ParseOutcome(diagnostics=builder.diagnostics)

    sections: Dict[str, Dict[type, list]] = {
        INITIALLY: {StaticLaw: [], DynamicLaw: [], ContextLaw: []},
        DYNAMICS: {StaticLaw: [], DynamicLaw: [], ContextLaw: []},
    }
    for law in builder.surface_laws(statements, signature):
        try:
            core = desugar(law, signature)
        except UndeclaredVariableError as exc:
            builder.error("inertial/undeclared-variable", str(exc))
            continue
        for item in core:
            sections[law.section][type(item)].append(item)

    def build(cls, laws):
        return cls(signature, tuple(laws[StaticLaw]), tuple(laws[DynamicLaw]), tuple(laws[ContextLaw]))

    initial = build(InitialDatabase, sections[INITIALLY])
    dynamics = build(ActionDescription, sections[DYNAMICS])
    diagnostics = builder.diagnostics + validate(initial, dynamics)

    logger.debug(
        f"Parsed domain: {len(signature)} variables, "
        f"{len(initial.static_laws)} + {len(dynamics.causal_laws)} causal laws"
    )
    return ParseOutcome(initial, dynamics, diagnostics)


def parse_file(path: Union[str, Path]) -> ParseOutcome:
    """Parse a UTF-8 domain file."""
    return parse(Path(path).read_text(encoding="utf-8"))


def load_domain(path: Union[str, Path]) -> Tuple[InitialDatabase, ActionDescription]:
    """
    Parse a domain file, insisting that it is valid.

    Raises:
        DomainLoadError: If the file has any error diagnostic
        OSError: If the file cannot be read
    """
    outcome = parse_file(path)
    if not outcome.ok:
        raise DomainLoadError(
            f"{path}: {len(outcome.errors)} error(s) in domain", outcome.diagnostics
        )
    for warning in outcome.warnings:
        logger.warning(f"{path}: {warning}")
    logger.info(f"Loaded domain {path}")
    return outcome.initial, outcome.dynamics
