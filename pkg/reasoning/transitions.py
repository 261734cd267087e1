"""
Transition semantics of a PC+ domain.

TransitionModel interprets an initial database D0 and an action description
D as probabilistic transitions between sets of states:

- D0 contributes one state set per initial context, weighted by the
  context's probability;
- every action α gets contexts over X_α, and every context maps a state s
  to the causally explained successors of s;
- observations have the single empty context and filter or keep states.

Results are cached per model instance; inputs are immutable so the caches
never go stale.
"""

import logging
from collections import OrderedDict
from fractions import Fraction
from functools import cached_property
from typing import Dict, Iterable, List, Optional, Sequence, Set, Tuple, Union

from core.causal import CausalRule, CausalTheory
from core.config import Config
from core.errors import InconsistentDomainError, PreconditionViolatedError, StateSpaceLimitError
from core.formula import (
    Atom,
    Interpretation,
    count_interpretations,
    enumerate_interpretations,
    satisfies,
)
from core.models import (
    EMPTY_CONTEXT,
    EMPTY_STATES,
    Action,
    ActionDescription,
    Context,
    Diagnostic,
    InitialDatabase,
    LabeledStep,
    Modality,
    Observation,
    Severity,
    StateSet,
    Step,
)
from solvers import ModelFinder, get_model_finder

logger = logging.getLogger(__name__)


class TransitionModel:
    """
    The probabilistic transition system of (D0, D).

    Example:
        model = TransitionModel(initial, dynamics)
        for context in model.initial_contexts():
            states = model.initial_state_set(context)

    Attributes:
        initial: The initial database D0
        dynamics: The action description D
        signature: Shared variable declarations
        config: Engine settings
        finder: Model finder for every causal theory built here

    Raises:
        StateSpaceLimitError: If the rigid and fluent variables have more
            joint interpretations than config.engine.max_states
    """

    def __init__(
        self,
        initial: InitialDatabase,
        dynamics: ActionDescription,
        config: Optional[Config] = None,
        finder: Optional[ModelFinder] = None,
    ):
        self.initial = initial
        self.dynamics = dynamics
        self.signature = dynamics.signature
        self.config = config or Config()
        self.finder = finder or get_model_finder(self.config.engine.model_finder)

        size = count_interpretations(self.signature, self.signature.world_variables)
        if size > self.config.engine.max_states:
            raise StateSpaceLimitError(
                f"{size} rigid/fluent interpretations exceed max_states={self.config.engine.max_states}"
            )

        self._initial_sets: Dict[Interpretation, StateSet] = {}
        self._successors: Dict[Tuple[Interpretation, Action, Interpretation], StateSet] = {}
        self._action_context_vars: Dict[Action, Tuple[str, ...]] = {}
        self._action_contexts: Dict[Action, List[Context]] = {}

    # ------------------------------------------------------------------ contexts

    def _contexts(self, names: Sequence[str], description) -> List[Context]:
        contexts = []
        for assignment in enumerate_interpretations(self.signature, names):
            probability = Fraction(1)
            for name in assignment:
                probability *= description.context_law(name).probability(assignment[name])
            contexts.append(Context(assignment, probability))
        return contexts

    def initial_contexts(self) -> List[Context]:
        """One context per interpretation of D0's context variables."""
        return self._contexts(self.initial.distribution_variables, self.initial)

    # ------------------------------------------------------------------ states

    def _static_theory(self, description, context: Context) -> CausalTheory:
        """gamma(F <= G) for every static law, plus simple-fluent self-support."""
        rules = [
            CausalRule(law.head, law.condition.substitute(context.assignment))
            for law in description.static_laws
        ]
        for name in self.signature.simple_fluents:
            for value in self.signature[name].domain:
                atom = Atom(name, value)
                rules.append(CausalRule(atom, atom))
        return CausalTheory.build(self.signature, rules, self.signature.world_variables)

    def initial_state_set(self, context: Context) -> StateSet:
        """Phi_gamma of D0: the states the initial context allows."""
        key = context.assignment
        if key not in self._initial_sets:
            theory = self._static_theory(self.initial, context)
            self._initial_sets[key] = StateSet.of(self.signature, self.finder.models(theory))
        return self._initial_sets[key]

    @cached_property
    def state_space(self) -> StateSet:
        """Every initial state plus every model of D's static laws under any of its contexts."""
        states: Set[Interpretation] = set()
        for context in self.initial_contexts():
            states.update(self.initial_state_set(context))

        for assignment in enumerate_interpretations(self.signature, self.dynamics.static_context_variables):
            theory = self._static_theory(self.dynamics, Context(assignment, Fraction(1)))
            states.update(self.finder.models(theory))

        space = StateSet.of(self.signature, states)
        logger.debug(f"State space has {len(space)} states")
        return space

    # ------------------------------------------------------------------ actions

    def all_actions(self) -> List[Action]:
        """Every interpretation of the action variables, the no-op first."""
        return [Action(a) for a in enumerate_interpretations(self.signature, self.signature.actions)]

    @cached_property
    def _candidate_actions(self) -> List[Action]:
        return [
            action for action in self.all_actions()
            if any(self.executable(s, action) for s in self.state_space)
        ]

    def candidate_actions(self) -> List[Action]:
        """Actions executable in at least one state."""
        return list(self._candidate_actions)

    def executable(self, state: Interpretation, action: Action) -> bool:
        """No execution denial is triggered by the state together with the action."""
        joint = state.union(action.assignment)
        return not any(satisfies(joint, law.trigger) for law in self.dynamics.denials)

    def state_context_vars(self, state: Interpretation, action: Action) -> Tuple[str, ...]:
        """X_{s,a}: context variables of static laws and of dynamic laws triggered by s and a."""
        joint = state.union(action.assignment)
        names = set(self.dynamics.static_context_variables)
        for law in self.dynamics.dynamic_laws:
            if satisfies(joint, law.trigger):
                names |= law.variables
        return tuple(n for n in self.signature.contexts if n in names)

    def action_context_vars(self, action: Action) -> Tuple[str, ...]:
        """X_a: the union of X_{s,a} over the states where the action is executable."""
        if action not in self._action_context_vars:
            names: Set[str] = set()
            for state in self.state_space:
                if self.executable(state, action):
                    names.update(self.state_context_vars(state, action))
            ordered = self.signature.order(names)
            for name in ordered:
                law = self.dynamics.context_law(name)
                if not satisfies(action.assignment, law.trigger):
                    logger.warning(
                        f"Context variable {name} is relevant for {action} "
                        f"but its context law is not triggered by it"
                    )
            self._action_context_vars[action] = ordered
        return self._action_context_vars[action]

    def action_contexts(self, action: Action) -> List[Context]:
        """Contexts over X_a with their product probabilities."""
        if action not in self._action_contexts:
            contexts = self._contexts(self.action_context_vars(action), self.dynamics)
            logger.debug(f"{action}: {len(contexts)} context(s) over {self._action_context_vars[action]}")
            self._action_contexts[action] = contexts
        return self._action_contexts[action]

    def successor_theory(self, state: Interpretation, action: Action, context: Context) -> CausalTheory:
        """
        The causal theory whose models are the successors of the state.

        Static laws always contribute; dynamic laws only when their trigger
        holds in the state together with the action. Context variables are
        substituted away. Under the rigid-equal reading the rigid values of
        the state are substituted too and the scope shrinks to the fluents.
        """
        joint = state.union(action.assignment)
        laws = list(self.dynamics.static_laws) + [
            law for law in self.dynamics.dynamic_laws if satisfies(joint, law.trigger)
        ]
        gamma = context.assignment

        if self.config.engine.uniqueness_scope == "rigid-equal":
            rigid = state.restrict(self.signature.rigids)
            rules = [
                CausalRule(law.head.substitute(rigid), law.condition.substitute(gamma).substitute(rigid))
                for law in laws
            ]
            return CausalTheory.build(self.signature, rules, self.signature.fluents)

        rules = [CausalRule(law.head, law.condition.substitute(gamma)) for law in laws]
        return CausalTheory.build(self.signature, rules, self.signature.world_variables)

    def successors(self, state: Interpretation, action: Action, context: Context) -> StateSet:
        """
        Phi_gamma(s, a): the causally explained successors of the state.

        Empty when the action is not executable in the state.
        """
        key = (state, action, context.assignment)
        if key in self._successors:
            return self._successors[key]

        if not self.executable(state, action):
            result = EMPTY_STATES
        else:
            theory = self.successor_theory(state, action, context)
            rigid = state.restrict(self.signature.rigids)
            if self.config.engine.uniqueness_scope == "rigid-equal":
                found = [model.union(rigid) for model in self.finder.models(theory)]
            else:
                found = [
                    model for model in self.finder.models(theory)
                    if model.agrees_with(rigid, self.signature.rigids)
                ]
            result = StateSet.of(self.signature, found)

        self._successors[key] = result
        return result

    # ------------------------------------------------------------------ observations

    @staticmethod
    def observe_state(state: Interpretation, observation: Observation) -> StateSet:
        """{s} if the state satisfies the observation, else the empty set."""
        if satisfies(state, observation.formula):
            return StateSet((state,))
        return EMPTY_STATES

    # ------------------------------------------------------------------ labeled steps

    def _admits(self, state: Interpretation, step: Step) -> bool:
        if isinstance(step, Action):
            return self.executable(state, step)
        return satisfies(state, step.formula)

    def step_precondition(self, states: Iterable[Interpretation], labeled: LabeledStep) -> bool:
        """<> needs some state to admit the step, [] needs every state to."""
        admitted = (self._admits(s, labeled.step) for s in states)
        if labeled.modality is Modality.POSSIBLY:
            return any(admitted)
        return all(admitted)

    def step_contexts(self, step: Union[Step, LabeledStep]) -> List[Context]:
        """Contexts of an action, or the single empty context of an observation."""
        if isinstance(step, LabeledStep):
            step = step.step
        if isinstance(step, Action):
            return self.action_contexts(step)
        return [EMPTY_CONTEXT]

    def step_targets(self, states: StateSet, labeled: LabeledStep, context: Context) -> StateSet:
        """
        Phi_gamma(S, sigma): the union of the per-state targets.

        Raises:
            PreconditionViolatedError: If the states do not admit the step
        """
        if not self.step_precondition(states, labeled):
            raise PreconditionViolatedError(f"{labeled} is not admitted by the state set")
        step = labeled.step
        targets: Set[Interpretation] = set()
        for state in states:
            if isinstance(step, Action):
                targets.update(self.successors(state, step, context))
            else:
                targets.update(self.observe_state(state, step))
        return StateSet.of(self.signature, targets)

    def transition_distribution(self, states: StateSet, labeled: LabeledStep) -> Dict[StateSet, Fraction]:
        """
        Pr_sigma(. | S): context probabilities summed per target set.

        Raises:
            PreconditionViolatedError: If the states do not admit the step
        """
        if not self.step_precondition(states, labeled):
            raise PreconditionViolatedError(f"{labeled} is not admitted by the state set")
        distribution: Dict[StateSet, Fraction] = OrderedDict()
        for context in self.step_contexts(labeled):
            target = self.step_targets(states, labeled, context)
            distribution[target] = distribution.get(target, Fraction(0)) + context.probability
        return distribution

    # ------------------------------------------------------------------ consistency

    def check_consistency(self) -> List[Diagnostic]:
        """
        Look for empty initial state sets and executable actions without successors.

        Each diagnostic names its witness context, state and action.
        """
        found = []
        for context in self.initial_contexts():
            if not self.initial_state_set(context):
                found.append(Diagnostic(
                    Severity.ERROR,
                    "consistency/initial-context",
                    f"initial context {_render(context.assignment)} allows no state",
                    phase="consistency",
                ))

        for action in self.candidate_actions():
            for state in self.state_space:
                if not self.executable(state, action):
                    continue
                for context in self.action_contexts(action):
                    if not self.successors(state, action, context):
                        found.append(Diagnostic(
                            Severity.ERROR,
                            "consistency/no-successor",
                            f"{action} is executable in {_render(state)} but has no successor "
                            f"under context {_render(context.assignment)}",
                            phase="consistency",
                        ))
        logger.info(f"Consistency check found {len(found)} problem(s)")
        return found

    def require_consistent(self) -> None:
        """
        Raises:
            InconsistentDomainError: If check_consistency reports anything
        """
        problems = self.check_consistency()
        if problems:
            raise InconsistentDomainError(str(problems[0]))


def _render(assignment: Interpretation) -> str:
    if not assignment:
        return "{}"
    return "{" + ", ".join(f"{k}={assignment[k]}" for k in sorted(assignment)) + "}"
