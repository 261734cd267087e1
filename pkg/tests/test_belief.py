"""Tests for belief states and their evolution along histories."""

import random
from fractions import Fraction

import pytest

from conftest import EITHER_AT_C, O1_AT_C, PHI, PLAN, random_domain_text, random_observation_text
from core.errors import InconsistentDomainError
from core.models import Action, LabeledStep, Modality, Observation, StateSet, certainly, possibly
from lang.parser import parse
from lang.steps import parse_step
from reasoning.belief import (
    EMPTY_HISTORY,
    BeliefState,
    belief,
    initial_belief,
    observe_fast,
    trace,
    update,
)
from reasoning.transitions import TransitionModel

PLAN_LABELED = "{goto(b)}; [] {pickup}; [] {goto(c)}"


def test_initial_belief(robot):
    start = initial_belief(robot)
    assert start.probability == 1
    # the nine initial contexts give nine distinct state sets
    assert len(start) == 9
    assert sorted(start.support, key=lambda e: e[1])[-1][1] == Fraction(48, 100)
    assert all(len(states) == 2 for states in start.sets)
    assert belief(robot, EMPTY_HISTORY) == start


def test_belief_state_invariants(sig, state):
    s = StateSet((state("a", "b", "b"),))
    t = StateSet((state("b", "b", "b"),))
    with pytest.raises(ValueError):
        BeliefState(Fraction(1), ((s, Fraction(1, 2)),))
    with pytest.raises(ValueError):
        BeliefState(Fraction(3, 2), ((s, Fraction(1)),))
    with pytest.raises(ValueError):
        BeliefState(Fraction(1), ((s, Fraction(1)), (t, Fraction(0))))
    with pytest.raises(ValueError):
        BeliefState(Fraction(1), ((StateSet(), Fraction(1)),))
    # the support order does not depend on construction order
    one = BeliefState(Fraction(1), ((s, Fraction(1, 4)), (t, Fraction(3, 4))))
    two = BeliefState(Fraction(1), ((t, Fraction(3, 4)), (s, Fraction(1, 4))))
    assert one == two
    assert one.mass(t) == Fraction(3, 4)


def test_running_example_snapshots(robot, history):
    h = history(f"<> {PHI}; [] {PLAN_LABELED}; [] {EITHER_AT_C}")
    result = trace(robot, h)
    assert result.defined
    assert [b.probability for b in result.beliefs] == [
        1, Fraction(48, 100), Fraction(48, 100), Fraction(456, 1000),
        Fraction(456, 1000), Fraction(4104, 10000),
    ]
    # after observing phi a single context survives
    assert len(result.beliefs[1]) == 1
    # the move to b succeeds or fails
    assert len(result.beliefs[2]) == 2
    # pickup is only possible after the successful move
    assert len(result.beliefs[3]) == 1
    assert len(result.beliefs[3].sets[0]) == 2


def test_impossible_step_is_undefined(robot, history):
    h = history(f"<> {PHI}; [] {{pickup}}")
    assert belief(robot, h) is None
    result = trace(robot, h)
    assert not result.defined
    assert result.undefined_at == 1
    assert result.final is None
    assert len(result.beliefs) == 2


def test_possibly_versus_certainly(robot, history):
    # some initial state has the robot at a, but not all
    assert belief(robot, history("<> at(r)=a")).probability == 1
    assert belief(robot, history("[] at(r)=a")) is None
    assert belief(robot, history("[] holds=nil")).probability == 1


def test_history_probability_never_increases(robot, history):
    h = history(f"<> at(o1)=b; [] {{goto(b)}}; <> {{pickup}}; [] {{goto(c)}}; <> holds=o1")
    probabilities = [b.probability for b in trace(robot, h).beliefs]
    assert all(later <= earlier for earlier, later in zip(probabilities, probabilities[1:]))


def test_observe_fast_rejects_actions(robot, sig):
    with pytest.raises(TypeError):
        observe_fast(initial_belief(robot), certainly(Action.of(sig, ["drop"])))


def test_history_composition(history):
    first, second = history("<> holds=nil"), history("[] {drop}")
    joined = first + second
    assert len(joined) == 2 and joined.action_length == 1
    assert joined == first.then(*second.steps)
    assert str(EMPTY_HISTORY) == "(empty history)"


def test_empty_target_set_raises():
    text = """
    fluent simple p : {t, f}.
    action a.
    initially { caused p = t. }
    dynamics { inertial p. caused false if p = t after a. }
    """
    outcome = parse(text)
    model = TransitionModel(outcome.initial, outcome.dynamics)
    step = LabeledStep(Modality.POSSIBLY, Action.of(model.signature, ["a"]))
    with pytest.raises(InconsistentDomainError):
        update(model, initial_belief(model), step)


def test_observation_update_matches_filtering(robot, sig):
    """Observations through the transition machinery equal direct conditioning."""
    rng = random.Random(7)
    fluents = sig.fluents
    formulas = []
    for _ in range(200):
        chosen = rng.sample(fluents, rng.randint(1, 2))
        atoms = [f"{name}={rng.choice(sig[name].domain)}" for name in chosen]
        joiner = rng.choice([" & ", " | "])
        formulas.append(("~" if rng.random() < 0.2 else "") + "(" + joiner.join(atoms) + ")")

    beliefs = [initial_belief(robot)]
    moves = ["{goto(b)}", "{goto(c)}", "{goto(a)}", "{}"]
    for text in moves:
        following = update(robot, beliefs[-1], possibly(parse_step(text, sig)))
        if following is not None:
            beliefs.append(following)

    compared = 0
    for case in range(1000):
        current = beliefs[case % len(beliefs)]
        observation = parse_step(formulas[case % len(formulas)], sig)
        assert isinstance(observation, Observation)
        for labeled in (possibly(observation), certainly(observation)):
            slow = update(robot, current, labeled)
            fast = observe_fast(current, labeled)
            assert slow == fast
            compared += slow is not None
    assert compared > 100


def test_observation_update_matches_filtering_on_random_domains():
    rng = random.Random(20240612)
    pairs = defined = 0
    for _ in range(60):
        outcome = parse(random_domain_text(rng))
        assert outcome.ok, outcome.diagnostics
        model = TransitionModel(outcome.initial, outcome.dynamics)
        sig = model.signature
        act = Action.of(sig, ["a"])

        start = initial_belief(model)
        beliefs = [start]
        for labeled in (possibly(act), certainly(act)):
            following = update(model, start, labeled)
            if following is not None:
                beliefs.append(following)
        seen = observe_fast(start, possibly(parse_step(random_observation_text(rng, sig), sig)))
        if seen is not None:
            beliefs.append(seen)

        for _ in range(10):
            observation = parse_step(random_observation_text(rng, sig), sig)
            current = rng.choice(beliefs)
            for labeled in (possibly(observation), certainly(observation)):
                slow = update(model, current, labeled)
                assert slow == observe_fast(current, labeled)
                pairs += 1
                defined += slow is not None
    assert pairs >= 1000
    assert defined > 100


def test_certain_observations_keep_sets_and_possible_ones_narrow_them(robot, sig):
    rng = random.Random(11)
    start = initial_belief(robot)
    moved = update(robot, start, possibly(Action.of(sig, ["goto(b)"])))
    for current in (start, moved):
        for _ in range(100):
            observation = parse_step(random_observation_text(rng, sig), sig)
            certain = update(robot, current, certainly(observation))
            maybe = update(robot, current, possibly(observation))
            if certain is not None:
                assert all(states in current.sets for states in certain.sets)
                assert maybe is not None
                assert maybe.probability >= certain.probability
            if maybe is not None:
                assert all(
                    any(set(states) <= set(before) for before in current.sets)
                    for states in maybe.sets
                )


def test_eight_of_nine_initial_contexts_admit_the_plan(robot, steps):
    continuation = [possibly(s) for s in steps(PLAN + "; " + O1_AT_C)]
    admitting, excluded = [], []
    for context in robot.initial_contexts():
        current = BeliefState(Fraction(1), ((robot.initial_state_set(context), Fraction(1)),))
        for labeled in continuation:
            current = update(robot, current, labeled)
            if current is None:
                break
        (admitting if current is not None else excluded).append(dict(context.assignment))
    assert len(admitting) == 8
    assert excluded == [{"c_at(o1)": "c", "c_at(o2)": "c"}]
