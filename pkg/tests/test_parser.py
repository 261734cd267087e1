"""Tests for domain-file parsing, grounding and desugaring."""

import random
from fractions import Fraction

import pytest

from conftest import ROBOT, UNIFORM_PICKUP, random_domain_text
from core.errors import DomainLoadError
from core.formula import FALSE, TRUE, Atom, VariableClass
from core.models import DynamicLaw, StaticLaw
from lang.parser import load_domain, parse, parse_file
from lang.printer import format_domain

MINIMAL = """
fluent simple p : {t, f}.
action go.

dynamics {
    caused p = t after go.
    inertial p.
}
"""


def rules_of(outcome):
    return sorted(d.rule for d in outcome.diagnostics)


def test_robot_domain_parses_cleanly():
    outcome = parse_file(ROBOT)
    assert outcome.ok
    assert outcome.diagnostics == []

    initial, dynamics = outcome.initial, outcome.dynamics
    sig = dynamics.signature
    assert sig.actions == ("goto(a)", "goto(b)", "goto(c)", "pickup", "drop")
    assert sig.simple_fluents == ("at(r)", "at(o1)", "at(o2)", "holds")
    assert dynamics.context_variables == ("c_goto(a)", "c_goto(b)", "c_goto(c)")
    assert initial.distribution_variables == ("c_at(o1)", "c_at(o2)")


def test_robot_law_counts():
    initial, dynamics = load_domain(ROBOT)
    # carried objects follow the robot: 2 objects x 3 locations
    assert len(dynamics.static_laws) == 6
    assert len(dynamics.denials) == 3 + 3 + 20
    # 15 inertia instances over 4 + 4 + 4 + 3 values
    assert len(dynamics.dynamic_laws) == 60
    assert len(dynamics.context_laws) == 3
    assert len(initial.static_laws) == 6 + 1 + 1
    assert initial.dynamic_laws == ()


def test_context_law_probabilities_are_exact():
    initial, dynamics = load_domain(ROBOT)
    assert dynamics.context_law("c_goto(c)").probability("ok") == Fraction(9, 10)
    assert dynamics.context_law("c_goto(b)").trigger == Atom("goto(b)", "true")
    assert initial.context_law("c_at(o1)").probability("b") == Fraction(4, 5)
    assert initial.context_law("c_at(o2)").trigger == TRUE


def test_unicode_variant_matches_ascii_laws():
    _, ascii_dynamics = load_domain(ROBOT)
    initial, dynamics = load_domain(UNIFORM_PICKUP)
    assert dynamics.signature["c_pickup"].kind is VariableClass.CONTEXT
    assert initial.context_law("c_at(o1)").probability("a") == Fraction(1, 10)
    assert set(ascii_dynamics.static_laws) == set(dynamics.static_laws)
    assert set(ascii_dynamics.dynamic_laws) < set(dynamics.dynamic_laws)
    assert len(dynamics.dynamic_laws) == len(ascii_dynamics.dynamic_laws) + 6


def test_inertial_and_nonexecutable_desugar():
    outcome = parse(MINIMAL + "dynamics { nonexecutable go & p = t. }")
    assert outcome.ok
    laws = outcome.dynamics.dynamic_laws
    t, f = Atom("p", "t"), Atom("p", "f")
    assert DynamicLaw(t, t, t) in laws and DynamicLaw(f, f, f) in laws
    assert DynamicLaw(t, TRUE, Atom("go", "true")) in laws
    denial = DynamicLaw(FALSE, TRUE, Atom("go", "true") & t)
    assert outcome.dynamics.denials == (denial,)


def test_static_law_without_condition():
    outcome = parse(MINIMAL + "initially { caused p = f. }")
    assert outcome.initial.static_laws == (StaticLaw(Atom("p", "f"), TRUE),)


def test_schema_grounding_with_constraints():
    text = """
    fluent simple loc : {a, b, c}.
    action go(a), go(b), go(c).
    dynamics {
        forall L in {a, b, c}, K in {a, b, c} where K != L:
            caused loc = K if loc = K after go(L).
        forall L in {a, b} {
            caused loc = L after go(L).
            nonexecutable go(L) & loc = L.
        }
    }
    """
    outcome = parse(text)
    assert outcome.ok
    denials = outcome.dynamics.denials
    caused = [law for law in outcome.dynamics.dynamic_laws if not law.is_denial]
    assert len(caused) == 6 + 2
    assert len(denials) == 2
    assert DynamicLaw(Atom("loc", "a"), TRUE, Atom("go(a)", "true")) in caused


def test_fraction_probabilities_and_comments():
    text = """
    context coin : {h, t}.   # a fair coin
    fluent simple p : {t, f}.
    initially {
        context-law coin = (h: 1/3, t: 2/3).
        caused p = t if coin = h.
        caused p = f if coin = t.
    }
    """
    outcome = parse(text)
    assert outcome.ok
    assert outcome.initial.context_law("coin").probability("t") == Fraction(2, 3)


@pytest.mark.parametrize("probability, rule", [
    ("0.5/2", "syntax/unexpected-input"),
    ("1/0", "context-law/probability"),
])
def test_malformed_probability_is_a_diagnostic(probability, rule):
    text = (
        "context c : {x, y}.\n"
        "fluent simple p : {t, f}.\n"
        "initially {\n"
        f"    context-law c = (x: {probability}, y: 1/2).\n"
        "    caused p = t if c = x.\n"
        "    caused p = f if c = y.\n"
        "}\n"
    )
    outcome = parse(text)
    assert not outcome.ok
    [diagnostic] = [d for d in outcome.diagnostics if d.rule == rule]
    assert diagnostic.line == 4


def test_syntax_error_has_position():
    outcome = parse("fluent simple p : {t, f}.\ndynamics {\n    caused p = t after\n}\n")
    assert not outcome.ok
    [diagnostic] = outcome.diagnostics
    assert diagnostic.rule == "syntax/unexpected-input"
    assert diagnostic.phase == "syntax"
    assert diagnostic.line == 4


@pytest.mark.parametrize("declaration, rule", [
    ("action go : {a, b}.", "declaration/action-domain"),
    ("fluent simple q.", "declaration/missing-domain"),
    ("fluent simple q : {a, a}.", "declaration/duplicate-value"),
    ("context p : {t, f}.", "declaration/duplicate"),
])
def test_declaration_errors(declaration, rule):
    outcome = parse(MINIMAL + declaration)
    assert outcome.initial is None
    assert rule in rules_of(outcome)


@pytest.mark.parametrize("law, rule", [
    ("caused p = x after go.", "formula/unknown-value"),
    ("caused q = t after go.", "formula/undeclared-variable"),
    ("caused p after go.", "formula/bare-non-boolean"),
    ("inertial q.", "inertial/undeclared-variable"),
    ("context-law q = (a: 1).", "context-law/undeclared-variable"),
])
def test_lowering_errors(law, rule):
    outcome = parse(MINIMAL + "dynamics { " + law + " }")
    assert not outcome.ok
    assert rule in rules_of(outcome)


def test_law_outside_section():
    outcome = parse(MINIMAL + "caused p = t.")
    assert "law/outside-section" in rules_of(outcome)


def test_canonical_form_reparses_to_the_same_domain():
    initial, dynamics = load_domain(ROBOT)
    again = parse(format_domain(initial, dynamics))
    assert again.ok
    assert again.initial == initial
    assert again.dynamics == dynamics


def test_canonical_form_round_trips_random_domains():
    rng = random.Random(31)
    for _ in range(40):
        first = parse(random_domain_text(rng))
        assert first.ok, first.diagnostics
        again = parse(format_domain(first.initial, first.dynamics))
        assert again.ok, again.diagnostics
        assert again.initial == first.initial
        assert again.dynamics == first.dynamics


def test_load_domain_raises_with_diagnostics(tmp_path):
    path = tmp_path / "bad.pcp"
    path.write_text(MINIMAL + "dynamics { caused go after p = t. }", encoding="utf-8")
    with pytest.raises(DomainLoadError) as excinfo:
        load_domain(path)
    assert any(d.rule == "dynamic-law/head-simple-fluent" for d in excinfo.value.diagnostics)
