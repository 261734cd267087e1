"""Tests for the canonical printer."""

from fractions import Fraction

import pytest

from core.formula import FALSE, TRUE, Atom, Conjunction, conjoin, differs, disjoin
from core.models import ContextLaw, DynamicLaw, StaticLaw
from lang.printer import format_formula, format_law, format_probability


@pytest.mark.parametrize("value, text", [
    (Fraction(19, 20), "0.95"),
    (Fraction(9, 10), "0.9"),
    (Fraction(1), "1"),
    (Fraction(0), "0"),
    (Fraction(1, 3), "1/3"),
    (Fraction(1, 8), "0.125"),
])
def test_format_probability(value, text):
    assert format_probability(value) == text


def test_formula_shapes(sig):
    at_a, at_b = Atom("at(r)", "a"), Atom("at(r)", "b")
    assert format_formula(TRUE) == "true"
    assert format_formula(FALSE) == "false"
    assert format_formula(differs("holds", "nil")) == "holds != nil"
    assert format_formula(disjoin([at_a, at_b])) == "at(r) = a | at(r) = b"
    assert format_formula(conjoin([at_a, disjoin([at_a, at_b])])) == "at(r) = a & (at(r) = a | at(r) = b)"
    assert format_formula(Conjunction(Conjunction(at_a, at_b), at_a)) == "(at(r) = a & at(r) = b) & at(r) = a"
    assert format_formula(Atom("pickup", "true")) == "pickup = true"
    assert format_formula(Atom("pickup", "true"), sig) == "pickup"


def test_laws(sig):
    pickup = Atom("pickup", "true")
    assert format_law(StaticLaw(Atom("holds", "nil")), sig) == "caused holds = nil."
    assert format_law(DynamicLaw(FALSE, TRUE, pickup), sig) == "nonexecutable pickup."
    assert format_law(
        DynamicLaw(FALSE, Atom("holds", "nil"), pickup), sig
    ) == "caused false if holds = nil after pickup."
    law = ContextLaw("c_goto(b)", (("ok", Fraction(19, 20)), ("fail", Fraction(1, 20))), Atom("goto(b)", "true"))
    assert format_law(law, sig) == "context-law c_goto(b) = (ok: 0.95, fail: 0.05) after goto(b)."
