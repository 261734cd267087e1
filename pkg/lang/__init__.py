"""
The PC+ surface language.

Parses domain files into initial databases and action descriptions,
validates them, prints them back in canonical form and parses query steps.
"""

from lang.parser import ParseOutcome, parse, parse_file, load_domain
from lang.validate import validate
from lang.printer import format_formula, format_law, format_domain, format_probability
from lang.steps import parse_step, parse_steps, parse_labeled_steps, parse_history

__all__ = [
    "ParseOutcome",
    "parse",
    "parse_file",
    "load_domain",
    "validate",
    "format_formula",
    "format_law",
    "format_domain",
    "format_probability",
    "parse_step",
    "parse_steps",
    "parse_labeled_steps",
    "parse_history",
]
