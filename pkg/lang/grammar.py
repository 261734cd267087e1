"""
Lark grammar for PC+ domain files and query steps.

One LALR parser serves three start symbols: `domain` for whole files,
`steps` for unlabeled step sequences and `history` for labeled histories.
"""

from functools import lru_cache

from lark import Lark

GRAMMAR = r"""
    domain: _item*

    _item: initially_section
         | dynamics_section
         | _statement

    initially_section: "initially" "{" _statement* "}"
    dynamics_section: "dynamics" "{" _statement* "}"

    _statement: declaration
              | law
              | schema

    // ---------------------------------------------------------------- declarations

    declaration: var_class ident_list [":" "{" value_list "}"] "."
    var_class: "rigid"             -> rigid_class
             | "fluent" "simple"   -> simple_class
             | "fluent" "sdet"     -> sdet_class
             | "action"            -> action_class
             | "context"           -> context_class

    ident_list: ident ("," ident)*
    value_list: value ("," value)*

    // ---------------------------------------------------------------- laws

    law: "caused" formula ["if" formula] ["after" formula] "."   -> caused_law
       | "nonexecutable" formula "."                             -> denial_law
       | "inertial" ident_list "."                               -> inertial_law
       | CONTEXT_LAW ident "=" "(" outcome ("," outcome)* ")" ["after" formula] "."  -> context_law

    CONTEXT_LAW.2: "context-law"
    outcome: value ":" PROBABILITY
    PROBABILITY: /\d+\/\d+|\d+(\.\d+)?/

    // ---------------------------------------------------------------- schemas

    schema: "forall" binding ("," binding)* [_WHERE constraint (_AND constraint)*] schema_body
    binding: NAME "in" "{" value_list "}"
    constraint: ident _NEQ ident  -> distinct
              | ident "=" ident   -> same
    schema_body: ":" _statement
               | "{" _statement* "}"
    _WHERE: "where"

    // ---------------------------------------------------------------- formulas

    ?formula: disjunction
    ?disjunction: conjunction (_OR conjunction)*
    ?conjunction: negation (_AND negation)*
    ?negation: _NOT negation   -> negated
             | atom
    ?atom: "true"              -> true_const
         | "⊤"                 -> true_const
         | "false"             -> false_const
         | "⊥"                 -> false_const
         | ident "=" value     -> equals
         | ident _NEQ value    -> not_equals
         | ident               -> bare
         | "(" formula ")"

    _OR: "|" | "∨"
    _AND: "&" | "∧"
    _NOT: "~" | "¬"
    _NEQ: "!=" | "≠"

    ident: NAME ["(" ident ("," ident)* ")"]
    value: ident
         | "true"    -> true_value
         | "false"   -> false_value

    // ---------------------------------------------------------------- query steps

    steps: [_step (";" _step)*]
    history: [labeled_step (";" labeled_step)*]
    labeled_step: DIAMOND _step
                | BOX _step
    DIAMOND: "<>" | "◇"
    BOX: "[]" | "□"
    _step: action_step
         | formula
    action_step: "{" [ident ("," ident)*] "}"

    NAME: /[A-Za-z_][A-Za-z0-9_]*/
    COMMENT: /#[^\n]*/

    %import common.WS
    %ignore WS
    %ignore COMMENT
"""

START_SYMBOLS = ("domain", "steps", "history")


@lru_cache(maxsize=1)
def get_parser() -> Lark:
    """Build (once) the LALR parser shared by files and query steps."""
    return Lark(
        GRAMMAR,
        start=list(START_SYMBOLS),
        parser="lalr",
        propagate_positions=True,
        maybe_placeholders=True,
    )
