#!/usr/bin/env python3
"""
Command-line interface for the PC+ reasoner.

Usage:
    python cli.py validate domains/robot.pcp
    python cli.py consistency domains/robot.pcp
    python cli.py init-belief domains/robot.pcp --show-states
    python cli.py simulate domains/robot.pcp --history "<> at(r)=a; [] {goto(b)}"
    python cli.py pred domains/robot.pcp --prior "at(r)=a" --steps "{goto(b)}; at(r)=b"
    python cli.py post domains/robot.pcp --occurred "{goto(b)}" --hypothesis "at(o1)=b; {goto(b)}"
    python cli.py plan-goodness domains/robot.pcp --prior "..." --plan "{goto(b)}; {pickup}" --goal "..."
    python cli.py plan-search domains/robot.pcp --prior "..." --goal "..." --horizon 3 --threshold 0.8

Exit status:
    0 success, 1 undefined query, 2 validation or consistency problems,
    3 parse errors in the domain file or in query steps.

Configuration:
    See core/config.py; --config overrides the search path.
"""

import argparse
import json
import logging
import sys
from dataclasses import dataclass
from fractions import Fraction
from pathlib import Path
from typing import Any, Dict, List, Optional, TextIO, Tuple

from core.config import Config, load_config
from core.errors import (
    InconsistentDomainError,
    PCPlusError,
    StateSpaceLimitError,
    StepSyntaxError,
    SubsequenceMismatchError,
)
from core.models import Action, Diagnostic, Observation
from lang.parser import parse_file
from lang.printer import format_domain
from lang.steps import parse_history, parse_step, parse_steps
from reasoning.belief import initial_belief, trace
from reasoning.queries import QueryResult, plan_goodness, plan_search, post, pred
from reasoning.records import (
    belief_record,
    diagnostics_record,
    plans_record,
    query_record,
    render_belief,
    render_fraction,
    trace_record,
)
from reasoning.transitions import TransitionModel

# Logging setup
logging.basicConfig(
    level=logging.INFO,
    format='%(asctime)s - %(levelname)s - %(message)s',
)
logger = logging.getLogger(__name__)

EXIT_OK = 0
EXIT_UNDEFINED = 1
EXIT_INVALID = 2
EXIT_PARSE = 3


@dataclass
class QuerySpec:
    """
    One CLI invocation.

    Attributes:
        kind: Command name, a key of HANDLERS
        domain_file: Domain to load
        prior, steps: pred and plan-* step sequences
        occurred, hypothesis: post step sequences
        plan, goal: plan-goodness actions and goal observation
        history: simulate's labeled history
        horizon, threshold: plan-search bounds
        output_format: 'text' or 'json'; None defers to the configuration
        show_states: List the states of every supported set
        canonical: validate prints the canonical domain
        config_path: Explicit configuration file
    """
    kind: str
    domain_file: Path
    prior: str = ""
    steps: str = ""
    occurred: str = ""
    hypothesis: str = ""
    plan: str = ""
    goal: str = "true"
    history: str = ""
    horizon: int = 3
    threshold: str = "0.5"
    output_format: Optional[str] = None
    show_states: bool = False
    canonical: bool = False
    config_path: Optional[Path] = None


class Output:
    """Where and how results are written."""

    def __init__(self, out: TextIO, err: TextIO, config: Config, spec: QuerySpec):
        self.out = out
        self.err = err
        self.format = spec.output_format or config.output.format
        self.digits = config.output.decimal_digits
        self.show_states = spec.show_states or config.output.show_states

    @property
    def as_json(self) -> bool:
        return self.format == "json"

    def line(self, text: str = "") -> None:
        print(text, file=self.out)

    def record(self, data: Dict[str, Any]) -> None:
        print(json.dumps(data, indent=2, ensure_ascii=False), file=self.out)

    def problem(self, text: str) -> None:
        print(text, file=self.err)

    def diagnostics(self, diagnostics: List[Diagnostic]) -> None:
        for diagnostic in diagnostics:
            self.problem(str(diagnostic))


# ============================================================================
# DOMAIN LOADING
# ============================================================================

def _load(spec: QuerySpec, io: Output, config: Config) -> Tuple[int, Optional[TransitionModel]]:
    try:
        outcome = parse_file(spec.domain_file)
    except OSError as e:
        io.problem(f"cannot read {spec.domain_file}: {e}")
        return EXIT_PARSE, None

    io.diagnostics(outcome.diagnostics)
    if outcome.errors:
        syntax = any(d.phase == "syntax" for d in outcome.errors)
        return (EXIT_PARSE if syntax else EXIT_INVALID), None

    try:
        model = TransitionModel(outcome.initial, outcome.dynamics, config)
    except StateSpaceLimitError as e:
        io.problem(str(e))
        return EXIT_INVALID, None
    logger.info(f"Loaded {spec.domain_file}")
    return EXIT_OK, model


def _emit_query(kind: str, result: QueryResult, io: Output) -> int:
    if io.as_json:
        io.record(query_record(kind, result, io.digits))
    elif result.defined:
        io.line(render_fraction(result.value, io.digits))
    else:
        io.problem(f"undefined: {result.reason}")
    return EXIT_OK if result.defined else EXIT_UNDEFINED


# ============================================================================
# COMMANDS
# ============================================================================

def cmd_validate(spec: QuerySpec, io: Output, config: Config) -> int:
    """Handle the 'validate' subcommand."""
    try:
        outcome = parse_file(spec.domain_file)
    except OSError as e:
        io.problem(f"cannot read {spec.domain_file}: {e}")
        return EXIT_PARSE

    io.diagnostics(outcome.diagnostics)
    if outcome.errors:
        if io.as_json:
            io.record({"ok": False, "diagnostics": diagnostics_record(outcome.diagnostics)})
        syntax = any(d.phase == "syntax" for d in outcome.errors)
        return EXIT_PARSE if syntax else EXIT_INVALID

    initial, dynamics = outcome.initial, outcome.dynamics
    counts = {
        "action_variables": len(dynamics.signature.actions),
        "dynamics_context_variables": len(dynamics.context_variables),
        "initial_context_variables": len(initial.distribution_variables),
    }
    if io.as_json:
        record: Dict[str, Any] = {"ok": True, **counts,
                                  "diagnostics": diagnostics_record(outcome.diagnostics)}
        if spec.canonical:
            record["canonical"] = format_domain(initial, dynamics)
        io.record(record)
    elif spec.canonical:
        io.out.write(format_domain(initial, dynamics))
    else:
        io.line(
            f"OK: {counts['action_variables']} action vars, "
            f"{counts['dynamics_context_variables']} context vars (dynamics), "
            f"{counts['initial_context_variables']} context vars (initially)"
        )
    return EXIT_OK


def cmd_consistency(spec: QuerySpec, io: Output, config: Config) -> int:
    """Handle the 'consistency' subcommand."""
    code, model = _load(spec, io, config)
    if model is None:
        return code

    problems = model.check_consistency()
    io.diagnostics(problems)
    summary = {
        "consistent": not problems,
        "states": len(model.state_space),
        "initial_contexts": len(model.initial_contexts()),
        "candidate_actions": [a.label for a in model.candidate_actions()],
    }
    if io.as_json:
        io.record({**summary, "diagnostics": diagnostics_record(problems)})
    else:
        verdict = "consistent" if not problems else f"inconsistent ({len(problems)} problem(s))"
        io.line(f"{verdict}: {summary['states']} states, {summary['initial_contexts']} initial "
                f"contexts, {len(summary['candidate_actions'])} candidate actions")
    return EXIT_OK if not problems else EXIT_INVALID


def cmd_init_belief(spec: QuerySpec, io: Output, config: Config) -> int:
    """Handle the 'init-belief' subcommand."""
    code, model = _load(spec, io, config)
    if model is None:
        return code

    start = initial_belief(model)
    if io.as_json:
        io.record({"query": "init-belief",
                   **belief_record(start, model.signature, io.digits, io.show_states)})
    else:
        for text in render_belief(start, model.signature, io.digits, io.show_states):
            io.line(text)
    return EXIT_OK


def cmd_simulate(spec: QuerySpec, io: Output, config: Config) -> int:
    """Handle the 'simulate' subcommand."""
    code, model = _load(spec, io, config)
    if model is None:
        return code

    history = parse_history(spec.history, model.signature)
    result = trace(model, history)

    if io.as_json:
        io.record({"query": "simulate",
                   **trace_record(result, model.signature, io.digits, io.show_states)})
    else:
        labels = ["(initial)"] + [str(step) for step in history]
        for index, current in enumerate(result.beliefs):
            io.line("=" * 50)
            io.line(f"[{index}] {labels[index]}")
            io.line("=" * 50)
            for text in render_belief(current, model.signature, io.digits, io.show_states):
                io.line(text)

    if not result.defined:
        failing = history.steps[result.undefined_at]
        io.problem(f"undefined at step {result.undefined_at + 1}: {failing}")
        return EXIT_UNDEFINED
    return EXIT_OK


def cmd_pred(spec: QuerySpec, io: Output, config: Config) -> int:
    """Handle the 'pred' subcommand."""
    code, model = _load(spec, io, config)
    if model is None:
        return code

    prior = parse_steps(spec.prior, model.signature)
    query = parse_steps(spec.steps, model.signature)
    return _emit_query("pred", pred(model, prior, query), io)


def cmd_post(spec: QuerySpec, io: Output, config: Config) -> int:
    """Handle the 'post' subcommand."""
    code, model = _load(spec, io, config)
    if model is None:
        return code

    occurred = parse_steps(spec.occurred, model.signature)
    hypothesis = parse_steps(spec.hypothesis, model.signature)
    return _emit_query("post", post(model, occurred, hypothesis), io)


def _goal(spec: QuerySpec, model: TransitionModel) -> Observation:
    goal = parse_step(spec.goal, model.signature)
    if not isinstance(goal, Observation):
        raise StepSyntaxError("the goal must be an observation")
    return goal


def cmd_plan_goodness(spec: QuerySpec, io: Output, config: Config) -> int:
    """Handle the 'plan-goodness' subcommand."""
    code, model = _load(spec, io, config)
    if model is None:
        return code

    prior = parse_steps(spec.prior, model.signature)
    plan = parse_steps(spec.plan, model.signature)
    if not all(isinstance(step, Action) for step in plan):
        raise StepSyntaxError("plans consist of actions only")
    result = plan_goodness(model, prior, plan, _goal(spec, model))
    return _emit_query("plan-goodness", result, io)


def cmd_plan_search(spec: QuerySpec, io: Output, config: Config) -> int:
    """Handle the 'plan-search' subcommand."""
    code, model = _load(spec, io, config)
    if model is None:
        return code

    prior = parse_steps(spec.prior, model.signature)
    try:
        threshold = Fraction(spec.threshold)
    except (ValueError, ZeroDivisionError):
        raise StepSyntaxError(f"bad threshold: {spec.threshold}") from None
    result = plan_search(model, prior, _goal(spec, model), spec.horizon, threshold)

    if io.as_json:
        io.record(plans_record(result, io.digits))
    else:
        io.line(f"{len(result)} plan(s) with goodness >= {spec.threshold} "
                f"(explored {result.explored} prefixes)")
        for plan, goodness in result:
            steps = "; ".join(a.label for a in plan) or "(empty plan)"
            io.line(f"  {render_fraction(goodness, io.digits)}  {steps}")
    return EXIT_OK


HANDLERS = {
    "validate": cmd_validate,
    "consistency": cmd_consistency,
    "init-belief": cmd_init_belief,
    "simulate": cmd_simulate,
    "pred": cmd_pred,
    "post": cmd_post,
    "plan-goodness": cmd_plan_goodness,
    "plan-search": cmd_plan_search,
}


def run(spec: QuerySpec, out: Optional[TextIO] = None, err: Optional[TextIO] = None,
        config: Optional[Config] = None) -> int:
    """
    Execute one query and render its result.

    Returns:
        Exit status, see the module docstring
    """
    out = out or sys.stdout
    err = err or sys.stderr
    if config is None:
        try:
            config = load_config(spec.config_path)
        except ValueError as e:
            print(f"configuration error: {e}", file=err)
            return EXIT_INVALID
    io = Output(out, err, config, spec)

    try:
        return HANDLERS[spec.kind](spec, io, config)
    except StepSyntaxError as e:
        io.problem(f"step syntax error: {e}")
        return EXIT_PARSE
    except (SubsequenceMismatchError, InconsistentDomainError, ValueError) as e:
        io.problem(f"error: {e}")
        return EXIT_INVALID
    except PCPlusError as e:
        io.problem(f"error: {e}")
        return EXIT_INVALID


# ============================================================================
# ARGUMENT PARSING
# ============================================================================

def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="pcplus",
        description="Reasoner for the probabilistic action language PC+",
        formatter_class=argparse.RawDescriptionHelpFormatter,
        epilog="""
Examples:
  %(prog)s validate domains/robot.pcp
  %(prog)s pred domains/robot.pcp --prior "at(r)=a & at(o1)=b & at(o2)=b & holds=nil" \\
      --steps "{goto(b)}; {pickup}; {goto(c)}; at(o1)=c | at(o2)=c"
  %(prog)s simulate domains/robot.pcp --history "<> at(r)=a; [] {goto(b)}" --show-states
        """,
    )

    # Global options
    parser.add_argument(
        "-v", "--verbose",
        action="store_true",
        help="Enable verbose logging",
    )

    # Options shared across subcommands
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("domain_file", type=Path, help="Domain file (.pcp)")
    common.add_argument(
        "--format", "-f",
        choices=["text", "json"],
        default=None,
        help="Output format (default: from configuration, text)",
    )
    common.add_argument(
        "--config",
        type=Path,
        default=None,
        help="Configuration file (default: search PCPLUS_CONFIG and the standard paths)",
    )

    subparsers = parser.add_subparsers(dest="command", help="Available commands")

    validate_parser = subparsers.add_parser("validate", parents=[common], help="Parse and validate a domain")
    validate_parser.add_argument(
        "--canonical",
        action="store_true",
        help="Print the domain in canonical form",
    )

    subparsers.add_parser("consistency", parents=[common], help="Check that every transition has a successor")

    for name, help_text in (("init-belief", "Print the initial belief state"),
                            ("simulate", "Print the belief after every step of a labeled history")):
        sub = subparsers.add_parser(name, parents=[common], help=help_text)
        sub.add_argument(
            "--show-states",
            action="store_true",
            help="List the states of every supported set",
        )
        if name == "simulate":
            sub.add_argument("--history", required=True, help='Labeled steps, e.g. "<> p=a; [] {act}"')

    pred_parser = subparsers.add_parser("pred", parents=[common], help="Prediction query")
    pred_parser.add_argument("--prior", default="", help="Observed steps, labeled <>")
    pred_parser.add_argument("--steps", required=True, help="Query steps, labeled []")

    post_parser = subparsers.add_parser("post", parents=[common], help="Postdiction query")
    post_parser.add_argument("--occurred", required=True, help="Steps that occurred")
    post_parser.add_argument("--hypothesis", required=True, help="Occurred steps plus hypothesised observations")

    goodness_parser = subparsers.add_parser("plan-goodness", parents=[common], help="Goodness of a plan")
    goodness_parser.add_argument("--prior", default="", help="Observed steps")
    goodness_parser.add_argument("--plan", required=True, help='Actions, e.g. "{goto(b)}; {pickup}"')
    goodness_parser.add_argument("--goal", required=True, help="Goal observation")

    search_parser = subparsers.add_parser("plan-search", parents=[common], help="Find plans above a threshold")
    search_parser.add_argument("--prior", default="", help="Observed steps")
    search_parser.add_argument("--goal", required=True, help="Goal observation")
    search_parser.add_argument("--horizon", type=int, default=3, help="Maximum plan length (default: 3)")
    search_parser.add_argument("--threshold", default="0.5", help="Minimum goodness (default: 0.5)")

    return parser


def spec_from_args(args: argparse.Namespace) -> QuerySpec:
    return QuerySpec(
        kind=args.command,
        domain_file=args.domain_file,
        prior=getattr(args, "prior", ""),
        steps=getattr(args, "steps", ""),
        occurred=getattr(args, "occurred", ""),
        hypothesis=getattr(args, "hypothesis", ""),
        plan=getattr(args, "plan", ""),
        goal=getattr(args, "goal", "true"),
        history=getattr(args, "history", ""),
        horizon=getattr(args, "horizon", 3),
        threshold=getattr(args, "threshold", "0.5"),
        output_format=args.format,
        show_states=getattr(args, "show_states", False),
        canonical=getattr(args, "canonical", False),
        config_path=args.config,
    )


def main(argv: Optional[List[str]] = None) -> int:
    """Main entry point."""
    parser = build_parser()
    args = parser.parse_args(argv)

    if not args.command:
        parser.print_help()
        return EXIT_UNDEFINED

    spec = spec_from_args(args)
    try:
        config = load_config(spec.config_path)
    except ValueError as e:
        print(f"configuration error: {e}", file=sys.stderr)
        return EXIT_INVALID

    if args.verbose:
        logging.getLogger().setLevel(logging.DEBUG)
    else:
        logging.getLogger().setLevel(getattr(logging, str(config.log_level).upper(), logging.INFO))

    return run(spec, config=config)


if __name__ == "__main__":
    sys.exit(main())
