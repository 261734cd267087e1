"""Shared fixtures: the bundled robot domains and step helpers."""

from pathlib import Path

import pytest

from lang.parser import load_domain
from lang.steps import parse_history, parse_step, parse_steps
from reasoning.transitions import TransitionModel

DOMAINS = Path(__file__).resolve().parent.parent / "domains"
ROBOT = DOMAINS / "robot.pcp"
UNIFORM_PICKUP = DOMAINS / "robot_uniform_pickup.pcp"

# Robot at a, both objects at b, hands empty.
PHI = "at(r)=a & at(o1)=b & at(o2)=b & holds=nil"
# Same, except o2 may also be at a.
PHI_WEAK = "at(r)=a & at(o1)=b & (at(o2)=a | at(o2)=b) & holds=nil"
PLAN = "{goto(b)}; {pickup}; {goto(c)}"
EITHER_AT_C = "at(o1)=c | at(o2)=c"
O1_AT_C = "at(o1)=c"


@pytest.fixture(scope="session")
def robot_domain():
    return load_domain(ROBOT)


@pytest.fixture(scope="session")
def robot(robot_domain):
    initial, dynamics = robot_domain
    return TransitionModel(initial, dynamics)


@pytest.fixture(scope="session")
def uniform_robot():
    initial, dynamics = load_domain(UNIFORM_PICKUP)
    return TransitionModel(initial, dynamics)


@pytest.fixture(scope="session")
def sig(robot):
    return robot.signature


@pytest.fixture
def steps(sig):
    """Parse a `;`-separated step sequence over the robot signature."""
    return lambda text: parse_steps(text, sig)


@pytest.fixture
def step(sig):
    return lambda text: parse_step(text, sig)


@pytest.fixture
def history(sig):
    return lambda text: parse_history(text, sig)


@pytest.fixture
def state(sig):
    """Build a robot state: robot and object locations, then what it holds."""
    def build(at_r, at_o1, at_o2, holds="nil"):
        return sig.interpretation({
            "at(r)": at_r, "at(o1)": at_o1, "at(o2)": at_o2, "holds": holds,
        })
    return build


# ============================================================================
# Random small domains
# ============================================================================

def _distribution(rng, values):
    weights = [rng.randint(1, 4) for _ in values]
    total = sum(weights)
    return ", ".join(f"{v}: {w}/{total}" for v, w in zip(values, weights))


def random_domain_text(rng):
    """
    A consistent domain over at most three simple fluents with domains of
    size at most three, one action `a`, an initial context `c` and an action
    context `d`.

    Every initial context allows some state: a fluent gets at most one
    forced value per value of c, and the single fluent-to-fluent constraint
    only relates fluents that are never forced. Every executable `a` has
    exactly one successor per value of d.
    """
    fluents = {f"f{i}": [f"v{j}" for j in range(rng.randint(2, 3))] for i in range(rng.randint(1, 3))}
    names = list(fluents)
    initial_values = [f"w{j}" for j in range(rng.randint(2, 3))]
    action_values = [f"u{j}" for j in range(rng.randint(2, 3))]
    target = rng.choice(names)
    forced = [n for n in names if n != target and rng.random() < 0.5]
    free = [n for n in names if n not in forced]

    lines = [f"fluent simple {n} : {{{', '.join(vs)}}}." for n, vs in fluents.items()]
    lines += [
        "action a.",
        f"context c : {{{', '.join(initial_values)}}}.",
        f"context d : {{{', '.join(action_values)}}}.",
        "initially {",
        f"    context-law c = ({_distribution(rng, initial_values)}).",
    ]
    for name in forced:
        for w in initial_values:
            if rng.random() < 0.7:
                lines.append(f"    caused {name} = {rng.choice(fluents[name])} if c = {w}.")
    if len(free) > 1 and rng.random() < 0.6:
        x, y = rng.sample(free, 2)
        lines.append(f"    caused {x} = {rng.choice(fluents[x])} if {y} = {rng.choice(fluents[y])}.")
    lines += [
        "}",
        "dynamics {",
        f"    context-law d = ({_distribution(rng, action_values)}) after a.",
    ]
    for u in action_values:
        lines.append(f"    caused {target} = {rng.choice(fluents[target])} if d = {u} after a.")
    for name in names:
        if name != target and rng.random() < 0.5:
            lines.append(
                f"    caused {name} = {rng.choice(fluents[name])} "
                f"after a & {target} = {rng.choice(fluents[target])}."
            )
    if rng.random() < 0.3:
        name = rng.choice(names)
        lines.append(f"    nonexecutable a & {name} = {rng.choice(fluents[name])}.")
    lines += [f"    inertial {', '.join(names)}.", "}"]
    return "\n".join(lines) + "\n"


def random_observation_text(rng, signature):
    """An observation over one or two fluents, possibly negated."""
    chosen = rng.sample(signature.fluents, min(len(signature.fluents), rng.randint(1, 2)))
    atoms = [f"{name}={rng.choice(signature[name].domain)}" for name in chosen]
    text = "(" + rng.choice([" & ", " | "]).join(atoms) + ")"
    return ("~" + text) if rng.random() < 0.2 else text
