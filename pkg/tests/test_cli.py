"""Tests for the command-line interface."""

import io
import json

import pytest

from cli import EXIT_INVALID, EXIT_OK, EXIT_PARSE, EXIT_UNDEFINED, QuerySpec, main, run
from conftest import EITHER_AT_C, PHI, PLAN, ROBOT
from core.config import Config
from lang.parser import parse


def invoke(**fields):
    out, err = io.StringIO(), io.StringIO()
    code = run(QuerySpec(**fields), out=out, err=err, config=Config())
    return code, out.getvalue(), err.getvalue()


def test_validate_summary():
    code, out, err = invoke(kind="validate", domain_file=ROBOT)
    assert code == EXIT_OK
    assert out.strip() == "OK: 5 action vars, 3 context vars (dynamics), 2 context vars (initially)"
    assert err == ""


def test_validate_canonical_reparses():
    code, out, _ = invoke(kind="validate", domain_file=ROBOT, canonical=True)
    assert code == EXIT_OK
    assert parse(out).ok


def test_validate_reports_syntax_and_semantic_errors(tmp_path):
    broken = tmp_path / "broken.pcp"
    broken.write_text("fluent simple p : {t, f}.\ndynamics { caused p = t after }\n")
    code, _, err = invoke(kind="validate", domain_file=broken)
    assert code == EXIT_PARSE
    assert "[syntax/unexpected-input]" in err
    assert err.startswith("2:")

    illegal = tmp_path / "illegal.pcp"
    illegal.write_text("fluent sdet q : {t, f}.\naction go.\ndynamics { caused q = t after go. }\n")
    code, _, err = invoke(kind="validate", domain_file=illegal)
    assert code == EXIT_INVALID
    assert "error [dynamic-law/head-simple-fluent]" in err


def test_missing_file(tmp_path):
    code, _, err = invoke(kind="pred", domain_file=tmp_path / "none.pcp", steps="true")
    assert code == EXIT_PARSE
    assert "cannot read" in err


def test_prediction():
    code, out, _ = invoke(kind="pred", domain_file=ROBOT, prior=PHI, steps=f"{PLAN}; {EITHER_AT_C}")
    assert code == EXIT_OK
    assert out.strip() == "171/200 = 0.855"


def test_prediction_json():
    code, out, _ = invoke(kind="pred", domain_file=ROBOT, prior=PHI,
                          steps=f"{PLAN}; {EITHER_AT_C}", output_format="json")
    record = json.loads(out)
    assert code == EXIT_OK
    assert record["query"] == "pred"
    assert record["value"] == {"fraction": "171/200", "decimal": "0.855"}
    assert record["denominator"]["probability"]["fraction"] == "12/25"


def test_undefined_prior():
    code, out, err = invoke(kind="pred", domain_file=ROBOT, prior="false", steps="true")
    assert code == EXIT_UNDEFINED
    assert out == ""
    assert "undefined: prior history has probability 0" in err


def test_output_is_deterministic():
    first = invoke(kind="init-belief", domain_file=ROBOT, show_states=True)
    second = invoke(kind="init-belief", domain_file=ROBOT, show_states=True)
    assert first == second
    assert first[1].startswith("p = 1\n")


@pytest.mark.parametrize("fields", [
    dict(kind="pred", prior=PHI, steps=f"{PLAN}; {EITHER_AT_C}"),
    dict(kind="post", occurred=f"{PLAN}; at(o1)=c", hypothesis=f"at(o1)=b; {PLAN}; at(o1)=c"),
    dict(kind="plan-goodness", prior=PHI, plan=PLAN, goal=EITHER_AT_C),
    dict(kind="plan-search", prior=PHI, goal=EITHER_AT_C, horizon=3, threshold="0.8"),
    dict(kind="simulate", history=f"<> {PHI}; [] {{goto(b)}}; [] {{pickup}}", show_states=True),
], ids=lambda fields: fields["kind"])
def test_structured_output_is_identical_across_runs(fields):
    first = invoke(domain_file=ROBOT, output_format="json", **fields)
    second = invoke(domain_file=ROBOT, output_format="json", **fields)
    assert first == second
    assert first[0] == EXIT_OK
    json.loads(first[1])


def test_step_syntax_error():
    code, _, err = invoke(kind="pred", domain_file=ROBOT, steps="{fly}")
    assert code == EXIT_PARSE
    assert "step syntax error" in err


def test_postdiction_mismatch():
    code, _, err = invoke(kind="post", domain_file=ROBOT, occurred="{drop}", hypothesis="{pickup}")
    assert code == EXIT_INVALID
    assert "did not occur" in err


def test_postdiction():
    code, out, _ = invoke(kind="post", domain_file=ROBOT, occurred=f"{PLAN}; at(o1)=c",
                          hypothesis=f"at(o1)=b; {PLAN}; at(o1)=c")
    assert code == EXIT_OK
    assert out.strip() == "76/83 = 0.915663"


def test_simulate_reports_the_failing_step():
    code, out, err = invoke(kind="simulate", domain_file=ROBOT, history=f"<> {PHI}; [] {{pickup}}")
    assert code == EXIT_UNDEFINED
    assert "undefined at step 2: [] {pickup}" in err
    assert "[0] (initial)" in out and "[1] <> " in out


def test_consistency():
    code, out, _ = invoke(kind="consistency", domain_file=ROBOT)
    assert code == EXIT_OK
    assert out.strip() == "consistent: 120 states, 9 initial contexts, 6 candidate actions"


def test_plan_goodness_rejects_observations_in_plans():
    code, _, _ = invoke(kind="plan-goodness", domain_file=ROBOT, plan="{drop}; holds=nil", goal="true")
    assert code == EXIT_PARSE


def test_plan_search():
    code, out, _ = invoke(kind="plan-search", domain_file=ROBOT, prior=PHI, goal=EITHER_AT_C,
                          horizon=3, threshold="0.8")
    assert code == EXIT_OK
    assert "171/200 = 0.855  {goto(b)}; {pickup}; {goto(c)}" in out


def test_main_parses_arguments(capsys):
    code = main(["pred", str(ROBOT), "--prior", PHI, "--steps", f"{PLAN}; {EITHER_AT_C}"])
    assert code == EXIT_OK
    assert capsys.readouterr().out.strip() == "171/200 = 0.855"


def test_main_without_command(capsys):
    assert main([]) == EXIT_UNDEFINED
    assert "usage: pcplus" in capsys.readouterr().out


def test_main_rejects_unknown_format():
    with pytest.raises(SystemExit):
        main(["validate", str(ROBOT), "--format", "xml"])
