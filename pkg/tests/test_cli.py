import pytest
from click.testing import CliRunner

from conftest import MODELS_DIR
from hamel_spaces.cli.main import cli
from hamel_spaces.core.presentation import load_model, term_to_vector
from hamel_spaces.core.tower import is_value, less

M1 = str(MODELS_DIR / "m1.model")
PLAIN2 = str(MODELS_DIR / "plain2.model")


@pytest.fixture
def config_file(tmp_path):
    path = tmp_path / "config.yaml"
    path.write_text("lab:\n  seed: 3\n  timing: false\nlogging:\n  level: ERROR\n")
    return str(path)


@pytest.fixture
def run(config_file):
    runner = CliRunner()

    def invoke(*args):
        return runner.invoke(cli, ["--config", config_file, *args])

    return invoke


def test_eval_with_assignment(run):
    result = run("eval", M1, "-e", "v(x) = h1", "--assign", "x = h2 + 5*t")
    assert result.exit_code == 0
    assert result.output == "true\n"


def test_eval_with_several_bindings(run):
    result = run("eval", M1, "-e", "x <0 y", "--assign", "x = h1; y = h2")
    assert result.output == "true\n"
    result = run("eval", M1, "-e", "x <0 y", "--assign", "x = h2", "--assign", "y = h1")
    assert result.output == "false\n"


def test_eval_quantified_formula(run):
    result = run("eval", PLAIN2, "-e", "E x. (f2 <0 x & x <0 f1)")
    assert result.output == "true\n"


def test_qe_prints_the_projection(run):
    result = run("qe", "-k", "2", "-e", "E x. (a <0 x & x <0 b & c <1 x)")
    assert result.exit_code == 0
    assert result.output == "a <0 b\n"


def test_decide(run):
    assert run("decide", "-e", "A y. E x. (y <0 x & x <1 y)").output == "true\n"
    assert run("decide", "-e", "E x. A y. y <=0 x").output == "false\n"
    assert run("decide", "--with-infinity", "-e", "E x. A y. y <=0 x").output == "true\n"


def test_decide_rejects_free_variables(run):
    result = run("decide", "-e", "E x. x <0 y")
    assert result.exit_code == 2
    assert "error:" in result.output


def test_model_check(run):
    result = run("model", "check", M1)
    assert result.exit_code == 0
    lines = result.output.splitlines()
    assert lines[0] == "model hamel: 3 generators (1 ball, 2 value)"
    assert lines[1] == "<0: h1 < h2 < t"
    assert len(lines) == 3


def test_density_witness_is_saved(run, tmp_path):
    out = tmp_path / "m1-extended.model"
    result = run("witness", "density", M1, "--lo", "h1", "--hi", "h2", "-o", str(out))
    assert result.exit_code == 0
    assert result.output == "h3\n"
    extended = load_model(out)
    h3 = term_to_vector(extended, "h3")
    assert is_value(extended, h3)
    assert less(extended, term_to_vector(extended, "h1"), h3, 0)
    assert less(extended, h3, term_to_vector(extended, "h2"), 0)


def test_independence_witness_on_plain_model(run, tmp_path):
    out = tmp_path / "plain3.model"
    result = run(
        "witness", "independence", PLAIN2,
        "--iv0", "f2", "f1",
        "--iv1", "f1", "+inf",
        "-o", str(out),
    )
    assert result.exit_code == 0
    extended = load_model(out)
    z = term_to_vector(extended, result.output.strip())
    f1, f2 = term_to_vector(extended, "f1"), term_to_vector(extended, "f2")
    assert less(extended, f2, z, 0) and less(extended, z, f1, 0)
    assert less(extended, f1, z, 1)


def test_empty_interval_is_an_error(run):
    result = run("witness", "density", M1, "--lo", "h2", "--hi", "h1")
    assert result.exit_code == 2
    assert "error:" in result.output


def test_values(run):
    result = run("values", M1, "-e", "h1; h2 + 5*t; t")
    assert result.exit_code == 0
    lines = result.output.splitlines()
    assert lines[0] == "basis:"
    assert lines[-1] == "values: h1, h2"


def test_lab_run_machine_report(run):
    result = run("lab", "run", "axioms", "--trials", "2", "--machine")
    assert result.exit_code == 0
    assert result.output.splitlines()[0] == "suite=axioms trials=2 failures=0 elapsed_ms=0"


def test_lab_rejects_unknown_suite(run):
    result = run("lab", "run", "nope")
    assert result.exit_code != 0


def test_parse_error_exits_with_status_two(run):
    result = run("eval", M1, "-e", "x <0")
    assert result.exit_code == 2
    assert "error:" in result.output


def test_malformed_model_exits_with_status_two(run, tmp_path):
    bad = tmp_path / "bad.model"
    bad.write_text("model hamel\ngen h1 = sideways\n")
    result = run("model", "check", str(bad))
    assert result.exit_code == 2
    assert "bad.model" in result.output


def test_default_lab_reports_are_byte_stable(tmp_path):
    config = tmp_path / "quiet.yaml"
    config.write_text("logging:\n  level: ERROR\n")
    runner = CliRunner()
    args = ["--config", str(config), "lab", "run", "pairs", "--trials", "3", "--seed", "7"]
    first = runner.invoke(cli, [*args, "--machine"])
    second = runner.invoke(cli, [*args, "--machine"])
    assert first.exit_code == 0
    assert first.output == second.output
    assert "elapsed_ms=0" in first.output
    assert runner.invoke(cli, args).output == runner.invoke(cli, args).output
