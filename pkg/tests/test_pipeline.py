"""Tests for command dispatch, scenario files and report rendering."""
import json

import pytest

from polyvariety.__main__ import main
from polyvariety.analysis.classify import ClassifyBudget
from polyvariety.pipeline import EngineConfig, UsageError, VarietyEngine, parse_matrix
from polyvariety.reporting import JSONReportWriter, TableReportWriter


@pytest.fixture
def engine():
    return VarietyEngine(EngineConfig(seed=7))


def test_variety_dim_command(engine):
    report = engine.run_command(["variety-dim", "x1^2", "--subgroup", "[[1]]"])
    assert report.exit_code == 0
    assert report.result["dimension"] == 3
    assert report.input["canonical"] == "x1^2"
    assert report.witnesses == [[[1]]]


def test_frechet_command(engine):
    report = engine.run_command(["frechet", "x1^2", "--n", "1", "--both-forms"])
    assert report.result == {"n": 1, "general": False, "equal": False, "agree": True}


def test_degree_and_hom_dim(engine):
    assert engine.run_command(["degree", "x1^3 + x2"]).result["degree"] == 3
    assert engine.run_command(["hom-dim", "Z^3"]).result["dimension"] == 3
    omega = engine.run_command(["hom-dim", "sum_i x_i^3"]).result
    assert omega["infinite"] and omega["dimension"] is None


def test_classify_command_reports_seed(engine):
    report = engine.run_command(["classify", "(x1+x2)^2", "--budget", "default", "--seed", "7"])
    assert report.exit_code == 0
    assert report.result["verdict"] == "Polynomial"
    assert report.seed == 7
    assert report.schedule_id == "nested-c4-b3-s7"
    assert report.witnesses


def test_parse_error_exit_code(engine):
    report = engine.run_command(["degree", "x1^(-2)"])
    assert report.exit_code == 2
    assert report.error["kind"] == "parse"
    assert "nonnegative integer" in report.error["message"]


@pytest.mark.parametrize(
    "argv",
    [
        ["explode", "x1"],
        ["variety-dim", "x1^2", "--subgroup", "[[1], [1, 2]]"],
        ["variety-dim", "x1^2", "--subgroup", "[[1.5]]"],
        ["dfr", "sum_i x_i^3", "--r", "1", "--budget", "0"],
        ["slice", "x1^3", "--ys", "[[1]]"],
    ],
)
def test_usage_errors_exit_with_two(engine, argv):
    report = engine.run_command(argv)
    assert report.exit_code == 2
    assert report.error["kind"] == "usage"


def test_inconclusive_classify_exits_with_three(engine, monkeypatch):
    import polyvariety.pipeline as pipeline

    monkeypatch.setattr(
        pipeline, "ClassifyBudget", lambda **kwargs: ClassifyBudget(min_level=3, max_level=4, **kwargs)
    )
    report = engine.run_command(["classify", "sum_i x_i^3"])
    assert report.result["verdict"] == "Inconclusive"
    assert report.exit_code == 3


def test_taylor_and_slice_commands(engine):
    taylor = engine.run_command(["taylor", "--p", "x1*x2", "--additive", "x1; x2"])
    assert taylor.result["generators"] == ["x1*x2", "x2", "x1", "1"]
    assert taylor.result["bound"] == 9
    piece = engine.run_command(["slice", "x1*x2", "--ys", "[[1, 0]]"])
    assert piece.result["additive"] == "1/2*x2"


def test_difference_command(engine):
    report = engine.run_command(["difference", "sum_i x_i^3", "--y", "[1,1]", "--levels", "2,3,4"])
    assert report.result["difference"] == "3*x1^2 + 3*x2^2 + 3*x1 + 3*x2 + 2"
    assert [row["dimension"] for row in report.result["profile"]] == [4, 4, 4]


def test_scenario_skips_comments(engine, tmp_path):
    scenario = tmp_path / "s.txt"
    scenario.write_text("# comment\n\ndegree x1^2\npolyvariety hom-dim Z_omega  # trailing\n", encoding="utf-8")
    reports = engine.run_scenario(scenario)
    assert [r.command for r in reports] == ["degree", "hom-dim"]


def test_parse_matrix_rejects_non_lists():
    with pytest.raises(UsageError):
        parse_matrix('{"a": 1}')
    assert parse_matrix("[[1, 0], [0, 1]]") == [[1, 0], [0, 1]]


def test_json_output_is_deterministic(engine):
    argv = ["dfr", "sum_i x_i^3", "--r", "2", "--levels", "4", "--seed", "3"]
    first = JSONReportWriter().render(engine.run_command(argv))
    second = JSONReportWriter().render(VarietyEngine(EngineConfig(seed=7)).run_command(argv))
    assert first == second
    payload = json.loads(first)
    assert payload["result"]["value"] == 6
    assert payload["seed"] == 3
    assert payload["tool"] == "polyvariety"


def test_table_writer_flattens(engine):
    text = TableReportWriter().render(engine.run_command(["degree", "x1^2"]))
    assert "result.degree" in text


def test_main_writes_output_file(tmp_path, capsys):
    target = tmp_path / "out.json"
    code = main(["--output", str(target), "variety-dim", "x1^2", "--subgroup", "[[1]]"])
    assert code == 0
    assert json.loads(target.read_text(encoding="utf-8"))["result"]["dimension"] == 3
    assert capsys.readouterr().out == ""


def test_main_usage_error(capsys):
    assert main(["no-such-command"]) == 2
    assert json.loads(capsys.readouterr().out)["exit_code"] == 2


def test_seed_from_environment(monkeypatch):
    monkeypatch.setenv("POLYVARIETY_SEED", "11")
    assert EngineConfig().seed == 11
    monkeypatch.setenv("POLYVARIETY_SEED", "x")
    with pytest.raises(ValueError):
        EngineConfig()


def test_schema_variety_dim_on_a_smaller_subgroup(engine):
    report = engine.run_command(["variety-dim", "sum_i x_i^3", "--subgroup", "[[1, 1]]"])
    assert report.exit_code == 0
    # restriction to <(1, 1)> is 2t^3
    assert report.result["dimension"] == 4
    assert report.input["level"] == 2


def test_hom_dim_rejects_unsupported_groups(engine):
    report = engine.run_command(["hom-dim", "Q^2"])
    assert report.exit_code == 2
    assert report.error["kind"] == "usage"
    assert "Unsupported group descriptor" in report.error["message"]


def test_deep_schema_level_reports_instead_of_crashing(engine):
    report = engine.run_command(["degree", "sum_i x_i", "--level", "1500"])
    assert report.exit_code == 0
    assert report.result["degree"] == 1
