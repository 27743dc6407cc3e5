import json

import pytest

from shannon.main import build_parser, main

SMALL_SUITE = """
[suite]
graphs = ["k1", "e2", "c5"]
additivity_pairs = 2
supermult_pairs = 2
expansion_pairs = 1
expansion_powers = [2]
theta_pairs = 1
theta_max_vertices = 4
converse_powers = [1]
"""


@pytest.fixture
def run(tmp_path, monkeypatch, capsys):
    monkeypatch.setenv("HOME", str(tmp_path))

    def invoke(*argv):
        code = main(
            [*argv, "--cache-dir", str(tmp_path / "cache"), "--report-dir", str(tmp_path / "reports")]
        )
        out, err = capsys.readouterr()
        records = [json.loads(line) for line in out.splitlines() if line.startswith("{")]
        errors = [json.loads(line) for line in err.splitlines() if line.startswith("{")]
        return code, records, errors, out

    return invoke


def test_gen(run, tmp_path):
    target = tmp_path / "c5.g6"
    code, records, _, _ = run("gen", "c5", "--out", str(target))
    assert code == 0
    assert records[-1]["graph6"] == "Dhc"
    assert records[-1]["edges"] == 5
    assert target.read_text() == "Dhc\n"


def test_graph_arguments_accept_graph6(run, tmp_path):
    code, records, _, _ = run("alpha", "g6:Dhc")
    assert code == 0
    assert records[-1]["alpha"] == 2
    path = tmp_path / "input.g6"
    path.write_text("\nDhc\n")
    assert run("alpha", str(path))[1][-1]["alpha"] == 2


def test_unknown_generator_is_a_usage_error(run):
    code, records, errors, _ = run("gen", "bogus")
    assert code == 2
    assert records == []
    assert errors[-1]["error"] == "ParameterError"


def test_malformed_graph6_reports_offset(run):
    code, _, errors, _ = run("gen", "g6:D?")
    assert code == 2
    assert errors[-1]["offset"] == 2


def test_alpha_of_empty_graph(run):
    code, records, _, _ = run("alpha", "e7")
    assert code == 0
    assert records[-1]["alpha"] == 7
    assert len(records[-1]["witness"]) == 7


def test_alpha_of_power(run):
    code, records, _, _ = run("alpha", "c5", "--power", "2")
    assert code == 0
    assert records[-1]["n"] == 25
    assert records[-1]["alpha"] == 5


def test_node_budget_exhaustion(run):
    code, _, errors, _ = run("alpha", "c5", "--power", "2", "--budget-nodes", "1", "--no-cache")
    assert code == 3
    assert errors[-1]["error"] == "BudgetError"
    assert errors[-1]["best_lower_bound"] >= 1


def test_capacity(run):
    code, records, _, _ = run("capacity", "c5")
    assert code == 0
    assert records[-1]["lower"] <= 5**0.5 <= records[-1]["upper"]


def test_eval(run):
    code, records, _, _ = run("eval", "x^2 + 2 x y", "e2", "e3", "--alpha")
    assert code == 0
    assert records[-1]["n"] == 16
    assert records[-1]["alpha"] == 16


def test_eval_over_budget(run):
    code, _, errors, _ = run("eval", "x^7", "petersen")
    assert code == 3
    assert errors[-1]["error"] == "SizeError"


def test_table_format(run):
    code, _, _, out = run("gen", "c5", "--format", "table")
    assert code == 0
    assert "Dhc" in out


def test_init_twice(run):
    assert run("init")[0] == 0
    assert run("init")[0] == 2
    assert run("init", "--force")[0] == 0


def test_unknown_command_exits_with_usage():
    with pytest.raises(SystemExit) as info:
        build_parser().parse_args(["frobnicate"])
    assert info.value.code == 2


@pytest.mark.slow
def test_verify_self_test_fails(run, tmp_path):
    config = tmp_path / "small.toml"
    config.write_text(SMALL_SUITE)
    code, records, _, _ = run("verify", "--config", str(config), "--self-test")
    assert code == 1
    report = records[-1]
    assert report["type"] == "report"
    assert report["hard_failures"] == ["self_test[injected]"]
    document = json.loads(open(report["path"]).read())
    assert document["summary"]["exit_code"] == 1


def _masked(path):
    document = json.loads(open(path).read())
    document.pop("timestamp")
    return document


@pytest.mark.slow
def test_same_seed_gives_identical_reports(run, tmp_path):
    config = tmp_path / "small.toml"
    config.write_text(SMALL_SUITE)
    paths = [tmp_path / "first.json", tmp_path / "second.json"]
    for path in paths:
        code, _, _, _ = run("verify", "--config", str(config), "--seed", "7", "--no-cache", "--report", str(path))
        assert code == 0
    first, second = (path.read_text().splitlines() for path in paths)
    assert [line for line in first if '"timestamp"' not in line] == [
        line for line in second if '"timestamp"' not in line
    ]


@pytest.mark.slow
def test_cache_does_not_change_printed_values(run, tmp_path):
    config = tmp_path / "small.toml"
    config.write_text(SMALL_SUITE)
    runs = {
        "cold": ["--report", str(tmp_path / "cold.json")],
        "warm": ["--report", str(tmp_path / "warm.json")],
        "off": ["--no-cache", "--report", str(tmp_path / "off.json")],
    }
    documents = {}
    for name, extra in runs.items():
        code, _, _, _ = run("verify", "--config", str(config), *extra)
        assert code == 0
        documents[name] = _masked(tmp_path / f"{name}.json")
    assert documents["warm"]["cache_stats"]["hits"] > 0
    for key in ("results", "intervals", "certificates", "summary"):
        assert documents["cold"][key] == documents["warm"][key] == documents["off"][key]

    cached = [run("alpha", "c5", "--power", "2")[1][-1] for _ in range(2)]
    fresh = run("alpha", "c5", "--power", "2", "--no-cache")[1][-1]
    for record in (*cached, fresh):
        assert (record["alpha"], record["witness"]) == (fresh["alpha"], fresh["witness"])


@pytest.mark.slow
def test_stock_config_passes(run, tmp_path):
    code, records, _, _ = run("verify", "--report", str(tmp_path / "stock.json"))
    assert code == 0
    assert records[-1]["hard_failures"] == []
