"""
命令行测试：子命令输出、退出码与错误信封
"""

import json

import pytest

from onion_framework.core.utils import ContractViolation
from onion_framework.main import EXIT_ERROR, EXIT_INCONCLUSIVE, EXIT_OK, RunConfig, build_parser, main


def run_cli(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr().out
    return code, out


def run_json(capsys, *argv):
    code, out = run_cli(capsys, *argv)
    return code, json.loads(out)


@pytest.fixture
def onion_file(tmp_path):
    path = tmp_path / "onion.txt"
    path.write_text("2 3\n0 1\n0 1\n1 0\n", encoding="utf-8")
    return str(path)


@pytest.fixture
def grid_files(tmp_path, capsys):
    def make(p, q):
        prefix = tmp_path / f"grid_{p}x{q}"
        paths = [f"{prefix}.txt", f"{prefix}.P", f"{prefix}.Q"]
        code = main(["generate", "--kind", "crossing-grid", "--p", str(p), "--q", str(q),
                     "--output", paths[0], "--p-output", paths[1], "--q-output", paths[2]])
        capsys.readouterr()
        assert code == EXIT_OK
        return paths
    return make


def test_generate_onion_star(capsys):
    code, document = run_json(capsys, "generate", "--kind", "onion-star", "--t", "2")
    assert code == EXIT_OK
    assert document["schema"] == 1 and document["kind"] == "generate"
    assert len(document["digraph"]["vertices"]) == 5
    assert len(document["digraph"]["arcs"]) == 12
    assert document["marks"]["y"] == [1, 2]


def test_generate_missing_parameter(capsys):
    code, document = run_json(capsys, "generate", "--kind", "counterexample")
    assert code == EXIT_ERROR
    assert document["kind"] == "error"
    assert document["error"] == "CONTRACT_VIOLATION"


def test_generate_is_deterministic(capsys):
    argv = ("generate", "--kind", "random", "--n", "6", "--m", "10", "--seed", "5")
    first = run_cli(capsys, *argv)
    second = run_cli(capsys, *argv)
    assert first == second


def test_mu(capsys, onion_file):
    code, document = run_json(capsys, "mu", "-i", onion_file, "--from", "0", "--to", "1", "--paths")
    assert code == EXIT_OK
    assert document["mu"] == 2 and document["reverse_mu"] == 1
    assert document["paths"] == [[0], [1]]
    assert document["cut"]["size"] == 2


def test_mu_unknown_vertex(capsys, onion_file):
    code, document = run_json(capsys, "mu", "-i", onion_file, "--from", "0", "--to", "9")
    assert code == EXIT_ERROR
    assert document["error"] == "UNKNOWN_VERTEX"


def test_parse_error_reports_line(capsys, tmp_path):
    broken = tmp_path / "broken.txt"
    broken.write_text("2 1\n0 5\n", encoding="utf-8")
    code, document = run_json(capsys, "mu", "-i", str(broken), "--from", "0", "--to", "1")
    assert code == EXIT_ERROR
    assert document["error"] == "PARSE_ERROR"
    assert document["line"] == 2


def test_missing_input_file(capsys, tmp_path):
    code, document = run_json(capsys, "mu", "-i", str(tmp_path / "absent.txt"), "--from", "0", "--to", "1")
    assert code == EXIT_ERROR
    assert document["error"] == "IO_ERROR"


def test_bounds(capsys):
    code, document = run_json(capsys, "bounds", "--name", "b", "--args", "3")
    assert code == EXIT_OK
    assert document["value"] == "17"
    code, document = run_json(capsys, "bounds", "--name", "f", "--args", "2", "--digit-cap", "1000")
    assert code == EXIT_OK
    assert document["overflow"] is True and "value" not in document
    code, document = run_json(capsys, "bounds", "--name", "g_tk", "--args", "1")
    assert code == EXIT_ERROR


def test_crossings(capsys, grid_files):
    graph, p_file, q_file = grid_files(3, 2)
    code, document = run_json(capsys, "crossings", "-i", graph, "--p", p_file, "--q", q_file, "--root", "0")
    assert code == EXIT_OK
    assert document["threshold"] == 1
    assert len(document["crossings"]) == 6
    assert {c["class"] for c in document["crossings"] if c["q"] == 0} == {"dangerous"}


def test_crossings_rejects_wrong_root(capsys, grid_files):
    graph, p_file, q_file = grid_files(3, 2)
    code, document = run_json(capsys, "crossings", "-i", graph, "--p", p_file, "--q", q_file, "--root", "1")
    assert code == EXIT_ERROR
    assert document["error"] == "NOT_WELL_CROSSING"


def test_harvest_single(capsys, grid_files, tmp_path):
    graph, p_file, q_file = grid_files(3, 2)
    dot_file = tmp_path / "onion.dot"
    code, document = run_json(capsys, "harvest", "-i", graph, "--p", p_file, "--q", q_file, "--root", "0",
                              "--dot", str(dot_file))
    assert code == EXIT_OK
    assert document["result"]["case"] == "case-1"
    assert document["result"]["onion"]["source"] == 0
    assert dot_file.read_text(encoding="utf-8").startswith("digraph")


def test_harvest_inconclusive(capsys, grid_files):
    graph, p_file, q_file = grid_files(1, 1)
    code, document = run_json(capsys, "harvest", "-i", graph, "--p", p_file, "--q", q_file, "--root", "0")
    assert code == EXIT_INCONCLUSIVE
    assert document["result"] == "inconclusive"
    assert document["stage"] == "harvest"


def test_nocut(capsys, tmp_path):
    lines = ["3 16"] + ["0 1"] * 4 + ["1 0"] * 4 + ["0 2"] * 4 + ["2 0"] * 4
    graph = tmp_path / "bundles.txt"
    graph.write_text("\n".join(lines) + "\n", encoding="utf-8")
    code, document = run_json(capsys, "nocut", "-i", str(graph), "--x", "0", "1", "2", "--t", "1")
    assert code == EXIT_OK
    assert document["star"]["y_leaves"] == [1] and document["star"]["z_leaves"] == [2]
    code, document = run_json(capsys, "nocut", "-i", str(graph), "--x", "0", "1", "2", "--budget", "1")
    assert code == EXIT_ERROR


def test_documented_flag_spellings(capsys, tmp_path):
    lines = ["2 6"] + ["0 1"] * 3 + ["1 0"] * 3
    graph = tmp_path / "bundle.txt"
    graph.write_text("\n".join(lines) + "\n", encoding="utf-8")
    code, document = run_json(capsys, "dichotomy", "-i", str(graph),
                              "--y", "0", "--Z", "1", "--t", "1", "--k", "2", "--nw", "2")
    assert code == EXIT_OK
    assert document["tag"] == "uncrossed"
    assert len(document["P"]) == 2 and len(document["Q"]) == 2

    code, document = run_json(capsys, "dichotomy", "-i", str(graph), "--y", "0", "--Z", "1", "--k", "4")
    assert code == EXIT_INCONCLUSIVE
    assert document["stage"] == "thomason"

    lines = ["3 16"] + ["0 1"] * 4 + ["1 0"] * 4 + ["0 2"] * 4 + ["2 0"] * 4
    star_graph = tmp_path / "bundles.txt"
    star_graph.write_text("\n".join(lines) + "\n", encoding="utf-8")
    code, document = run_json(capsys, "nocut", "-i", str(star_graph),
                              "--X", "0", "1", "2", "--t", "1", "--budget", "2", "--nw", "2")
    assert code == EXIT_OK
    assert document["star"]["y_leaves"] == [1]


def test_embed_pattern_flag(capsys, onion_file):
    code, document = run_json(capsys, "embed", "--pattern", onion_file, "--t", "2")
    assert code == EXIT_OK
    assert document["model"]["vertex_map"] == {"0": 3, "1": 1}


def test_embed(capsys, onion_file):
    code, document = run_json(capsys, "embed", "-i", onion_file, "--t", "2")
    assert code == EXIT_OK
    assert document["model"]["vertex_map"] == {"0": 3, "1": 1}


def test_oracle_opposite(capsys, tmp_path):
    graph = tmp_path / "counterexample.txt"
    assert main(["generate", "--kind", "counterexample", "--k", "1", "--output", str(graph)]) == EXIT_OK
    capsys.readouterr()
    code, document = run_json(capsys, "oracle", "-i", str(graph), "--mode", "opposite", "--from", "0", "--to", "1")
    assert code == EXIT_OK
    assert document["exists"] is False


def test_oracle_immersion(capsys, onion_file, tmp_path):
    host = tmp_path / "star.txt"
    assert main(["generate", "--kind", "onion-star", "--t", "1", "--output", str(host)]) == EXIT_OK
    capsys.readouterr()
    code, document = run_json(capsys, "oracle", "-i", str(host), "--pattern", onion_file)
    assert code == EXIT_OK
    assert document["exists"] is True
    assert document["model"]["vertex_map"] == {"0": 0, "1": 1}


def test_dot_to_stdout(capsys, onion_file):
    code, out = run_cli(capsys, "dot", "-i", onion_file)
    assert code == EXIT_OK
    assert out.startswith("digraph") and "label=2" in out


def test_run_config_validation():
    namespace = build_parser().parse_args(["bounds", "--name", "c", "--args", "5", "--digit-cap", "0"])
    config = RunConfig.from_namespace(namespace)
    assert config.digit_cap == 0
    assert config.params == {"name": "c", "args": [5]}
    with pytest.raises(ContractViolation):
        config.validate()
