import json

import pytest

from tdgame.cli import main
from tdgame.engine import replay_trace
from tdgame.graph import build_onh, parse_graph
from tdgame.hypergraph import select_special_vertices


@pytest.fixture
def p3_file(tmp_path):
    path = tmp_path / "p3.graph"
    path.write_text("3 2\n0 1\n1 2\n")
    return str(path)


@pytest.fixture
def p4_file(tmp_path):
    path = tmp_path / "p4.graph"
    path.write_text("# path on four vertices\n4 3\n0 1\n1 2\n2 3\n")
    return str(path)


def run(capsys, argv):
    code = main(argv)
    captured = capsys.readouterr()
    return code, captured.out, captured.err


def test_onh_rendering(capsys, p3_file):
    code, out, _ = run(capsys, ["onh", p3_file])
    assert code == 0
    assert out == "edge 0*: 1\nedge 1: 0 2\nedge 2: 1\nspecial: 0\n"


def test_solve_both_starts(capsys, p3_file):
    code, out, _ = run(capsys, ["solve", p3_file, "--first", "both"])
    assert code == 0
    assert "dominator-start: length=2" in out
    assert "staller-start: length=2" in out


def test_solve_json(capsys, p4_file):
    code, out, _ = run(capsys, ["solve", p4_file, "--first", "both", "--json"])
    assert code == 0
    payload = json.loads(out)
    assert payload["dominator"]["value"] == 3
    assert payload["staller"]["value"] == 3


def test_play_json_trace_round_trips(capsys, p3_file):
    code, out, _ = run(capsys, ["play", p3_file, "--json"])
    assert code == 0
    payload = json.loads(out)
    assert payload["length"] == 2
    assert [t["d"] for t in payload["turns"]] == [37, 29]
    assert [t["phase"] for t in payload["turns"]] == [3, 4]
    g = parse_graph("3 2\n0 1\n1 2")
    h = build_onh(g)
    marking = select_special_vertices(h)
    trace = replay_trace(h, marking, [t["vertex"] for t in payload["turns"]])
    assert trace.to_json_dict() == payload


def test_play_byte_identical_reruns(capsys, p4_file):
    _, first, _ = run(capsys, ["play", p4_file, "--json", "--staller", "random", "--seed", "9"])
    _, second, _ = run(capsys, ["play", p4_file, "--json", "--staller", "random", "--seed", "9"])
    assert first == second


def test_play_custom_scheme_is_stamped(capsys, p3_file):
    code, out, _ = run(capsys, ["play", p3_file, "--json", "--w-vertex", "26"])
    assert code == 0
    payload = json.loads(out)
    assert payload["default_scheme"] is False
    assert payload["scheme"]["vertex_nonspecial"] == 26


def test_verify_ok(capsys, p4_file):
    code, out, _ = run(capsys, ["verify", p4_file])
    assert code == 0
    assert "RESULT: ok" in out


def test_verify_json(capsys, p4_file):
    code, out, _ = run(capsys, ["verify", p4_file, "--json"])
    assert code == 0
    payload = json.loads(out)
    assert payload["ok"] is True


def test_sweep_exhaustive_exit_zero(capsys):
    code, out, _ = run(capsys, ["sweep", "--exhaustive", "--max-n", "4"])
    assert code == 0
    assert "RESULT: ok" in out


def test_sweep_random_json(capsys):
    code, out, _ = run(
        capsys,
        ["sweep", "--random", "--count", "3", "--n", "8", "--p", "0.3",
         "--seed", "1", "--json"],
    )
    assert code == 0
    payload = json.loads(out)
    assert payload["ok"] is True
    assert payload["config"]["count"] == 3


def test_missing_file_exits_2(capsys):
    code, _, err = run(capsys, ["onh", "/nonexistent/file.graph"])
    assert code == 2
    assert "error" in err


def test_malformed_graph_exits_2(capsys, tmp_path):
    path = tmp_path / "bad.graph"
    path.write_text("3 2\n0 1\n1 3\n")
    code, _, err = run(capsys, ["solve", str(path)])
    assert code == 2
    assert "out of range" in err


def test_two_vertex_component_exits_2(capsys, tmp_path):
    path = tmp_path / "k2.graph"
    path.write_text("2 1\n0 1\n")
    code, _, err = run(capsys, ["play", str(path)])
    assert code == 2
    assert "order 2" in err
