import json

import pytest

from logkn import cli
from logkn.cli import main
from logkn.corpus import builtin_graphs
from logkn.degen import DualGraph, NodeBlowup, apply_blowup, dump_graph, marked_line, tate_ngon
from logkn.knfiber import InvarianceReport


@pytest.fixture
def graph_file(tmp_path):
    def write(g, name=None):
        path = tmp_path / f"{name or g.name}.json"
        path.write_text(dump_graph(g))
        return str(path)

    return write


def run(capsys, *argv):
    code = main(list(argv))
    return code, capsys.readouterr().out


def test_analyze_tate(capsys, graph_file):
    code, out = run(capsys, "analyze", graph_file(tate_ngon(3)))
    data = json.loads(out)
    assert code == 0
    assert data["fiber"] == {"genus": 1, "boundary": 0}
    assert data["monodromy"]["T"] == [[1, 0], [3, 1]] and data["monodromy"]["rankN"] == 1
    assert [h["rank"] for h in data["total_homology"]] == [1, 2, 2, 1]
    for key in ("input", "zeta", "euler", "semistable", "warnings", "oracle_agrees"):
        assert key in data


def test_analyze_non_reduced(capsys, graph_file):
    g = next(g for g in builtin_graphs() if g.name == "nonreduced_chain")
    code, out = run(capsys, "analyze", graph_file(g))
    data = json.loads(out)
    assert code == 0 and data["warnings"] == [cli.NON_REDUCED_WARNING]
    assert "fiber" not in data and data["zeta"] == [[1, -2]]


def test_input_errors(capsys, graph_file, tmp_path):
    code, out = run(capsys, "analyze", str(tmp_path / "missing.json"))
    assert code == 1 and json.loads(out)["error"] == "FileNotFoundError"
    bad = DualGraph("bad", (marked_line().vertices[0], marked_line().vertices[0]), ())
    code, out = run(capsys, "analyze", graph_file(bad))
    assert code == 1 and json.loads(out)["error"] == "DuplicateId"
    code, out = run(capsys, "blowup", graph_file(tate_ngon(1)), "--node", "zz")
    assert code == 1 and json.loads(out)["error"] == "InvalidMove"
    code, out = run(capsys, "blowup", graph_file(tate_ngon(1)), "--smooth-point", "v0", "--through-mark")
    assert code == 1 and json.loads(out)["error"] == "NoMarkToMove"
    code, out = run(capsys, "blowfiber", "--i", "2")
    assert code == 1 and json.loads(out)["error"] == "CenterNotInDivisor"
    code, out = run(capsys, "chart", "--multiplicities", "1,0")
    assert code == 1 and json.loads(out)["error"] == "EmptyMultiplicity"
    code, out = run(capsys, "chart", "--generators", "1,0,0,0,0")
    assert code == 1 and json.loads(out)["error"] == "RankTooLarge"


def test_blowup_output_round_trips(capsys, graph_file):
    g = tate_ngon(2)
    code, out = run(capsys, "blowup", graph_file(g), "--node", "e0")
    assert code == 0
    assert DualGraph.from_json(json.loads(out)) == apply_blowup(g, NodeBlowup("e0")).sorted()


def test_blowup_check(capsys, graph_file):
    code, out = run(capsys, "blowup", graph_file(marked_line()), "--smooth-point", "v0", "--through-mark", "--check")
    data = json.loads(out)
    assert code == 0 and data["invariance"]["passed"] and data["invariance"]["path"] == "full"


def test_invariant_violation_exits_2(capsys, graph_file, monkeypatch):
    def broken(g, move):
        return InvarianceReport(move, "full", {"genus": False})

    monkeypatch.setattr(cli, "blowup_invariance", broken)
    code, out = run(capsys, "blowup", graph_file(tate_ngon(1)), "--smooth-point", "v0", "--check")
    assert code == 2 and json.loads(out)["invariance"]["passed"] is False


def test_chart(capsys):
    code, out = run(capsys, "chart", "--generators", "2;3")
    data = json.loads(out)
    assert code == 0 and data["saturated"] is False and data["groupification"]["rank"] == 1
    code, out = run(capsys, "chart", "--multiplicities", "2,2")
    data = json.loads(out)
    assert data["exact"] is True and data["kummer"] is False
    assert data["cokernel_gp"] == {"rank": 1, "torsion": [2]}


def test_examples(capsys):
    code, out = run(capsys, "examples", "good-reduction", "--genus", "2")
    assert code == 0 and json.loads(out)["monodromy"]["T"] == [[1, 0, 0, 0], [0, 1, 0, 0], [0, 0, 1, 0], [0, 0, 0, 1]]
    code, out = run(capsys, "examples", "hopf")
    data = json.loads(out)
    assert code == 0 and data["fiber"] == "[Z, Z, 0, Z, Z]" and data["total"] == "[Z, Z^2, Z, Z, Z^2, Z]"
    code, out = run(capsys, "examples", "blowfiber", "--samples", "50")
    assert code == 0 and json.loads(out)["passed"]


def test_compare_etale(capsys, graph_file):
    code, out = run(capsys, "compare-etale", "--log-point", "2", "--mod", "4")
    assert code == 0 and json.loads(out)["agree"]
    code, out = run(capsys, "compare-etale", graph_file(tate_ngon(2)), "--mod", "2")
    assert code == 0 and json.loads(out)["agree"]
    code, out = run(capsys, "compare-etale", "--mod", "2")
    assert code == 1


def test_pretty_output(capsys, graph_file):
    code, out = run(capsys, "analyze", graph_file(tate_ngon(1)), "--pretty")
    assert code == 0
    assert "genus" in out and "[ 1 0 ]" in out
    with pytest.raises(json.JSONDecodeError):
        json.loads(out)
