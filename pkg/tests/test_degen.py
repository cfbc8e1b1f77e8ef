import json

import pytest
from hypothesis import given, settings, strategies as st

from logkn.corpus import builtin_graphs, random_corpus
from logkn.degen import (
    DualGraph,
    Edge,
    NodeBlowup,
    SmoothPointBlowup,
    Vertex,
    applicable_moves,
    apply_blowup,
    dump_graph,
    euler_characteristic_fiber,
    format_zeta,
    good_reduction,
    is_semistable,
    load_graph,
    marked_line,
    require_valid,
    tate_ngon,
    validate,
    zeta_function,
)
from logkn.errors import GraphFormatError, InvalidGraph, InvalidMove, NoMarkToMove


def codes(g):
    return [i.code for i in validate(g)]


def test_builders():
    t = tate_ngon(3)
    assert t.name == "tate_3gon" and len(t.vertices) == 3 and t.first_betti == 1
    assert tate_ngon(1).edges[0].is_loop and tate_ngon(1).degree("v0") == 2
    assert good_reduction(2).vertices == (Vertex("v0", 2),)
    assert marked_line().total_marks == 1
    with pytest.raises(ValueError):
        tate_ngon(0)


def test_json_round_trip(tmp_path):
    for g in builtin_graphs():
        path = tmp_path / f"{g.name}.json"
        path.write_text(dump_graph(g))
        assert load_graph(path) == g.sorted()


def test_format_errors(tmp_path):
    bad = tmp_path / "bad.json"
    bad.write_text("{not json")
    with pytest.raises(GraphFormatError):
        load_graph(bad)
    for data in (
        [],
        {"vertices": [{"genus": 1}]},
        {"vertices": [{"id": "a", "genus": "1"}]},
        {"vertices": [{"id": "a"}], "edges": [{"id": "e", "ends": ["a"]}]},
    ):
        with pytest.raises(GraphFormatError):
            DualGraph.from_json(data)


def test_validation_codes():
    a = Vertex("a")
    assert codes(DualGraph("x", (), ())) == ["Empty"]
    assert codes(DualGraph("x", (a, a), ())) == ["DuplicateId"]
    assert codes(DualGraph("x", (Vertex("a", -1, 0, -2),), ())) == ["BadMultiplicity", "BadGenus", "BadMarks"]
    assert codes(DualGraph("x", (a,), (Edge("e", ("a", "z")),))) == ["UnknownVertex"]
    assert codes(DualGraph("x", (a, Vertex("b")), ())) == ["Disconnected"]
    with pytest.raises(InvalidGraph) as exc:
        require_valid(DualGraph("x", (a, Vertex("b")), ()))
    assert exc.value.code == "Disconnected"


def test_euler_and_zeta_examples():
    assert euler_characteristic_fiber(tate_ngon(4)) == 0 and zeta_function(tate_ngon(4)) == ()
    for g in range(4):
        G = good_reduction(g)
        assert euler_characteristic_fiber(G) == 2 - 2 * g
        assert zeta_function(G) == (((1, 2 * g - 2),) if g != 1 else ())
    # chain a - b - c with b doubled: chi(b open) = 0, a and c contribute 1 each
    chain = next(g for g in builtin_graphs() if g.name == "nonreduced_chain")
    assert not is_semistable(chain)
    assert euler_characteristic_fiber(chain) == 2
    assert zeta_function(chain) == ((1, -2),)
    assert format_zeta(((1, -2), (3, 1))) == "(1-t)^-2 (1-t^3)^1"
    assert format_zeta(()) == "1"


def test_node_blowup_shape():
    h = apply_blowup(tate_ngon(1), NodeBlowup("e0"))
    assert {e.id for e in h.edges} == {"e0.1", "e0.2"}
    new = h.vertex("E1")
    assert new.multiplicity == 2 and not is_semistable(h)
    assert h.first_betti == 1


def test_smooth_point_blowups():
    g = marked_line()
    h = apply_blowup(g, SmoothPointBlowup("v0", through_mark=True))
    assert h.vertex("v0").marks == 0 and h.vertex("E1").marks == 1
    assert h.edges[-1].ends == ("v0", "E1")
    with pytest.raises(NoMarkToMove):
        apply_blowup(h, SmoothPointBlowup("v0", through_mark=True))
    with pytest.raises(InvalidMove):
        apply_blowup(g, SmoothPointBlowup("nope"))
    with pytest.raises(InvalidMove):
        apply_blowup(g, NodeBlowup("nope"))


def test_applicable_moves_count():
    g = next(g for g in builtin_graphs() if g.name == "chain_with_marks")
    moves = applicable_moves(g)
    assert len(moves) == len(g.edges) + len(g.vertices) + sum(1 for v in g.vertices if v.marks)


@settings(max_examples=40, deadline=None)
@given(st.integers(0, 10_000), st.data())
def test_moves_preserve_chi_and_zeta(seed, data):
    (g,) = random_corpus(1, seed, max_vertices=5, max_edges=6)
    if data.draw(st.booleans()):
        # make one component non-reduced
        v = data.draw(st.sampled_from(g.vertices))
        g = DualGraph(g.name, tuple(
            Vertex(x.id, x.genus, 3, x.marks) if x.id == v.id else x for x in g.vertices
        ), g.edges)
    move = data.draw(st.sampled_from(applicable_moves(g)))
    h = apply_blowup(g, move)
    assert not validate(h)
    assert euler_characteristic_fiber(h) == euler_characteristic_fiber(g)
    assert zeta_function(h) == zeta_function(g)
    assert h.first_betti == g.first_betti


def test_to_json_field_names():
    data = json.loads(dump_graph(marked_line()))
    assert set(data) == {"name", "vertices", "edges"}
    assert set(data["vertices"][0]) == {"id", "genus", "multiplicity", "marks"}
