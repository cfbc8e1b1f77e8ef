from dataclasses import replace

import pytest
from hypothesis import given, settings, strategies as st

from logkn.corpus import builtin_graphs
from logkn.degen import DualGraph, Edge, SmoothPointBlowup, Vertex, applicable_moves, marked_line, tate_ngon
from logkn.errors import NotSemistable
from logkn.intlin import AbelianGroup, HomologySummary, IntegerMatrix
from logkn.knfiber import (
    blowup_invariance,
    build_fiber,
    compare_with_oracle,
    exp_nilpotent,
    log_unipotent,
    monodromy,
    spanning_tree,
    tate_gluing_check,
    total_space_homology,
    twist_matrix,
)
from logkn.knfiber.total import total_space_checks


def small_graphs(ss_corpus):
    return [g for g in ss_corpus if len(g.edges) <= 6]


def test_spanning_tree(ss_corpus):
    for g in ss_corpus:
        tree = spanning_tree(g)
        assert len(tree) == len(g.vertices) - 1
        assert not any(g.edge(e).is_loop for e in tree)


def test_genus_and_boundary(ss_corpus):
    for g in ss_corpus:
        f = build_fiber(g)
        assert f.genus == sum(v.genus for v in g.vertices) + g.first_betti
        assert f.boundary == g.total_marks
        assert f.rank == 2 * f.genus + max(f.boundary - 1, 0)


def test_last_mark_is_minus_sum_of_others():
    g = DualGraph("m3", (Vertex("a", 1, 1, 3),), ())
    f = build_fiber(g)
    d0, d1, d2 = (f.coordinates(("delta", "a", k)) for k in range(3))
    assert [x + y + z for x, y, z in zip(d0, d1, d2)] == [0] * f.rank


def test_non_reduced_rejected():
    g = next(g for g in builtin_graphs() if g.name == "nonreduced_chain")
    with pytest.raises(NotSemistable):
        build_fiber(g)


def test_tate_closed_form():
    for n in range(1, 7):
        assert monodromy(build_fiber(tate_ngon(n))).T.to_rows() == [[1, 0], [n, 1]]


def test_oracle_agrees_on_small_corpus(ss_corpus):
    for g in small_graphs(ss_corpus):
        f = build_fiber(g)
        cmp = compare_with_oracle(f, monodromy(f).T)
        assert cmp.passed, (g.name, cmp.to_json())


def test_oracle_catches_wrong_node_class():
    g = DualGraph("theta_g1", (Vertex("a", 1), Vertex("b")), (
        Edge("x", ("a", "b")), Edge("y", ("b", "a")), Edge("z", ("a", "b"))))
    f = build_fiber(g)
    eid, c = f.node_classes[0]
    wrong = list(c)
    wrong[0] += 1
    bad = replace(f, node_classes=((eid, tuple(wrong)),) + f.node_classes[1:])
    cmp = compare_with_oracle(bad, twist_matrix(bad))
    assert not cmp.passed
    assert not cmp.node_classes_ok


def test_oracle_catches_wrong_twist():
    f = build_fiber(tate_ngon(2))
    T = monodromy(f).T
    wrong = T @ T
    assert not compare_with_oracle(f, wrong).conjugacy_ok


def test_exp_log_examples():
    N = IntegerMatrix.from_rows([[0, 1, 0], [0, 0, 1], [0, 0, 0]])
    with pytest.raises(ArithmeticError):
        exp_nilpotent(N.scale(1))  # contains N^2 / 2
    assert exp_nilpotent(N.scale(2)).to_rows() == [[1, 2, 2], [0, 1, 2], [0, 0, 1]]
    assert log_unipotent(exp_nilpotent(N.scale(2))) == N.scale(2)


@settings(max_examples=60, deadline=None)
@given(st.lists(st.integers(-4, 4), min_size=4, max_size=4), st.integers(-3, 3))
def test_exp_log_inverse_on_square_zero(u, k):
    # N = k u (J u)^t satisfies N^2 = 0 because <u, u> = 0
    J = [-u[2], -u[3], u[0], u[1]]
    N = IntegerMatrix.from_columns([u]) @ IntegerMatrix.from_rows([J]).scale(k)
    assert (N @ N).is_zero()
    T = exp_nilpotent(N)
    assert T == IntegerMatrix.identity(4) + N
    assert log_unipotent(T) == N


def test_report_invariants(ss_corpus):
    for g in ss_corpus:
        f = build_fiber(g)
        r = monodromy(f)
        assert r.violations(f) == []
        assert r.nilpotency == (2 if g.first_betti else (1 if f.rank else 0))
        assert sum(r.weights) == 2 * f.genus


def test_total_space_checks_flag_wrong_homology():
    f = build_fiber(tate_ngon(1))
    r = monodromy(f)
    H = total_space_homology(f, r)
    assert total_space_checks(f, r, H) == []
    fake = HomologySummary((AbelianGroup(1), AbelianGroup(3), AbelianGroup(3), AbelianGroup(1)))
    assert total_space_checks(f, r, fake)


def test_tate_gluing_model():
    out = tate_gluing_check()
    assert out["passed"], out["checks"]


def test_marked_move_uses_inherited_basis():
    g = DualGraph("two_marks", (Vertex("a", 1, 1, 2), Vertex("b", 0, 1, 1)), (
        Edge("e", ("a", "b")), Edge("l", ("a", "a"))))
    for move in applicable_moves(g):
        rep = blowup_invariance(g, move)
        assert rep.passed, (move, rep.checks)
    rep = blowup_invariance(marked_line(), SmoothPointBlowup("v0", True))
    assert rep.path == "full" and rep.checks["inherited_basis"]
