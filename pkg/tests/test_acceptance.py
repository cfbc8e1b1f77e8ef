"""The ten acceptance criteria, one test each; a pass/fail line is printed per criterion."""

import json
import random

import pytest

from conftest import ACCEPTANCE_LINES
from oracles import find_conjugator, invariant_factors_by_minors
from logkn.blowfiber import BlowupLocalData, contractibility_suite, fiber_of_simple_blowup
from logkn.cli import main
from logkn.degen import NodeBlowup, SmoothPointBlowup, applicable_moves, good_reduction, tate_ngon
from logkn.errors import CenterNotInDivisor
from logkn.etalecmp import compare_log_point, koszul_complex, mapping_torus_mod_n_consistency
from logkn.intlin import IntegerMatrix, smith_normal_form
from logkn.knfiber import (
    blowup_invariance,
    build_fiber,
    compare_with_oracle,
    exp_nilpotent,
    fiber_homology,
    hopf_surface,
    monodromy,
    total_space_homology,
)


@pytest.fixture
def record(request):
    """Collects failures for one criterion and prints its pass/fail line."""
    number = request.node.get_closest_marker("criterion").args[0]
    failures: list[str] = []
    yield failures
    rep = getattr(request.node, "rep_call", None)
    ok = not failures and rep is not None and rep.passed
    reason = failures[0] if failures else "assertion failed"
    line = f"criterion {number:>2}: {'PASS' if ok else 'FAIL'}" + ("" if ok else f"  ({reason})")
    ACCEPTANCE_LINES.append(line)
    print(line)


def betti(H):
    return [g.rank for g in H.trimmed()]


def groups(H):
    return [(g.rank, tuple(g.torsion)) for g in H.trimmed()]


def conjugate_by_swap(T):
    S = IntegerMatrix.from_rows([[0, 1], [1, 0]])
    return S @ T @ S


@pytest.mark.criterion(1)
def test_criterion_1_tate_curve(record, capsys):
    assert main(["examples", "tate", "--n", "1"]) == 0
    report = json.loads(capsys.readouterr().out)
    T = IntegerMatrix.from_rows(report["monodromy"]["T"])
    N = T - IntegerMatrix.identity(2)
    checks = {
        "shape": T.shape == (2, 2),
        "N^2 = 0": (N @ N).is_zero(),
        "rank N = 1": smith_normal_form(N).rank == 1,
        "conjugate to [[1,1],[0,1]]": conjugate_by_swap(T).to_rows() == [[1, 1], [0, 1]],
        "genus 1": report["fiber"]["genus"] == 1,
        "total homology": [(h["rank"], h["torsion"]) for h in report["total_homology"]]
        == [(1, []), (2, []), (2, []), (1, [])],
        "gluing model": report["gluing_check"]["passed"],
    }
    record.extend(k for k, v in checks.items() if not v)
    assert not record


@pytest.mark.criterion(2)
def test_criterion_2_tate_family(record):
    for n in range(1, 7):
        f = build_fiber(tate_ngon(n))
        r = monodromy(f)
        target = [[1, n], [0, 1]]
        if conjugate_by_swap(r.T).to_rows() != target:
            record.append(f"closed form n={n}: {r.T.to_rows()}")
        cmp = compare_with_oracle(f, r.T)
        if not cmp.passed:
            record.append(f"oracle disagrees for n={n}")
        # the oracle's own matrix, conjugated to the target by brute force
        if find_conjugator(cmp.T_oracle.to_rows(), target) is None:
            record.append(f"oracle T for n={n} not conjugate to {target}")
    assert not record


@pytest.mark.criterion(3)
def test_criterion_3_good_reduction(record):
    for g in range(4):
        f = build_fiber(good_reduction(g))
        r = monodromy(f)
        if r.T != IntegerMatrix.identity(2 * g):
            record.append(f"g={g}: T is not the identity")
        # Kunneth for Sigma_g x S^1, both factors torsion free
        F = betti(fiber_homology(f))
        expected = [sum(F[i - j] for j in (0, 1) if 0 <= i - j < len(F)) for i in range(len(F) + 1)]
        H = total_space_homology(f, r)
        if betti(H) != expected or any(t for t in H.torsion):
            record.append(f"g={g}: total homology {H} vs product {expected}")
        if expected != [1, 2 * g + 1, 2 * g + 1, 1]:
            record.append(f"g={g}: fiber Betti numbers {F}")
    assert not record


@pytest.mark.criterion(4)
def test_criterion_4_blowup_invariance(record, random_graphs):
    assert len(random_graphs) >= 20
    smooth = node = 0
    for g in random_graphs:
        assert len(g.vertices) <= 8 and len(g.edges) <= 10
        assert max(v.genus for v in g.vertices) <= 3
        for move in applicable_moves(g):
            rep = blowup_invariance(g, move)
            if isinstance(move, SmoothPointBlowup):
                smooth += 1
                needed = {"genus", "monodromy", "inherited_basis", "total_homology"}
                if rep.path != "full" or not needed <= rep.checks.keys():
                    record.append(f"{g.name} {move}: not compared on the full path")
            else:
                assert isinstance(move, NodeBlowup)
                node += 1
                if not {"euler", "zeta"} <= rep.checks.keys():
                    record.append(f"{g.name} {move}: chi/zeta not compared")
            if not rep.passed:
                bad = [k for k, v in rep.checks.items() if not v]
                record.append(f"{g.name} {move}: {bad}")
    assert smooth and node
    assert not record


@pytest.mark.criterion(5)
def test_criterion_5_blowup_fibers(record):
    rows = contractibility_suite(4, samples=1000, seed=0)
    # every (|I|, nonempty L) pair, 1 <= |I| <= 4
    assert len(rows) == sum(2**k - 1 for k in range(1, 5))
    for row in rows:
        size, L = row["I"], row["L"]
        if row["dimension"] != len(L) + 2 * (size - len(L)) - 1:
            record.append(f"dimension for I={size}, L={L}")
        if not row["passed"] or row["violations"]:
            record.append(f"star-shapedness failed for I={size}, L={L}")
        model = fiber_of_simple_blowup(BlowupLocalData(size, frozenset(L)))
        if not model.contains(model.center()):
            record.append(f"empty model for I={size}, L={L}")
    for size in range(1, 5):
        with pytest.raises(CenterNotInDivisor):
            fiber_of_simple_blowup(BlowupLocalData(size, frozenset()))
    assert not record


@pytest.mark.criterion(6)
def test_criterion_6_hopf_surface(record):
    fiber, total = hopf_surface()
    if groups(fiber) != [(1, ())] * 2 + [(0, ())] + [(1, ())] * 2:
        record.append(f"fiber {fiber}")
    if groups(total) != [(1, ()), (2, ()), (1, ()), (1, ()), (2, ()), (1, ())]:
        record.append(f"total {total}")
    assert not record


@pytest.mark.criterion(7)
def test_criterion_7_log_points(record):
    for r in range(5):
        C = koszul_complex(r)
        # the group side really is built from boundary matrices of the right sizes
        assert len(C.boundaries) == max(r, 0) and C.dims[0] == 1
        for n in range(2, 7):
            if not compare_log_point(r, n):
                record.append(f"r={r}, n={n}")
    assert not record


@pytest.mark.criterion(8)
def test_criterion_8_mod_n(record, ss_corpus):
    for g in ss_corpus:
        for n in (2, 3, 4, 5):
            if not mapping_torus_mod_n_consistency(g, n):
                record.append(f"{g.name}, n={n}")
    assert not record


@pytest.mark.criterion(9)
def test_criterion_9_snf(record):
    rng = random.Random(20240609)
    for _ in range(200):
        m, n = rng.randint(1, 6), rng.randint(1, 6)
        rows = [[rng.randint(-10, 10) for _ in range(n)] for _ in range(m)]
        A = IntegerMatrix.from_rows(rows)
        snf = smith_normal_form(A)
        if snf.invariant_factors != invariant_factors_by_minors(rows):
            record.append(f"invariant factors of {rows}")
        if not (snf.U.is_unimodular() and snf.V.is_unimodular() and snf.U @ A @ snf.V == snf.S):
            record.append(f"U A V != S for {rows}")
    assert not record


@pytest.mark.criterion(10)
def test_criterion_10_monodromy_algebra(record, ss_corpus):
    assert sum(g.name.startswith("random") for g in ss_corpus) >= 20
    for g in ss_corpus:
        f = build_fiber(g)
        r = monodromy(f)
        N = r.T - IntegerMatrix.identity(f.rank)
        checks = {
            "N^2 = 0": (N @ N).is_zero(),
            "exp N = T": exp_nilpotent(N) == r.T,
            "T^t J T = J": r.T.T @ f.J @ r.T == f.J,
            "rank N = b1": (smith_normal_form(N).rank if f.rank else 0) == g.first_betti,
        }
        record.extend(f"{g.name}: {k}" for k, v in checks.items() if not v)
    assert not record
