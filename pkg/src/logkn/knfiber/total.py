"""Total space over the circle and invariance under blowup moves."""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import lru_cache

from ..degen import (
    BlowupMove,
    DualGraph,
    SmoothPointBlowup,
    apply_blowup,
    euler_characteristic_fiber,
    is_semistable,
    require_valid,
    zeta_function,
)
from ..errors import InvariantViolation
from ..intlin import HomologySummary, IntegerMatrix, homology, mapping_torus_homology, smith_normal_form, wang_betti
from .cwmodel import compare_with_oracle, plumbing_model
from .monodromy import MonodromyReport, monodromy
from .surface import FiberSurface, build_fiber


def total_space_checks(f: FiberSurface, r: MonodromyReport, H: HomologySummary) -> list[str]:
    """Consistency of ``H`` (homology of the mapping torus) with ``(f, r)``."""
    X, C, tw = plumbing_model(f.graph)
    out = []
    wang = wang_betti(C, tw)
    betti = H.betti + [0] * (len(wang) - len(H))
    if betti != wang[: len(betti)] + [0] * (len(betti) - len(wang)):
        out.append(f"Wang sequence predicts Betti numbers {wang}, mapping torus has {H.betti}")
    if H[0].rank != 1 or H[0].torsion:
        out.append("total space is not connected")
    # H_1(M) = Z + coker(N on H_1(F)), torsion included
    n = r.N.rows
    inv = smith_normal_form(r.N).invariant_factors if n else []
    if H[1].rank != 1 + n - len(inv) or H[1].torsion != tuple(d for d in inv if d > 1):
        out.append(f"H_1 = {H[1]} but Z + coker N predicts rank {1 + n - len(inv)}")
    return out


@lru_cache(maxsize=256)
def total_space_homology(f: FiberSurface, r: MonodromyReport) -> HomologySummary:
    """Homology of the mapping torus of the chain-level twist on the CW fiber."""
    cmp = compare_with_oracle(f, r.T)
    if not cmp.passed:
        raise InvariantViolation(f"monodromy of {f.graph.name!r} disagrees with the CW model")
    _, C, tw = plumbing_model(f.graph)
    H = mapping_torus_homology(C, tw)
    problems = total_space_checks(f, r, H)
    if problems:
        raise InvariantViolation("; ".join(problems))
    return H


def fiber_homology(f: FiberSurface) -> HomologySummary:
    _, C, _ = plumbing_model(f.graph)
    return homology(C)


@dataclass
class InvarianceReport:
    move: BlowupMove
    path: str
    checks: dict[str, bool] = field(default_factory=dict)
    details: dict = field(default_factory=dict)

    @property
    def passed(self) -> bool:
        return all(self.checks.values())

    def to_json(self) -> dict:
        move = {"kind": type(self.move).__name__, **self.move.__dict__}
        return {"move": move, "path": self.path, "passed": self.passed, "checks": self.checks, "details": self.details}


def _inherited_label(label, moved: tuple[tuple[str, int], tuple[str, int]] | None):
    if moved and label[0] == "delta" and (label[1], label[2]) == moved[0]:
        return ("delta", *moved[1])
    return label


def blowup_invariance(g: DualGraph, move: BlowupMove) -> InvarianceReport:
    """Compare invariants of ``g`` and of its blowup along ``move``.

    When both graphs are semistable the fiber genus, the monodromy in the
    inherited basis and the total-space homology must agree; otherwise only
    the Euler characteristic and zeta function are compared.
    """
    require_valid(g)
    h = apply_blowup(g, move)
    require_valid(h)
    chi0, chi1 = euler_characteristic_fiber(g), euler_characteristic_fiber(h)
    z0, z1 = zeta_function(g), zeta_function(h)
    full = is_semistable(g) and is_semistable(h)
    report = InvarianceReport(move, "full" if full else "chi-zeta")
    report.checks["euler"] = chi0 == chi1
    report.checks["zeta"] = z0 == z1
    report.details.update(euler=[chi0, chi1], zeta=[[list(p) for p in z0], [list(p) for p in z1]])
    if not full:
        return report

    f0, f1 = build_fiber(g), build_fiber(h)
    r0, r1 = monodromy(f0), monodromy(f1)
    report.checks["genus"] = f0.genus == f1.genus
    report.checks["boundary"] = f0.boundary == f1.boundary
    moved = None
    if isinstance(move, SmoothPointBlowup) and move.through_mark:
        (leaf,) = {v.id for v in h.vertices} - {v.id for v in g.vertices}
        moved = ((move.vertex, g.vertex(move.vertex).marks - 1), (leaf, 0))
    cols = [f1.coordinates(_inherited_label(lab, moved)) for lab in f0.labels]
    Q = IntegerMatrix.from_columns(cols, rows=f1.rank) if cols else IntegerMatrix.zeros(f1.rank, 0)
    basis_ok = Q.is_square() and (Q.rows == 0 or Q.is_unimodular())
    report.checks["inherited_basis"] = basis_ok
    report.checks["monodromy"] = basis_ok and r1.T @ Q == Q @ r0.T
    report.checks["oracle_before"] = compare_with_oracle(f0, r0.T).passed
    report.checks["oracle_after"] = compare_with_oracle(f1, r1.T).passed
    H0, H1 = total_space_homology(f0, r0), total_space_homology(f1, r1)
    report.checks["total_homology"] = H0.same_as(H1)
    F0, F1 = fiber_homology(f0), fiber_homology(f1)
    report.checks["fiber_homology"] = F0.same_as(F1)
    report.details.update(
        genus=[f0.genus, f1.genus],
        total_homology=[H0.to_json(), H1.to_json()],
        fiber_homology=[F0.to_json(), F1.to_json()],
    )
    return report
