"""Explicit CW plumbing surface of a semistable dual graph.

This is the ground truth the closed-form basis is checked against.  Nothing
here uses the closed-form node classes: homology comes from the cellular
chain complex, and the monodromy from a chain-level Dehn twist.

Cells for a vertex ``v`` with circles ``0..k-1`` (half-edges in edge-id
order, a loop giving its tail end first, then the marks):

* 0-cells ``o_v`` (base point) and ``q_{v,j}`` (one point per circle),
* 1-cells ``a_{v,i}, b_{v,i}`` (loops at ``o_v``), spokes ``s_{v,j}`` from
  ``o_v`` to ``q_{v,j}`` and boundary loops ``d_{v,j}`` at ``q_{v,j}``,
* one 2-cell ``F_v`` glued along ``prod [a_i, b_i] prod s_j d_j s_j^-1``,
  so ``dF_v = sum_j d_{v,j}``.

An edge ``e`` from ``v`` to ``w`` adds an annulus: a radial 1-cell ``r_e``
from the tail circle's point to the head circle's point, and a 2-cell
``f_e`` with ``df_e = -d_tail - d_head``.  The twist along the annulus core
fixes every cell except ``r_e -> r_e + d_tail``, so the crossing number of a
1-cycle with the node circle of ``e`` is its coefficient on ``r_e``.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache

from ..degen import DualGraph, require_valid
from ..intlin import (
    CellComplex,
    ChainComplex,
    ChainMap,
    HomologyBasis,
    HomologySummary,
    IntegerMatrix,
    homology,
    induced_map,
)
from .surface import FiberSurface, Label, spanning_tree, tree_path


class PlumbingSurface:
    def __init__(self, g: DualGraph):
        require_valid(g)
        self.graph = g
        self.cells = CellComplex()
        self._circle: dict = {}
        X = self.cells
        for v in sorted(g.vertices, key=lambda v: v.id):
            circles = [("edge", eid, end) for eid, end in g.half_edges(v.id)]
            circles += [("mark", k) for k in range(v.marks)]
            X.add(("o", v.id), 0)
            for j, key in enumerate(circles):
                X.add(("q", v.id, j), 0)
                self._circle[(v.id, key)] = j
        for v in sorted(g.vertices, key=lambda v: v.id):
            for i in range(v.genus):
                X.add(("a", v.id, i), 1, {})
                X.add(("b", v.id, i), 1, {})
            for j in range(self._count(v.id)):
                X.add(("s", v.id, j), 1, {("q", v.id, j): 1, ("o", v.id): -1})
                X.add(("d", v.id, j), 1, {})
        for e in sorted(g.edges, key=lambda e: e.id):
            X.add(("r", e.id), 1, {self._q(e.id, 1): 1, self._q(e.id, 0): -1})
        for v in sorted(g.vertices, key=lambda v: v.id):
            X.add(("F", v.id), 2, {("d", v.id, j): 1 for j in range(self._count(v.id))})
        for e in sorted(g.edges, key=lambda e: e.id):
            bd: dict = {}
            for end in (0, 1):
                c = self._d(e.id, end)
                bd[c] = bd.get(c, 0) - 1
            X.add(("f", e.id), 2, bd)

    def _count(self, vid: str) -> int:
        v = self.graph.vertex(vid)
        return self.graph.degree(vid) + v.marks

    def _end_index(self, eid: str, end: int) -> tuple[str, int]:
        vid = self.graph.edge(eid).ends[end]
        return vid, self._circle[(vid, ("edge", eid, end))]

    def _q(self, eid: str, end: int):
        vid, j = self._end_index(eid, end)
        return ("q", vid, j)

    def _s(self, eid: str, end: int):
        vid, j = self._end_index(eid, end)
        return ("s", vid, j)

    def _d(self, eid: str, end: int):
        vid, j = self._end_index(eid, end)
        return ("d", vid, j)

    # chain-level data ------------------------------------------------------

    def chain_complex(self) -> ChainComplex:
        return self.cells.chain_complex()

    def node_circle(self, eid: str) -> dict:
        return {self._d(eid, 0): 1}

    def mark_circle(self, vid: str, k: int) -> dict:
        return {("d", vid, self._circle[(vid, ("mark", k))]): 1}

    def twist(self) -> ChainMap:
        images = {("r", e.id): {("r", e.id): 1, self._d(e.id, 0): 1} for e in self.graph.edges}
        return self.cells.chain_map(images)

    def crossing(self, chain: dict, eid: str) -> int:
        return chain.get(("r", eid), 0)

    def fundamental_cycle(self, eid: str, tree: frozenset[str]) -> dict:
        """Cross ``e`` tail -> head, then return to the start through the tree."""
        e = self.graph.edge(eid)
        out: dict = {}

        def add(cell, k):
            out[cell] = out.get(cell, 0) + k

        add(("r", eid), 1)
        add(self._s(eid, 1), -1)
        for t, fwd in tree_path(self.graph, tree, e.head, e.tail):
            start, stop = (0, 1) if fwd else (1, 0)
            add(self._s(t, start), 1)
            add(("r", t), 1 if fwd else -1)
            add(self._s(t, stop), -1)
        add(self._s(eid, 0), 1)
        return {c: x for c, x in out.items() if x}

    def explicit_cycle(self, label: Label, tree: frozenset[str]) -> dict:
        kind = label[0]
        if kind in ("a", "b"):
            return {label: 1}
        if kind == "alpha":
            return self.fundamental_cycle(label[1], tree)
        if kind == "beta":
            return self.node_circle(label[1])
        if kind == "delta":
            return self.mark_circle(label[1], label[2])
        raise KeyError(label)


@dataclass(frozen=True)
class OracleComparison:
    """Outcome of checking a closed-form fiber against the CW model."""

    homology: HomologySummary
    T_oracle: IntegerMatrix
    P: IntegerMatrix
    genus_ok: bool
    basis_ok: bool
    conjugacy_ok: bool
    node_classes_ok: bool
    crossings_ok: bool

    @property
    def passed(self) -> bool:
        return self.genus_ok and self.basis_ok and self.conjugacy_ok and self.node_classes_ok and self.crossings_ok

    def to_json(self) -> dict:
        return {
            "passed": self.passed,
            "fiber_homology": self.homology.to_json(),
            "T_oracle": self.T_oracle.to_rows(),
            "basis_change": self.P.to_rows(),
            "genus_ok": self.genus_ok,
            "basis_ok": self.basis_ok,
            "conjugacy_ok": self.conjugacy_ok,
            "node_classes_ok": self.node_classes_ok,
            "crossings_ok": self.crossings_ok,
        }


@lru_cache(maxsize=128)
def _model(g: DualGraph):
    X = PlumbingSurface(g)
    C = X.chain_complex()
    return X, C, HomologyBasis(C, 1), X.twist()


def plumbing_model(g: DualGraph) -> tuple[PlumbingSurface, ChainComplex, ChainMap]:
    X, C, _, tw = _model(g)
    return X, C, tw


@lru_cache(maxsize=256)
def compare_with_oracle(f: FiberSurface, T_closed: IntegerMatrix) -> OracleComparison:
    """Check genus, basis, node classes, crossings and ``T_oracle P = P T_closed``.

    ``P`` has as columns the oracle coordinates of explicit cycles
    representing the closed-form basis labels.
    """
    g = f.graph
    X, C, B, tw = _model(g)
    H = homology(C)
    expected_h1 = 2 * f.genus + max(f.boundary - 1, 0)
    genus_ok = (
        H[1].rank == expected_h1
        and not H[1].torsion
        and H[2].rank == (1 if f.boundary == 0 else 0)
        and H[0].rank == 1
    )
    T_oracle = induced_map(C, tw, 1, B)
    tree = spanning_tree(g)
    cycles = [X.explicit_cycle(lab, tree) for lab in f.labels]
    cols = [B.coordinates(X.cells.vector(z, 1)) for z in cycles]
    P = IntegerMatrix.from_columns(cols, rows=B.rank) if cols else IntegerMatrix.zeros(B.rank, 0)
    basis_ok = P.is_square() and (P.rows == 0 or P.is_unimodular())
    conjugacy_ok = basis_ok and T_oracle @ P == P @ T_closed
    node_ok = basis_ok
    crossings_ok = True
    for eid, c in f.node_classes:
        if basis_ok and B.coordinates(X.cells.vector(X.node_circle(eid), 1)) != P.apply(list(c)):
            node_ok = False
        Jc = f.J.apply(list(c))
        # for the i-th basis vector x, J(x, c) = (J c)_i
        for z, jx in zip(cycles, Jc):
            if X.crossing(z, eid) != jx:
                crossings_ok = False
    return OracleComparison(H, T_oracle, P, genus_ok, basis_ok, conjugacy_ok, node_ok, crossings_ok)
