"""Closed-form H_1 data of the nearby fiber of a semistable curve degeneration.

The fiber is the plumbing of the components along their nodes: each vertex
contributes a surface of its genus with one boundary circle per half-edge
and per mark, and each edge glues two circles by an annulus.  In the basis
built here

* each vertex of genus g gives g symplectic pairs ``(a, b)``,
* each non-tree edge ``e_j`` gives a pair ``(alpha_j, beta_j)`` where
  ``beta_j`` is the node circle of ``e_j`` and ``alpha_j`` runs once around
  the fundamental cycle of ``e_j``,
* all mark circles but the last give a class ``delta`` (the last one is
  minus the sum of the others),

and the node circle of a tree edge is a signed sum of ``beta``'s and
``delta``'s read off from fundamental cycles and the tree cut.
"""

from __future__ import annotations

from collections import defaultdict
from dataclasses import dataclass
from functools import lru_cache

from ..degen import DualGraph, is_semistable, require_valid
from ..errors import NotSemistable
from ..intlin import IntegerMatrix

Label = tuple


def spanning_tree(g: DualGraph) -> frozenset[str]:
    """Kruskal over edges in id order; loops are never tree edges."""
    parent = {v.id: v.id for v in g.vertices}

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    tree = set()
    for e in sorted(g.edges, key=lambda e: e.id):
        a, b = find(e.tail), find(e.head)
        if a != b:
            parent[a] = b
            tree.add(e.id)
    return frozenset(tree)


def tree_path(g: DualGraph, tree: frozenset[str], start: str, end: str) -> list[tuple[str, bool]]:
    """Edges on the tree path ``start -> end`` as ``(edge id, traversed tail->head)``."""
    adj = defaultdict(list)
    for e in g.edges:
        if e.id in tree:
            adj[e.tail].append((e.head, e.id, True))
            adj[e.head].append((e.tail, e.id, False))
    back: dict[str, tuple[str, str, bool] | None] = {start: None}
    stack = [start]
    while stack:
        u = stack.pop()
        for w, eid, fwd in adj[u]:
            if w not in back:
                back[w] = (u, eid, fwd)
                stack.append(w)
    path = []
    x = end
    while back[x] is not None:
        u, eid, fwd = back[x]
        path.append((eid, fwd))
        x = u
    return path[::-1]


def tail_side(g: DualGraph, tree: frozenset[str], eid: str) -> set[str]:
    """Vertices on the tail side of tree edge ``eid`` once it is cut."""
    e = g.edge(eid)
    adj = defaultdict(set)
    for x in g.edges:
        if x.id in tree and x.id != eid:
            adj[x.tail].add(x.head)
            adj[x.head].add(x.tail)
    seen = {e.tail}
    stack = [e.tail]
    while stack:
        for w in adj[stack.pop()]:
            if w not in seen:
                seen.add(w)
                stack.append(w)
    return seen


def mark_circles(g: DualGraph) -> list[tuple[str, int]]:
    """All mark circles ``(vertex id, index)`` in canonical order."""
    return [(v.id, k) for v in sorted(g.vertices, key=lambda v: v.id) for k in range(v.marks)]


def label_str(label: Label) -> str:
    kind, *rest = label
    return f"{kind}[{','.join(str(x) for x in rest)}]"


@dataclass(frozen=True)
class FiberSurface:
    graph: DualGraph
    genus: int
    boundary: int
    tree: frozenset[str]
    labels: tuple[Label, ...]
    J: IntegerMatrix
    node_classes: tuple[tuple[str, tuple[int, ...]], ...]

    @property
    def rank(self) -> int:
        return len(self.labels)

    @property
    def first_betti_graph(self) -> int:
        return self.graph.first_betti

    def node_class(self, eid: str) -> tuple[int, ...]:
        return dict(self.node_classes)[eid]

    def index(self, label: Label) -> int:
        return self.labels.index(label)

    def coordinates(self, label: Label) -> tuple[int, ...]:
        """Class of any named cycle: a basis label, or any mark circle ``("delta", v, k)``."""
        if label in self.labels:
            return tuple(int(i == self.index(label)) for i in range(self.rank))
        if label[0] == "delta":
            marks = mark_circles(self.graph)
            if marks and (label[1], label[2]) == marks[-1]:
                return tuple(-1 if lab[0] == "delta" else 0 for lab in self.labels)
        raise KeyError(label)

    def pairing(self, x, y) -> int:
        n = self.rank
        return sum(x[i] * self.J[i, j] * y[j] for i in range(n) for j in range(n) if self.J[i, j])


@lru_cache(maxsize=256)
def build_fiber(g: DualGraph) -> FiberSurface:
    require_valid(g)
    if not is_semistable(g):
        bad = sorted(v.id for v in g.vertices if v.multiplicity != 1)
        raise NotSemistable(f"components {bad} are not reduced; only chi and zeta are available")
    tree = spanning_tree(g)
    cotree = sorted(e.id for e in g.edges if e.id not in tree)
    marks = mark_circles(g)

    labels: list[Label] = []
    for v in sorted(g.vertices, key=lambda v: v.id):
        for i in range(v.genus):
            labels += [("a", v.id, i), ("b", v.id, i)]
    for eid in cotree:
        labels += [("alpha", eid), ("beta", eid)]
    labels += [("delta", v, k) for v, k in marks[:-1]]
    n = len(labels)
    where = {lab: i for i, lab in enumerate(labels)}

    rows = [[0] * n for _ in range(n)]
    for i, lab in enumerate(labels):
        if lab[0] in ("a", "alpha"):
            rows[i][i + 1] = 1
            rows[i + 1][i] = -1
    J = IntegerMatrix.from_rows(rows, cols=n)

    def delta_vec(mark) -> list[int]:
        if mark == marks[-1]:
            return [-1 if lab[0] == "delta" else 0 for lab in labels]
        return [int(i == where[("delta", *mark)]) for i in range(n)]

    # epsilon_j(e): signed incidence of tree edge e in the fundamental cycle
    # of e_j, traversed with e_j running tail -> head
    eps: dict[str, dict[str, int]] = defaultdict(dict)
    for eid in cotree:
        e = g.edge(eid)
        for t, fwd in tree_path(g, tree, e.head, e.tail):
            eps[t][eid] = 1 if fwd else -1

    classes = []
    for e in sorted(g.edges, key=lambda e: e.id):
        c = [0] * n
        if e.id in tree:
            for eid, s in eps[e.id].items():
                c[where[("beta", eid)]] += s
            side = tail_side(g, tree, e.id)
            for mark in marks:
                if mark[0] in side:
                    c = [x - y for x, y in zip(c, delta_vec(mark))]
        else:
            c[where[("beta", e.id)]] = 1
        classes.append((e.id, tuple(c)))

    genus = sum(v.genus for v in g.vertices) + g.first_betti
    return FiberSurface(
        graph=g,
        genus=genus,
        boundary=len(marks),
        tree=tree,
        labels=tuple(labels),
        J=J,
        node_classes=tuple(classes),
    )
