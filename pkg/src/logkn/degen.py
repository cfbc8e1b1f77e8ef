"""Dual graphs of snc special fibers of curve degenerations.

Vertices are components (genus, multiplicity, number of horizontal marks),
edges are nodes.  Blowup moves act on the graph the way blowing up a node or
a smooth point acts on the special fiber; Euler characteristic and the
monodromy zeta function are read off from multiplicities.
"""

from __future__ import annotations

import json
from collections import Counter, defaultdict
from dataclasses import dataclass, replace
from pathlib import Path
from typing import Iterable, Union

from .errors import GraphFormatError, InvalidGraph, InvalidMove, NoMarkToMove


@dataclass(frozen=True)
class Vertex:
    id: str
    genus: int = 0
    multiplicity: int = 1
    marks: int = 0


@dataclass(frozen=True)
class Edge:
    id: str
    ends: tuple[str, str]

    @property
    def tail(self) -> str:
        return self.ends[0]

    @property
    def head(self) -> str:
        return self.ends[1]

    @property
    def is_loop(self) -> bool:
        return self.ends[0] == self.ends[1]


@dataclass(frozen=True)
class DualGraph:
    name: str
    vertices: tuple[Vertex, ...]
    edges: tuple[Edge, ...] = ()

    def __post_init__(self):
        object.__setattr__(self, "vertices", tuple(self.vertices))
        object.__setattr__(
            self, "edges", tuple(Edge(e.id, tuple(e.ends)) for e in self.edges)
        )

    def vertex(self, vid: str) -> Vertex:
        for v in self.vertices:
            if v.id == vid:
                return v
        raise KeyError(vid)

    def edge(self, eid: str) -> Edge:
        for e in self.edges:
            if e.id == eid:
                return e
        raise KeyError(eid)

    def degree(self, vid: str) -> int:
        """Number of half-edges at ``vid``; a loop counts twice."""
        return sum((e.tail == vid) + (e.head == vid) for e in self.edges)

    def half_edges(self, vid: str) -> list[tuple[str, int]]:
        """Half-edges at ``vid`` as ``(edge id, end index)``, sorted by edge id."""
        out = []
        for e in sorted(self.edges, key=lambda e: e.id):
            for k in (0, 1):
                if e.ends[k] == vid:
                    out.append((e.id, k))
        return out

    @property
    def first_betti(self) -> int:
        return len(self.edges) - len(self.vertices) + 1

    @property
    def total_marks(self) -> int:
        return sum(v.marks for v in self.vertices)

    def sorted(self) -> DualGraph:
        return DualGraph(
            self.name,
            tuple(sorted(self.vertices, key=lambda v: v.id)),
            tuple(sorted(self.edges, key=lambda e: e.id)),
        )

    def to_json(self) -> dict:
        g = self.sorted()
        return {
            "name": g.name,
            "vertices": [
                {"id": v.id, "genus": v.genus, "multiplicity": v.multiplicity, "marks": v.marks}
                for v in g.vertices
            ],
            "edges": [{"id": e.id, "ends": list(e.ends)} for e in g.edges],
        }

    @classmethod
    def from_json(cls, data: dict) -> DualGraph:
        if not isinstance(data, dict):
            raise GraphFormatError("top-level JSON value must be an object")
        try:
            name = data.get("name", "")
            if not isinstance(name, str):
                raise GraphFormatError("'name' must be a string")
            vertices = []
            for raw in data["vertices"]:
                vid = raw["id"]
                if not isinstance(vid, str):
                    raise GraphFormatError(f"vertex id {vid!r} is not a string")
                fields = {}
                for key in ("genus", "multiplicity", "marks"):
                    if key in raw:
                        val = raw[key]
                        if not isinstance(val, int) or isinstance(val, bool):
                            raise GraphFormatError(f"vertex {vid}: '{key}' must be an integer")
                        fields[key] = val
                vertices.append(Vertex(vid, **fields))
            edges = []
            for raw in data.get("edges", []):
                ends = raw["ends"]
                if not (isinstance(ends, list) and len(ends) == 2 and all(isinstance(x, str) for x in ends)):
                    raise GraphFormatError(f"edge {raw.get('id')!r}: 'ends' must be two vertex ids")
                if not isinstance(raw["id"], str):
                    raise GraphFormatError(f"edge id {raw['id']!r} is not a string")
                edges.append(Edge(raw["id"], (ends[0], ends[1])))
        except (KeyError, TypeError) as exc:
            raise GraphFormatError(f"missing or malformed field: {exc}") from exc
        return cls(name, tuple(vertices), tuple(edges))


def load_graph(path: Union[str, Path]) -> DualGraph:
    try:
        data = json.loads(Path(path).read_text(encoding="utf-8"))
    except json.JSONDecodeError as exc:
        raise GraphFormatError(f"{path}: invalid JSON ({exc})") from exc
    return DualGraph.from_json(data)


def dump_graph(g: DualGraph) -> str:
    return json.dumps(g.to_json(), indent=2)


# validation -------------------------------------------------------------------


@dataclass(frozen=True)
class ValidationIssue:
    code: str
    message: str

    def __str__(self) -> str:
        return f"{self.code}: {self.message}"


def validate(g: DualGraph) -> list[ValidationIssue]:
    """All problems with ``g``; an empty list means the graph is valid."""
    issues = []
    if not g.vertices:
        issues.append(ValidationIssue("Empty", "graph has no vertices"))
        return issues
    for kind, ids in (("vertex", [v.id for v in g.vertices]), ("edge", [e.id for e in g.edges])):
        for i, n in Counter(ids).items():
            if n > 1:
                issues.append(ValidationIssue("DuplicateId", f"{kind} id {i!r} used {n} times"))
    for v in g.vertices:
        if v.multiplicity < 1:
            issues.append(ValidationIssue("BadMultiplicity", f"vertex {v.id}: multiplicity {v.multiplicity} < 1"))
        if v.genus < 0:
            issues.append(ValidationIssue("BadGenus", f"vertex {v.id}: genus {v.genus} < 0"))
        if v.marks < 0:
            issues.append(ValidationIssue("BadMarks", f"vertex {v.id}: marks {v.marks} < 0"))
    known = {v.id for v in g.vertices}
    for e in g.edges:
        for end in e.ends:
            if end not in known:
                issues.append(ValidationIssue("UnknownVertex", f"edge {e.id} ends at unknown vertex {end!r}"))
    if not any(i.code == "UnknownVertex" for i in issues):
        adj = defaultdict(set)
        for e in g.edges:
            adj[e.tail].add(e.head)
            adj[e.head].add(e.tail)
        start = g.vertices[0].id
        seen = {start}
        stack = [start]
        while stack:
            for w in adj[stack.pop()]:
                if w not in seen:
                    seen.add(w)
                    stack.append(w)
        if len(seen) != len(known):
            missing = sorted(known - seen)
            issues.append(ValidationIssue("Disconnected", f"vertices {missing} unreachable from {start}"))
    return issues


def require_valid(g: DualGraph) -> None:
    issues = validate(g)
    if issues:
        raise InvalidGraph(issues)


def is_semistable(g: DualGraph) -> bool:
    return all(v.multiplicity == 1 for v in g.vertices)


# blowup moves -----------------------------------------------------------------


@dataclass(frozen=True)
class NodeBlowup:
    edge: str


@dataclass(frozen=True)
class SmoothPointBlowup:
    vertex: str
    through_mark: bool = False


BlowupMove = Union[NodeBlowup, SmoothPointBlowup]


def _fresh(prefix: str, taken: set[str]) -> str:
    k = 1
    while f"{prefix}{k}" in taken:
        k += 1
    return f"{prefix}{k}"


def apply_blowup(g: DualGraph, move: BlowupMove) -> DualGraph:
    """Blow up a node or a smooth point of the special fiber.

    A node with branch multiplicities ``a, b`` (local equation ``t = x^a y^b``)
    produces an exceptional curve of multiplicity ``a + b``; a smooth point of
    a component of multiplicity ``a`` produces one of multiplicity ``a``.
    """
    vids = {v.id for v in g.vertices}
    eids = {e.id for e in g.edges}
    if isinstance(move, NodeBlowup):
        if move.edge not in eids:
            raise InvalidMove(f"no edge {move.edge!r}")
        e = g.edge(move.edge)
        v, w = g.vertex(e.tail), g.vertex(e.head)
        new_v = Vertex(_fresh("E", vids), 0, v.multiplicity + w.multiplicity, 0)
        taken = eids - {e.id}
        first = _fresh(f"{e.id}.", taken)
        second = _fresh(f"{e.id}.", taken | {first})
        edges = [x for x in g.edges if x.id != e.id]
        edges += [Edge(first, (v.id, new_v.id)), Edge(second, (new_v.id, w.id))]
        return DualGraph(g.name, g.vertices + (new_v,), tuple(edges))
    if isinstance(move, SmoothPointBlowup):
        if move.vertex not in vids:
            raise InvalidMove(f"no vertex {move.vertex!r}")
        v = g.vertex(move.vertex)
        if move.through_mark and v.marks < 1:
            raise NoMarkToMove(f"vertex {v.id} carries no mark")
        leaf = Vertex(_fresh("E", vids), 0, v.multiplicity, 1 if move.through_mark else 0)
        vertices = tuple(
            replace(x, marks=x.marks - 1) if (x.id == v.id and move.through_mark) else x
            for x in g.vertices
        ) + (leaf,)
        edge = Edge(_fresh("f", eids), (v.id, leaf.id))
        return DualGraph(g.name, vertices, g.edges + (edge,))
    raise InvalidMove(f"unknown move {move!r}")


def applicable_moves(g: DualGraph) -> list[BlowupMove]:
    moves: list[BlowupMove] = [NodeBlowup(e.id) for e in sorted(g.edges, key=lambda e: e.id)]
    for v in sorted(g.vertices, key=lambda v: v.id):
        moves.append(SmoothPointBlowup(v.id, False))
        if v.marks:
            moves.append(SmoothPointBlowup(v.id, True))
    return moves


# multiplicity-level invariants --------------------------------------------------


def open_euler_characteristic(g: DualGraph, vid: str) -> int:
    """chi of the component minus its nodes and marks."""
    v = g.vertex(vid)
    return 2 - 2 * v.genus - g.degree(vid) - v.marks


def euler_characteristic_fiber(g: DualGraph) -> int:
    return sum(v.multiplicity * open_euler_characteristic(g, v.id) for v in g.vertices)


def zeta_function(g: DualGraph) -> tuple[tuple[int, int], ...]:
    """``prod_m (1 - t^m)^{e_m}`` as sorted pairs ``(m, e_m)`` with nonzero exponent."""
    exps: dict[int, int] = defaultdict(int)
    for v in g.vertices:
        exps[v.multiplicity] -= open_euler_characteristic(g, v.id)
    return tuple((m, e) for m, e in sorted(exps.items()) if e)


def format_zeta(zeta: Iterable[tuple[int, int]]) -> str:
    parts = [f"(1-t^{m})^{e}" if m != 1 else f"(1-t)^{e}" for m, e in zeta]
    return " ".join(parts) if parts else "1"


# builders ---------------------------------------------------------------------


def tate_ngon(n: int) -> DualGraph:
    """Cycle of ``n`` rational curves (a single nodal curve for n = 1)."""
    if n < 1:
        raise ValueError("n must be >= 1")
    vertices = tuple(Vertex(f"v{i}") for i in range(n))
    edges = tuple(Edge(f"e{i}", (f"v{i}", f"v{(i + 1) % n}")) for i in range(n))
    return DualGraph(f"tate_{n}gon", vertices, edges)


def good_reduction(genus: int) -> DualGraph:
    if genus < 0:
        raise ValueError("genus must be >= 0")
    return DualGraph(f"good_reduction_g{genus}", (Vertex("v0", genus),), ())


def marked_line() -> DualGraph:
    """A single P^1 meeting the horizontal divisor once (a disk as fiber)."""
    return DualGraph("marked_line", (Vertex("v0", 0, 1, 1),), ())
