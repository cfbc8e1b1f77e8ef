"""Built-in dual graphs, random semistable graphs, and extra graphs from disk."""

from __future__ import annotations

import os
import random
from pathlib import Path

from .degen import DualGraph, Edge, Vertex, good_reduction, load_graph, marked_line, tate_ngon, validate

CORPUS_ENV = "LOGKN_CORPUS"


def builtin_graphs() -> list[DualGraph]:
    graphs = [tate_ngon(n) for n in range(1, 7)]
    graphs += [good_reduction(g) for g in range(4)]
    graphs.append(marked_line())
    graphs += [
        DualGraph("bridge_g1_g1", (Vertex("a", 1), Vertex("b", 1)), (Edge("e", ("a", "b")),)),
        DualGraph(
            "theta",
            (Vertex("a"), Vertex("b")),
            (Edge("x", ("a", "b")), Edge("y", ("b", "a")), Edge("z", ("a", "b"))),
        ),
        DualGraph(
            "loop_on_genus2",
            (Vertex("v", 2),),
            (Edge("l", ("v", "v")),),
        ),
        DualGraph(
            "chain_with_marks",
            (Vertex("a", 0, 1, 2), Vertex("b", 1, 1, 0), Vertex("c", 0, 1, 1)),
            (Edge("e1", ("a", "b")), Edge("e2", ("b", "c"))),
        ),
        DualGraph(
            "banana_loops_marks",
            (Vertex("a", 0, 1, 1), Vertex("b", 1, 1, 1)),
            (Edge("x", ("a", "b")), Edge("y", ("b", "a")), Edge("l", ("b", "b"))),
        ),
        DualGraph(
            "k4",
            tuple(Vertex(f"v{i}") for i in range(4)),
            tuple(
                Edge(f"e{i}{j}", (f"v{i}", f"v{j}")) for i in range(4) for j in range(i + 1, 4)
            ),
        ),
        DualGraph(
            "nonreduced_chain",
            (Vertex("a", 0, 1), Vertex("b", 0, 2), Vertex("c", 0, 1)),
            (Edge("e1", ("a", "b")), Edge("e2", ("b", "c"))),
        ),
    ]
    return graphs


def random_semistable_graph(
    rng: random.Random,
    max_vertices: int = 8,
    max_edges: int = 10,
    max_genus: int = 3,
    max_marks: int = 2,
    name: str = "random",
) -> DualGraph:
    """Connected, reduced: a random spanning tree plus extra edges (loops allowed)."""
    nv = rng.randint(1, max_vertices)
    vertices = tuple(
        Vertex(f"v{i}", rng.randint(0, max_genus), 1, rng.choice([0, 0, 0] + list(range(1, max_marks + 1))))
        for i in range(nv)
    )
    pairs = [(f"v{rng.randrange(i)}", f"v{i}") for i in range(1, nv)]
    extra = rng.randint(0, max_edges - len(pairs))
    for _ in range(extra):
        pairs.append((f"v{rng.randrange(nv)}", f"v{rng.randrange(nv)}"))
    rng.shuffle(pairs)
    edges = []
    for k, (a, b) in enumerate(pairs):
        if rng.random() < 0.5:
            a, b = b, a
        edges.append(Edge(f"e{k}", (a, b)))
    return DualGraph(name, vertices, tuple(edges))


def random_corpus(count: int, seed: int = 0, **kwargs) -> list[DualGraph]:
    rng = random.Random(seed)
    return [random_semistable_graph(rng, name=f"random_{seed}_{i}", **kwargs) for i in range(count)]


def extra_graphs() -> list[DualGraph]:
    """Valid graphs from ``$LOGKN_CORPUS/*.json``, if the variable is set."""
    root = os.environ.get(CORPUS_ENV)
    if not root:
        return []
    out = []
    for path in sorted(Path(root).glob("*.json")):
        g = load_graph(path)
        if not validate(g):
            out.append(g)
    return out


def corpus(random_count: int = 20, seed: int = 0) -> list[DualGraph]:
    return builtin_graphs() + random_corpus(random_count, seed) + extra_graphs()


def semistable_corpus(random_count: int = 20, seed: int = 0) -> list[DualGraph]:
    return [g for g in corpus(random_count, seed) if all(v.multiplicity == 1 for v in g.vertices)]
