"""Sample graphs (all vertex groups Z unless noted) and standard inputs."""
from __future__ import annotations

import itertools

from .graphs import VertexGraph


def cycle(n: int) -> VertexGraph:
    return VertexGraph.build(range(1, n + 1), [(i, i % n + 1) for i in range(1, n + 1)])


def path_graph(n: int) -> VertexGraph:
    return VertexGraph.build(range(1, n + 1), [(i, i + 1) for i in range(1, n)])


def complement(G: VertexGraph) -> VertexGraph:
    vs = G.vertices
    edges = [(u, v) for u, v in itertools.combinations(vs, 2) if not G.adjacent(u, v)]
    return VertexGraph.build(vs, edges, G.groups)


def petersen() -> VertexGraph:
    outer = [(i, i % 5 + 1) for i in range(1, 6)]
    spokes = [(i, i + 5) for i in range(1, 6)]
    inner = [(i + 5, (i + 1) % 5 + 6) for i in range(1, 6)]
    return VertexGraph.build(range(1, 11), outer + spokes + inner)


# letter -> (graph, expected self-simulable verdict, a known disconnecting clique or None)
def sample_graphs() -> dict:
    two_squares = [(1, 2), (2, 3), (3, 4), (4, 1), (5, 6), (6, 7), (7, 8), (8, 5), (2, 8)]
    sierpinski = [(1, 2), (2, 3), (3, 5), (5, 6), (6, 4), (4, 5), (5, 2), (2, 4), (4, 1)]
    return {
        "a": (cycle(3), False, {1, 2, 3}),
        "b": (cycle(4), True, None),
        "c": (cycle(5), True, None),
        "d": (path_graph(3), False, {2}),
        "e": (VertexGraph.build([1, 2, 3], []), False, set()),
        "f": (VertexGraph.build(range(1, 9), two_squares), False, {2, 8}),
        "g": (complement(path_graph(6)), True, None),
        "h": (complement(path_graph(5)), False, {1, 5}),
        "i": (complement(cycle(7)), True, None),
        "j": (complement(cycle(6)), True, None),
        "k": (VertexGraph.build(range(1, 7), sierpinski), False, {2, 4, 5}),
        "l": (petersen(), True, None),
    }


def alternating_bits(n: int) -> list:
    """The prefix 0101... of length n."""
    return [i % 2 for i in range(n)]
