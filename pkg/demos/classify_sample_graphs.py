"""Classify the twelve sample graphs (every vertex group Z).

For each graph we print whether the graph product is self-simulable and,
when it is not, every disconnecting clique found by brute force next to the
one the clique-separator search returns.
"""
from selfsim.fixtures import sample_graphs
from selfsim.graphs import classify, clique_separator_exists, find_disconnecting_cliques


def show(C):
    return "{" + ",".join(map(str, sorted(C))) + "}"


for letter, (G, expected, known) in sample_graphs().items():
    v = classify(G)
    line = f"({letter}) |V|={len(G.vertices):2d} |E|={len(G.sorted_edges()):2d}  self-simulable: {v.self_simulable:3s}"
    if v.witness is not None:
        cuts = find_disconnecting_cliques(G, None, "all")
        line += f"  separator gives {show(clique_separator_exists(G))}, all: {' '.join(show(c) for c in cuts[:6])}"
        if len(cuts) > 6:
            line += " ..."
    print(line)
