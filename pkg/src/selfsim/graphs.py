"""Defining graphs, disconnecting cliques and the classification verdicts."""
from __future__ import annotations

import itertools
import json
from dataclasses import dataclass, field

from .vertex_groups import IntegerGroup, group_from_json

YES, NO, OUT_OF_SCOPE = "Yes", "No", "OutOfTheoremScope"


class GraphError(ValueError):
    """Malformed or invalid graph input.  ``location`` names where it went wrong."""

    def __init__(self, message, location=None):
        self.location = location
        super().__init__(message if location is None else f"{location}: {message}")


class OutOfTheoremScope(ValueError):
    pass


@dataclass(frozen=True, eq=False)
class VertexGraph:
    """Finite simple graph whose vertices carry vertex groups.

    ``vertices`` maps id -> group; iteration order is always ascending id.
    Instances are treated as immutable; ``_cache`` holds memoized products.
    """

    groups: dict
    edges: frozenset
    adj: dict = field(init=False, repr=False)
    _cache: dict = field(init=False, repr=False, default_factory=dict)

    def __post_init__(self):
        adj = {v: set() for v in self.groups}
        for e in self.edges:
            u, v = tuple(e)
            adj[u].add(v)
            adj[v].add(u)
        object.__setattr__(self, "adj", {v: frozenset(adj[v]) for v in sorted(adj)})
        object.__setattr__(self, "groups", {v: self.groups[v] for v in sorted(self.groups)})

    @classmethod
    def build(cls, vertices, edges, groups=None):
        """Validate and build.  ``groups`` maps id -> VertexGroup (default: Z)."""
        vertices = list(vertices)
        if len(set(vertices)) != len(vertices):
            raise GraphError("duplicate vertex id")
        groups = dict(groups or {})
        vs = set(vertices)
        seen = set()
        for k, (u, v) in enumerate(edges):
            if u not in vs or v not in vs:
                raise GraphError(f"edge ({u}, {v}) has an unknown endpoint", f"edge {k}")
            if u == v:
                raise GraphError(f"self-loop at {u}", f"edge {k}")
            e = frozenset((u, v))
            if e in seen:
                raise GraphError(f"duplicate edge ({u}, {v})", f"edge {k}")
            seen.add(e)
        return cls({v: groups.get(v, IntegerGroup()) for v in vertices}, frozenset(seen))

    @property
    def vertices(self) -> list:
        return list(self.groups)

    def __len__(self):
        return len(self.groups)

    def __repr__(self):
        es = sorted(tuple(sorted(e)) for e in self.edges)
        return f"VertexGraph(V={self.vertices}, E={es})"

    def __eq__(self, other):
        if not isinstance(other, VertexGraph):
            return NotImplemented
        return self.groups == other.groups and self.edges == other.edges

    def __hash__(self):
        return hash((tuple(self.groups.items()), self.edges))

    def adjacent(self, u, v) -> bool:
        return v in self.adj[u]

    def is_clique(self, vs) -> bool:
        vs = list(vs)
        return all(self.adjacent(a, b) for a, b in itertools.combinations(vs, 2))

    def is_complete(self) -> bool:
        return self.is_clique(self.vertices)

    def amenable(self, v) -> bool:
        return self.groups[v].amenable

    def amenable_vertices(self) -> frozenset:
        return frozenset(v for v, g in self.groups.items() if g.amenable)

    def nonamenable_vertices(self) -> frozenset:
        return frozenset(v for v, g in self.groups.items() if not g.amenable)

    def sorted_edges(self) -> list:
        return sorted(tuple(sorted(e)) for e in self.edges)

    def components(self, removed=()) -> list:
        removed = set(removed)
        left = [v for v in self.vertices if v not in removed]
        seen, comps = set(), []
        for s in left:
            if s in seen:
                continue
            comp, stack = [], [s]
            seen.add(s)
            while stack:
                x = stack.pop()
                comp.append(x)
                for y in self.adj[x]:
                    if y not in removed and y not in seen:
                        seen.add(y)
                        stack.append(y)
            comps.append(sorted(comp))
        return comps

    def to_json(self) -> dict:
        return {
            "vertices": [{"id": v, "group": g.to_json()} for v, g in self.groups.items()],
            "edges": [list(e) for e in self.sorted_edges()],
        }


def parse_vertex_graph(text: str) -> VertexGraph:
    """Parse the JSON graph format or a plain ``u v`` edge list (all vertices Z)."""
    stripped = text.strip()
    if stripped.startswith("{"):
        try:
            data = json.loads(stripped)
        except json.JSONDecodeError as exc:
            raise GraphError(f"malformed JSON: {exc.msg}", f"line {exc.lineno} col {exc.colno}") from None
        return graph_from_json(data)
    vertices, edges = [], []
    for lineno, line in enumerate(text.splitlines(), 1):
        line = line.split("#", 1)[0].strip()
        if not line:
            continue
        parts = line.split()
        try:
            ids = [int(p) for p in parts]
        except ValueError:
            raise GraphError(f"expected integer ids, got {line!r}", f"line {lineno}") from None
        if len(ids) == 1:
            pass
        elif len(ids) == 2:
            if ids[0] == ids[1]:
                raise GraphError(f"self-loop at {ids[0]}", f"line {lineno}")
            edges.append((ids[0], ids[1]))
        else:
            raise GraphError(f"expected 'u v', got {line!r}", f"line {lineno}")
        for i in ids:
            if i not in vertices:
                vertices.append(i)
    seen = set()
    for k, (u, v) in enumerate(edges):
        if frozenset((u, v)) in seen:
            raise GraphError(f"duplicate edge ({u}, {v})", f"edge {k}")
        seen.add(frozenset((u, v)))
    return VertexGraph.build(vertices, edges)


def graph_from_json(data: dict) -> VertexGraph:
    if not isinstance(data, dict) or "vertices" not in data:
        raise GraphError("graph JSON needs a 'vertices' list")
    vertices, groups = [], {}
    for k, entry in enumerate(data["vertices"]):
        where = f"vertices[{k}]"
        if isinstance(entry, int):
            vid, gdata = entry, {"kind": "Z"}
        elif isinstance(entry, dict) and isinstance(entry.get("id"), int):
            vid, gdata = entry["id"], entry.get("group", {"kind": "Z"})
        else:
            raise GraphError("vertex entry needs an integer 'id'", where)
        if vid in groups:
            raise GraphError(f"duplicate vertex id {vid}", where)
        try:
            groups[vid] = group_from_json(gdata)
        except (ValueError, KeyError, TypeError) as exc:
            raise GraphError(str(exc), where) from None
        vertices.append(vid)
    edges = []
    for k, e in enumerate(data.get("edges", [])):
        if not (isinstance(e, (list, tuple)) and len(e) == 2):
            raise GraphError("edge must be a pair", f"edges[{k}]")
        edges.append((e[0], e[1]))
    return VertexGraph.build(vertices, edges, groups)


def _check_ids(G, vs):
    bad = [v for v in vs if v not in G.groups]
    if bad:
        raise GraphError(f"unknown vertex id(s) {sorted(bad)}")


def is_disconnecting(G: VertexGraph, C) -> bool:
    """True iff removing ``C`` leaves a number of components other than one.

    Removing every vertex leaves zero components, so ``C = V`` counts.
    """
    C = set(C)
    _check_ids(G, C)
    return len(G.components(C)) != 1


def _cliques_in(G, restrict):
    """All cliques (including the empty one) inside ``restrict``, size then lex."""
    pool = sorted(restrict)
    for k in range(len(pool) + 1):
        for combo in itertools.combinations(pool, k):
            if G.is_clique(combo):
                yield frozenset(combo)


def find_disconnecting_cliques(G: VertexGraph, restrict=None, mode="all") -> list:
    """Brute-force enumeration of disconnecting cliques inside ``restrict``.

    Every clique is tried, not only maximal ones: adding a vertex to a
    separator can absorb a whole component and reconnect the rest.
    """
    restrict = set(G.vertices if restrict is None else restrict)
    _check_ids(G, restrict)
    if mode not in ("first", "all"):
        raise ValueError(f"mode must be 'first' or 'all', got {mode!r}")
    found = []
    for C in _cliques_in(G, restrict):
        if is_disconnecting(G, C):
            found.append(C)
            if mode == "first":
                break
    return found


def minimal_elimination_ordering(G: VertexGraph):
    """MCS-M.  Returns (order, fill) where ``order[i]`` is eliminated i-th and
    ``fill`` is the adjacency of the minimal triangulation."""
    weight = {v: 0 for v in G.vertices}
    numbered: dict = {}
    H = {v: set(G.adj[v]) for v in G.vertices}
    n = len(G)
    for number in range(n, 0, -1):
        unnumbered = [v for v in G.vertices if v not in numbered]
        # highest weight, smallest id on ties
        x = max(unnumbered, key=lambda v: (weight[v], -v))
        numbered[x] = number
        rest = [v for v in unnumbered if v != x]
        # bottleneck search: best[y] = least possible max weight of the
        # intermediate vertices on a path x .. y through unnumbered vertices
        best = {v: float("inf") for v in rest}
        frontier = []
        for y in G.adj[x]:
            if y in best:
                best[y] = -1
                frontier.append(y)
        while frontier:
            frontier.sort(key=lambda v: best[v])
            y = frontier.pop(0)
            through = max(best[y], weight[y])
            for z in G.adj[y]:
                if z in best and through < best[z]:
                    best[z] = through
                    frontier.append(z)
        reach = [y for y in rest if best[y] < weight[y] or best[y] == -1]
        for y in reach:
            weight[y] += 1
            H[x].add(y)
            H[y].add(x)
    order = sorted(numbered, key=numbered.get)
    return order, H


def clique_separator_exists(G: VertexGraph, amenable_only: bool = False):
    """Some disconnecting clique (all-amenable if ``amenable_only``), or None.

    Disconnected graphs give the empty set, complete graphs give V; otherwise
    the candidates are the minimal separators of a minimal triangulation
    (the later-numbered neighbourhoods along an MCS-M ordering), and a clique
    minimal separator of G is always among them.
    """
    ok = (lambda C: all(G.amenable(v) for v in C)) if amenable_only else (lambda C: True)
    if len(G.components()) != 1:
        return frozenset()
    if G.is_complete():
        V = frozenset(G.vertices)
        return V if ok(V) else None
    order, H = minimal_elimination_ordering(G)
    pos = {v: i for i, v in enumerate(order)}
    seen = set()
    for x in order:
        S = frozenset(y for y in H[x] if pos[y] > pos[x])
        if S in seen or len(S) == len(G) - 1:
            continue
        seen.add(S)
        if ok(S) and G.is_clique(S) and is_disconnecting(G, S):
            return S
    return None


def _require_infinite(G):
    finite = [v for v, g in G.groups.items() if not g.infinite]
    if finite:
        raise OutOfTheoremScope(f"finite vertex group at {finite}")


def is_atomic(G: VertexGraph) -> bool:
    """No all-amenable disconnecting clique, and not a clique with < 2 non-amenable vertices."""
    _require_infinite(G)
    if find_disconnecting_cliques(G, G.amenable_vertices(), "first"):
        return False
    return len(G.nonamenable_vertices()) >= 2 or not G.is_complete()


@dataclass(frozen=True)
class Verdict:
    self_simulable: str
    splits_over_amenable: str
    witness: frozenset | None = None
    reason: str | None = None

    def to_json(self) -> dict:
        d = {"self_simulable": self.self_simulable, "splits_over_amenable": self.splits_over_amenable}
        d["witness"] = None if self.witness is None else sorted(self.witness)
        if self.reason:
            d["reason"] = self.reason
        return d


def classify(G: VertexGraph, method: str = "bruteforce") -> Verdict:
    """Self-simulability and amenable-splitting verdict for the graph product."""
    if any(not g.infinite for g in G.groups.values()):
        return Verdict(OUT_OF_SCOPE, OUT_OF_SCOPE, reason="finite vertex group")
    if G.is_complete() and len(G.nonamenable_vertices()) == 1:
        return Verdict(OUT_OF_SCOPE, OUT_OF_SCOPE, reason="clique with one non-amenable node")
    if method == "bruteforce":
        found = find_disconnecting_cliques(G, G.amenable_vertices(), "first")
        witness = found[0] if found else None
    elif method == "separator":
        witness = clique_separator_exists(G, amenable_only=True)
    else:
        raise ValueError(f"unknown method {method!r}")
    if witness is None:
        return Verdict(YES, NO)
    return Verdict(NO, YES, witness)
