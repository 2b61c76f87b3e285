"""Bush subshift: per-element direction sets with synchronized data layers.

A bush symbol has five layers: the path layer ``rho``, the bush ``B`` (a
vertex set), marked planes ``D`` (colored edges), marked edges ``I`` (pairs
of a colored vertex and a vertex set) and the data layer ``L``, a sparse map
``(edge, vertex set) -> omega`` where ``omega`` is a bit tuple indexed by
``columns(G)``.  Missing ``L`` keys stand for the blank.

Colored edges are ``((u, cu), (v, cv))``; an edge of ``G`` is stored as a
sorted pair ``(min, max)``.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass, field

from .actions import Action, check_commutation
from .graphs import VertexGraph, is_atomic
from .paths import _rho_getter, gamma, move_set, opposite, path_rule_list, path_witness, symbol_in_alphabet
from .sft import Patch, RuleFailure, RuleSystem, Rule
from .words import IDENTITY, _group, format_word, generators, invert, multiply, other_writing, syllable, tail


class NotAtomic(ValueError):
    pass


class WitnessConflict(RuntimeError):
    """Two quadrants ask for different data at the same ``(element, edge, bush)`` key."""


@dataclass
class BushSymbol:
    rho: dict
    B: frozenset
    D: frozenset = frozenset()
    I: frozenset = frozenset()
    L: dict = field(default_factory=dict)


def columns(G: VertexGraph) -> list:
    """Index set of an omega symbol: the identity followed by the generators."""
    return [IDENTITY] + generators(G)


def edge_key(u, v) -> tuple:
    return (u, v) if u < v else (v, u)


def vertex_colors(G: VertexGraph, v) -> tuple:
    return ("b",) if G.amenable(v) else ("r", "c")


def colored_edges(G: VertexGraph) -> list:
    out = []
    for u, v in G.sorted_edges():
        for a, b in ((u, v), (v, u)):
            for ca in vertex_colors(G, a):
                for cb in vertex_colors(G, b):
                    out.append(((a, ca), (b, cb)))
    return out


def _colored_ok(G, cv) -> bool:
    return isinstance(cv, tuple) and len(cv) == 2 and cv[0] in G.groups and cv[1] in vertex_colors(G, cv[0])


def bush_symbol_ok(G: VertexGraph, s, ncols: int) -> bool:
    if not isinstance(s, BushSymbol) or not symbol_in_alphabet(G, s.rho):
        return False
    V = set(G.groups)
    if not s.B or not set(s.B) <= V:
        return False
    for a, b in s.D:
        if not (_colored_ok(G, a) and _colored_ok(G, b) and G.adjacent(a[0], b[0])):
            return False
    for cv, C in s.I:
        if not _colored_ok(G, cv) or not set(C) <= V:
            return False
    for (e, C), w in s.L.items():
        if not G.adjacent(*e) or not set(C) <= V:
            return False
        if len(w) != ncols or any(b not in (0, 1) for b in w):
            return False
    return True


def _left(G, rho, v, color):
    return syllable(v, rho[v].left(color))


def _connected(G, B) -> bool:
    B = set(B)
    start = next(iter(B))
    seen, todo = {start}, [start]
    while todo:
        x = todo.pop()
        for y in G.adj[x] & B:
            if y not in seen:
                seen.add(y)
                todo.append(y)
    return seen == B


def bush_rule_list(G: VertexGraph, sym_of=lambda s: s) -> list:
    """Rules 2-9 over the bush layers.  ``sym_of`` extracts the bush symbol."""
    cols = columns(G)
    col_index = {c: i for i, c in enumerate(cols)}
    rules = []

    def r2(ctx):
        B = sym_of(ctx.at()).B
        if len(B) < 2:
            raise RuleFailure(f"bush has {len(B)} node(s)")
        if not _connected(G, B):
            raise RuleFailure(f"bush {sorted(B)} is not connected")
        return True

    rules.append(Rule("bush-2", (), r2))

    for v in G.groups:
        link = G.adj[v]
        for a in generators_of(G, v):
            def r3(ctx, a=a, link=link):
                here = sym_of(ctx.at()).B
                there = sym_of(ctx.at(a)).B
                return bool(here & there & link)

            rules.append(Rule("bush-3", (a,), r3))

    def r4(ctx):
        s = sym_of(ctx.at())
        for u, v in itertools.permutations(sorted(s.B), 2):
            if G.adjacent(u, v):
                e = ((u, opposite(s.rho[u].col)), (v, opposite(s.rho[v].col)))
                if e not in s.D:
                    raise RuleFailure(f"plane {e} missing from D")
        return True

    rules.append(Rule("bush-4", (), r4))

    def r6(ctx):
        s = sym_of(ctx.at())
        for u in s.B:
            if ((u, opposite(s.rho[u].col)), s.B) not in s.I:
                raise RuleFailure(f"edge marker for {u} missing from I")
        return True

    rules.append(Rule("bush-6", (), r6))

    for e in colored_edges(G):
        (u, cu), (v, cv) = e
        window = [syllable(u, k) for k in move_set(G, u)] + [syllable(v, k) for k in move_set(G, v)]

        def r5(ctx, e=e, u=u, cu=cu, v=v, cv=cv):
            s = sym_of(ctx.at())
            if e not in s.D:
                return True
            for w, c in ((u, cu), (v, cv)):
                if e not in sym_of(ctx.at(_left(G, s.rho, w, c))).D:
                    raise RuleFailure(f"plane {e} not propagated along {w}")
            return True

        def r8(ctx, e=e, u=u, cu=cu, v=v, cv=cv):
            s = sym_of(ctx.at())
            if e not in s.D:
                return True
            key = edge_key(u, v)
            Lu = sym_of(ctx.at(_left(G, s.rho, u, cu))).L
            Lv = sym_of(ctx.at(_left(G, s.rho, v, cv))).L
            Cs = {C for (k, C) in Lu if k == key} | {C for (k, C) in Lv if k == key}
            for C in sorted(Cs, key=sorted):
                if Lu.get((key, C)) != Lv.get((key, C)):
                    raise RuleFailure(f"L differs across the diagonal for edge {key}, C={sorted(C)}")
            return True

        rules.append(Rule("bush-5", tuple(window), r5))
        rules.append(Rule("bush-8", tuple(window), r8))

    for u in G.groups:
        for cu in vertex_colors(G, u):
            window = [syllable(u, k) for k in move_set(G, u)]

            def r7(ctx, u=u, cu=cu):
                s = sym_of(ctx.at())
                entries = [(cv, C) for cv, C in s.I if cv == (u, cu)]
                if not entries:
                    return True
                there = sym_of(ctx.at(_left(G, s.rho, u, cu))).I
                for item in entries:
                    if item not in there:
                        raise RuleFailure(f"edge marker {(u, cu)} not propagated")
                return True

            rules.append(Rule("bush-7", tuple(window), r7))

            for u2 in sorted(G.adj[u]):
                for a in generators_of(G, u2):
                    ainv = col_index[invert(G, a)]

                    def r9(ctx, u=u, cu=cu, a=a, ainv=ainv):
                        s = sym_of(ctx.at())
                        mine = [C for cv, C in s.I if cv == (u, cu)]
                        if not mine:
                            return True
                        t = sym_of(ctx.at(a))
                        theirs = [C for cv, C in t.I if cv == (u, cu)]
                        for C in mine:
                            for C2 in theirs:
                                for v in sorted(C & G.adj[u]):
                                    for v2 in sorted(C2 & G.adj[u]):
                                        here = s.L.get((edge_key(u, v), C))
                                        there = t.L.get((edge_key(u, v2), C2))
                                        if here is None and there is None:
                                            continue
                                        if here is None or there is None or there[0] != here[ainv]:
                                            raise RuleFailure(
                                                f"cross-bush mismatch on direction {u} (edges {edge_key(u, v)}, {edge_key(u, v2)})"
                                            )
                        return True

                    rules.append(Rule("bush-9", (a,), r9))
    return rules


def generators_of(G, v) -> list:
    grp = _group(G, v)
    return [syllable(v, x) for x in sorted(grp.generators(), key=grp.sort_key)]


def bush_rules(G: VertexGraph) -> RuleSystem:
    for v in G.groups:
        _group(G, v)
    ncols = len(columns(G))
    rules = path_rule_list(G, lambda s: s.rho) + bush_rule_list(G)
    return RuleSystem("bush", G, rules, lambda s: bush_symbol_ok(G, s, ncols))


# ---------------------------------------------------------------- witness

def _check_supported(G):
    for v, grp in G.groups.items():
        if grp.kind not in ("Z", "F"):
            raise ValueError(f"witnesses support Z and free vertex groups, not {grp.kind!r} at {v}")
    if not is_atomic(G):
        raise NotAtomic("graph is not atomic: no bush witness exists")


def bush_of(G: VertexGraph, g) -> frozenset:
    """``(V - tail(g))`` plus every non-amenable vertex."""
    t = tail(G, g)
    B = (frozenset(G.groups) - t) | frozenset(G.nonamenable_vertices())
    assert B == frozenset(G.groups) - (t & frozenset(G.amenable_vertices()))
    return B


class PointTable:
    """``y^(g)_n(s)`` for the witness: column ``s`` is ``s . (g^-1 . x)``."""

    def __init__(self, G: VertexGraph, x_prefix, action: Action):
        self.G = G
        self.x = tuple(int(b) for b in x_prefix)
        self.action = action
        self.cols = columns(G)
        self._cache = {}

    def point(self, g) -> tuple:
        if g not in self._cache:
            G, act = self.G, self.action
            ginv = invert(G, g)
            a = act.apply(G, ginv, self.x)
            b = act.apply(G, other_writing(G, ginv), self.x)
            n = min(len(a), len(b))
            if a[:n] != b[:n]:
                raise ValueError(f"action depends on the writing of an element ({len(ginv)} syllables)")
            self._cache[g] = a[:n]
        return self._cache[g]

    def omegas(self, g) -> list:
        """The omega sequence ``y^(g)`` as far as every column is known."""
        base = self.point(g)
        rows = [self.action.apply(self.G, s, base) for s in self.cols]
        depth = min(len(r) for r in rows)
        return [tuple(r[n] for r in rows) for n in range(depth)]

    def omega(self, g, n) -> tuple:
        key = ("w", g)
        if key not in self._cache:
            self._cache[key] = self.omegas(g)
        seq = self._cache[key]
        if n >= len(seq):
            raise ValueError(f"x_prefix too short: need omega index {n}, have {len(seq)}")
        return seq[n]


def _points(patch, g, v):
    """In-patch absolute elements ``g * gamma_g^v(n)`` for n = 0, 1, ..."""
    G = patch.graph
    out = []
    for rel in gamma(patch, g, v, 2 * patch.radius + 2, lambda s: s):
        h = multiply(G, g, rel)
        if h not in patch.cells:
            break
        out.append(h)
    return out


def bush_witness(G: VertexGraph, radius: int, x_prefix, action: Action) -> Patch:
    """A bush-subshift patch on ``ball(G, radius)`` built from the point ``x``.

    ``D``, ``I`` and ``L`` are the forward closures from every in-patch root;
    the data layer carries ``y^(g)_{n+m-1}`` on the quadrant spanned at ``g``.
    """
    return build_bush(G, radius, x_prefix, action)[0]


def build_bush(G: VertexGraph, radius: int, x_prefix, action: Action):
    """``(bush patch, path patch, point table)``."""
    _check_supported(G)
    check_commutation(G, action, [tuple(int(b) for b in x_prefix)])
    rho_patch = path_witness(G, radius)
    rho = rho_patch.cells
    table = PointTable(G, x_prefix, action)
    B = {g: bush_of(G, g) for g in rho}
    D = {g: set() for g in rho}
    I = {g: set() for g in rho}
    L = {g: {} for g in rho}
    for g0 in sorted(rho, key=lambda w: (len(w), w)):
        bush = B[g0]
        color = {u: opposite(rho[g0][u].col) for u in bush}
        for u in sorted(bush):
            axis = _points(rho_patch, g0, u)
            for h in axis:
                I[h].add(((u, color[u]), bush))
            for v in sorted(bush):
                if v == u or not G.adjacent(u, v):
                    continue
                e = ((u, color[u]), (v, color[v]))
                key = (edge_key(u, v), bush)
                for n, h in enumerate(axis):
                    assert opposite(rho[h][v].col) == color[v]
                    for m, q in enumerate(_points(rho_patch, h, v)):
                        D[q].add(e)
                        if n + m >= 1:
                            w = table.omega(g0, n + m - 1)
                            old = L[q].setdefault(key, w)
                            if old != w:
                                raise WitnessConflict(
                                    f"data layer assigned twice at {format_word(G, q)} for edge {key[0]}, "
                                    f"bush {sorted(bush)} (second root {format_word(G, g0)})"
                                )
    cells = {
        g: BushSymbol(rho[g], B[g], frozenset(D[g]), frozenset(I[g]), L[g])
        for g in rho
    }
    return Patch(G, radius, cells, "bush"), rho_patch, table


# ---------------------------------------------------------------- reading

def _bush_of_symbol(patch):
    if patch.system == "bush":
        return lambda s: s
    return lambda s: s.bush


def read_edge_sequence(patch: Patch, v, depth: int, edge=None) -> list:
    """Omega symbols ``L(gamma^v(n+1))(edge, B(1))`` for ``n < depth``.

    ``edge`` defaults to the least edge of ``G`` inside ``B(1)`` containing ``v``.
    """
    if depth == 0:
        return []
    G = patch.graph
    get = _bush_of_symbol(patch)
    root = get(patch.cells[IDENTITY])
    if v not in root.B:
        raise ValueError(f"vertex {v} is not in the bush at the identity")
    if edge is None:
        options = [edge_key(v, w) for w in sorted(G.adj[v] & root.B)]
        if not options:
            raise ValueError(f"no edge inside the bush contains {v}")
        edge = options[0]
    edge = edge_key(*edge)
    rho_of = _rho_getter(patch)
    rho_view = Patch(G, patch.radius, {g: rho_of(s) for g, s in patch.cells.items()}, "path")
    pts = _points(rho_view, IDENTITY, v)
    if len(pts) < depth + 1:
        raise ValueError(f"path along {v} leaves the patch before depth {depth}")
    return [get(patch.cells[pts[n + 1]]).L.get((edge, root.B)) for n in range(depth)]


def direction_sequences(patch: Patch, depth: int) -> dict:
    """``(v, edge) -> read_edge_sequence`` for every direction and edge in ``B(1)``."""
    G = patch.graph
    root = _bush_of_symbol(patch)(patch.cells[IDENTITY])
    out = {}
    for v in sorted(root.B):
        for w in sorted(G.adj[v] & root.B):
            e = edge_key(v, w)
            out[(v, e)] = read_edge_sequence(patch, v, depth, e)
    return out
