"""Path subshift: local move labels whose "left" edges trace injective paths.

Amenable vertices carry ``(l, r, b)``; non-amenable vertices carry
``(l^r, l^c, r, col)`` with ``col`` in ``{r, c}``, a parent move ``r`` and two
colored child moves.  A path symbol is a dict ``vertex -> component``.
"""
from __future__ import annotations

from dataclasses import dataclass

import networkx as nx

from .graphs import VertexGraph
from .sft import Patch, Rule, RuleSystem
from .vertex_groups import FreeGroup, IntegerGroup
from .words import IDENTITY, _group, ball, multiply, project, syllable

COLORS = ("b", "r", "c")
OPPOSITE = {"b": "b", "r": "c", "c": "r"}


def opposite(color: str) -> str:
    return OPPOSITE[color]


@dataclass(frozen=True)
class AmenableStep:
    l: object
    r: object
    col: str = "b"

    def left(self, color):
        return self.l


@dataclass(frozen=True)
class ParadoxStep:
    lr: object
    lc: object
    r: object
    col: str

    def left(self, color):
        return self.lr if color == "r" else self.lc


class MatchingInfeasible(RuntimeError):
    pass


def move_set(G: VertexGraph, v) -> list:
    return _group(G, v).moves()


def symbol_in_alphabet(G: VertexGraph, rho) -> bool:
    if not isinstance(rho, dict) or set(rho) != set(G.groups):
        return False
    for v, comp in rho.items():
        K = move_set(G, v)
        if G.amenable(v):
            if not isinstance(comp, AmenableStep) or comp.col != "b" or comp.l not in K or comp.r not in K:
                return False
        else:
            if not isinstance(comp, ParadoxStep) or comp.col not in ("r", "c"):
                return False
            if any(m not in K for m in (comp.lr, comp.lc, comp.r)):
                return False
    return True


def _rule(name, window, fn):
    return Rule(name, tuple(window), fn)


def path_rule_list(G: VertexGraph, rho_of=lambda s: s) -> list:
    """Rules 1-6 of the path subshift.  ``rho_of`` extracts the path layer
    from a cell symbol so richer systems can reuse these rules."""
    rules = []
    for v, grp in G.groups.items():
        K = [syllable(v, k) for k in move_set(G, v)]
        inv = grp.inv
        if G.amenable(v):
            def r1(ctx, v=v, inv=inv):
                l = rho_of(ctx.at())[v].l
                other = rho_of(ctx.at(syllable(v, l)))[v]
                return other.r == inv(l)

            def r2(ctx, v=v, inv=inv):
                r = rho_of(ctx.at())[v].r
                other = rho_of(ctx.at(syllable(v, r)))[v]
                return other.l == inv(r)

            rules += [_rule("path-1", K, r1), _rule("path-2", K, r2)]
        else:
            def child(color, v=v, inv=inv):
                def chk(ctx):
                    m = rho_of(ctx.at())[v].left(color)
                    kid = rho_of(ctx.at(syllable(v, m)))[v]
                    return kid.col == color and kid.r == inv(m)
                return chk

            def r5(ctx, v=v, inv=inv):
                me = rho_of(ctx.at())[v]
                parent = rho_of(ctx.at(syllable(v, me.r)))[v]
                return parent.left(me.col) == inv(me.r)

            rules += [_rule("path-3", K, child("r")), _rule("path-4", K, child("c")), _rule("path-5", K, r5)]
    for u in G.groups:
        for v in sorted(G.adj[u]):
            for a in generators_at(G, v):
                def r6(ctx, u=u, a=a):
                    return rho_of(ctx.at())[u] == rho_of(ctx.at(a))[u]
                rules.append(_rule("path-6", [a], r6))
    return rules


def generators_at(G, v) -> list:
    grp = _group(G, v)
    return [syllable(v, x) for x in sorted(grp.generators(), key=grp.sort_key)]


def path_rules(G: VertexGraph) -> RuleSystem:
    for v in G.groups:
        _group(G, v)
    return RuleSystem("path", G, path_rule_list(G), lambda s: symbol_in_alphabet(G, s))


def gamma(patch: Patch, g, v, n_max: int, rho_of=None) -> list:
    """``[gamma(0), ..., gamma(n)]`` relative to ``g``, following left moves of the
    color opposite to the color of ``v`` at the root, while inside the patch."""
    if rho_of is None:
        rho_of = _rho_getter(patch)
    if g not in patch.cells:
        raise KeyError("root element is not in the patch")
    G = patch.graph
    color = opposite(rho_of(patch.cells[g])[v].col)
    out = [IDENTITY]
    cur = IDENTITY
    for _ in range(n_max):
        h = multiply(G, g, cur)
        if h not in patch.cells:
            break
        step = rho_of(patch.cells[h])[v].left(color)
        cur = multiply(G, cur, syllable(v, step))
        out.append(cur)
    return out


def _rho_getter(patch):
    if patch.system == "path":
        return lambda s: s
    if patch.system == "bush":
        return lambda s: s.rho
    return lambda s: s.bush.rho


# ---------------------------------------------------------------- witnesses

def _free_ball(F: FreeGroup, radius: int) -> list:
    out = [()]
    sphere = [()]
    for _ in range(radius):
        nxt = []
        for w in sphere:
            for s in F.generators():
                h = F.mul(w, s)
                if len(h) == len(w) + 1:
                    nxt.append(h)
        sphere = sorted(nxt, key=F.sort_key)
        out += sphere
    return out


def paradoxical_labels(F: FreeGroup, radius: int) -> dict:
    """Parent/child labels on the radius-``radius`` ball of a free group.

    Elements of length <= radius - 2 get exactly one in-ball parent and exactly
    two in-ball children (one per color); elements near the boundary may point
    outside the ball.  Solved as a min-cost circulation that saturates the
    interior supplies and demands.
    """
    K = F.moves()
    elems = _free_ball(F, radius)
    inside = set(elems)
    interior = {x for x in elems if len(x) <= radius - 2}
    big = 10 * (len(elems) + 1)
    net = nx.DiGraph()
    net.add_edge("t", "s", capacity=3 * len(elems), weight=0)
    for x in elems:
        net.add_edge("s", ("p", x), capacity=2, weight=-big if x in interior else 0)
        net.add_edge(("h", x), "t", capacity=1, weight=-big if x in interior else 0)
    for x in elems:
        for k in K:
            h = F.mul(x, k)
            if h in inside:
                net.add_edge(("p", x), ("h", h), capacity=1, weight=len(k))
    _, flow = nx.network_simplex(net)
    children = {x: [] for x in elems}
    for x in elems:
        for (_, h), f in flow[("p", x)].items():
            if f:
                children[x].append(h)
    has_parent = {h for kids in children.values() for h in kids}
    short = [x for x in interior if len(children[x]) != 2 or x not in has_parent]
    if short:
        raise MatchingInfeasible(f"no exact 2-to-1 parent map on the radius-{radius} ball ({len(short)} interior gaps)")
    labels: dict = {}
    parent_of: dict = {}
    for x in elems:
        kids = sorted(children[x], key=F.sort_key)
        moves = [F.mul(F.inv(x), h) for h in kids]
        outside = [k for k in K if len(F.mul(x, k)) > radius]
        while len(moves) < 2:
            moves.append(outside.pop(0))
        for color, h in zip(("r", "c"), kids):
            parent_of[h] = (x, color)
        labels[x] = [moves[0], moves[1]]
    out = {}
    for x in elems:
        if x in parent_of:
            p, col = parent_of[x]
            r = F.mul(F.inv(x), p)
        else:
            r = next(k for k in K if len(F.mul(x, k)) > radius)
            col = "r"
        out[x] = ParadoxStep(labels[x][0], labels[x][1], r, col)
    return out


def path_witness(G: VertexGraph, radius: int) -> Patch:
    """A path-subshift patch on ball(G, radius) with injective paths.

    Z vertices use the translation ``l = +1, r = -1``; free-group vertices use
    a per-ball paradoxical labelling.  Every component depends only on the
    projection to its own vertex group.
    """
    tables = {}
    for v, grp in G.groups.items():
        if isinstance(grp, IntegerGroup):
            tables[v] = None
        elif isinstance(grp, FreeGroup):
            tables[v] = paradoxical_labels(grp, radius)
        else:
            raise ValueError(f"path witness supports Z and free vertex groups, not {grp.kind!r} at {v}")
    const = AmenableStep(1, -1)
    cells = {}
    for g in ball(G, radius):
        rho = {}
        for v in G.groups:
            rho[v] = const if tables[v] is None else tables[v][project(G, g, v)]
        cells[g] = rho
    return Patch(G, radius, cells, "path")


# ---------------------------------------------------------------- analysis

def paths_injective(patch: Patch, n_max: int | None = None) -> bool:
    """Every in-patch path ``n -> gamma_g^v(n)`` visits pairwise distinct elements."""
    n_max = 2 * patch.radius + 2 if n_max is None else n_max
    for g in patch.cells:
        for v in patch.graph.groups:
            pts = gamma(patch, g, v, n_max)
            if len(set(pts)) != len(pts):
                return False
    return True


def parent_structure(patch: Patch, v) -> tuple:
    """Check the exactly-2-to-1 parent map at non-amenable ``v``.

    The matched region is the set of cells all of whose ``K_v``-neighbours are
    in the patch.  Returns ``(ok, region_size)``: ``ok`` iff every region cell
    has exactly two in-patch children, one of each color.
    """
    G = patch.graph
    K = [syllable(v, k) for k in move_set(G, v)]
    kids: dict = {}
    for h, s in patch.cells.items():
        comp = s[v]
        p = multiply(G, h, syllable(v, comp.r))
        kids.setdefault(p, []).append(comp.col)
    region = [g for g in patch.cells if all(multiply(G, g, k) in patch.cells for k in K)]
    ok = all(sorted(kids.get(g, [])) == ["c", "r"] for g in region)
    return ok, len(region)
