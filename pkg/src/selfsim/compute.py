"""Computation subshift: bush layers plus a marked plane per element carrying
a seeded Wang tiling of the machine run on that element's data.

A compute symbol adds ``P`` (marked planes, colored edges) and ``T`` (colored
edge -> tile id).  On a marked plane ``((u, cu), (v, cv))`` the ``u``
direction is horizontal and ``v`` vertical.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass, field

from .actions import Action
from .bushes import (BushSymbol, _points, build_bush, bush_rule_list, bush_symbol_ok, colored_edges, columns,
                     edge_key, read_edge_sequence)
from .graphs import VertexGraph
from .paths import _rho_getter, move_set, opposite, path_rule_list
from .sft import Patch, RuleFailure, Rule, RuleSystem, Violation, ViolationReport
from .tiling import TuringMachine, WangTileset, compile_tm_to_tiles, run_tiling
from .words import IDENTITY, _group, format_word, syllable


class PatchInconsistency(ValueError):
    pass


@dataclass
class ComputeSymbol:
    bush: BushSymbol
    P: frozenset = frozenset()
    T: dict = field(default_factory=dict)


def omega_str(w) -> str:
    return "".join(str(b) for b in w)


def omega_alphabet(G: VertexGraph) -> list:
    """Every omega symbol of ``G`` as a bit string, in lexicographic order."""
    return ["".join(bits) for bits in itertools.product("01", repeat=len(columns(G)))]


def marked_planes(s: ComputeSymbol) -> list:
    """Entries of ``P`` inside the bush whose colors are opposite the path colors."""
    rho, B = s.bush.rho, s.bush.B
    out = []
    for e in sorted(s.P):
        (u, cu), (v, cv) = e
        if u in B and v in B and cu == opposite(rho[u].col) and cv == opposite(rho[v].col):
            out.append(e)
    return out


def compute_rules(G: VertexGraph, ts: WangTileset) -> RuleSystem:
    for v in G.groups:
        _group(G, v)
    ncols = len(columns(G))
    tiles = ts.tiles
    rules = path_rule_list(G, lambda s: s.bush.rho) + bush_rule_list(G, lambda s: s.bush)

    def r2(ctx):
        found = marked_planes(ctx.at())
        if len(found) != 1:
            raise RuleFailure(f"{len(found)} marked planes inside the bush")
        return True

    def r4(ctx):
        s = ctx.at()
        for e in marked_planes(s):
            if s.T.get(e) != ts.seed:
                raise RuleFailure(f"plane {e} is not seeded at its root")
        return True

    rules += [Rule("compute-2", (), r2), Rule("compute-4", (), r4)]

    for e in colored_edges(G):
        (u, cu), (v, cv) = e
        key = edge_key(u, v)
        Ku = [syllable(u, k) for k in move_set(G, u)]
        Kv = [syllable(v, k) for k in move_set(G, v)]

        def r3(ctx, e=e, u=u, cu=cu, v=v, cv=cv):
            s = ctx.at()
            if e not in s.P:
                return True
            for w, c in ((u, cu), (v, cv)):
                if e not in ctx.at(syllable(w, s.bush.rho[w].left(c))).P:
                    raise RuleFailure(f"plane {e} not propagated along {w}")
            return True

        def r5(ctx, e=e, u=u, cu=cu, v=v, key=key):
            s = ctx.at()
            if e not in s.P:
                return True
            t = s.T.get(e)
            if t is None:
                raise RuleFailure(f"no tile on marked plane {e}")
            if t == ts.seed:
                return True
            for cvx, C in sorted(s.bush.I, key=repr):
                if cvx != (u, cu) or not {u, v} <= C:
                    continue
                w = s.bush.L.get((key, C))
                if w is None or ts.omega.get(omega_str(w)) != t:
                    raise RuleFailure(f"tile {t} disagrees with data {w} on edge {key}")
            return True

        def r6(ctx, e=e, u=u, cu=cu, v=v, cv=cv):
            s = ctx.at()
            if e not in s.P:
                return True
            t = s.T.get(e)
            if t is None:
                raise RuleFailure(f"no tile on marked plane {e}")
            me = tiles[t]
            rho = s.bush.rho
            for w, c, fwd, back in ((u, cu, "e", "w"), (v, cv, "n", "s")):
                ahead = ctx.at(syllable(w, rho[w].left(c))).T.get(e)
                if ahead is not None and getattr(me, fwd) != getattr(tiles[ahead], back):
                    raise RuleFailure(f"tile mismatch towards {w}")
                if rho[w].col == c:
                    # this cell is a c-child along w, so its parent move steps back on the plane
                    behind = ctx.at(syllable(w, rho[w].r)).T.get(e)
                    if behind is not None and getattr(me, back) != getattr(tiles[behind], fwd):
                        raise RuleFailure(f"tile mismatch behind along {w}")
            return True

        rules += [
            Rule("compute-3", tuple(Ku + Kv), r3),
            Rule("compute-5", (), r5),
            Rule("compute-6", tuple(Ku + Kv), r6),
        ]

    def accepts(s):
        if not isinstance(s, ComputeSymbol) or not bush_symbol_ok(G, s.bush, ncols):
            return False
        return all(0 <= t < len(tiles) for t in s.T.values())

    return RuleSystem("compute", G, rules, accepts)


# ---------------------------------------------------------------- witness

def least_edge(G: VertexGraph, B) -> tuple:
    for e in G.sorted_edges():
        if set(e) <= B:
            return e
    raise ValueError(f"bush {sorted(B)} contains no edge")


def compute_witness(G: VertexGraph, radius: int, x_prefix, action: Action, m: TuringMachine,
                    ts: WangTileset | None = None) -> Patch:
    """Bush witness plus, at every root, the tiling of ``m`` run on ``y^(g)``.

    Raises MachineHalts if the run halts inside some visible window.
    """
    bush, rho_patch, table = build_bush(G, radius, x_prefix, action)
    if ts is None:
        ts = compile_tm_to_tiles(m, omega_alphabet(G))
    P = {g: set() for g in bush.cells}
    T = {g: {} for g in bush.cells}
    rho = rho_patch.cells
    for g0 in sorted(bush.cells, key=lambda w: (len(w), w)):
        B = bush.cells[g0].B
        u, v = least_edge(G, B)
        e = ((u, opposite(rho[g0][u].col)), (v, opposite(rho[g0][v].col)))
        quad = {}
        for n, h in enumerate(_points(rho_patch, g0, u)):
            for k, q in enumerate(_points(rho_patch, h, v)):
                quad[(n, k)] = q
        width = 1 + max(n for n, _ in quad)
        height = 1 + max(k for _, k in quad)
        ys = table.omegas(g0)
        need = width - 1 + height
        if len(ys) < width - 1:
            raise ValueError(f"x_prefix too short for a width-{width} window")
        tape = [omega_str(w) for w in ys[:need]]
        grid = run_tiling(m, ts, tape, width, height)
        for pos, q in quad.items():
            P[q].add(e)
            old = T[q].setdefault(e, grid[pos])
            if old != grid[pos]:
                raise AssertionError(f"two tiles requested for plane {e} at {format_word(G, q)}")
    cells = {g: ComputeSymbol(s, frozenset(P[g]), T[g]) for g, s in bush.cells.items()}
    out = Patch(G, radius, cells, "compute")
    out.tileset = ts
    return out


def root_grid(patch: Patch, g) -> dict:
    """The tiling ``(n, m) -> tile`` on the marked plane rooted at ``g``."""
    G = patch.graph
    s = patch.cells[g]
    planes = marked_planes(s)
    if len(planes) != 1:
        raise PatchInconsistency(f"{len(planes)} marked planes at the root")
    e = planes[0]
    (u, _), (v, _) = e
    rho_of = _rho_getter(patch)
    view = Patch(G, patch.radius, {h: rho_of(c) for h, c in patch.cells.items()}, "path")
    grid = {}
    for n, h in enumerate(_points(view, g, u)):
        for k, q in enumerate(_points(view, h, v)):
            t = patch.cells[q].T.get(e)
            if t is not None:
                grid[(n, k)] = t
    return grid


def _available_depth(patch: Patch, v) -> int:
    G = patch.graph
    rho_of = _rho_getter(patch)
    view = Patch(G, patch.radius, {h: rho_of(c) for h, c in patch.cells.items()}, "path")
    return len(_points(view, IDENTITY, v)) - 1


def beta(patch: Patch, depth: int | None = None) -> list:
    """Identity-column bits read off the data layer along the bush at the identity.

    Every direction ``v`` in ``B(1)`` is read through every edge of the bush
    containing ``v``; all readings must agree.  ``depth=None`` reads as far as
    every direction stays inside the patch.
    """
    G = patch.graph
    root = patch.cells[IDENTITY]
    B = root.bush.B if patch.system == "compute" else root.B
    if depth is None:
        depth = min(_available_depth(patch, v) for v in B)
    if depth == 0:
        return []
    ref = None
    for v in sorted(B):
        for w in sorted(G.adj[v] & B):
            seq = read_edge_sequence(patch, v, depth, edge_key(v, w))
            if any(x is None for x in seq):
                raise PatchInconsistency(f"blank data along {v} on edge {edge_key(v, w)}")
            bits = [x[0] for x in seq]
            if ref is None:
                ref = bits
            elif bits != ref:
                raise PatchInconsistency(f"direction {v} (edge {edge_key(v, w)}) disagrees with the first reading")
    if ref is None:
        raise PatchInconsistency("bush at the identity has no edge")
    return ref


def set_representation_check(G: VertexGraph, y_prefix, action: Action, x_oracle=None) -> ViolationReport:
    """Finite-depth membership test: column ``s`` must equal ``s`` applied to
    the identity column, and the identity column must pass ``x_oracle``."""
    report = ViolationReport()
    cols = columns(G)
    y = [tuple(int(b) for b in w) for w in y_prefix]
    base = tuple(w[0] for w in y)
    if x_oracle is not None:
        report.checked_count += 1
        if not x_oracle(base):
            report.violations.append(Violation("x-oracle", IDENTITY, (), "identity column rejected"))
    for i, s in enumerate(cols[1:], start=1):
        image = action.apply(G, s, base)
        report.inconclusive_count += len(y) - min(len(y), len(image))
        for n in range(min(len(y), len(image))):
            report.checked_count += 1
            if y[n][i] != image[n]:
                report.violations.append(Violation("column", s, (), f"bit {n} of column {format_word(G, s)}"))
                break
    return report
