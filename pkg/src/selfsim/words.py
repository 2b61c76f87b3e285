"""Exact arithmetic in graph products.

A word is a tuple of syllables ``(vertex, element)``.  A *normal word* is
graphically reduced and is the lexicographically least linearization (by
vertex id) of its commutation class, so equal group elements have equal
normal words and words can be used directly as dict keys.
"""
from __future__ import annotations

import re

from .graphs import VertexGraph
from .vertex_groups import GroupKindError

IDENTITY: tuple = ()


def _group(G: VertexGraph, v):
    try:
        g = G.groups[v]
    except KeyError:
        raise ValueError(f"unknown vertex {v!r}") from None
    if not g.arithmetic:
        raise GroupKindError(f"vertex {v} has an abstract group; no arithmetic available")
    return g


def _append(G, out: list, v, x):
    """Append a syllable to a graphically reduced word, in place."""
    grp = _group(G, v)
    if grp.is_identity(x):
        return
    adj = G.adj[v]
    for i in range(len(out) - 1, -1, -1):
        u = out[i][0]
        if u == v:
            merged = grp.mul(out[i][1], x)
            if grp.is_identity(merged):
                del out[i]
            else:
                out[i] = (v, merged)
            return
        if u not in adj:
            break
    out.append((v, x))


def _linearize(G, word: list, prefer_max: bool = False) -> tuple:
    """Lexicographically least (by vertex id) linear extension of the
    dependence order: i before j when i < j and their vertices are equal
    or non-adjacent.  ``prefer_max`` picks the greatest id instead, giving a
    second, generally different, reduced writing."""
    remaining = list(word)
    out = []
    sign = -1 if prefer_max else 1
    while remaining:
        best = None
        blocked = set()
        for idx, (v, _) in enumerate(remaining):
            if v not in blocked and (best is None or sign * v < sign * remaining[best][0]):
                best = idx
            # everything after a syllable at v that does not commute with it must wait
            blocked.add(v)
            blocked.update(u for u in G.groups if u != v and u not in G.adj[v])
        out.append(remaining.pop(best))
    return tuple(out)


def normal_form(G: VertexGraph, word) -> tuple:
    reduced: list = []
    for v, x in word:
        grp = _group(G, v)
        if grp.kind == "F":
            x = grp.reduce(x)
        _append(G, reduced, v, x)
    return _linearize(G, reduced)


def multiply(G: VertexGraph, a, b) -> tuple:
    if not b:
        return tuple(a)
    if not a:
        return tuple(b)
    key = (a, b)
    cache = G._cache
    hit = cache.get(key)
    if hit is None:
        hit = cache[key] = normal_form(G, tuple(a) + tuple(b))
    return hit


def invert(G: VertexGraph, a) -> tuple:
    return normal_form(G, [(v, _group(G, v).inv(x)) for v, x in reversed(a)])


def tail(G: VertexGraph, a) -> frozenset:
    """Vertices at which some graphically reduced writing of ``a`` can end."""
    out = set()
    for i, (v, _) in enumerate(a):
        if all(u in G.adj[v] for u, _ in a[i + 1:]):
            out.add(v)
    return frozenset(out)


def project(G: VertexGraph, a, v):
    """Image of ``a`` under the retraction onto the vertex group at ``v``."""
    grp = _group(G, v)
    x = grp.identity()
    for u, y in a:
        if u == v:
            x = grp.mul(x, y)
    return x


def syllable(v, x) -> tuple:
    return ((v, x),)


def generators(G: VertexGraph) -> list:
    """The generating set S as a list of one-syllable words, in canonical order."""
    out = []
    for v, grp in G.groups.items():
        _group(G, v)
        out += [syllable(v, x) for x in sorted(grp.generators(), key=grp.sort_key)]
    return out


def other_writing(G: VertexGraph, a) -> tuple:
    """A reduced writing of ``a`` that prefers high vertex ids first."""
    return _linearize(G, list(a), prefer_max=True)


def ball(G: VertexGraph, radius: int) -> list:
    """All elements of word length <= radius w.r.t. the generators, as normal words.

    Returned in BFS order (by sphere), each sphere sorted by its string form.
    """
    if radius < 0:
        raise ValueError("radius must be >= 0")
    gens = generators(G)
    seen = {IDENTITY}
    out = [IDENTITY]
    sphere = [IDENTITY]
    for _ in range(radius):
        nxt = set()
        for g in sphere:
            for s in gens:
                h = multiply(G, g, s)
                if h not in seen:
                    seen.add(h)
                    nxt.add(h)
        sphere = sorted(nxt, key=lambda w: format_word(G, w))
        out += sphere
    return out


def spheres(G: VertexGraph, radius: int) -> dict:
    """Map element -> word length for every element of the ball."""
    gens = generators(G)
    dist = {IDENTITY: 0}
    sphere = [IDENTITY]
    for r in range(1, radius + 1):
        nxt = []
        for g in sphere:
            for s in gens:
                h = multiply(G, g, s)
                if h not in dist:
                    dist[h] = r
                    nxt.append(h)
        sphere = nxt
    return dist


def format_word(G: VertexGraph, a) -> str:
    return " ".join(f"{v}:{_group(G, v).format(x)}" for v, x in a)


_TOKEN = re.compile(r"(-?\d+):(\S*)")


def parse_word(G: VertexGraph, text: str) -> tuple:
    """Parse ``"1:+3 2:ab^-1 3:#1"`` into a raw syllable sequence (not normalized)."""
    out = []
    for tok in text.split():
        m = _TOKEN.fullmatch(tok)
        if not m:
            raise ValueError(f"bad syllable {tok!r}; expected v:element")
        v = int(m.group(1))
        grp = _group(G, v)
        body = m.group(2)
        x = grp.identity() if body == "e" else grp.parse(body)
        out.append((v, x))
    return tuple(out)


def parse_normal(G: VertexGraph, text: str) -> tuple:
    return normal_form(G, parse_word(G, text))
