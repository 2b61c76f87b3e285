"""Independent reference implementations used only by the tests.

None of these call into the library's normal forms or clique search; they
work directly from the definitions.
"""
from __future__ import annotations

import itertools
from collections import deque


# ---------------------------------------------------------------- words

def _moves(adj, mul, is_id, word):
    """All writings one move away: swap commuting neighbours, merge equal
    vertices, delete identity syllables."""
    out = []
    for i, (v, x) in enumerate(word):
        if is_id(v, x):
            out.append(word[:i] + word[i + 1:])
    for i in range(len(word) - 1):
        (u, x), (v, y) = word[i], word[i + 1]
        if u == v:
            out.append(word[:i] + ((u, mul(u, x, y)),) + word[i + 2:])
        elif v in adj[u]:
            out.append(word[:i] + ((v, y), (u, x)) + word[i + 2:])
    return out


def closure(adj, mul, is_id, word) -> set:
    """Every writing reachable from ``word`` by the three moves."""
    word = tuple(word)
    seen = {word}
    todo = deque([word])
    while todo:
        w = todo.popleft()
        for nxt in _moves(adj, mul, is_id, w):
            if nxt not in seen:
                seen.add(nxt)
                todo.append(nxt)
    return seen


def z_ops():
    return (lambda v, x, y: x + y), (lambda v, x: x == 0)


def reduced_writings(adj, word) -> frozenset:
    """Shortest writings in the closure (integer vertex groups)."""
    mul, is_id = z_ops()
    c = closure(adj, mul, is_id, word)
    n = min(len(w) for w in c)
    return frozenset(w for w in c if len(w) == n)


def z_equal(adj, a, b) -> bool:
    """Equality in a RAAG: ``a b^-1`` reduces to the empty writing."""
    inv_b = tuple((v, -x) for v, x in reversed(b))
    return () in reduced_writings(adj, tuple(a) + inv_b)


def brute_tail(adj, word) -> set:
    return {w[-1][0] for w in reduced_writings(adj, word) if w}


def direct_product_growth(sphere_sizes_a, sphere_sizes_b, R) -> int:
    """Ball size of a direct product with the l1 word metric."""
    return sum(sphere_sizes_a[i] * sphere_sizes_b[j] for i in range(R + 1) for j in range(R + 1 - i))


def free_spheres(rank, R) -> list:
    return [1] + [2 * rank * (2 * rank - 1) ** (k - 1) for k in range(1, R + 1)]


# ---------------------------------------------------------------- graphs

def components_without(n, adjmask, removed) -> int:
    """Number of connected components of the graph on ``range(n)`` minus ``removed`` (bitmasks)."""
    left = ((1 << n) - 1) & ~removed
    count = 0
    while left:
        start = left & -left
        comp = start
        frontier = start
        while frontier:
            b = frontier & -frontier
            frontier ^= b
            i = b.bit_length() - 1
            new = adjmask[i] & left & ~comp
            comp |= new
            frontier |= new
        left &= ~comp
        count += 1
    return count


def cliques(n, adjmask) -> list:
    """All cliques (including the empty set) as bitmasks."""
    out = [0]
    for size in range(1, n + 1):
        for combo in itertools.combinations(range(n), size):
            ok = all(adjmask[a] >> b & 1 for a, b in itertools.combinations(combo, 2))
            if ok:
                out.append(sum(1 << i for i in combo))
    return out


def adjacency_masks(n, edges) -> list:
    m = [0] * n
    for a, b in edges:
        m[a] |= 1 << b
        m[b] |= 1 << a
    return m


def has_disconnecting_clique(n, edges) -> bool:
    adj = adjacency_masks(n, edges)
    return any(components_without(n, adj, c) != 1 for c in cliques(n, adj))
