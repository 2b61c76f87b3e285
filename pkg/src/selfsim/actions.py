"""Group actions on bit sequences, given by finite-prefix transformers.

An action assigns to every generator a map from bit prefixes to bit
prefixes; an output may be shorter than its input (continuity: only finitely
many output bits are determined by a finite input).  Words act on the left,
so the rightmost syllable is applied first.
"""
from __future__ import annotations

from .graphs import VertexGraph
from .words import _group, generators


class ActionInconsistency(ValueError):
    pass


def _unit(grp, x) -> int:
    """+1 / -1 for a Z or free-group generator, used by counting actions."""
    if grp.kind == "Z":
        return 1 if x > 0 else -1
    if grp.kind == "F":
        return 1 if x[0] > 0 else -1
    raise ActionInconsistency(f"no counting action for {grp.kind!r} generators")


class Action:
    name = "abstract"

    def generator(self, grp, x, bits: tuple) -> tuple:
        raise NotImplementedError

    def _steps(self, G, v, x):
        grp = _group(G, v)
        if grp.kind == "Z":
            return [(grp, 1 if x > 0 else -1)] * abs(x)
        if grp.kind == "F":
            return [(grp, (a,)) for a in x]
        return [(grp, x)]

    def apply(self, G: VertexGraph, word, bits) -> tuple:
        bits = tuple(bits)
        for v, x in reversed(word):
            for grp, s in reversed(self._steps(G, v, x)):
                bits = self.generator(grp, s, bits)
        return bits


class IdentityAction(Action):
    name = "identity"

    def generator(self, grp, x, bits):
        return tuple(bits)


class OdometerAction(Action):
    """Every generator adds one (least significant bit first, carries to the
    right); inverses subtract.  Prefix lengths are preserved."""

    name = "odometer"

    def generator(self, grp, x, bits):
        out = list(bits)
        if _unit(grp, x) > 0:
            for i, b in enumerate(out):
                if b == 0:
                    out[i] = 1
                    break
                out[i] = 0
        else:
            for i, b in enumerate(out):
                if b == 1:
                    out[i] = 0
                    break
                out[i] = 1
        return tuple(out)


ACTIONS = {"identity": IdentityAction, "odometer": OdometerAction}


def get_action(name: str) -> Action:
    try:
        return ACTIONS[name]()
    except KeyError:
        raise ValueError(f"unknown action {name!r}; choose from {sorted(ACTIONS)}") from None


def check_commutation(G: VertexGraph, action: Action, prefixes) -> None:
    """Raise if generators at adjacent vertices fail to commute on a prefix."""
    gens = generators(G)
    for x in prefixes:
        for a in gens:
            for b in gens:
                u, v = a[0][0], b[0][0]
                if not G.adjacent(u, v):
                    continue
                ab = action.apply(G, a + b, x)
                ba = action.apply(G, b + a, x)
                n = min(len(ab), len(ba))
                if ab[:n] != ba[:n]:
                    raise ActionInconsistency(f"generators at adjacent vertices {u}, {v} do not commute on prefix {x}")
