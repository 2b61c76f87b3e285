"""JSON encodings of patches, symbols and tilings.

All output is stable: cells in ball order, sets sorted, dict keys sorted.
"""
from __future__ import annotations

import json

from .bushes import BushSymbol, columns, edge_key
from .compute import ComputeSymbol
from .graphs import VertexGraph, graph_from_json
from .paths import AmenableStep, ParadoxStep
from .sft import Patch
from .tiling import WangTileset
from .words import format_word, normal_form, parse_word


class PatchFormatError(ValueError):
    pass


def _fmt(G, v, x):
    return G.groups[v].format(x)


def _parse(G, v, text):
    grp = G.groups[v]
    return grp.identity() if text == "e" else grp.parse(text)


# ---------------------------------------------------------------- symbols

def rho_to_json(G: VertexGraph, rho: dict) -> dict:
    out = {}
    for v, c in rho.items():
        if isinstance(c, AmenableStep):
            out[str(v)] = {"l": _fmt(G, v, c.l), "r": _fmt(G, v, c.r), "col": c.col}
        else:
            out[str(v)] = {"lr": _fmt(G, v, c.lr), "lc": _fmt(G, v, c.lc), "r": _fmt(G, v, c.r), "col": c.col}
    return out


def rho_from_json(G: VertexGraph, d: dict) -> dict:
    out = {}
    for key, c in d.items():
        v = int(key)
        if v not in G.groups:
            raise PatchFormatError(f"unknown vertex {key} in path symbol")
        if "l" in c:
            out[v] = AmenableStep(_parse(G, v, c["l"]), _parse(G, v, c["r"]), c.get("col", "b"))
        else:
            out[v] = ParadoxStep(_parse(G, v, c["lr"]), _parse(G, v, c["lc"]), _parse(G, v, c["r"]), c["col"])
    return out


def _cedge_json(e):
    (u, cu), (v, cv) = e
    return [[str(u), cu], [str(v), cv]]


def _cedge_parse(d):
    (u, cu), (v, cv) = d
    return ((int(u), cu), (int(v), cv))


def bush_to_json(G: VertexGraph, s: BushSymbol) -> dict:
    names = ["" if not c else format_word(G, c) for c in columns(G)]
    L = []
    for (e, C), w in sorted(s.L.items(), key=lambda kv: (kv[0][0], sorted(kv[0][1]))):
        L.append({"edge": list(e), "B": sorted(C), "omega": dict(zip(names, w))})
    return {
        "rho": rho_to_json(G, s.rho),
        "B": sorted(s.B),
        "D": [_cedge_json(e) for e in sorted(s.D)],
        "I": [[[str(u), cu], sorted(C)] for (u, cu), C in sorted(s.I, key=lambda t: (t[0], sorted(t[1])))],
        "L": L,
    }


def bush_from_json(G: VertexGraph, d: dict) -> BushSymbol:
    names = ["" if not c else format_word(G, c) for c in columns(G)]
    L = {}
    for entry in d.get("L", []):
        omega = entry["omega"]
        if set(omega) != set(names):
            raise PatchFormatError("omega symbol must give a bit for every column")
        L[(edge_key(*entry["edge"]), frozenset(entry["B"]))] = tuple(int(omega[n]) for n in names)
    return BushSymbol(
        rho_from_json(G, d["rho"]),
        frozenset(int(v) for v in d["B"]),
        frozenset(_cedge_parse(e) for e in d.get("D", [])),
        frozenset(((int(u), cu), frozenset(C)) for (u, cu), C in d.get("I", [])),
        L,
    )


def compute_to_json(G: VertexGraph, s: ComputeSymbol) -> dict:
    return {
        "bush": bush_to_json(G, s.bush),
        "P": [_cedge_json(e) for e in sorted(s.P)],
        "T": [{"edge": _cedge_json(e), "tile": t} for e, t in sorted(s.T.items())],
    }


def compute_from_json(G: VertexGraph, d: dict) -> ComputeSymbol:
    return ComputeSymbol(
        bush_from_json(G, d["bush"]),
        frozenset(_cedge_parse(e) for e in d.get("P", [])),
        {_cedge_parse(t["edge"]): int(t["tile"]) for t in d.get("T", [])},
    )


_ENC = {"path": rho_to_json, "bush": bush_to_json, "compute": compute_to_json}
_DEC = {"path": rho_from_json, "bush": bush_from_json, "compute": compute_from_json}


# ---------------------------------------------------------------- patches

def patch_to_json(p: Patch) -> dict:
    G = p.graph
    enc = _ENC[p.system]
    order = sorted(p.cells, key=lambda w: (len(w), format_word(G, w)))
    d = {
        "system": p.system,
        "graph": G.to_json(),
        "radius": p.radius,
        "cells": [{"element": format_word(G, g), "symbol": enc(G, p.cells[g])} for g in order],
    }
    ts = getattr(p, "tileset", None)
    if ts is not None:
        d["tileset"] = ts.to_json()
    return d


def patch_from_json(d: dict) -> Patch:
    try:
        system = d["system"]
        dec = _DEC[system]
    except KeyError:
        raise PatchFormatError("patch needs a 'system' of path, bush or compute") from None
    G = graph_from_json(d["graph"])
    cells = {}
    for k, c in enumerate(d.get("cells", [])):
        raw = parse_word(G, c["element"])
        g = normal_form(G, raw)
        if g != tuple(raw):
            raise PatchFormatError(f"cells[{k}]: element {c['element']!r} is not in normal form")
        if g in cells:
            raise PatchFormatError(f"cells[{k}]: duplicate element {c['element']!r}")
        cells[g] = dec(G, c["symbol"])
    p = Patch(G, int(d.get("radius", 0)), cells, system)
    if "tileset" in d:
        p.tileset = WangTileset.from_json(d["tileset"])
    return p


def grid_to_json(grid: dict) -> list:
    return [{"x": x, "y": y, "tile": t} for (x, y), t in sorted(grid.items(), key=lambda kv: (kv[0][1], kv[0][0]))]


def grid_from_json(items) -> dict:
    return {(int(c["x"]), int(c["y"])): int(c["tile"]) for c in items}


def dumps(obj) -> str:
    return json.dumps(obj, indent=1, sort_keys=False) + "\n"
