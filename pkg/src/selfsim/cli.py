"""Command-line entry point.  Every command prints stable JSON.

Exit codes: 0 success / property holds, 1 violation or negative answer of a
check, 2 usage or input error.
"""
from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from . import actions, tiling
from .bushes import NotAtomic, WitnessConflict, bush_rules, bush_witness
from .compute import PatchInconsistency, beta, compute_rules, compute_witness, omega_alphabet
from .fixtures import alternating_bits
from .graphs import (GraphError, OutOfTheoremScope, classify, clique_separator_exists, find_disconnecting_cliques,
                     is_atomic, parse_vertex_graph)
from .paths import MatchingInfeasible, path_rules, path_witness
from .serialize import PatchFormatError, dumps, grid_from_json, grid_to_json, patch_from_json, patch_to_json
from .sft import AlphabetError, check_patch
from .vertex_groups import GroupKindError
from .words import ball, format_word, invert, multiply, parse_normal, tail
from .tiling import MachineError, MachineHalts, WangTileset


class Negative(Exception):
    """A check answered no; carries the report to print."""

    def __init__(self, payload):
        self.payload = payload


def _read(path):
    return Path(path).read_text()


def _graph(path):
    return parse_vertex_graph(_read(path))


def _bits(text, n):
    if text is None:
        return alternating_bits(n)
    if any(c not in "01" for c in text):
        raise ValueError("--seed-bits must be a 0/1 string")
    return [int(c) for c in text]


def _machine(spec, G=None):
    fixtures = {"adding": lambda _: tiling.adding_machine(), **tiling.MACHINES}
    if spec in fixtures:
        alphabet = omega_alphabet(G) if G is not None else ["0", "1"]
        return fixtures[spec](alphabet)
    return tiling.load_machine(_read(spec))


# ---------------------------------------------------------------- commands

def cmd_graph(a):
    G = _graph(a.file)
    if a.op == "classify":
        return classify(G, a.method).to_json()
    if a.op == "cutclique":
        if a.method == "separator":
            found = clique_separator_exists(G)
        else:
            hits = find_disconnecting_cliques(G, None, "first")
            found = hits[0] if hits else None
        return {"clique": None if found is None else sorted(found)}
    ok = is_atomic(G)
    if not ok:
        raise Negative({"atomic": False})
    return {"atomic": True}


def cmd_word(a):
    G = _graph(a.graph)
    ws = [parse_normal(G, w) for w in a.words]
    need = {"nf": 1, "inv": 1, "tail": 1, "mul": 2, "eq": 2}[a.op]
    if len(ws) != need:
        raise ValueError(f"word {a.op} takes {need} word(s)")
    if a.op == "nf":
        return {"normal_form": format_word(G, ws[0])}
    if a.op == "inv":
        return {"inverse": format_word(G, invert(G, ws[0]))}
    if a.op == "tail":
        return {"tail": sorted(tail(G, ws[0]))}
    if a.op == "mul":
        return {"product": format_word(G, multiply(G, ws[0], ws[1]))}
    if ws[0] != ws[1]:
        raise Negative({"equal": False})
    return {"equal": True}


def cmd_ball(a):
    G = _graph(a.graph)
    elems = sorted(format_word(G, w) for w in ball(G, a.radius))
    return {"radius": a.radius, "size": len(elems), "elements": elems}


def _rules_for(p):
    if p.system == "path":
        return path_rules(p.graph)
    if p.system == "bush":
        return bush_rules(p.graph)
    ts = getattr(p, "tileset", None)
    if ts is None:
        raise PatchFormatError("compute patches must embed their tileset")
    return compute_rules(p.graph, ts)


def cmd_sft(a):
    if a.op == "rules":
        G = _graph(a.graph)
        if a.system == "path":
            rs = path_rules(G)
        elif a.system == "bush":
            rs = bush_rules(G)
        else:
            rs = compute_rules(G, tiling.compile_tm_to_tiles(_machine(a.tm, G), omega_alphabet(G)))
        return {"system": rs.system,
                "rules": [{"name": r.name, "window": [format_word(G, w) for w in r.window]} for r in rs.rules]}
    if a.op == "witness":
        G = _graph(a.graph)
        if a.system == "path":
            p = path_witness(G, a.radius)
        else:
            x = _bits(a.seed_bits, 8 * a.radius + 8)
            act = actions.get_action(a.action)
            if a.system == "bush":
                p = bush_witness(G, a.radius, x, act)
            else:
                p = compute_witness(G, a.radius, x, act, _machine(a.tm, G))
        return patch_to_json(p)
    p = patch_from_json(json.loads(_read(a.patch)))
    if a.op == "check":
        report = check_patch(_rules_for(p), p)
        out = report.to_json(p.graph)
        if not report.ok:
            raise Negative(out)
        return out
    try:
        return {"beta": beta(p, a.depth)}
    except PatchInconsistency as exc:
        raise Negative({"error": str(exc)}) from None


def cmd_tiles(a):
    if a.op == "compile":
        m = _machine(a.tm)
        return tiling.compile_tm_to_tiles(m).to_json()
    if a.op == "run":
        m = _machine(a.tm)
        ts = WangTileset.from_json(json.loads(_read(a.tiles))) if a.tiles else tiling.compile_tm_to_tiles(m)
        tape = list(a.input)
        if len(tape) < a.width - 1:
            raise ValueError(f"--input needs at least {a.width - 1} symbols")
        try:
            grid = tiling.run_tiling(m, ts, tape, a.width, a.height)
        except MachineHalts as exc:
            raise Negative({"error": str(exc)}) from None
        return grid_to_json(grid)
    ts = WangTileset.from_json(json.loads(_read(a.tiles)))
    if a.op == "search":
        grid = tiling.search_tiling(ts, a.width, a.height)
        if grid is None:
            raise Negative({"found": False})
        return {"found": True, "grid": grid_to_json(grid)}
    grid = grid_from_json(json.loads(_read(a.grid)))
    if a.op == "row":
        return {"row": tiling.eta(ts, grid)}
    report = tiling.check_tiling(ts, grid)
    out = report.to_json()
    if not report.ok:
        raise Negative(out)
    return out


def cmd_action(a):
    G = _graph(a.graph)
    act = actions.get_action(a.action)
    x = _bits(a.seed_bits, 16)
    try:
        actions.check_commutation(G, act, [tuple(x[:n]) for n in range(len(x) + 1)])
    except actions.ActionInconsistency as exc:
        raise Negative({"consistent": False, "detail": str(exc)}) from None
    return {"consistent": True, "prefixes_checked": len(x) + 1}


# ---------------------------------------------------------------- parser

def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="selfsim", description="Graph products, subshift witnesses and Wang tilings.")
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("-o", "--output", help="write the JSON report here and print a summary")
    sub = ap.add_subparsers(dest="command", required=True)

    g = sub.add_parser("graph", parents=[common], help="classification and disconnecting cliques")
    g.add_argument("op", choices=["classify", "cutclique", "atomic"])
    g.add_argument("file")
    g.add_argument("--method", choices=["bruteforce", "separator"], default="bruteforce")
    g.set_defaults(func=cmd_graph)

    w = sub.add_parser("word", parents=[common], help="normal forms and arithmetic")
    w.add_argument("op", choices=["nf", "mul", "inv", "tail", "eq"])
    w.add_argument("words", nargs="+")
    w.add_argument("--graph", required=True)
    w.set_defaults(func=cmd_word)

    b = sub.add_parser("ball", parents=[common], help="Cayley ball as sorted word strings")
    b.add_argument("--graph", required=True)
    b.add_argument("-r", "--radius", type=int, required=True)
    b.set_defaults(func=cmd_ball)

    s = sub.add_parser("sft", parents=[common], help="rule systems, witnesses and checks")
    s.add_argument("op", choices=["rules", "check", "witness", "beta"])
    s.add_argument("--system", choices=["path", "bush", "compute"], default="path")
    s.add_argument("--graph")
    s.add_argument("--patch")
    s.add_argument("-r", "--radius", type=int, default=3)
    s.add_argument("--seed-bits")
    s.add_argument("--action", choices=sorted(actions.ACTIONS), default="identity")
    s.add_argument("--tm", default="never-halt", help="machine JSON file or fixture name")
    s.add_argument("--depth", type=int)
    s.set_defaults(func=cmd_sft)

    t = sub.add_parser("tiles", parents=[common], help="machine-to-tile compilation and tilings")
    t.add_argument("op", choices=["compile", "check", "row", "search", "run"])
    t.add_argument("--tm", default="never-halt")
    t.add_argument("--tiles")
    t.add_argument("--grid")
    t.add_argument("--input", default="", help="input symbols, one character each")
    t.add_argument("-W", "--width", type=int, default=8)
    t.add_argument("-H", "--height", type=int, default=8)
    t.set_defaults(func=cmd_tiles)

    c = sub.add_parser("action", parents=[common], help="consistency of a prefix-transformer action")
    c.add_argument("op", choices=["check"])
    c.add_argument("--graph", required=True)
    c.add_argument("--action", choices=sorted(actions.ACTIONS), default="odometer")
    c.add_argument("--seed-bits")
    c.set_defaults(func=cmd_action)
    return ap


_REQUIRED = {
    ("sft", "rules"): ["graph"], ("sft", "witness"): ["graph"], ("sft", "check"): ["patch"], ("sft", "beta"): ["patch"],
    ("tiles", "check"): ["tiles", "grid"], ("tiles", "row"): ["tiles", "grid"], ("tiles", "search"): ["tiles"],
}

_INPUT_ERRORS = (OSError, ValueError, KeyError, TypeError, GraphError, GroupKindError, OutOfTheoremScope,
                 PatchFormatError, AlphabetError, MachineError, json.JSONDecodeError)


def _emit(payload, output):
    text = dumps(payload)
    if output:
        Path(output).write_text(text)
        summary = {k: v for k, v in payload.items() if not isinstance(v, (list, dict))} if isinstance(payload, dict) else {}
        print(json.dumps(summary or {"written": output}, sort_keys=True))
    else:
        sys.stdout.write(text)


def main(argv=None) -> int:
    ap = build_parser()
    a = ap.parse_args(argv)
    for flag in _REQUIRED.get((a.command, getattr(a, "op", None)), []):
        if getattr(a, flag) is None:
            ap.error(f"{a.command} {a.op} requires --{flag}")
    try:
        payload = a.func(a)
    except Negative as neg:
        _emit(neg.payload, a.output)
        return 1
    except (MachineHalts, WitnessConflict, NotAtomic, MatchingInfeasible) as exc:
        _emit({"error": str(exc)}, a.output)
        return 1
    except _INPUT_ERRORS as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    _emit(payload, a.output)
    return 0


if __name__ == "__main__":
    sys.exit(main())
