"""Turing machines and their compilation to seeded Wang tilesets.

Layout of a seeded quarter-plane tiling:

* row 0: the seed at ``(0, 0)``, then one input tile per cell ``(x, 0)``,
  ``x >= 1`` carrying an input symbol;
* row 1: loads the input onto the tape and puts the head, in the start
  state, on cell 1;
* row ``t + 2``: the tape after ``t + 1`` steps.  Column 0 is a wall; a left
  move on cell 1 keeps the head on cell 1.

Transitions into a halting state have no tile, so a seeded patch of height
``h`` exists iff the run makes ``h - 2`` steps without halting while the head
is inside the visible window.
"""
from __future__ import annotations

import json
from dataclasses import dataclass, field

from .sft import Violation, ViolationReport


class MachineError(ValueError):
    pass


class MachineHalts(RuntimeError):
    def __init__(self, step, cell):
        self.step, self.cell = step, cell
        super().__init__(f"machine halts within window (step {step}, cell {cell})")


@dataclass
class TuringMachine:
    states: list
    alphabet: list
    blank: str
    start: str
    halt: list
    delta: dict  # (state, read) -> (state, write, move)
    inputs: list | None = None  # input symbols; default every non-blank symbol

    def __post_init__(self):
        S, A = set(self.states), set(self.alphabet)
        if self.start not in S:
            raise MachineError(f"start state {self.start!r} not in states")
        if not set(self.halt) <= S:
            raise MachineError("halting states must be states")
        if self.blank not in A:
            raise MachineError("blank must be in the alphabet")
        if self.inputs is not None and not set(self.inputs) <= A:
            raise MachineError("input symbols must be in the alphabet")
        for (q, a), (q2, b, d) in self.delta.items():
            if q in self.halt:
                raise MachineError(f"transition out of halting state {q!r}")
            if q not in S or q2 not in S or a not in A or b not in A or d not in ("L", "R"):
                raise MachineError(f"bad transition {(q, a, q2, b, d)}")
        for q in self.running_states():
            for a in self.alphabet:
                if (q, a) not in self.delta:
                    raise MachineError(f"transition missing for ({q!r}, {a!r})")

    def running_states(self) -> list:
        return [q for q in self.states if q not in self.halt]

    @classmethod
    def from_json(cls, d: dict) -> "TuringMachine":
        delta = {}
        for row in d["delta"]:
            q, a, q2, b, mv = (str(x) for x in row)
            if (q, a) in delta:
                raise MachineError(f"nondeterministic: two transitions for ({q!r}, {a!r})")
            delta[(q, a)] = (q2, b, mv)
        return cls([str(s) for s in d["states"]], [str(a) for a in d["alphabet"]], str(d["blank"]),
                   str(d["start"]), [str(h) for h in d.get("halt", [])], delta,
                   [str(a) for a in d["inputs"]] if "inputs" in d else None)

    def to_json(self) -> dict:
        d = {
            "states": self.states,
            "alphabet": self.alphabet,
            "blank": self.blank,
            "start": self.start,
            "halt": self.halt,
            "delta": [[q, a, *self.delta[(q, a)]] for (q, a) in sorted(self.delta)],
        }
        if self.inputs is not None:
            d["inputs"] = self.inputs
        return d


def run(m: TuringMachine, tape_input, steps: int):
    """Yield ``(tape, head, state)`` for t = 0..steps; stops early on halting.

    Cells are numbered from 1; cells past the input read the blank.
    """
    tape = {i + 1: a for i, a in enumerate(tape_input)}
    head, q = 1, m.start
    yield dict(tape), head, q
    for _ in range(steps):
        if q in m.halt:
            return
        q, b, d = m.delta[(q, tape.get(head, m.blank))]
        tape[head] = b
        head = head + 1 if d == "R" else max(1, head - 1)
        yield dict(tape), head, q


def survives_in_window(m: TuringMachine, tape_input, width: int, steps: int) -> bool:
    """True unless some step taken with the head at a cell < ``width`` enters a
    halting state (after the head leaves the window nothing is visible)."""
    tape = {i + 1: a for i, a in enumerate(tape_input)}
    head, q = 1, m.start
    for _ in range(steps):
        if head >= width:
            return True
        q, b, d = m.delta[(q, tape.get(head, m.blank))]
        if q in m.halt:
            return False
        tape[head] = b
        head = head + 1 if d == "R" else max(1, head - 1)
    return True


# ---------------------------------------------------------------- tiles

@dataclass(frozen=True)
class Tile:
    id: int
    n: str
    e: str
    s: str
    w: str

    def sig(self):
        return (self.n, self.e, self.s, self.w)


@dataclass
class WangTileset:
    tiles: list
    seed: int
    omega: dict  # input symbol -> tile id
    by_sig: dict = field(init=False, repr=False)

    def __post_init__(self):
        ids = [t.id for t in self.tiles]
        if ids != list(range(len(ids))):
            raise ValueError("tile ids must be 0..n-1 in order")
        if not 0 <= self.seed < len(ids):
            raise ValueError("seed is not a tile")
        if len(set(self.omega.values())) != len(self.omega):
            raise ValueError("input tiles must be pairwise distinct")
        self.by_sig = {t.sig(): t.id for t in self.tiles}
        self.omega_of = {tid: a for a, tid in self.omega.items()}

    def lookup(self, n, e, s, w) -> int:
        try:
            return self.by_sig[(n, e, s, w)]
        except KeyError:
            raise KeyError(f"no tile with N={n} E={e} S={s} W={w}") from None

    def to_json(self) -> dict:
        return {
            "tiles": [{"id": t.id, "n": t.n, "e": t.e, "s": t.s, "w": t.w} for t in self.tiles],
            "seed": self.seed,
            "omega": dict(sorted(self.omega.items())),
        }

    @classmethod
    def from_json(cls, d: dict) -> "WangTileset":
        tiles = [Tile(int(t["id"]), t["n"], t["e"], t["s"], t["w"]) for t in d["tiles"]]
        return cls(tiles, int(d["seed"]), {str(k): int(v) for k, v in d["omega"].items()})


def _tape(a):
    return f"t|{a}"


def _head(a, q):
    return f"h|{a}|{q}"


def _move(q):
    return f"m|{q}"


def compile_tm_to_tiles(m: TuringMachine, omega=None) -> WangTileset:
    """Row-per-step tileset with a seed; ``omega`` lists the input symbols
    (default: the machine's declared inputs, else every non-blank symbol)."""
    if omega is None:
        omega = m.inputs if m.inputs is not None else [a for a in m.alphabet if a != m.blank]
    omega = list(omega)
    missing = [a for a in omega if a not in m.alphabet]
    if missing:
        raise MachineError(f"tape alphabet does not cover the input symbols {missing[:3]}")
    sigs: list = []
    seen: set = set()

    def add(n, e, s, w):
        if (n, e, s, w) not in seen:
            seen.add((n, e, s, w))
            sigs.append((n, e, s, w))

    add("bnd0", "row0", "floor", "wall")  # seed
    for a in omega:
        add(f"i|{a}", "row0", "floor", "row0")
    add("bnd", "start", "bnd0", "wall")
    add("bnd", "edge", "bnd", "wall")
    for a in omega:
        add(_head(a, m.start), "r1", f"i|{a}", "start")
        add(_tape(a), "r1", f"i|{a}", "r1")
    running = m.running_states()
    for a in m.alphabet:
        for wv in (".", "edge"):
            add(_tape(a), ".", _tape(a), wv)
            for q in running:
                add(_head(a, q), _move(q), _tape(a), wv)
        for q in running:
            add(_head(a, q), ".", _tape(a), _move(q))
    for (q, a), (q2, b, d) in sorted(m.delta.items()):
        if q2 in m.halt:
            continue
        if d == "R":
            for wv in (".", "edge"):
                add(_tape(b), _move(q2), _head(a, q), wv)
        else:
            add(_tape(b), ".", _head(a, q), _move(q2))
            add(_head(b, q2), ".", _head(a, q), "edge")
    tiles = [Tile(i, *sig) for i, sig in enumerate(sigs)]
    ts = WangTileset(tiles, 0, {a: 1 + i for i, a in enumerate(omega)})
    return ts


def run_tiling(m: TuringMachine, ts: WangTileset, tape_input, width: int, height: int) -> dict:
    """The seeded ``width x height`` tiling produced by the actual run."""
    grid = {}
    if width < 1 or height < 1:
        return grid
    grid[(0, 0)] = ts.seed
    for x in range(1, width):
        grid[(x, 0)] = ts.omega[tape_input[x - 1]]
    if height == 1:
        return grid
    grid[(0, 1)] = ts.lookup("bnd", "start", "bnd0", "wall")
    for x in range(1, width):
        a = tape_input[x - 1]
        if x == 1:
            grid[(x, 1)] = ts.lookup(_head(a, m.start), "r1", f"i|{a}", "start")
        else:
            grid[(x, 1)] = ts.lookup(_tape(a), "r1", f"i|{a}", "r1")
    tape = {i + 1: a for i, a in enumerate(tape_input)}
    head, q = 1, m.start
    for y in range(2, height):
        grid[(0, y)] = ts.lookup("bnd", "edge", "bnd", "wall")
        halted = q in m.halt
        if not halted:
            q2, b, d = m.delta[(q, tape.get(head, m.blank))]
            if q2 in m.halt:
                if head < width:
                    raise MachineHalts(y - 1, head)
                halted = True
        for x in range(1, width):
            a = tape.get(x, m.blank)
            wv = "edge" if x == 1 else "."
            if halted or abs(x - head) > 1:
                sig = (_tape(a), ".", _tape(a), wv)
            elif x == head:
                if d == "R":
                    sig = (_tape(b), _move(q2), _head(a, q), wv)
                elif head > 1:
                    sig = (_tape(b), ".", _head(a, q), _move(q2))
                else:
                    sig = (_head(b, q2), ".", _head(a, q), "edge")
            elif x == head + 1 and d == "R":
                sig = (_head(a, q2), ".", _tape(a), _move(q2))
            elif x == head - 1 and d == "L":
                sig = (_head(a, q2), _move(q2), _tape(a), wv)
            else:
                sig = (_tape(a), ".", _tape(a), wv)
            grid[(x, y)] = ts.lookup(*sig)
        if not halted:
            tape[head] = b
            head = head + 1 if d == "R" else max(1, head - 1)
            q = q2
        else:
            q = m.halt[0] if m.halt else q
    return grid


def check_tiling(ts: WangTileset, grid: dict) -> ViolationReport:
    report = ViolationReport()
    n = len(ts.tiles)
    for pos, t in grid.items():
        if not isinstance(t, int) or not 0 <= t < n:
            raise KeyError(f"unknown tile id {t!r} at {pos}")
    if (0, 0) in grid:
        report.checked_count += 1
        if grid[(0, 0)] != ts.seed:
            report.violations.append(Violation("seed", (0, 0), ((0, 0),), "origin is not the seed"))
    for (x, y) in sorted(grid):
        t = ts.tiles[grid[(x, y)]]
        right = grid.get((x + 1, y))
        if right is not None:
            report.checked_count += 1
            if t.e != ts.tiles[right].w:
                report.violations.append(Violation("wang-h", (x, y), ((x, y), (x + 1, y)), f"{t.e} != {ts.tiles[right].w}"))
        up = grid.get((x, y + 1))
        if up is not None:
            report.checked_count += 1
            if t.n != ts.tiles[up].s:
                report.violations.append(Violation("wang-v", (x, y), ((x, y), (x, y + 1)), f"{t.n} != {ts.tiles[up].s}"))
    return report


def eta(ts: WangTileset, grid: dict) -> list:
    """Input symbols on the bottom row right of the seed."""
    if grid.get((0, 0)) != ts.seed:
        raise ValueError("seed absent at the origin")
    out = []
    x = 1
    while (x, 0) in grid:
        t = grid[(x, 0)]
        if t not in ts.omega_of:
            raise ValueError(f"tile {t} at ({x}, 0) is not an input tile")
        out.append(ts.omega_of[t])
        x += 1
    return out


def search_tiling(ts: WangTileset, width: int, height: int):
    """Exhaustive backtracking for a valid ``width x height`` tiling with the
    seed at the origin.  Returns a grid or None (proof of non-existence)."""
    by_ws: dict = {}
    for t in ts.tiles:
        for key in ((t.w, t.s), (t.w, None), (None, t.s)):
            by_ws.setdefault(key, []).append(t.id)
    cells = [(x, y) for y in range(height) for x in range(width)]
    if not cells:
        return {}
    grid: dict = {(0, 0): ts.seed}
    tiles = ts.tiles

    def options(x, y):
        w = tiles[grid[(x - 1, y)]].e if x else None
        s = tiles[grid[(x, y - 1)]].n if y else None
        return by_ws.get((w, s), []) if (w, s) != (None, None) else list(range(len(tiles)))

    stack = [iter(options(*cells[1]))] if len(cells) > 1 else []
    i = 1
    while 0 < i < len(cells):
        nxt = next(stack[-1], None)
        if nxt is None:
            stack.pop()
            grid.pop(cells[i], None)
            i -= 1
            if i == 0:
                return None
            continue
        grid[cells[i]] = nxt
        i += 1
        if i < len(cells):
            stack.append(iter(options(*cells[i])))
    return grid


# ---------------------------------------------------------------- fixtures

def never_halt_right(alphabet, blank="_") -> TuringMachine:
    syms = list(dict.fromkeys(list(alphabet) + [blank]))
    delta = {("q0", a): ("q0", a, "R") for a in syms}
    return TuringMachine(["q0"], syms, blank, "q0", [], delta)


def immediate_halt(alphabet, blank="_") -> TuringMachine:
    syms = list(dict.fromkeys(list(alphabet) + [blank]))
    delta = {("q0", a): ("qh", a, "R") for a in syms}
    return TuringMachine(["q0", "qh"], syms, blank, "q0", ["qh"], delta)


def adding_machine() -> TuringMachine:
    """Binary counter, least significant bit on cell 1 (marked with ``*``).

    Every return to cell 1 adds one; carries run to the right.
    """
    syms = ["0", "1", "0*", "1*", "_"]
    delta = {}
    for q in ("s", "ret"):
        delta[(q, "0*")] = ("ret", "1*", "L")
        delta[(q, "1*")] = ("inc", "0*", "R")
    delta[("s", "0")] = ("ret", "1*", "L")
    delta[("s", "1")] = ("inc", "0*", "R")
    delta[("s", "_")] = ("ret", "1*", "L")
    for a in ("0", "1", "_"):
        delta[("ret", a)] = ("ret", a, "L")
    delta[("inc", "1")] = ("inc", "0", "R")
    delta[("inc", "0")] = ("ret", "1", "L")
    delta[("inc", "_")] = ("ret", "1", "L")
    delta[("inc", "0*")] = ("ret", "1*", "L")
    delta[("inc", "1*")] = ("inc", "0*", "R")
    return TuringMachine(["s", "inc", "ret"], syms, "_", "s", [], delta, ["0", "1"])


def counter_value(tape: dict) -> int:
    return sum(1 << (i - 1) for i, a in tape.items() if a.rstrip("*") == "1")


def parity_checker(alphabet, blank="_") -> TuringMachine:
    """Halts iff the identity bit (first character) shows a block ``0 1^odd 0``."""
    syms = list(dict.fromkeys(list(alphabet) + [blank]))
    delta = {}
    for a in syms:
        bit = a[0] if a != blank else "0"
        delta[("pre", a)] = ("even", a, "R") if bit == "0" else ("pre", a, "R")
        delta[("even", a)] = ("odd", a, "R") if bit == "1" else ("even", a, "R")
        delta[("odd", a)] = ("even", a, "R") if bit == "1" else ("halt", a, "R")
    return TuringMachine(["pre", "even", "odd", "halt"], syms, blank, "pre", ["halt"], delta)


MACHINES = {
    "never-halt": never_halt_right,
    "immediate-halt": immediate_halt,
    "parity": parity_checker,
}


def load_machine(text: str) -> TuringMachine:
    return TuringMachine.from_json(json.loads(text))
