"""Vertex groups of a graph product.

Each descriptor knows whether its group is amenable and/or infinite and,
for the kinds that support it, how to multiply, invert, parse and print
elements.  Elements are plain hashable values:

* ``IntegerGroup``: ``int``
* ``FreeGroup``: tuple of non-zero ints, ``+i`` is the i-th letter and ``-i``
  its inverse, always freely reduced
* ``CyclicFinite``: residue ``int`` in ``range(order)``
* ``FiniteTable``: element index ``int``, ``0`` is the identity
"""
from __future__ import annotations

import itertools
import re
import string
from dataclasses import dataclass, field


class GroupKindError(ValueError):
    """Raised when arithmetic is requested on a kind that has none."""


class VertexGroup:
    kind = "?"
    amenable = True
    infinite = True
    arithmetic = True

    def identity(self):
        raise NotImplementedError

    def mul(self, x, y):
        raise NotImplementedError

    def inv(self, x):
        raise NotImplementedError

    def is_identity(self, x) -> bool:
        return x == self.identity()

    def generators(self) -> list:
        """The fixed symmetric generating set used for balls and windows."""
        raise NotImplementedError

    def moves(self) -> list:
        """The finite move set K_v used by path symbols."""
        return self.generators()

    def parse(self, text: str):
        raise NotImplementedError

    def format(self, x) -> str:
        raise NotImplementedError

    def sort_key(self, x):
        return x

    def to_json(self) -> dict:
        raise NotImplementedError

    def __repr__(self):
        return f"{type(self).__name__}()"


@dataclass(frozen=True, repr=False)
class IntegerGroup(VertexGroup):
    kind = "Z"

    def identity(self):
        return 0

    def mul(self, x, y):
        return x + y

    def inv(self, x):
        return -x

    def generators(self):
        return [1, -1]

    def parse(self, text):
        if not re.fullmatch(r"[+-]?\d+", text.strip()):
            raise ValueError(f"bad integer element {text!r}")
        return int(text)

    def format(self, x):
        return f"{x:+d}"

    def to_json(self):
        return {"kind": "Z"}


_LETTERS = string.ascii_lowercase


@dataclass(frozen=True)
class FreeGroup(VertexGroup):
    rank: int = 2
    kind = "F"
    amenable = False

    def __post_init__(self):
        if not 2 <= self.rank <= len(_LETTERS):
            raise ValueError(f"free group rank must be in 2..26, got {self.rank}")

    @staticmethod
    def reduce(word) -> tuple:
        out: list[int] = []
        for a in word:
            if out and out[-1] == -a:
                out.pop()
            else:
                out.append(a)
        return tuple(out)

    def identity(self):
        return ()

    def mul(self, x, y):
        return self.reduce(x + y)

    def inv(self, x):
        return tuple(-a for a in reversed(x))

    def generators(self):
        gens = []
        for i in range(1, self.rank + 1):
            gens += [(i,), (-i,)]
        return gens

    def moves(self):
        # letters, inverses and reduced length-2 products
        gens = self.generators()
        two = [self.mul(a, b) for a, b in itertools.product(gens, gens)]
        return gens + [w for w in two if len(w) == 2]

    def parse(self, text):
        text = text.strip()
        if not re.fullmatch(r"([a-z](\^-1)?)*", text):
            raise ValueError(f"bad free group element {text!r}")
        word = []
        for letter, inverse in re.findall(r"([a-z])(\^-1)?", text):
            i = _LETTERS.index(letter) + 1
            if i > self.rank:
                raise ValueError(f"letter {letter!r} exceeds rank {self.rank}")
            word.append(-i if inverse else i)
        return self.reduce(word)

    def format(self, x):
        if not x:
            return "e"
        return "".join(_LETTERS[abs(a) - 1] + ("^-1" if a < 0 else "") for a in x)

    def sort_key(self, x):
        return (len(x), tuple((abs(a), a < 0) for a in x))

    def to_json(self):
        return {"kind": "F", "rank": self.rank}


@dataclass(frozen=True)
class CyclicFinite(VertexGroup):
    order: int = 2
    kind = "Zn"
    infinite = False

    def __post_init__(self):
        if self.order < 2:
            raise ValueError(f"cyclic group order must be >= 2, got {self.order}")

    def identity(self):
        return 0

    def mul(self, x, y):
        return (x + y) % self.order

    def inv(self, x):
        return (-x) % self.order

    def generators(self):
        return list(range(1, self.order))

    def parse(self, text):
        m = re.fullmatch(r"#(\d+)", text.strip())
        if not m or int(m.group(1)) >= self.order:
            raise ValueError(f"bad element {text!r} of Z/{self.order}")
        return int(m.group(1))

    def format(self, x):
        return f"#{x}"

    def to_json(self):
        return {"kind": "Zn", "order": self.order}


@dataclass(frozen=True)
class FiniteTable(VertexGroup):
    """A finite group given by its multiplication table; index 0 is the identity."""

    elements: tuple = ()
    table: tuple = ()
    kind = "table"
    infinite = False
    _inverse: tuple = field(default=(), init=False, compare=False, repr=False)

    def __post_init__(self):
        n = len(self.table)
        if n < 2 or any(len(row) != n for row in self.table):
            raise ValueError("multiplication table must be square with at least 2 elements")
        if self.elements and len(self.elements) != n:
            raise ValueError("element list does not match table size")
        if any(not (0 <= x < n) for row in self.table for x in row):
            raise ValueError("table entry out of range")
        for i in range(n):
            if self.table[0][i] != i or self.table[i][0] != i:
                raise ValueError("index 0 is not a two-sided identity")
        for a, b, c in itertools.product(range(n), repeat=3):
            t = self.table
            if t[t[a][b]][c] != t[a][t[b][c]]:
                raise ValueError(f"table is not associative at ({a},{b},{c})")
        inverse = []
        for a in range(n):
            inv = [b for b in range(n) if self.table[a][b] == 0]
            if not inv or self.table[inv[0]][a] != 0:
                raise ValueError(f"element {a} has no inverse")
            inverse.append(inv[0])
        object.__setattr__(self, "_inverse", tuple(inverse))

    def identity(self):
        return 0

    def mul(self, x, y):
        return self.table[x][y]

    def inv(self, x):
        return self._inverse[x]

    def generators(self):
        return list(range(1, len(self.table)))

    def parse(self, text):
        m = re.fullmatch(r"#(\d+)", text.strip())
        if not m or int(m.group(1)) >= len(self.table):
            raise ValueError(f"bad table element {text!r}")
        return int(m.group(1))

    def format(self, x):
        return f"#{x}"

    def to_json(self):
        d = {"kind": "table", "table": [list(r) for r in self.table]}
        if self.elements:
            d["elements"] = list(self.elements)
        return d


@dataclass(frozen=True)
class Abstract(VertexGroup):
    """A group known only through its amenability and finiteness flags."""

    infinite: bool = True
    amenable: bool = True
    kind = "abstract"
    arithmetic = False

    def _refuse(self, *args):
        raise GroupKindError("abstract vertex groups support classification only")

    identity = mul = inv = generators = moves = parse = format = _refuse

    def to_json(self):
        return {"kind": "abstract", "infinite": self.infinite, "amenable": self.amenable}


def group_from_json(d: dict) -> VertexGroup:
    kind = d.get("kind")
    if kind == "Z":
        return IntegerGroup()
    if kind == "F":
        return FreeGroup(int(d.get("rank", 2)))
    if kind == "Zn":
        return CyclicFinite(int(d["order"]))
    if kind == "table":
        table = tuple(tuple(int(x) for x in row) for row in d["table"])
        return FiniteTable(tuple(d.get("elements", ())), table)
    if kind == "abstract":
        return Abstract(bool(d.get("infinite", True)), bool(d.get("amenable", True)))
    raise ValueError(f"unknown group kind {kind!r}")
