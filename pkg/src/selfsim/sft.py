"""Finite-patch verification of subshifts of finite type on graph products.

A rule is a predicate evaluated at a base element ``g`` that may look at the
symbols at ``g * k`` for offsets ``k`` in its declared finite window.  If a
lookup leaves the patch the window is not fully contained, and the rule is
skipped at ``g`` (counted, never failed).
"""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import Callable

from .graphs import VertexGraph
from .words import IDENTITY, format_word, multiply


class OutsidePatch(Exception):
    pass


class AlphabetError(ValueError):
    pass


@dataclass
class Patch:
    graph: VertexGraph
    radius: int
    cells: dict
    system: str = "path"

    def __contains__(self, g):
        return g in self.cells

    def __getitem__(self, g):
        return self.cells[g]

    def restrict(self, keep) -> "Patch":
        keep = set(keep)
        return Patch(self.graph, self.radius, {g: s for g, s in self.cells.items() if g in keep}, self.system)


@dataclass
class Rule:
    name: str
    window: tuple
    check: Callable


@dataclass
class RuleSystem:
    system: str
    graph: VertexGraph
    rules: list
    accepts: Callable = lambda symbol: True

    def names(self):
        return [r.name for r in self.rules]


@dataclass
class Violation:
    rule: str
    base: tuple
    offsets: tuple
    detail: str = ""


@dataclass
class ViolationReport:
    violations: list = field(default_factory=list)
    checked_count: int = 0
    skipped_count: int = 0
    inconclusive_count: int = 0

    @property
    def ok(self) -> bool:
        return not self.violations

    def rules_violated(self) -> set:
        return {v.rule for v in self.violations}

    def to_json(self, G: VertexGraph | None = None) -> dict:
        def fmt(w):
            return format_word(G, w) if G is not None else repr(w)

        return {
            "violations": [
                {"rule": v.rule, "base": fmt(v.base), "offsets": [fmt(o) for o in v.offsets], "detail": v.detail}
                for v in self.violations
            ],
            "checked_count": self.checked_count,
            "skipped_count": self.skipped_count,
            "inconclusive_count": self.inconclusive_count,
        }


class Window:
    """Lookup context handed to rule predicates."""

    __slots__ = ("G", "patch", "base", "allowed", "touched")

    def __init__(self, patch, base, allowed):
        self.G = patch.graph
        self.patch = patch
        self.base = base
        self.allowed = allowed
        self.touched = []

    def element(self, offset):
        if offset not in self.allowed:
            raise AssertionError(f"offset {offset!r} outside the declared window")
        return multiply(self.G, self.base, offset)

    def at(self, offset=IDENTITY):
        h = self.element(offset)
        try:
            sym = self.patch.cells[h]
        except KeyError:
            raise OutsidePatch(offset) from None
        if offset not in self.touched:
            self.touched.append(offset)
        return sym

    def has(self, offset) -> bool:
        return self.element(offset) in self.patch.cells


class RuleFailure(Exception):
    def __init__(self, detail="", offsets=()):
        self.detail = detail
        self.offsets = tuple(offsets)
        super().__init__(detail)


def check_patch(rules: RuleSystem, patch: Patch) -> ViolationReport:
    """Evaluate every rule at every cell whose window lies inside the patch.

    A predicate signals failure by returning False or raising RuleFailure
    (which may name the offending offsets).
    """
    if patch.system != rules.system:
        raise AlphabetError(f"patch is a {patch.system!r} patch, rules are for {rules.system!r}")
    report = ViolationReport()
    windows = {id(r): frozenset(r.window) | {IDENTITY} for r in rules.rules}
    order = sorted(patch.cells, key=lambda w: (len(w), format_word(patch.graph, w)))
    for g in order:
        if not rules.accepts(patch.cells[g]):
            raise AlphabetError(f"symbol at {format_word(patch.graph, g)!r} is not in the {rules.system} alphabet")
        for rule in rules.rules:
            ctx = Window(patch, g, windows[id(rule)])
            try:
                ok = rule.check(ctx)
                detail, offsets = "", tuple(ctx.touched)
            except OutsidePatch:
                report.skipped_count += 1
                continue
            except RuleFailure as fail:
                ok, detail, offsets = False, fail.detail, fail.offsets or tuple(ctx.touched)
            report.checked_count += 1
            if not ok:
                report.violations.append(Violation(rule.name, g, offsets, detail))
    return report


def shift_patch(patch: Patch, h, radius=None) -> Patch:
    """The translate ``h . c``: the symbol at ``g`` moves to ``h g``."""
    G = patch.graph
    cells = {multiply(G, h, g): s for g, s in patch.cells.items()}
    return Patch(G, patch.radius + len(h) if radius is None else radius, cells, patch.system)
