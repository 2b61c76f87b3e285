import pytest

from selfsim.fixtures import cycle
from selfsim.graphs import VertexGraph
from selfsim.paths import AmenableStep, path_rules, path_witness
from selfsim.sft import AlphabetError, Patch, Rule, RuleFailure, RuleSystem, check_patch, shift_patch
from selfsim.words import IDENTITY, ball, multiply

Z = VertexGraph.build([1], [])


def test_empty_patch():
    r = check_patch(path_rules(Z), Patch(Z, 0, {}, "path"))
    assert r.ok and r.checked_count == 0


def test_c4_witness_passes():
    r = check_patch(path_rules(cycle(4)), path_witness(cycle(4), 4))
    assert r.ok and r.checked_count > 0


def test_negated_r_names_path_rule_one():
    p = path_witness(cycle(4), 4)
    g = ((1, 1),)
    rho = dict(p.cells[g])
    rho[1] = AmenableStep(rho[1].l, -rho[1].r)
    p.cells[g] = rho
    assert "path-1" in check_patch(path_rules(cycle(4)), p).rules_violated()


def test_boundary_windows_are_skipped_not_failed():
    p = path_witness(Z, 2)
    r = check_patch(path_rules(Z), p)
    assert r.ok and r.skipped_count == 2  # rule 1 at +2, rule 2 at -2


def test_violation_names_touched_offsets():
    G = Z
    cells = {g: {1: AmenableStep(1, -1)} for g in ball(G, 2)}
    cells[((1, 1),)] = {1: AmenableStep(1, 1)}
    r = check_patch(path_rules(G), Patch(G, 2, cells, "path"))
    hit = [v for v in r.violations if v.rule == "path-1"]
    assert [v.base for v in hit] == [IDENTITY]
    assert hit[0].offsets == (IDENTITY, ((1, 1),))


def test_rule_failure_detail_and_declared_window():
    G = Z

    def boom(ctx):
        raise RuleFailure("nope", [((1, 1),)])

    def sneaky(ctx):
        return ctx.at(((1, 3),)) is not None

    cells = {g: 0 for g in ball(G, 1)}
    r = check_patch(RuleSystem("toy", G, [Rule("boom", (), boom)]), Patch(G, 1, cells, "toy"))
    assert len(r.violations) == 3 and r.violations[0].detail == "nope"
    with pytest.raises(AssertionError):
        check_patch(RuleSystem("toy", G, [Rule("sneaky", (), sneaky)]), Patch(G, 1, cells, "toy"))


def test_alphabet_errors():
    with pytest.raises(AlphabetError):
        check_patch(path_rules(Z), Patch(Z, 0, {(): {1: "junk"}}, "path"))
    with pytest.raises(AlphabetError):
        check_patch(path_rules(Z), Patch(Z, 0, {}, "bush"))


def test_shift_patch_moves_cells():
    G = cycle(4)
    p = path_witness(G, 2)
    h = ((2, 1),)
    q = shift_patch(p, h)
    assert set(q.cells) == {multiply(G, h, g) for g in p.cells}
    assert q.cells[h] is p.cells[IDENTITY]
    assert check_patch(path_rules(G), q).ok


def test_report_json():
    p = path_witness(Z, 1)
    p.cells[()] = {1: AmenableStep(1, 1)}
    d = check_patch(path_rules(Z), p).to_json(Z)
    assert d["violations"][0]["base"] == "" and set(d) == {"violations", "checked_count", "skipped_count",
                                                          "inconclusive_count"}
