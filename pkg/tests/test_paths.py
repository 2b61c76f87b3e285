import pytest

from selfsim.fixtures import cycle
from selfsim.graphs import VertexGraph
from selfsim.paths import (AmenableStep, ParadoxStep, gamma, parent_structure, paradoxical_labels, path_rules,
                           path_witness, paths_injective, symbol_in_alphabet)
from selfsim.sft import Patch, check_patch
from selfsim.vertex_groups import FreeGroup
from selfsim.words import IDENTITY, ball

Z = VertexGraph.build([1], [])
ZF = VertexGraph.build([1, 2], [(1, 2)], {2: FreeGroup(2)})


def const_patch(G, R, step=AmenableStep(1, -1)):
    return Patch(G, R, {g: {v: step for v in G.vertices} for g in ball(G, R)}, "path")


def test_single_z_constant():
    assert check_patch(path_rules(Z), const_patch(Z, 3)).ok


def test_single_z_broken_cell_hits_left_neighbour():
    p = const_patch(Z, 3)
    p.cells[((1, 1),)] = {1: AmenableStep(1, 1)}
    r = check_patch(path_rules(Z), p)
    assert ("path-1", IDENTITY) in {(v.rule, v.base) for v in r.violations}


def test_rule_six_demands_constancy():
    G = VertexGraph.build([1, 2], [(1, 2)])
    p = const_patch(G, 2)
    for g in p.cells:
        if any(v == 2 and x == 1 for v, x in g):
            p.cells[g] = {1: AmenableStep(-1, 1), 2: AmenableStep(1, -1)}
    assert "path-6" in check_patch(path_rules(G), p).rules_violated()


def test_gamma():
    p = const_patch(Z, 5)
    assert gamma(p, IDENTITY, 1, 0) == [IDENTITY]
    assert gamma(p, IDENTITY, 1, 3) == [(), ((1, 1),), ((1, 2),), ((1, 3),)]
    assert len(gamma(p, ((1, 4),), 1, 9)) == 3  # stops at the patch edge


def test_witness_single_z():
    p = path_witness(Z, 5)
    assert all(s == {1: AmenableStep(1, -1)} for s in p.cells.values())
    assert check_patch(path_rules(Z), p).ok


@pytest.mark.parametrize("n", [4, 5])
def test_witness_cycles(n):
    p = path_witness(cycle(n), 3)
    assert check_patch(path_rules(cycle(n)), p).ok
    assert paths_injective(p)


def test_witness_free_edge():
    p = path_witness(ZF, 3)
    assert check_patch(path_rules(ZF), p).ok
    ok, region = parent_structure(p, 2)
    assert ok and region > 0
    assert paths_injective(p)


def test_paradoxical_labels_exact_in_interior():
    F = FreeGroup(2)
    labels = paradoxical_labels(F, 4)
    kids = {}
    for x, s in labels.items():
        kids.setdefault(F.mul(x, s.r), []).append(s.col)
    for x in labels:
        if len(x) <= 2:
            assert sorted(kids[x]) == ["c", "r"]
            for color in "rc":
                child = F.mul(x, labels[x].left(color))
                assert labels[child].col == color and F.mul(child, labels[child].r) == x


def test_alphabet_membership():
    good = {1: AmenableStep(1, -1), 2: ParadoxStep((1,), (2,), (-1,), "r")}
    assert symbol_in_alphabet(ZF, good)
    assert not symbol_in_alphabet(ZF, {**good, 1: AmenableStep(1, -1, "r")})
    assert not symbol_in_alphabet(ZF, {**good, 2: ParadoxStep((1,), (2,), (), "c")})
    assert not symbol_in_alphabet(ZF, {1: good[1]})


def test_unsupported_group():
    from selfsim.vertex_groups import CyclicFinite
    with pytest.raises(ValueError):
        path_witness(VertexGraph.build([1], [], {1: CyclicFinite(3)}), 2)
