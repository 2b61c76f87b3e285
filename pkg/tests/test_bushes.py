import dataclasses
import itertools

import pytest

from selfsim.actions import IdentityAction, OdometerAction
from selfsim.bushes import (NotAtomic, PointTable, WitnessConflict, _points, bush_of, bush_rules, bush_witness,
                            colored_edges, columns, direction_sequences, read_edge_sequence)
from selfsim.fixtures import alternating_bits, cycle
from selfsim.graphs import VertexGraph
from selfsim.sft import check_patch
from selfsim.vertex_groups import FreeGroup
from selfsim.words import IDENTITY, generators, tail

X = alternating_bits(40)
C4 = cycle(4)
C5 = cycle(5)


@pytest.fixture(scope="module")
def c4_patch():
    return bush_witness(C4, 3, X, IdentityAction())


def test_witness_c4_identity(c4_patch):
    r = check_patch(bush_rules(C4), c4_patch)
    assert r.ok and r.checked_count > 0


def test_witness_c5_odometer():
    p = bush_witness(C5, 3, X, OdometerAction())
    assert check_patch(bush_rules(C5), p).ok


def test_not_atomic():
    with pytest.raises(NotAtomic):
        bush_witness(cycle(3), 2, X, IdentityAction())


def test_conflict_is_reported_for_free_vertex_in_edge():
    G = VertexGraph.build([1, 2, 3, 4], [(1, 2), (2, 3), (3, 4), (4, 1)], {1: FreeGroup(2)})
    with pytest.raises(WitnessConflict):
        bush_witness(G, 2, X, IdentityAction())


def test_bush_of_complements_tail():
    for g in [(), ((1, 1),), ((1, 1), (2, -1)), ((1, 1), (3, 1))]:
        assert bush_of(C4, g) == set(C4.vertices) - tail(C4, g)


def test_columns_and_colored_edges():
    assert columns(C4) == [IDENTITY] + generators(C4)
    assert len(colored_edges(C4)) == 2 * 4  # each edge in both orders, one color each
    ZF = VertexGraph.build([1, 2], [(1, 2)], {2: FreeGroup(2)})
    assert len(colored_edges(ZF)) == 4


def test_point_table_columns_follow_action():
    G, act = C4, OdometerAction()
    t = PointTable(G, X, act)
    g = ((2, 1),)
    base = t.point(g)
    assert base == tuple(act.apply(G, ((2, -1),), tuple(X)))
    for i, s in enumerate(columns(G)):
        assert t.omega(g, 0)[i] == act.apply(G, s, base)[0]
    with pytest.raises(ValueError):
        PointTable(G, X[:2], act).omega(IDENTITY, 5)


def test_read_edge_sequence_values(c4_patch):
    assert read_edge_sequence(c4_patch, 1, 0) == []
    seq = read_edge_sequence(c4_patch, 1, 3)
    assert [w[0] for w in seq] == X[:3]


def test_directions_agree(c4_patch):
    seqs = direction_sequences(c4_patch, 3)
    assert len(seqs) == 8
    for a, b in itertools.combinations(seqs.values(), 2):
        assert a == b


def test_read_errors(c4_patch):
    with pytest.raises(ValueError):
        read_edge_sequence(c4_patch, 1, 50)


def _with_symbol(p, g, **changes):
    q = dataclasses.replace(p)
    q.cells = dict(p.cells)
    q.cells[g] = dataclasses.replace(p.cells[g], **changes)
    return q


def test_singleton_bush_breaks_rule_two(c4_patch):
    q = _with_symbol(c4_patch, IDENTITY, B=frozenset({1}))
    assert "bush-2" in check_patch(bush_rules(C4), q).rules_violated()


def test_desynchronised_data_is_caught(c4_patch):
    rho = _points(_rho_view(c4_patch), IDENTITY, 1)
    g = rho[2]
    L = dict(c4_patch.cells[g].L)
    key = next(iter(sorted(L, key=repr)))
    L[key] = tuple(1 - b for b in L[key])
    q = _with_symbol(c4_patch, g, L=L)
    assert check_patch(bush_rules(C4), q).rules_violated() & {"bush-8", "bush-9"}


def _rho_view(p):
    from selfsim.sft import Patch
    return Patch(p.graph, p.radius, {g: s.rho for g, s in p.cells.items()}, "path")
