import pytest

from selfsim.vertex_groups import (Abstract, CyclicFinite, FiniteTable, FreeGroup, GroupKindError, IntegerGroup,
                                   group_from_json)


def test_flags():
    assert IntegerGroup().amenable and IntegerGroup().infinite
    assert not FreeGroup(2).amenable and FreeGroup(3).infinite
    assert CyclicFinite(3).amenable and not CyclicFinite(3).infinite
    assert Abstract(infinite=False, amenable=False).amenable is False


def test_free_group_reduction_and_parse():
    F = FreeGroup(2)
    assert F.parse("ab^-1ba") == (1, 1)
    assert F.format(F.parse("a^-1b")) == "a^-1b"
    assert F.format(()) == "e"
    assert F.mul((1, 2), (-2, -1)) == ()
    with pytest.raises(ValueError):
        F.parse("c")


def test_free_group_moves_exclude_identity():
    K = FreeGroup(2).moves()
    assert () not in K
    assert len(K) == 4 + 12  # letters plus reduced products of two letters


def test_cyclic_and_table():
    C = CyclicFinite(4)
    assert C.mul(3, 2) == 1 and C.inv(1) == 3 and C.parse("#2") == 2
    klein = ((0, 1, 2, 3), (1, 0, 3, 2), (2, 3, 0, 1), (3, 2, 1, 0))
    T = FiniteTable((), klein)
    assert T.inv(3) == 3 and T.generators() == [1, 2, 3]


def test_table_rejects_non_group():
    with pytest.raises(ValueError):
        FiniteTable((), ((0, 1), (1, 1)))


def test_abstract_refuses_arithmetic():
    with pytest.raises(GroupKindError):
        Abstract().mul(1, 2)


@pytest.mark.parametrize("d", [{"kind": "Z"}, {"kind": "F", "rank": 3}, {"kind": "Zn", "order": 5},
                               {"kind": "abstract", "infinite": True, "amenable": False}])
def test_json_round_trip(d):
    assert group_from_json(d).to_json() == d


def test_unknown_kind():
    with pytest.raises(ValueError):
        group_from_json({"kind": "Q"})
