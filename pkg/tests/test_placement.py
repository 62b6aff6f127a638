import pytest
from hypothesis import given, strategies as st

from mcqsim.config import ArchitectureConfig
from mcqsim.placement import (Placement, PlacementError, load_mapping, random_map,
                              select_destination, vanilla_map)


def arch(mx=2, my=1, q=3):
    return ArchitectureConfig(mx, my, 8, q, 1, False)


def test_vanilla_is_round_robin():
    p = vanilla_map(5, arch())
    assert p.core_of == {0: 0, 1: 1, 2: 0, 3: 1, 4: 0}
    assert p.occupancy == [3, 2]
    with pytest.raises(PlacementError):
        vanilla_map(7, arch())


def test_random_map_deterministic_and_within_capacity():
    a = arch(3, 3, 4)
    p1, p2 = random_map(30, a, 9), random_map(30, a, 9)
    assert p1 == p2
    assert max(p1.occupancy) <= 4 and sum(p1.occupancy) == 30


def test_load_mapping_errors():
    a = arch()
    assert load_mapping("0 1\n1 1\n", a).occupancy == [0, 2]
    for bad in ("0 1\n0 0\n", "0 5\n", "0\n", "0 1\n1 1\n2 1\n3 1\n", "a b\n"):
        with pytest.raises(PlacementError):
            load_mapping(bad, a)


def test_teleport_and_slots():
    p = vanilla_map(4, arch())
    p.apply_teleport(0, 1)
    assert p.core_of[0] == 1 and p.occupancy == [1, 3]
    assert p.slot_of[0] == 2  # lowest free slot on core 1
    with pytest.raises(PlacementError):
        p.apply_teleport(2, 1)


def test_simultaneous_moves_swap_through_full_cores():
    p = load_mapping("0 0\n1 1\n", ArchitectureConfig(2, 1, 8, 1, 1, False))
    p.apply_moves([(0, 1), (1, 0)])
    assert p.core_of == {0: 1, 1: 0}


def test_destination_policies():
    p = load_mapping("0 0\n1 1\n2 1\n", arch())
    # core 0 has 2 free, core 1 has 1 free
    assert select_destination((1, 0), p, "load_independent") == 0
    assert select_destination((0, 1), p, "load_independent") == 1
    assert select_destination((0, 1), p, "load_aware") == 0
    # tie on free slots goes to the last operand's core
    p2 = load_mapping("0 0\n1 1\n", arch())
    assert select_destination((0, 1), p2, "load_aware") == 1
    assert select_destination((1, 0), p2, "load_aware") == 0


def test_destination_falls_back_then_fails():
    a = ArchitectureConfig(3, 1, 8, 2, 1, False)
    p = load_mapping("0 0\n1 0\n2 1\n3 2\n4 2\n", a)
    # preferred core 2 (last operand) is full; core 1 has room for one incoming
    assert select_destination((2, 3), p, "load_independent") == 1
    full = load_mapping("0 0\n1 0\n2 1\n3 1\n", ArchitectureConfig(2, 1, 8, 2, 1, False))
    with pytest.raises(PlacementError):
        select_destination((0, 2), full, "load_aware")


@given(st.lists(st.tuples(st.integers(0, 11), st.integers(0, 3)), max_size=40))
def test_conservation_under_teleports(moves):
    p = vanilla_map(12, ArchitectureConfig(2, 2, 8, 6, 1, False))
    for q, c in moves:
        try:
            p.apply_teleport(q, c)
        except PlacementError:
            pass
        assert sum(p.occupancy) == 12
        assert all(0 <= o <= 6 for o in p.occupancy)
        slots = [(p.core_of[x], p.slot_of[x]) for x in range(12)]
        assert len(set(slots)) == 12
