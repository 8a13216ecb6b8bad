import pytest

from dposet_lib.cliques import CliquePartitionSearch, clique_partitions, mask_to_tuple


def complete(n):
    full = (1 << n) - 1
    return [full & ~(1 << v) for v in range(n)]


def test_mask_to_tuple():
    assert mask_to_tuple(0b1011) == (0, 1, 3)
    assert mask_to_tuple(0) == ()


def test_partitions_of_k4():
    found = [sorted(p) for p in clique_partitions(complete(4))]
    # the 4-clique, four triangle-plus-three-edges, and the six edges
    assert len(found) == 6
    assert [(0, 1, 2, 3)] in found
    assert sorted([(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)]) in found


def test_caps_limit_cliques_per_vertex():
    assert list(clique_partitions(complete(3), caps=[1, 1, 1])) == [[(0, 1, 2)]]
    assert list(clique_partitions(complete(3), caps=[0, 2, 2])) == []


def test_dimension_sum_target():
    assert len(list(clique_partitions(complete(4), t_target=5))) == 4
    assert list(clique_partitions(complete(4), t_target=3)) == [[(0, 1, 2, 3)]]
    assert list(clique_partitions(complete(4), t_target=4)) == []


def test_edgeless_graph_has_one_empty_partition():
    assert list(clique_partitions([0, 0, 0])) == [[]]


def test_path():
    # 0 - 1 - 2: no triangle, each edge on its own
    assert list(clique_partitions([0b010, 0b101, 0b010])) == [[(0, 1), (1, 2)]]


def test_symmetric_root_choices():
    search = CliquePartitionSearch(complete(4), symmetric_root=True)
    assert search.root_choices() == [(0, 1, 2, 3), (0, 1, 2), (0, 1)]


def test_force_fixes_first_clique():
    search = CliquePartitionSearch(complete(4))
    assert search.force((0, 1, 2))
    assert list(search.solutions()) == [[(0, 1, 2), (0, 3), (1, 3), (2, 3)]]


def test_force_rejects_non_clique():
    search = CliquePartitionSearch([0b010, 0b101, 0b010])
    with pytest.raises(ValueError):
        search.force((0, 2))


def test_asymmetric_adjacency_is_rejected():
    with pytest.raises(ValueError):
        CliquePartitionSearch([0b10, 0b00])


def test_should_stop_interrupts():
    search = CliquePartitionSearch(complete(6), should_stop=lambda: True, check_interval=1)
    assert list(search.solutions()) == []
    assert search.interrupted
    assert search.chosen == []
