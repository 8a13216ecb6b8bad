import pytest

from dposet_lib import (
    NotDifferentialError,
    RankRangeError,
    RankedPoset,
    complete_graph,
    fibonacci_poset,
    poset_from_hypergraph,
    rank_function,
    single_point,
    validate_differential,
    wagner_complete,
    wagner_extend,
    young_lattice,
)


@pytest.fixture
def k4_prefix():
    return poset_from_hypergraph(complete_graph(4), 4)


class TestWagnerExtend:
    def test_k4_prefix_gives_60(self, k4_prefix):
        assert rank_function(k4_prefix).as_tuple() == (1, 4, 14)
        assert wagner_extend(k4_prefix, 4).size(3) == 60

    def test_fibonacci_4_gives_72(self):
        assert wagner_extend(fibonacci_poset(4, 2), 4).size(3) == 72

    def test_single_point(self):
        P = wagner_extend(single_point(1), 1)
        assert P.levels == (1, 1)
        assert P.down(1) == ((0,),)

    def test_reflections_reproduce_up_sets(self, young6):
        P = young6.truncate(4)
        Q = wagner_extend(P, 1)
        lower = P.up(3)
        reflections = Q.down(5)[: len(lower)]
        assert [tuple(r) for r in reflections] == [tuple(u) for u in lower]

    def test_singletons_follow_reflections(self):
        P = fibonacci_poset(2, 2)
        Q = wagner_extend(P, 2)
        tail = Q.down(3)[P.size(1):]
        assert list(tail) == [(x,) for x in range(P.size(2)) for _ in range(2)]

    def test_rejects_non_differential(self):
        broken = RankedPoset([[()], [(0,)], [(0,)]], r=1)
        with pytest.raises(NotDifferentialError) as info:
            wagner_extend(broken, 1)
        assert info.value.report is not None
        assert not info.value.report.ok

    def test_validation_can_be_skipped(self):
        broken = RankedPoset([[()], [(0,)], [(0,)]], r=1)
        assert wagner_extend(broken, 1, validate=False).top_rank == 3


class TestWagnerComplete:
    def test_k4_prefix_to_rank_4(self, k4_prefix):
        completed = wagner_complete(k4_prefix, 4, 4)
        assert rank_function(completed).as_tuple() == (1, 4, 14, 60, 254)

    def test_fibonacci_from_single_point(self):
        P = wagner_complete(single_point(1), 1, 6)
        assert rank_function(P).as_tuple() == (1, 1, 2, 3, 5, 8, 13)

    def test_identity_at_top_rank(self, young6):
        assert wagner_complete(young6, 1, 6) == young6

    def test_below_top_rank(self, young6):
        with pytest.raises(RankRangeError):
            wagner_complete(young6, 1, 5)

    @pytest.mark.parametrize("start", ["young", "k4", "z2"])
    def test_every_step_validates_and_follows_recurrence(self, start, k4_prefix):
        P, r = {
            "young": (young_lattice(3), 1),
            "k4": (k4_prefix, 4),
            "z2": (fibonacci_poset(2, 1), 2),
        }[start]
        for _ in range(3):
            Q = wagner_extend(P, r)
            j = P.top_rank
            assert Q.size(j + 1) == r * P.size(j) + (P.size(j - 1) if j > 0 else 0)
            assert validate_differential(Q, r).ok
            P = Q

    def test_r_is_recorded(self):
        P = wagner_complete(RankedPoset([[()]], r=1), 3, 2)
        assert P.r == 3
        assert P.levels == (1, 3, 10)
