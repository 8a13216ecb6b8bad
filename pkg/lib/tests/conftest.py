"""
Shared fixtures and independent oracles.

The oracles here avoid the engine's own algorithms. Isomorphism goes
through networkx and walks are counted one step at a time.
"""

import random
from itertools import combinations
from typing import Dict, List, Set, Tuple

import networkx as nx
import pytest

from dposet_lib import (
    RankedPoset,
    cartesian_product,
    fibonacci_poset,
    validate_differential,
    young_lattice,
)


def to_networkx(P) -> nx.DiGraph:
    """Hasse diagram with edges pointing up and the rank as a node attribute."""
    G = nx.DiGraph()
    for j, size in enumerate(P.levels):
        for i in range(size):
            G.add_node((j, i), rank=j)
    for j in range(1, len(P.levels)):
        for i, covered in enumerate(P.down_level(j)):
            for c in covered:
                G.add_edge((j - 1, c), (j, i))
    return G


def nx_isomorphic(P, Q) -> bool:
    if P.levels != Q.levels:
        return False
    return nx.is_isomorphic(
        to_networkx(P),
        to_networkx(Q),
        node_match=lambda a, b: a["rank"] == b["rank"],
    )


def nx_classes(posets) -> List:
    """One representative per isomorphism class, by WL-hash buckets and an exact check inside each."""
    buckets: Dict[str, List] = {}
    for P in posets:
        G = to_networkx(P)
        key = nx.weisfeiler_lehman_graph_hash(G, node_attr="rank") + str(P.levels)
        bucket = buckets.setdefault(key, [])
        if not any(nx_isomorphic(P, Q) for Q in bucket):
            bucket.append(P)
    return [P for bucket in buckets.values() for P in bucket]


def random_relabel(P, seed: int = 0):
    rng = random.Random(seed)
    perms = []
    for size in P.levels:
        perm = list(range(size))
        rng.shuffle(perm)
        perms.append(perm)
    return P.relabel(perms)


def naive_extensions(P: RankedPoset, r: int) -> List[RankedPoset]:
    """
    Every way to add a rank, found by subset search.

    A new element covering two or more top elements may only cover a set in
    which every pair shares a lower cover; each such pair must end up with
    exactly one common upper cover, and the remaining up-degree is filled
    with elements covering a single top element.
    """
    top = P.top_rank
    n = P.size(top)
    down_sets = [set(c) for c in P.down(top)]
    shares = {
        (x, y) for x, y in combinations(range(n), 2)
        if top > 0 and down_sets[x] & down_sets[y]
    }
    candidates = [
        S for k in range(2, n + 1) for S in combinations(range(n), k)
        if all(pair in shares for pair in combinations(S, 2))
    ]
    need = [len(down_sets[x]) + r for x in range(n)]

    results = []

    def search(i: int, chosen: List[Tuple[int, ...]], covered: Set[Tuple[int, int]], used: List[int]):
        if i == len(candidates):
            if covered != shares:
                return
            level = list(chosen)
            for x in range(n):
                level.extend((x,) for _ in range(need[x] - used[x]))
            results.append(P.extended(level))
            return
        search(i + 1, chosen, covered, used)
        S = candidates[i]
        pairs = set(combinations(S, 2))
        if pairs & covered or any(used[x] + 1 > need[x] for x in S):
            return
        for x in S:
            used[x] += 1
        search(i + 1, chosen + [S], covered | pairs, used)
        for x in S:
            used[x] -= 1

    search(0, [], set(), [0] * n)
    for Q in results:
        assert validate_differential(Q, r).ok
    return results


def naive_counts(r: int, N: int) -> List[int]:
    """Class counts per rank, by naive extension and networkx isomorph filtering."""
    frontier = [RankedPoset([[()]], r)]
    counts = [1]
    for _ in range(N):
        children = [Q for P in frontier for Q in naive_extensions(P, r)]
        frontier = nx_classes(children)
        counts.append(len(frontier))
    return counts


def literal_kappa4(P: RankedPoset, n: int) -> int:
    """Closed walks x1 < x2 > x3 < x4 > x1 with x1, x3 in rank n, one step at a time."""
    total = 0
    up, down = P.up(n), P.down(n + 1)
    for x1 in range(P.size(n)):
        for x2 in up[x1]:
            for x3 in down[x2]:
                for x4 in up[x3]:
                    if x1 in down[x4]:
                        total += 1
    return total


def partitions_by_ascent(n: int) -> List[Tuple[int, ...]]:
    """Partitions of n listed through ascending compositions, returned as decreasing tuples."""
    out = []

    def grow(rest: int, smallest: int, parts: List[int]):
        if rest == 0:
            out.append(tuple(reversed(parts)))
            return
        for part in range(smallest, rest + 1):
            grow(rest - part, part, parts + [part])

    grow(n, 1, [])
    return out


def partition_count_dp(N: int) -> List[int]:
    ways = [1] + [0] * N
    for part in range(1, N + 1):
        for total in range(part, N + 1):
            ways[total] += ways[total - part]
    return ways


@pytest.fixture(scope="session")
def young6():
    return young_lattice(6)


@pytest.fixture(scope="session")
def z1():
    return fibonacci_poset(1, 6)


@pytest.fixture(scope="session")
def z2():
    return fibonacci_poset(2, 5)


@pytest.fixture(scope="session")
def young_squared():
    y = young_lattice(5)
    return cartesian_product(y, y, 5)
