"""
Hypergraphs on the vertices of one rank, and linear spaces.

The rank-2 level of an r-differential poset is determined, up to singleton
covers, by an admissible hypergraph on the r rank-1 elements: one whose
hyperedges contain every pair of vertices exactly once, i.e. a linear space.
This module converts in both directions, enumerates linear spaces up to
isomorphism and builds the classical examples (simplex, complete graph,
near-pencil, projective planes).
"""

import logging
from collections import Counter, defaultdict
from concurrent.futures import ProcessPoolExecutor
from itertools import combinations
from math import comb
from typing import Dict, Iterable, List, Optional, Sequence, Tuple

from .canonical import canonical_cert, canonical_form
from .cliques import CliquePartitionSearch
from .errors import (
    HypergraphStructureError,
    InadmissibleHypergraphError,
    RankRangeError,
    ResourceLimitError,
)
from .fields import plane_incidence
from .poset import PosetFragment, RankedPoset
from .schemas import ExtremalP2
from .settings import get_limit

logger = logging.getLogger(__name__)

Edge = Tuple[int, ...]


class Hypergraph:
    """
    Vertices 1..r and a set of hyperedges, each a sorted tuple of at least two vertices.

    Edges are kept sorted, so equal hypergraphs compare equal.
    """

    __slots__ = ("r", "edges")

    def __init__(self, r: int, edges: Iterable[Sequence[int]] = ()):
        if r < 0:
            raise HypergraphStructureError(f"vertex count must be nonnegative, got {r}")
        normalized = []
        for edge in edges:
            e = tuple(sorted(int(v) for v in edge))
            if len(e) < 2:
                raise HypergraphStructureError(f"hyperedge {e} has fewer than two vertices")
            if len(set(e)) != len(e):
                raise HypergraphStructureError(f"hyperedge {e} repeats a vertex")
            if e[0] < 1 or e[-1] > r:
                raise HypergraphStructureError(f"hyperedge {e} leaves the vertex range 1..{r}")
            normalized.append(e)
        if len(set(normalized)) != len(normalized):
            raise HypergraphStructureError("duplicate hyperedges")
        self.r = int(r)
        self.edges: Tuple[Edge, ...] = tuple(sorted(normalized))

    def degree(self, v: int) -> int:
        return sum(1 for e in self.edges if v in e)

    def __eq__(self, other) -> bool:
        return isinstance(other, Hypergraph) and (self.r, self.edges) == (other.r, other.edges)

    def __hash__(self) -> int:
        return hash((self.r, self.edges))

    def __repr__(self) -> str:
        return f"Hypergraph(r={self.r}, edges={list(self.edges)})"


def is_admissible(H: Hypergraph) -> bool:
    """True iff every pair of distinct vertices lies in exactly one hyperedge."""
    pairs = Counter(pair for e in H.edges for pair in combinations(e, 2))
    if any(count != 1 for count in pairs.values()):
        return False
    return len(pairs) == comb(H.r, 2)


def dimension_sum(H: Hypergraph) -> int:
    """T_1: the sum over hyperedges of |F| - 1."""
    return sum(len(e) - 1 for e in H.edges)


def p2_value(H: Hypergraph) -> int:
    return H.r * (H.r + 1) - dimension_sum(H)


def poset_from_hypergraph(H: Hypergraph, r: int) -> RankedPoset:
    """
    Build ranks 0..2 of an r-differential poset from a linear space on r points.

    Rank 2 lists one element per hyperedge, in edge order, then for each
    rank-1 element the singleton covers that bring its up-degree to r + 1.

    Raises:
        InadmissibleHypergraphError: H is not admissible or H.r != r
    """
    if H.r != r:
        raise InadmissibleHypergraphError(f"hypergraph has {H.r} vertices, expected {r}")
    if not is_admissible(H):
        raise InadmissibleHypergraphError(f"{H} does not cover every vertex pair exactly once")
    rank2: List[Tuple[int, ...]] = [tuple(v - 1 for v in e) for e in H.edges]
    for v in range(1, r + 1):
        rank2.extend((v - 1,) for _ in range(r + 1 - H.degree(v)))
    return RankedPoset([[()], [(0,)] * r, rank2], r=r)


def hypergraph_from_ranks(P: RankedPoset, n: int) -> Hypergraph:
    """
    H_n: vertices are the rank-n elements (index i becomes vertex i + 1), and
    every rank-(n+1) element covering two or more of them contributes the set
    it covers as a hyperedge.
    """
    if n < 0 or n + 1 > P.top_rank:
        raise RankRangeError(f"H_{n} needs ranks up to {n + 1}, poset stops at {P.top_rank}")
    edges = [tuple(c + 1 for c in covered) for covered in P.down(n + 1) if len(covered) >= 2]
    return Hypergraph(P.size(n), edges)


def incidence_fragment(H: Hypergraph) -> PosetFragment:
    """Vertices below, hyperedges above; isomorphic fragments mean isomorphic hypergraphs."""
    if not H.edges:
        return PosetFragment([[()] * H.r])
    return PosetFragment([[()] * H.r, [tuple(v - 1 for v in e) for e in H.edges]])


def hypergraph_cert(H: Hypergraph) -> bytes:
    return canonical_cert(incidence_fragment(H))


def canonical_hypergraph(H: Hypergraph) -> Hypergraph:
    if not H.edges:
        return H
    form = canonical_form(incidence_fragment(H))
    return Hypergraph(H.r, [tuple(c + 1 for c in covered) for covered in form.down_level(1)])


def _complete_masks(r: int) -> List[int]:
    full = (1 << r) - 1
    return [full & ~(1 << v) for v in range(r)]


def _classes_under_root(r: int, root: Optional[Edge]) -> Dict[bytes, Tuple[Edge, ...]]:
    search = CliquePartitionSearch(_complete_masks(r), symmetric_root=True)
    if root is not None:
        search.force(root)
    found: Dict[bytes, Tuple[Edge, ...]] = {}
    for cliques in search.solutions():
        H = Hypergraph(r, [tuple(v + 1 for v in c) for c in cliques])
        cert = hypergraph_cert(H)
        if cert not in found:
            found[cert] = H.edges
    return found


def enumerate_linear_spaces(r: int, limit: Optional[int] = None, jobs: int = 1) -> List[Hypergraph]:
    """
    One canonical representative per isomorphism class of linear spaces on r points.

    Args:
        r: number of points
        limit: largest r accepted; the configured max_linear_space_r if None
        jobs: worker processes; the first branching choice is split across them

    Returns:
        Representatives ordered by dimension sum, then by edge list

    Raises:
        ResourceLimitError: r exceeds the limit
    """
    if r < 1:
        raise ValueError(f"r must be positive, got {r}")
    limit = get_limit("max_linear_space_r") if limit is None else limit
    if r > limit:
        raise ResourceLimitError(f"linear space enumeration is limited to r <= {limit}, got r={r}", limit=limit)
    if r == 1:
        return [Hypergraph(1, [])]

    if jobs > 1:
        roots = CliquePartitionSearch(_complete_masks(r), symmetric_root=True).root_choices()
        merged: Dict[bytes, Tuple[Edge, ...]] = {}
        with ProcessPoolExecutor(max_workers=jobs) as executor:
            for part in executor.map(_classes_under_root, [r] * len(roots), roots):
                for cert, edges in part.items():
                    merged.setdefault(cert, edges)
    else:
        merged = _classes_under_root(r, None)

    classes = [canonical_hypergraph(Hypergraph(r, edges)) for edges in merged.values()]
    classes.sort(key=lambda H: (dimension_sum(H), H.edges))
    logger.info(f"Found {len(classes)} linear spaces on {r} points")
    return classes


def p2_spectrum(r: int, limit: Optional[int] = None, jobs: int = 1) -> List[int]:
    """Sorted multiset of p_2 = r(r+1) - T_1 over all linear spaces on r points."""
    return sorted(p2_value(H) for H in enumerate_linear_spaces(r, limit=limit, jobs=jobs))


def hyperedge_size_feasible(c: int, r: int) -> bool:
    """A hyperedge of size c in a linear space on r points needs (c - (r-1))(c - 2) <= 0."""
    return (c - (r - 1)) * (c - 2) <= 0


def extremal_p2(r: int) -> ExtremalP2:
    if r < 1:
        raise ValueError(f"r must be positive, got {r}")
    return ExtremalP2(
        r=r,
        min=comb(r + 2, 2) - 1,
        second_max=r * r - r + 3 if r > 1 else None,
        max=r * r + 1,
    )


def is_steiner(H: Hypergraph, l: int, m: int) -> bool:
    """True iff every block has size m and every l-subset of vertices lies in exactly one block."""
    if l < 1 or any(len(e) != m for e in H.edges):
        return False
    counts = Counter(sub for e in H.edges for sub in combinations(e, l))
    if any(c != 1 for c in counts.values()):
        return False
    return len(counts) == comb(H.r, l)


def is_projective_plane(H: Hypergraph) -> Optional[int]:
    """The order q if H is a projective plane S(2, q+1, q^2+q+1), else None."""
    q = 2
    while q * q + q + 1 < H.r:
        q += 1
    if q * q + q + 1 != H.r:
        return None
    return q if is_steiner(H, 2, q + 1) else None


def desarguesian_plane(q: int) -> Hypergraph:
    """PG(2, q) as a hypergraph whose vertices are points and whose hyperedges are lines."""
    incidence = plane_incidence(q)
    edges = [tuple(int(j) + 1 for j in row.nonzero()[0]) for row in incidence]
    return Hypergraph(len(incidence), edges)


def fano_plane() -> Hypergraph:
    return desarguesian_plane(2)


def simplex(r: int) -> Hypergraph:
    """The (r-1)-simplex: a single hyperedge through all r points."""
    return Hypergraph(r, [tuple(range(1, r + 1))] if r >= 2 else [])


def complete_graph(r: int) -> Hypergraph:
    return Hypergraph(r, combinations(range(1, r + 1), 2))


def near_pencil(r: int) -> Hypergraph:
    """One line through points 1..r-1, and point r joined to each of them by a 2-edge."""
    if r < 3:
        raise HypergraphStructureError(f"a near-pencil needs at least 3 points, got {r}")
    return Hypergraph(r, [tuple(range(1, r))] + [(v, r) for v in range(1, r)])


def cone(H: Hypergraph) -> Hypergraph:
    """Add a point r+1 joined to every old point by a 2-edge."""
    apex = H.r + 1
    return Hypergraph(apex, list(H.edges) + [(v, apex) for v in range(1, apex)])


def equal_p2_pairs(r: int, limit: Optional[int] = None) -> List[Tuple[Hypergraph, Hypergraph]]:
    """Pairs of nonisomorphic linear spaces on r points with the same p_2."""
    by_p2: Dict[int, List[Hypergraph]] = defaultdict(list)
    for H in enumerate_linear_spaces(r, limit=limit):
        by_p2[p2_value(H)].append(H)
    pairs = []
    for p2 in sorted(by_p2):
        pairs.extend(combinations(by_p2[p2], 2))
    return pairs
