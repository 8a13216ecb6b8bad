"""
Graded posets with a unique minimum, stored rank by rank.

Elements are addressed as (rank, index); there are no global element ids.
Every rank j >= 1 stores, for each of its elements, the sorted tuple of
indices it covers in rank j - 1. Up-lists are derived once at construction.
All objects are immutable after construction.
"""

import logging
from collections import Counter
from itertools import combinations
from typing import Dict, Iterator, List, Sequence, Tuple

from .errors import InsufficientRankError, PosetStructureError, RankRangeError
from .schemas import RankFunction, ValidationReport, Violation

logger = logging.getLogger(__name__)

Level = Tuple[Tuple[int, ...], ...]


class LayeredCovers:
    """A stack of levels in which each element lists what it covers one level down."""

    __slots__ = ("_down", "_up")

    def __init__(self, down: Sequence[Sequence[Sequence[int]]]):
        self._down: Tuple[Level, ...] = tuple(
            tuple(tuple(int(i) for i in covered) for covered in level) for level in down
        )
        if not self._down:
            raise PosetStructureError("at least one level is required")
        self._check_structure()
        self._up: Tuple[Level, ...] = self._derive_up()

    def _check_structure(self) -> None:
        for i, covered in enumerate(self._down[0]):
            if covered:
                raise PosetStructureError(f"bottom element {i} cannot cover anything")
        for j in range(1, len(self._down)):
            below = len(self._down[j - 1])
            if not self._down[j]:
                raise PosetStructureError(f"level {j} is empty")
            for i, covered in enumerate(self._down[j]):
                if not covered:
                    raise PosetStructureError(f"element ({j}, {i}) covers nothing in the level below")
                if any(b <= a for a, b in zip(covered, covered[1:])):
                    raise PosetStructureError(f"covers of ({j}, {i}) are not strictly increasing: {covered}")
                if covered[0] < 0 or covered[-1] >= below:
                    raise PosetStructureError(f"covers of ({j}, {i}) out of range 0..{below - 1}: {covered}")

    def _derive_up(self) -> Tuple[Level, ...]:
        up = []
        for j in range(len(self._down) - 1):
            lists: List[List[int]] = [[] for _ in self._down[j]]
            for i, covered in enumerate(self._down[j + 1]):
                for y in covered:
                    lists[y].append(i)
            up.append(tuple(tuple(lst) for lst in lists))
        up.append(tuple(() for _ in self._down[-1]))
        return tuple(up)

    @property
    def num_levels(self) -> int:
        return len(self._down)

    @property
    def levels(self) -> Tuple[int, ...]:
        """Number of elements per stored level, bottom first."""
        return tuple(len(level) for level in self._down)

    @property
    def covers(self) -> Tuple[Level, ...]:
        return self._down

    def _index(self, level: int) -> int:
        if level < 0 or level >= len(self._down):
            raise RankRangeError(f"level {level} outside 0..{len(self._down) - 1}")
        return level

    def down_level(self, level: int) -> Level:
        """Down-lists of every element on a stored level (0-based within the stack)."""
        return self._down[self._index(level)]

    def up_level(self, level: int) -> Level:
        """Up-lists of every element on a stored level; empty tuples on the top level."""
        return self._up[self._index(level)]

    def __eq__(self, other) -> bool:
        return type(self) is type(other) and self._key() == other._key()

    def __hash__(self) -> int:
        return hash(self._key())

    def _key(self):
        return self._down


class RankedPoset(LayeredCovers):
    """
    A finite truncation of a graded poset with a unique element of rank zero.

    Levels are indexed by rank, so down(j) and up(j) take ranks directly.
    The parameter r records which differential parameter the poset is meant
    for; it is advisory and never used to reject a structure.
    """

    __slots__ = ("r",)

    def __init__(self, down: Sequence[Sequence[Sequence[int]]], r: int = 1):
        if r < 1:
            raise PosetStructureError(f"r must be positive, got {r}")
        super().__init__(down)
        if len(self._down[0]) != 1:
            raise PosetStructureError(f"rank 0 must hold exactly one element, found {len(self._down[0])}")
        self.r = int(r)

    @property
    def top_rank(self) -> int:
        return len(self._down) - 1

    def size(self, j: int) -> int:
        return len(self.down_level(j))

    def down(self, j: int) -> Level:
        return self.down_level(j)

    def up(self, j: int) -> Level:
        return self.up_level(j)

    def extended(self, new_level: Sequence[Sequence[int]]) -> "RankedPoset":
        """Return a copy with one more rank on top."""
        return RankedPoset(self._down + (tuple(tuple(c) for c in new_level),), self.r)

    def truncate(self, N: int) -> "RankedPoset":
        if N < 0 or N > self.top_rank:
            raise RankRangeError(f"cannot truncate rank-{self.top_rank} poset to rank {N}")
        return RankedPoset(self._down[: N + 1], self.r)

    def with_r(self, r: int) -> "RankedPoset":
        return RankedPoset(self._down, r)

    def relabel(self, perms: Sequence[Sequence[int]]) -> "RankedPoset":
        """
        Rename elements within each rank.

        Args:
            perms: perms[j][old_index] = new_index, one permutation per rank

        Returns:
            An isomorphic poset with the new element order
        """
        return RankedPoset(_relabel_levels(self._down, perms), self.r)

    def _key(self):
        return (self.r, self._down)

    def __repr__(self) -> str:
        return f"RankedPoset(r={self.r}, levels={self.levels})"


class PosetFragment(LayeredCovers):
    """
    Ranks a..b of a poset, as returned by rank_selected.

    The bottom level may hold several elements. Fragments are not RankedPosets,
    so the axiom checks refuse them.
    """

    __slots__ = ("base_rank",)

    def __init__(self, down: Sequence[Sequence[Sequence[int]]], base_rank: int = 0):
        super().__init__(down)
        self.base_rank = int(base_rank)

    @property
    def top_rank(self) -> int:
        return self.base_rank + len(self._down) - 1

    def size(self, j: int) -> int:
        return len(self.down_level(j - self.base_rank))

    def down(self, j: int) -> Level:
        return self.down_level(j - self.base_rank)

    def up(self, j: int) -> Level:
        return self.up_level(j - self.base_rank)

    def relabel(self, perms: Sequence[Sequence[int]]) -> "PosetFragment":
        return PosetFragment(_relabel_levels(self._down, perms), self.base_rank)

    def __repr__(self) -> str:
        return f"PosetFragment(ranks={self.base_rank}..{self.top_rank}, levels={self.levels})"


def _relabel_levels(down: Tuple[Level, ...], perms: Sequence[Sequence[int]]) -> List[List[Tuple[int, ...]]]:
    if len(perms) != len(down):
        raise PosetStructureError(f"expected {len(down)} permutations, got {len(perms)}")
    for j, perm in enumerate(perms):
        if sorted(perm) != list(range(len(down[j]))):
            raise PosetStructureError(f"perms[{j}] is not a permutation of 0..{len(down[j]) - 1}")
    relabeled = []
    for j, level in enumerate(down):
        new_level: List[Tuple[int, ...]] = [()] * len(level)
        for old, covered in enumerate(level):
            if j == 0:
                new_level[perms[0][old]] = ()
            else:
                new_level[perms[j][old]] = tuple(sorted(perms[j - 1][c] for c in covered))
        relabeled.append(new_level)
    return relabeled


def single_point(r: int = 1) -> RankedPoset:
    """The one-element poset, i.e. rank 0 alone."""
    return RankedPoset([[()]], r)


def rank_function(P: LayeredCovers) -> RankFunction:
    return RankFunction(values=list(P.levels))


def validate_differential(P: RankedPoset, r: int) -> ValidationReport:
    """
    Check the differential axioms in every rank below the top rank.

    Axiom (i): two distinct elements of rank n have as many common upper
    covers as common lower covers, and that number is 0 or 1.
    Axiom (ii): an element of rank n is covered by exactly r more elements
    than it covers. The top rank is exempt, since its upper covers are not
    built yet.

    Args:
        P: the poset to check
        r: differential parameter

    Returns:
        ValidationReport listing every violated pair or element
    """
    if not isinstance(P, RankedPoset):
        raise TypeError(f"validate_differential needs a RankedPoset, got {type(P).__name__}")
    if r < 1:
        raise ValueError(f"r must be positive, got {r}")
    P._check_structure()

    violations: List[Violation] = []
    for n in range(P.top_rank):
        down_n = P.down(n)
        up_n = P.up(n)
        for x in range(len(down_n)):
            if len(up_n[x]) != len(down_n[x]) + r:
                violations.append(Violation(
                    rank=n, elements=[x], axiom="ii",
                    message=f"covers {len(down_n[x])} but is covered by {len(up_n[x])}, expected {len(down_n[x]) + r}",
                ))

        lower: Counter = Counter()
        if n > 0:
            for ups in P.up(n - 1):
                lower.update(combinations(ups, 2))
        upper: Counter = Counter()
        for covered in P.down(n + 1):
            upper.update(combinations(covered, 2))
        for pair in sorted(set(lower) | set(upper)):
            lo, hi = lower[pair], upper[pair]
            if lo != hi or hi > 1:
                violations.append(Violation(
                    rank=n, elements=list(pair), axiom="i",
                    message=f"{lo} common lower covers, {hi} common upper covers",
                ))

    if violations:
        logger.debug(f"Poset {P.levels} fails {len(violations)} axiom checks for r={r}")
    return ValidationReport(ok=not violations, r=r, top_rank=P.top_rank, violations=violations)


def young_partitions(n: int, max_part: int = None) -> Iterator[Tuple[int, ...]]:
    """Partitions of n in decreasing lexicographic order, e.g. (3), (2, 1), (1, 1, 1)."""
    if n == 0:
        yield ()
        return
    top = n if max_part is None else min(n, max_part)
    for first in range(top, 0, -1):
        for rest in young_partitions(n - first, first):
            yield (first,) + rest


def young_lattice(N: int) -> RankedPoset:
    """Young's lattice of integer partitions, truncated at rank N (r = 1)."""
    if N < 0:
        raise RankRangeError(f"N must be nonnegative, got {N}")
    down: List[List[Tuple[int, ...]]] = [[()]]
    previous: Dict[Tuple[int, ...], int] = {(): 0}
    for j in range(1, N + 1):
        level = list(young_partitions(j))
        covers = []
        for shape in level:
            covered = set()
            for i, part in enumerate(shape):
                nxt = shape[i + 1] if i + 1 < len(shape) else 0
                if part > nxt:
                    smaller = shape[:i] + (part - 1,) + shape[i + 1:]
                    covered.add(previous[tuple(p for p in smaller if p > 0)])
            covers.append(tuple(sorted(covered)))
        down.append(covers)
        previous = {shape: idx for idx, shape in enumerate(level)}
    return RankedPoset(down, r=1)


def fibonacci_poset(r: int, N: int) -> RankedPoset:
    """The Fibonacci r-differential poset Z(r) to rank N, built by iterated reflection."""
    from .wagner import wagner_complete

    return wagner_complete(single_point(r), r, N)


def cartesian_product(P: RankedPoset, Q: RankedPoset, N: int, strict: bool = True) -> RankedPoset:
    """
    Product order on pairs (x, y), truncated at rank N.

    (x, y) covers (x', y') iff one coordinate agrees and the other is a cover.
    Rank-n elements are ordered by rank of x, then index of x, then index of y.

    Args:
        P, Q: factors
        N: top rank of the product
        strict: require both factors to reach rank N; with strict=False a
            factor is taken as a finite poset that simply has no higher ranks

    Returns:
        The product poset with r = P.r + Q.r
    """
    if strict and (P.top_rank < N or Q.top_rank < N):
        raise InsufficientRankError(
            f"factors reach ranks {P.top_rank} and {Q.top_rank}, product needs {N}"
        )
    down: List[List[Tuple[int, ...]]] = [[()]]
    prev_index: Dict[Tuple[int, int, int], int] = {(0, 0, 0): 0}
    for n in range(1, N + 1):
        elements = []
        for a in range(0, n + 1):
            b = n - a
            if a > P.top_rank or b > Q.top_rank:
                continue
            for x in range(P.size(a)):
                for y in range(Q.size(b)):
                    elements.append((a, x, y))
        index = {key: i for i, key in enumerate(elements)}
        level = []
        for a, x, y in elements:
            b = n - a
            covered = []
            if a > 0:
                covered.extend(prev_index[(a - 1, xc, y)] for xc in P.down(a)[x])
            if b > 0:
                covered.extend(prev_index[(a, x, yc)] for yc in Q.down(b)[y])
            level.append(tuple(sorted(covered)))
        down.append(level)
        prev_index = index
    return RankedPoset(down, r=P.r + Q.r)


def young_power(r: int, N: int) -> RankedPoset:
    """Y^r, the product of r copies of Young's lattice, to rank N."""
    if r < 1:
        raise ValueError(f"r must be positive, got {r}")
    y = young_lattice(N)
    product = y
    for _ in range(r - 1):
        product = cartesian_product(product, y, N)
    return product


def rank_selected(P: RankedPoset, a: int, b: int) -> PosetFragment:
    """The rank-selected subposet on ranks a..b, with the covers between them."""
    if not (0 <= a <= b <= P.top_rank):
        raise RankRangeError(f"need 0 <= a <= b <= {P.top_rank}, got a={a}, b={b}")
    down = [[() for _ in range(P.size(a))]]
    down.extend(P.down(j) for j in range(a + 1, b + 1))
    return PosetFragment(down, base_rank=a)
