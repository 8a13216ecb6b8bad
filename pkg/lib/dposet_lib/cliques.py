"""
Edge-clique partitions of small graphs under per-vertex clique caps.

Both new ranks of a differential poset and linear spaces on r points are
edge-clique partitions: every edge lies in exactly one chosen clique, and a
vertex may lie in at most caps[v] cliques. Graphs are given as adjacency
bitmasks, one int per vertex.
"""

import logging
from typing import Callable, Iterator, List, Optional, Sequence, Tuple

logger = logging.getLogger(__name__)

Clique = Tuple[int, ...]


def mask_to_tuple(mask: int) -> Clique:
    out = []
    while mask:
        low = mask & -mask
        out.append(low.bit_length() - 1)
        mask ^= low
    return tuple(out)


class CliquePartitionSearch:
    """
    Depth-first search over edge-clique partitions.

    The search always branches on the smallest uncovered edge (a, b) and tries
    every clique {a, b} + S with S a clique of still-uncovered edges inside the
    common neighborhood of a and b, largest cliques first.

    Args:
        masks: adjacency bitmasks, masks[v] has bit u set iff u~v
        caps: maximum number of cliques per vertex, unlimited if None
        t_target: if given, only partitions with sum(|C| - 1) == t_target
        symmetric_root: the graph is complete and the caps uniform, so on the
            first branch only one clique per size needs trying
        should_stop: polled periodically; the search ends early when it
            returns True and sets interrupted
        check_interval: nodes between should_stop polls
    """

    def __init__(
        self,
        masks: Sequence[int],
        caps: Optional[Sequence[int]] = None,
        t_target: Optional[int] = None,
        symmetric_root: bool = False,
        should_stop: Optional[Callable[[], bool]] = None,
        check_interval: int = 256,
    ):
        self.n = len(masks)
        for v, mask in enumerate(masks):
            if mask >> v & 1:
                raise ValueError(f"vertex {v} is adjacent to itself")
            for u in mask_to_tuple(mask):
                if u >= self.n or not masks[u] >> v & 1:
                    raise ValueError(f"adjacency of {v} and {u} is not symmetric")
        self.masks = list(masks)
        self.caps = list(caps) if caps is not None else [self.n] * self.n
        self.t_target = t_target
        self.symmetric_root = symmetric_root
        self.should_stop = should_stop
        self.check_interval = check_interval

        self.unc: List[int] = list(masks)
        self.counts = [0] * self.n
        self.free = sum(1 << v for v in range(self.n) if self.caps[v] > 0)
        self.remaining = sum(m.bit_count() for m in masks) // 2
        self.t = 0
        self.chosen: List[int] = []
        self.nodes = 0
        self.interrupted = False

    def _apply(self, clique: int) -> None:
        size = clique.bit_count()
        for v in mask_to_tuple(clique):
            self.unc[v] &= ~clique
            self.counts[v] += 1
            if self.counts[v] >= self.caps[v]:
                self.free &= ~(1 << v)
        self.remaining -= size * (size - 1) // 2
        self.t += size - 1
        self.chosen.append(clique)

    def _undo(self, clique: int) -> None:
        size = clique.bit_count()
        self.chosen.pop()
        self.t -= size - 1
        self.remaining += size * (size - 1) // 2
        for v in mask_to_tuple(clique):
            self.counts[v] -= 1
            if self.counts[v] < self.caps[v]:
                self.free |= 1 << v
            self.unc[v] |= self.masks[v] & clique & ~(1 << v)

    def _feasible(self, touched: Optional[int] = None) -> bool:
        if self.t_target is not None:
            if self.t > self.t_target or self.t + self.remaining < self.t_target:
                return False
        vertices = mask_to_tuple(touched) if touched is not None else range(self.n)
        for v in vertices:
            if self.counts[v] > self.caps[v]:
                return False
            if self.unc[v] and self.counts[v] >= self.caps[v]:
                return False
        return True

    def _cliques_within(self, mask: int) -> List[int]:
        found = []

        def grow(clique: int, candidates: int) -> None:
            found.append(clique)
            while candidates:
                low = candidates & -candidates
                candidates ^= low
                grow(clique | low, candidates & self.unc[low.bit_length() - 1])

        grow(0, mask)
        return found

    def _candidates(self, root: bool = False) -> List[int]:
        a = next(v for v in range(self.n) if self.unc[v])
        low = self.unc[a] & -self.unc[a]
        b = low.bit_length() - 1
        base = (1 << a) | low
        common = self.unc[a] & self.unc[b] & self.free
        if root and self.symmetric_root:
            bits = mask_to_tuple(common)
            extensions = [sum(1 << v for v in bits[:k]) for k in range(len(bits) + 1)]
        else:
            extensions = self._cliques_within(common)
        candidates = [base | s for s in extensions]
        candidates.sort(key=lambda c: (-c.bit_count(), mask_to_tuple(c)))
        return candidates

    def root_choices(self) -> List[Clique]:
        """Cliques the first branch would try; forcing each one splits the search."""
        if self.remaining == 0:
            return []
        return [mask_to_tuple(c) for c in self._candidates(root=True)]

    def force(self, clique: Sequence[int]) -> bool:
        """Fix a first clique before searching. Returns False if it cannot lead anywhere."""
        mask = sum(1 << v for v in clique)
        for v in clique:
            if (mask & ~(1 << v)) & ~self.unc[v]:
                raise ValueError(f"{tuple(clique)} is not a clique of uncovered edges")
        self._apply(mask)
        return self._feasible(mask)

    def _tick(self) -> bool:
        self.nodes += 1
        if self.should_stop is not None and self.nodes % self.check_interval == 0 and self.should_stop():
            self.interrupted = True
        return self.interrupted

    def solutions(self) -> Iterator[List[Clique]]:
        """Yield every admissible partition as a list of sorted vertex tuples."""
        if not self._feasible():
            return
        if self.remaining == 0:
            if self.t_target is None or self.t == self.t_target:
                yield [mask_to_tuple(c) for c in self.chosen]
            return

        # frame: [candidates, next index, clique currently applied]
        stack = [[self._candidates(root=not self.chosen), 0, None]]
        while stack:
            frame = stack[-1]
            if frame[2] is not None:
                self._undo(frame[2])
                frame[2] = None
            if frame[1] >= len(frame[0]) or self._tick():
                if self.interrupted:
                    while stack:
                        top = stack.pop()
                        if top[2] is not None:
                            self._undo(top[2])
                    return
                stack.pop()
                continue
            clique = frame[0][frame[1]]
            frame[1] += 1
            self._apply(clique)
            frame[2] = clique
            if not self._feasible(clique):
                continue
            if self.remaining == 0:
                if self.t_target is None or self.t == self.t_target:
                    yield [mask_to_tuple(c) for c in self.chosen]
                continue
            stack.append([self._candidates(), 0, None])


def clique_partitions(
    masks: Sequence[int],
    caps: Optional[Sequence[int]] = None,
    t_target: Optional[int] = None,
) -> Iterator[List[Clique]]:
    return CliquePartitionSearch(masks, caps=caps, t_target=t_target).solutions()
