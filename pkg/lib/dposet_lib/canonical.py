"""
Canonical labeling of layered posets up to rank-preserving isomorphism.

Elements are colored by rank and the coloring is refined by the multisets of
neighbor colors above and below until it stabilizes. If cells remain, the
search individualizes one element of the first non-singleton cell at a time
and refines again. Every discrete coloring reached is a candidate labeling;
the canonical one is the candidate with the smallest cover encoding.

Two prunings keep the search small on posets with many symmetries:
elements with identical down and up sets are interchangeable, so only one of
them is individualized; and when a new leaf repeats an earlier encoding, the
automorphism relating the two leaves is used to skip every sibling subtree it
maps onto an already explored one.
"""

import logging
from typing import Dict, List, Optional, Sequence, Tuple

import numpy as np

from .poset import LayeredCovers

logger = logging.getLogger(__name__)

CERT_MAGIC = b"DPC1"
# Earlier leaves tried per repeated encoding when looking for an automorphism.
MAX_LEAVES_PER_CODE = 16

Code = Tuple[Tuple[Tuple[int, ...], ...], ...]


class _Frame:
    __slots__ = ("colors", "seq", "children", "next", "tried")

    def __init__(self, colors: List[int], seq: Tuple[int, ...], children: List[int]):
        self.colors = colors
        self.seq = seq
        self.children = children
        self.next = 0
        self.tried = set()


class _CanonicalSearch:
    def __init__(self, P: LayeredCovers):
        self.levels = P.levels
        self.offsets = [0]
        for size in self.levels:
            self.offsets.append(self.offsets[-1] + size)
        self.n = self.offsets[-1]
        self.rank_of: List[int] = []
        self.down_g: List[Tuple[int, ...]] = []
        self.up_g: List[Tuple[int, ...]] = []
        for j, size in enumerate(self.levels):
            below = self.offsets[j - 1] if j > 0 else 0
            above = self.offsets[j + 1]
            down_level = P.down_level(j)
            up_level = P.up_level(j)
            for i in range(size):
                self.rank_of.append(j)
                self.down_g.append(tuple(below + c for c in down_level[i]))
                self.up_g.append(tuple(above + c for c in up_level[i]))

        self.best_code: Optional[Code] = None
        self.best_colors: Optional[List[int]] = None
        self.leaves: Dict[Code, List[List[int]]] = {}
        self.leaf_count = 0

    def refine(self, colors: List[int]) -> List[int]:
        count = len(set(colors))
        while True:
            signatures = [
                (
                    colors[v],
                    tuple(sorted(colors[u] for u in self.down_g[v])),
                    tuple(sorted(colors[u] for u in self.up_g[v])),
                )
                for v in range(self.n)
            ]
            order = {sig: i for i, sig in enumerate(sorted(set(signatures)))}
            refined = [order[sig] for sig in signatures]
            if len(order) == count:
                return refined
            colors, count = refined, len(order)

    def first_open_cell(self, colors: List[int]) -> Optional[List[int]]:
        cells: Dict[int, List[int]] = {}
        for v, c in enumerate(colors):
            cells.setdefault(c, []).append(v)
        for c in sorted(cells):
            if len(cells[c]) > 1:
                return cells[c]
        return None

    @staticmethod
    def individualize(colors: List[int], v: int) -> List[int]:
        target = colors[v]
        split = [2 * c + (1 if c == target else 0) for c in colors]
        split[v] = 2 * target
        return split

    def encode(self, colors: List[int]) -> Code:
        inverse = [0] * self.n
        for v, c in enumerate(colors):
            inverse[c] = v
        code = []
        for j in range(1, len(self.levels)):
            below = self.offsets[j - 1]
            code.append(tuple(
                tuple(sorted(colors[u] - below for u in self.down_g[inverse[p]]))
                for p in range(self.offsets[j], self.offsets[j + 1])
            ))
        return tuple(code)

    def leaf(self, colors: List[int], seq: Tuple[int, ...]) -> Optional[int]:
        """Record a discrete coloring; return a depth to jump back to, if any."""
        self.leaf_count += 1
        code = self.encode(colors)
        if self.best_code is None or code < self.best_code:
            self.best_code, self.best_colors = code, colors

        inverse = [0] * self.n
        for v, c in enumerate(colors):
            inverse[c] = v
        earlier = self.leaves.get(code)
        if earlier is None:
            self.leaves[code] = [inverse]
            return None

        for other in reversed(earlier):
            jump = self._jump_depth(colors, other, seq)
            if jump is not None:
                return jump
        if len(earlier) < MAX_LEAVES_PER_CODE:
            earlier.append(inverse)
        return None

    @staticmethod
    def _jump_depth(colors: List[int], other_inverse: List[int], seq: Tuple[int, ...]) -> Optional[int]:
        # delta maps this leaf onto the earlier one; equal encodings make it an automorphism
        delta = [other_inverse[c] for c in colors]
        for depth, v in enumerate(seq):
            if delta[v] == v:
                continue
            smallest, x = v, delta[v]
            while x != v:
                smallest = min(smallest, x)
                x = delta[x]
            return depth if smallest < v else None
        return None

    def run(self) -> List[int]:
        colors = self.refine(list(self.rank_of))
        cell = self.first_open_cell(colors)
        if cell is None:
            self.leaf(colors, ())
            return self.best_colors

        stack = [_Frame(colors, (), cell)]
        while stack:
            frame = stack[-1]
            if frame.next >= len(frame.children):
                stack.pop()
                continue
            v = frame.children[frame.next]
            frame.next += 1
            twin_key = (self.down_g[v], self.up_g[v])
            if twin_key in frame.tried:
                continue
            frame.tried.add(twin_key)

            child = self.refine(self.individualize(frame.colors, v))
            seq = frame.seq + (v,)
            cell = self.first_open_cell(child)
            if cell is None:
                jump = self.leaf(child, seq)
                if jump is not None:
                    del stack[jump + 1:]
                continue
            stack.append(_Frame(child, seq, cell))

        logger.debug(f"Canonical search on levels {self.levels} visited {self.leaf_count} leaves")
        return self.best_colors


def canonical_labeling(P: LayeredCovers) -> List[List[int]]:
    """
    Compute the canonical relabeling of P.

    Returns:
        perms with perms[j][old_index] = new_index for every stored level
    """
    search = _CanonicalSearch(P)
    colors = search.run()
    perms = []
    for j, size in enumerate(search.levels):
        start = search.offsets[j]
        perms.append([colors[start + i] - start for i in range(size)])
    return perms


def canonical_form(P: LayeredCovers) -> LayeredCovers:
    """Relabeled copy of P that is identical for all isomorphic inputs."""
    return P.relabel(canonical_labeling(P))


def _cert_from_code(levels: Sequence[int], code: Code) -> bytes:
    parts = [CERT_MAGIC, np.array([len(levels), *levels], dtype=">u4").tobytes()]
    for j in range(1, len(levels)):
        matrix = np.zeros((levels[j], levels[j - 1]), dtype=np.uint8)
        for p, covered in enumerate(code[j - 1]):
            matrix[p, list(covered)] = 1
        parts.append(np.packbits(matrix, axis=1).tobytes())
    return b"".join(parts)


def canonical_cert(P: LayeredCovers) -> bytes:
    """
    Byte string identifying P up to rank-preserving isomorphism.

    The layout is a magic prefix, the big-endian level sizes, and then, per
    level above the bottom, the row-packed cover matrix in canonical order.
    """
    search = _CanonicalSearch(P)
    search.run()
    return _cert_from_code(search.levels, search.best_code)


def is_isomorphic(P: LayeredCovers, Q: LayeredCovers) -> bool:
    if P.levels != Q.levels:
        return False
    return canonical_cert(P) == canonical_cert(Q)
