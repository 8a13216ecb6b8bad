"""
Exhaustive enumeration of differential posets and rank-function search.

A new rank on top of a poset that is r-differential up to rank j is the same
thing as an edge-clique partition of the sharing graph of rank j (two top
elements are adjacent iff they cover a common element), in which element x
lies in at most down(x) + r cliques. Each clique becomes a new element
covering it; the remaining up-degree of every x is filled with elements
covering x alone.
"""

import heapq
import logging
import os
import tempfile
import time
from concurrent.futures import ProcessPoolExecutor
from itertools import combinations
from pathlib import Path
from typing import Callable, Dict, Iterator, List, NamedTuple, Optional, Sequence, Set, Tuple

import numpy as np

from .canonical import canonical_cert
from .cliques import CliquePartitionSearch
from .errors import NotDifferentialError
from .poset import RankedPoset, single_point, validate_differential
from .schemas import EnumerationResult, SearchResult, SearchStatus
from .settings import get_default_budget, get_limit

logger = logging.getLogger(__name__)


class SharingGraph:
    """Top-rank elements, adjacent when they cover a common element, with that element as witness."""

    __slots__ = ("n", "adjacency", "witness")

    def __init__(self, n: int, witness: Dict[Tuple[int, int], int]):
        self.n = n
        self.witness = dict(witness)
        self.adjacency = np.zeros((n, n), dtype=bool)
        for x, y in self.witness:
            self.adjacency[x, y] = self.adjacency[y, x] = True

    @property
    def edges(self) -> List[Tuple[int, int]]:
        return sorted(self.witness)

    def neighbor_masks(self) -> List[int]:
        masks = []
        for x in range(self.n):
            masks.append(sum(1 << int(y) for y in np.flatnonzero(self.adjacency[x])))
        return masks


class ExtensionChoice(NamedTuple):
    cliques: Tuple[Tuple[int, ...], ...]
    singleton_counts: Tuple[int, ...]

    @property
    def new_size(self) -> int:
        return len(self.cliques) + sum(self.singleton_counts)


def sharing_graph(P: RankedPoset) -> SharingGraph:
    top = P.top_rank
    witness: Dict[Tuple[int, int], int] = {}
    if top > 0:
        for z, ups in enumerate(P.up(top - 1)):
            for pair in combinations(ups, 2):
                if pair in witness:
                    raise NotDifferentialError(
                        f"top elements {pair} cover both {witness[pair]} and {z} in rank {top - 1}"
                    )
                witness[pair] = z
    return SharingGraph(P.size(top), witness)


def _caps(P: RankedPoset, r: int) -> List[int]:
    return [len(covered) + r for covered in P.down(P.top_rank)]


def iter_extension_choices(
    P: RankedPoset,
    r: int,
    target_size: Optional[int] = None,
    should_stop: Optional[Callable[[], bool]] = None,
) -> Iterator[ExtensionChoice]:
    """
    Stream every valid way to add one rank to P.

    Args:
        P: poset differential up to its top rank (not rechecked here)
        r: differential parameter
        target_size: only choices producing exactly this many new elements
        should_stop: polled during the clique search; stops the stream early
    """
    graph = sharing_graph(P)
    caps = _caps(P, r)
    t_target = None
    if target_size is not None:
        # new size = sum(caps) - sum(|C| - 1)
        t_target = sum(caps) - target_size
        if t_target < 0:
            return
    search = CliquePartitionSearch(
        graph.neighbor_masks(),
        caps=caps,
        t_target=t_target,
        should_stop=should_stop,
        check_interval=get_limit("budget_check_interval"),
    )
    for cliques in search.solutions():
        used = [0] * graph.n
        for clique in cliques:
            for x in clique:
                used[x] += 1
        yield ExtensionChoice(
            cliques=tuple(sorted(cliques)),
            singleton_counts=tuple(cap - u for cap, u in zip(caps, used)),
        )


def apply_extension(P: RankedPoset, choice: ExtensionChoice) -> RankedPoset:
    """New rank: one element per clique in sorted clique order, then singletons by element."""
    level: List[Tuple[int, ...]] = list(choice.cliques)
    for x, count in enumerate(choice.singleton_counts):
        level.extend((x,) for _ in range(count))
    return P.extended(level)


def enumerate_extensions(P: RankedPoset, r: int, validate: bool = True) -> Iterator[RankedPoset]:
    """
    Stream all posets on ranks 0..j+1 that extend P and are r-differential up to rank j+1.

    Raises:
        NotDifferentialError: P itself fails validation
    """
    if validate:
        report = validate_differential(P, r)
        if not report.ok:
            raise NotDifferentialError(f"cannot extend a poset that is not {r}-differential", report=report)
    if P.r != r:
        P = P.with_r(r)
    for choice in iter_extension_choices(P, r):
        yield apply_extension(P, choice)


Lineage = Tuple[ExtensionChoice, ...]


def replay_lineage(r: int, lineage: Sequence[ExtensionChoice]) -> RankedPoset:
    """Rebuild a poset from the single point by applying its extension choices in order."""
    P = single_point(r)
    for choice in lineage:
        P = apply_extension(P, choice)
    return P


def _expand(
    lineage: Lineage,
    r: int,
    deadline: Optional[float],
) -> Tuple[List[Tuple[bytes, ExtensionChoice]], bool]:
    """All children of one frontier class as (cert, choice); the flag is set when the deadline cut it short."""
    interrupted = False

    def out_of_time() -> bool:
        nonlocal interrupted
        if deadline is not None and time.monotonic() > deadline:
            interrupted = True
        return interrupted

    P = replay_lineage(r, lineage)
    out = []
    for choice in iter_extension_choices(P, r, should_stop=out_of_time):
        if out_of_time():
            break
        out.append((canonical_cert(apply_extension(P, choice)), choice))
    return out, interrupted


class _CertSpill:
    """Final-rank certificates, kept in memory up to a threshold and then spilled as sorted runs."""

    def __init__(self, spill_dir: Optional[Path], threshold: int):
        self.spill_dir = Path(spill_dir) if spill_dir is not None else None
        self.threshold = threshold
        self.buffer: Set[bytes] = set()
        self.runs: List[Path] = []

    def add(self, cert: bytes) -> None:
        self.buffer.add(cert)
        if self.spill_dir is not None and len(self.buffer) >= self.threshold:
            self._flush()

    def _flush(self) -> None:
        self.spill_dir.mkdir(parents=True, exist_ok=True)
        fd, name = tempfile.mkstemp(prefix="certs-", suffix=".run", dir=self.spill_dir)
        with os.fdopen(fd, "w", encoding="ascii", newline="\n") as f:
            for cert in sorted(self.buffer):
                f.write(cert.hex() + "\n")
        self.runs.append(Path(name))
        logger.info(f"Spilled {len(self.buffer)} certificates to {name}")
        self.buffer.clear()

    def _iter_run(self, path: Path) -> Iterator[bytes]:
        with open(path, "r", encoding="ascii") as f:
            for line in f:
                yield bytes.fromhex(line.strip())

    def unique(self) -> Iterator[bytes]:
        """Sorted distinct certificates across memory and all runs."""
        if not self.runs:
            yield from sorted(self.buffer)
            return
        streams = [self._iter_run(p) for p in self.runs] + [iter(sorted(self.buffer))]
        previous = None
        for cert in heapq.merge(*streams):
            if cert != previous:
                yield cert
                previous = cert

    def cleanup(self) -> None:
        for path in self.runs:
            path.unlink(missing_ok=True)


def enumerate_posets(
    r: int,
    N: int,
    jobs: int = 1,
    budget_secs: Optional[float] = None,
    keep_certs: bool = False,
    keep_posets: bool = False,
    spill_dir: Optional[Path] = None,
) -> EnumerationResult:
    """
    Count r-differential posets up to rank N, one per isomorphism class.

    The search is breadth-first. The frontier of rank j holds one entry per
    class: its certificate, the certificate of the parent class it was first
    reached from, and the extension choice that produced it. A class is
    rebuilt from that lineage only while it is being expanded, every class is
    extended in all ways, and the children are deduplicated by certificate
    before the next rank.

    Args:
        r: differential parameter
        N: last rank
        jobs: worker processes for frontier expansion
        budget_secs: wall-clock budget; None means unlimited
        keep_certs: return the sorted certificates of rank N
        keep_posets: return representatives of rank N (not with spilling)
        spill_dir: spill rank-N certificates to sorted files here

    Returns:
        EnumerationResult with counts[j] for every finished rank; complete is
        False when the budget ran out, and counts then stop early
    """
    if r < 1 or N < 0:
        raise ValueError(f"need r >= 1 and N >= 0, got r={r}, N={N}")
    start = time.monotonic()
    deadline = start + budget_secs if budget_secs is not None else None

    def out_of_time() -> bool:
        return deadline is not None and time.monotonic() > deadline

    root_cert = canonical_cert(single_point(r))
    counts = [1]
    # parents[j][cert] = (parent cert at rank j - 1, choice); rank 0 has no parent
    parents: List[Dict[bytes, Optional[Tuple[bytes, ExtensionChoice]]]] = [{root_cert: None}]
    spill = _CertSpill(spill_dir, get_limit("spill_threshold"))
    if N == 0:
        spill.add(root_cert)

    def lineage(j: int, cert: bytes) -> Lineage:
        choices = []
        while j > 0:
            parent_cert, choice = parents[j][cert]
            choices.append(choice)
            cert, j = parent_cert, j - 1
        return tuple(reversed(choices))

    executor = ProcessPoolExecutor(max_workers=jobs) if jobs > 1 else None
    complete = True
    final_children: Dict[bytes, Tuple[bytes, ExtensionChoice]] = {}
    try:
        for j in range(1, N + 1):
            final = j == N
            children: Dict[bytes, Tuple[bytes, ExtensionChoice]] = {}
            frontier = sorted(parents[j - 1])
            lineages = [lineage(j - 1, cert) for cert in frontier]
            if executor is not None:
                results = executor.map(_expand, lineages, [r] * len(frontier), [deadline] * len(frontier))
            else:
                results = (_expand(chain, r, deadline) for chain in lineages)

            for done, (parent_cert, (expanded, interrupted)) in enumerate(zip(frontier, results), start=1):
                for cert, choice in expanded:
                    if final:
                        spill.add(cert)
                        if keep_posets:
                            children.setdefault(cert, (parent_cert, choice))
                    else:
                        children.setdefault(cert, (parent_cert, choice))
                if interrupted or (done < len(frontier) and out_of_time()):
                    complete = False
                    break
            if not complete:
                logger.warning(f"Budget of {budget_secs}s exhausted while building rank {j}")
                break

            if final:
                final_children = children
            else:
                counts.append(len(children))
                parents.append(children)
                logger.info(f"r={r} rank {j}: {len(children)} classes ({time.monotonic() - start:.1f}s)")

        certs: Optional[List[bytes]] = None
        if complete:
            unique = list(spill.unique())
            if N > 0:
                counts.append(len(unique))
                logger.info(f"r={r} rank {N}: {len(unique)} classes ({time.monotonic() - start:.1f}s)")
            certs = unique if keep_certs else None
    finally:
        if executor is not None:
            executor.shutdown(cancel_futures=True)
        spill.cleanup()

    posets = None
    if keep_posets and complete:
        if N == 0:
            posets = [single_point(r)]
        else:
            parents.append(final_children)
            posets = [replay_lineage(r, lineage(N, cert)) for cert in sorted(final_children)]
    return EnumerationResult(
        r=r,
        ranks=N,
        counts=counts,
        complete=complete,
        certs=certs,
        posets=posets,
        elapsed_secs=time.monotonic() - start,
    )


def search_rank_function(
    r: int,
    target: Sequence[int],
    budget_secs: Optional[float] = None,
    dedup: bool = True,
) -> SearchResult:
    """
    Look for an r-differential poset whose rank function starts with target.

    The search is depth-first and only ever builds ranks of exactly the
    prescribed size, which fixes the clique dimension sum of every step.
    Isomorphic intermediate posets are visited once when dedup is on.

    Returns:
        SearchResult with status found (and a witness), definitive-none when
        the whole space was exhausted, or budget-exceeded
    """
    target = [int(v) for v in target]
    if not target or target[0] != 1:
        raise ValueError(f"a rank function starts with 1, got {target}")
    if len(target) > 1 and target[1] != r:
        raise ValueError(f"p_1 of an {r}-differential poset is {r}, got {target[1]}")
    budget = get_default_budget() if budget_secs is None else budget_secs
    start = time.monotonic()
    deadline = start + budget
    last = len(target) - 1
    seen: List[Set[bytes]] = [set() for _ in target]
    nodes = 0
    interrupted = False

    def out_of_time() -> bool:
        nonlocal interrupted
        if time.monotonic() > deadline:
            interrupted = True
        return interrupted

    def visit(P: RankedPoset) -> Optional[RankedPoset]:
        nonlocal nodes
        j = P.top_rank
        if j == last:
            return P
        for choice in iter_extension_choices(P, r, target_size=target[j + 1], should_stop=out_of_time):
            # a pending choice is unexplored work
            if out_of_time():
                return None
            nodes += 1
            child = apply_extension(P, choice)
            if j + 1 < last and dedup:
                cert = canonical_cert(child)
                if cert in seen[j + 1]:
                    continue
                seen[j + 1].add(cert)
            found = visit(child)
            if found is not None or interrupted:
                return found
        return None

    witness = visit(single_point(r))
    elapsed = time.monotonic() - start
    if witness is not None:
        status = SearchStatus.FOUND
    elif interrupted:
        status = SearchStatus.BUDGET_EXCEEDED
        logger.warning(f"Search for {target} stopped after {budget}s and {nodes} nodes")
    else:
        status = SearchStatus.DEFINITIVE_NONE
    logger.info(f"Search r={r} target={target}: {status.value} after {nodes} nodes in {elapsed:.1f}s")
    return SearchResult(
        r=r,
        target=target,
        status=status,
        witness=witness,
        nodes_explored=nodes,
        elapsed_secs=elapsed,
    )
