"""
Text formats for posets (.dpo), hypergraphs (.hg) and certificate dumps.

All writers emit UTF-8 with LF newlines and a trailing newline; readers
raise FormatError with the offending line number.
"""

import logging
import re
from pathlib import Path
from typing import Iterable, List, Union

from .canonical import canonical_form
from .errors import FormatError, PosetStructureError
from .hypergraph import Hypergraph
from .poset import RankedPoset

logger = logging.getLogger(__name__)

PathLike = Union[str, Path]

_DPO_HEADER = re.compile(r"^dpo 1 r=(\d+) ranks=(\d+)$")
_RANK_LINE = re.compile(r"^rank (\d+) (\d+)$")
_ELEMENT_LINE = re.compile(r"^(\d+):((?: \d+)*)$")
_HG_HEADER = re.compile(r"^hg r=(\d+) m=(\d+)$")


def _lines(text: str) -> List[str]:
    lines = text.split("\n")
    if lines and lines[-1] == "":
        lines.pop()
    return lines


def dumps_poset(P: RankedPoset, canonical: bool = False) -> str:
    if canonical:
        P = canonical_form(P)
    out = [f"dpo 1 r={P.r} ranks={P.top_rank}"]
    for j in range(P.top_rank + 1):
        level = P.down(j)
        out.append(f"rank {j} {len(level)}")
        for i, covered in enumerate(level):
            out.append(f"{i}:" + "".join(f" {c}" for c in covered))
    return "\n".join(out) + "\n"


def loads_poset(text: str) -> RankedPoset:
    """
    Parse a .dpo document.

    Raises:
        FormatError: on any syntax error or structural inconsistency
    """
    lines = _lines(text)
    if not lines:
        raise FormatError("empty .dpo document")
    header = _DPO_HEADER.match(lines[0])
    if not header:
        raise FormatError(f"line 1: expected 'dpo 1 r=<r> ranks=<N>', got {lines[0]!r}")
    r, top = int(header.group(1)), int(header.group(2))

    down = []
    pos = 1
    for j in range(top + 1):
        if pos >= len(lines):
            raise FormatError(f"line {pos + 1}: missing block for rank {j}")
        match = _RANK_LINE.match(lines[pos])
        if not match or int(match.group(1)) != j:
            raise FormatError(f"line {pos + 1}: expected 'rank {j} <size>', got {lines[pos]!r}")
        size = int(match.group(2))
        pos += 1
        level = []
        for i in range(size):
            if pos >= len(lines):
                raise FormatError(f"line {pos + 1}: rank {j} ends after {i} of {size} elements")
            element = _ELEMENT_LINE.match(lines[pos])
            if not element or int(element.group(1)) != i:
                raise FormatError(f"line {pos + 1}: expected element line '{i}: ...', got {lines[pos]!r}")
            level.append(tuple(int(c) for c in element.group(2).split()))
            pos += 1
        down.append(level)
    if pos != len(lines):
        raise FormatError(f"line {pos + 1}: unexpected content after rank {top}")

    try:
        return RankedPoset(down, r=r)
    except PosetStructureError as e:
        raise FormatError(f"inconsistent poset: {e}") from e


def write_poset(P: RankedPoset, path: PathLike, canonical: bool = False) -> None:
    with open(path, "w", encoding="utf-8", newline="\n") as f:
        f.write(dumps_poset(P, canonical=canonical))
    logger.debug(f"Wrote poset {P.levels} to {path}")


def read_poset(path: PathLike) -> RankedPoset:
    with open(path, "r", encoding="utf-8", newline="") as f:
        return loads_poset(f.read())


def dumps_hypergraph(H: Hypergraph) -> str:
    out = [f"hg r={H.r} m={len(H.edges)}"]
    out.extend(" ".join(str(v) for v in edge) for edge in H.edges)
    return "\n".join(out) + "\n"


def loads_hypergraph(text: str) -> Hypergraph:
    lines = _lines(text)
    if not lines:
        raise FormatError("empty .hg document")
    header = _HG_HEADER.match(lines[0])
    if not header:
        raise FormatError(f"line 1: expected 'hg r=<r> m=<m>', got {lines[0]!r}")
    r, m = int(header.group(1)), int(header.group(2))
    if len(lines) != m + 1:
        raise FormatError(f"header announces {m} hyperedges, found {len(lines) - 1}")
    edges = []
    for number, line in enumerate(lines[1:], start=2):
        if not re.fullmatch(r"\d+( \d+)*", line):
            raise FormatError(f"line {number}: expected space-separated vertices, got {line!r}")
        edges.append(tuple(int(v) for v in line.split()))
    try:
        return Hypergraph(r, edges)
    except ValueError as e:
        raise FormatError(f"inconsistent hypergraph: {e}") from e


def write_hypergraph(H: Hypergraph, path: PathLike) -> None:
    with open(path, "w", encoding="utf-8", newline="\n") as f:
        f.write(dumps_hypergraph(H))


def read_hypergraph(path: PathLike) -> Hypergraph:
    with open(path, "r", encoding="utf-8", newline="") as f:
        return loads_hypergraph(f.read())


def dumps_certs(certs: Iterable[bytes]) -> str:
    """One lowercase hex certificate per line."""
    return "".join(cert.hex() + "\n" for cert in certs)


def loads_certs(text: str) -> List[bytes]:
    try:
        return [bytes.fromhex(line) for line in _lines(text)]
    except ValueError as e:
        raise FormatError(f"bad certificate line: {e}") from e
