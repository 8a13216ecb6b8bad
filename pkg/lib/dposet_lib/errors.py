"""
Exception types raised by the dposet engine.

Every error derives from DposetError and from the builtin it most closely
resembles, so callers may catch either.
"""

from typing import Optional


class DposetError(Exception):
    """Base class for all dposet errors."""


class PosetStructureError(DposetError, ValueError):
    """A layered cover structure violates its structural invariants."""


class NotDifferentialError(DposetError, ValueError):
    """An input poset fails the differential axioms it was required to satisfy."""

    def __init__(self, message: str, report=None):
        super().__init__(message)
        self.report = report


class RankRangeError(DposetError, IndexError):
    """A rank argument lies outside the ranks a poset was built to."""


class InsufficientRankError(DposetError, ValueError):
    """A factor or prefix was not built high enough for the requested operation."""


class InadmissibleHypergraphError(DposetError, ValueError):
    """A hypergraph does not cover every vertex pair exactly once."""


class ResourceLimitError(DposetError, RuntimeError):
    """A configured size limit would be exceeded."""

    def __init__(self, message: str, limit: Optional[int] = None):
        super().__init__(message)
        self.limit = limit


class UnsupportedFieldError(DposetError, ValueError):
    """No finite field construction is available for the requested order."""


class FormatError(DposetError, ValueError):
    """A .dpo or .hg document could not be parsed."""


class HypergraphStructureError(DposetError, ValueError):
    """A hyperedge is too small, out of range, or repeated."""
