"""
Wagner's construction: extend a differential poset by one rank, or many.
"""

import logging

from .errors import NotDifferentialError, RankRangeError
from .poset import RankedPoset, validate_differential

logger = logging.getLogger(__name__)


def wagner_extend(P: RankedPoset, r: int, validate: bool = True) -> RankedPoset:
    """
    Add rank j+1 to a poset that is r-differential up to its top rank j.

    The new rank holds, in this order, one reflection w_i per rank-(j-1)
    element y_i, covering exactly the upper covers of y_i, and then r new
    elements over each rank-j element, each covering only that element.

    Args:
        P: poset differential up to its top rank
        r: differential parameter
        validate: check P first; pass False in bulk pipelines that already did

    Returns:
        The extended poset, with p_{j+1} = r*p_j + p_{j-1}

    Raises:
        NotDifferentialError: if validation is on and P fails it
    """
    if validate:
        report = validate_differential(P, r)
        if not report.ok:
            first = report.violations[0]
            raise NotDifferentialError(
                f"input is not {r}-differential: {len(report.violations)} violations, first at rank "
                f"{first.rank} axiom ({first.axiom}): {first.message}",
                report=report,
            )

    j = P.top_rank
    new_level = []
    if j > 0:
        new_level.extend(P.up(j - 1))
    for x in range(P.size(j)):
        new_level.extend((x,) for _ in range(r))
    return RankedPoset(P.covers + (tuple(new_level),), r=r)


def wagner_complete(P: RankedPoset, r: int, N: int, validate: bool = True) -> RankedPoset:
    """Iterate wagner_extend until rank N. The input is validated once, not per step."""
    if N < P.top_rank:
        raise RankRangeError(f"target rank {N} is below the top rank {P.top_rank}")
    if validate and N > P.top_rank:
        report = validate_differential(P, r)
        if not report.ok:
            raise NotDifferentialError(f"input is not {r}-differential", report=report)
    result = P if P.r == r else P.with_r(r)
    while result.top_rank < N:
        result = wagner_extend(result, r, validate=False)
        logger.debug(f"Wagner step to rank {result.top_rank}: p = {result.size(result.top_rank)}")
    return result
