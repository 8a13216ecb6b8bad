"""
Rank-function arithmetic and asymptotic checks.

Exact sequences (partition numbers, Y^r, Z(r)) are computed with Python
integers; numpy object arrays carry the big-integer dot products. Asymptotic
comparisons are made in log space so nothing overflows.
"""

import logging
import math
from functools import lru_cache
from typing import List, Optional, Sequence, Tuple

import numpy as np

from .enumerator import search_rank_function
from .errors import ResourceLimitError
from .hypergraph import complete_graph, p2_spectrum, poset_from_hypergraph
from .poset import rank_function
from .schemas import (
    AsymptoticPoint,
    IntegerSequence,
    IntervalDemoReport,
    IntervalVerdict,
    ProbeReport,
    SearchStatus,
)
from .settings import get_limit, settings
from .wagner import wagner_complete
from .walks import chain_count_closed

logger = logging.getLogger(__name__)


def partition_numbers(N: int) -> IntegerSequence:
    """p(0..N) by Euler's pentagonal recurrence."""
    if N < 0:
        raise ValueError(f"N must be nonnegative, got {N}")
    limit = get_limit("max_partition_n")
    if N > limit:
        raise ResourceLimitError(f"partition numbers are limited to N <= {limit}, got {N}", limit=limit)
    p = [1] + [0] * N
    for n in range(1, N + 1):
        total = 0
        k = 1
        while True:
            g1 = k * (3 * k - 1) // 2
            if g1 > n:
                break
            g2 = g1 + k
            term = p[n - g1] + (p[n - g2] if g2 <= n else 0)
            total += term if k % 2 else -term
            k += 1
        p[n] = total
    return IntegerSequence(values=p)


def _divisor_sums(N: int) -> np.ndarray:
    sigma = np.zeros(N + 1, dtype=np.int64)
    for d in range(1, N + 1):
        sigma[d::d] += d
    return sigma.astype(object)


@lru_cache(maxsize=8)
def _yr_values(r: int, N: int) -> Tuple[int, ...]:
    # q F'/F = r * sum sigma(k) q^k for F = prod (1 - q^k)^(-r), so
    # n a(n) = r * sum_{k=1..n} sigma(k) a(n-k)
    sigma = _divisor_sums(N)
    a = np.zeros(N + 1, dtype=object)
    a[0] = 1
    for n in range(1, N + 1):
        a[n] = r * np.dot(sigma[1:n + 1], a[n - 1::-1]) // n
    return tuple(int(v) for v in a)


def yr_rank_function(r: int, N: int) -> IntegerSequence:
    """Rank function of Y^r to rank N: the coefficients of (sum p(n) q^n)^r."""
    if r < 1 or N < 0:
        raise ValueError(f"need r >= 1 and N >= 0, got r={r}, N={N}")
    if r == 1:
        return partition_numbers(N)
    return IntegerSequence(values=list(_yr_values(r, N)))


def convolve_series(a: Sequence[int], b: Sequence[int], N: int) -> List[int]:
    """Product of two power series, truncated at degree N."""
    x = np.array(list(a[: N + 1]) + [0] * max(0, N + 1 - len(a)), dtype=object)
    y = np.array(list(b[: N + 1]) + [0] * max(0, N + 1 - len(b)), dtype=object)
    return [int(np.dot(x[: n + 1], y[n::-1])) for n in range(N + 1)]


def zr_rank_function(r: int, N: int) -> IntegerSequence:
    """Rank function of Z(r): p_0 = 1, p_1 = r, p_n = r p_{n-1} + p_{n-2}."""
    if r < 1 or N < 0:
        raise ValueError(f"need r >= 1 and N >= 0, got r={r}, N={N}")
    values = [1, r][: N + 1]
    while len(values) < N + 1:
        values.append(r * values[-1] + values[-2])
    return IntegerSequence(values=values)


def hr_log_estimate(n: int) -> float:
    """log of the Hardy-Ramanujan leading term exp(pi sqrt(2n/3)) / (4 n sqrt 3)."""
    if n < 1:
        raise ValueError(f"the estimate needs n >= 1, got {n}")
    return math.pi * math.sqrt(2 * n / 3) - math.log(4 * n * math.sqrt(3))


def hr_ratio(n: int) -> float:
    """p(n) divided by its Hardy-Ramanujan estimate."""
    return math.exp(math.log(partition_numbers(n)[n]) - hr_log_estimate(n))


def _geometric_grid(n_max: int, points: int, start: int = 10) -> List[int]:
    if n_max < start:
        return [n_max] if n_max >= 1 else []
    grid = np.unique(np.rint(np.geomspace(start, n_max, points)).astype(np.int64))
    return [int(n) for n in grid]


def meinardus_exponent_check(r: int, n_max: int, points: int = 8) -> List[AsymptoticPoint]:
    """
    log p_r(n) / sqrt(n) on a geometric grid up to n_max.

    The values approach pi * sqrt(2r/3); each point carries that target.
    """
    values = yr_rank_function(r, n_max)
    target = math.pi * math.sqrt(2 * r / 3)
    return [
        AsymptoticPoint(n=n, value=math.log(values[n]) / math.sqrt(n), target=target)
        for n in _geometric_grid(n_max, points)
    ]


def lemma33_ratio(r: int, n: int) -> float:
    """
    log of alpha(0 -> n) over sqrt(n!) r^(n/2) e^sqrt(rn) / (8 pi e^(3r-2) n)^(1/4).

    Tends to 0 as n grows.
    """
    if n < 1:
        raise ValueError(f"n must be positive, got {n}")
    exact = math.log(chain_count_closed(r, n))
    estimate = (
        0.5 * math.lgamma(n + 1)
        + 0.5 * n * math.log(r)
        + math.sqrt(r * n)
        - 0.25 * (math.log(8 * math.pi) + (3 * r - 2) + math.log(n))
    )
    return exact - estimate


def thm35_exponent_compare(r: int, n: int) -> Tuple[float, float]:
    """(log p_r(n) / sqrt(n), 2 sqrt(r)): the Y^r growth exponent against the proven lower-bound exponent."""
    if n < 1:
        raise ValueError(f"n must be positive, got {n}")
    value = yr_rank_function(r, n)[n]
    return math.log(value) / math.sqrt(n), 2 * math.sqrt(r)


def delta(seq: Sequence[int], t: int) -> IntegerSequence:
    """
    t-fold first difference, keeping the leading term: (D p)_0 = p_0 and
    (D p)_n = p_n - p_{n-1}.
    """
    values = list(seq.values if isinstance(seq, IntegerSequence) else seq)
    if t < 0 or t > len(values):
        raise ValueError(f"t must lie in 0..{len(values)}, got {t}")
    for _ in range(t):
        values = values[:1] + [b - a for a, b in zip(values, values[1:])]
    return IntegerSequence(values=values)


def rank_function_probes(values: Sequence[int], r: int, max_t: int = 3) -> ProbeReport:
    """
    Compare a rank function against the open questions about rank functions.

    Every flag is an observation about the given values only. Differences
    are checked for t = 1 .. max(r, max_t), as far as the values reach.
    """
    values = [int(v) for v in values]
    N = len(values) - 1
    fib = zr_rank_function(r, N).values
    young = yr_rank_function(r, N).values
    steps = list(zip(values, values[1:]))
    positivity = []
    for t in range(1, min(max(r, max_t), len(values)) + 1):
        d = delta(values, t).values
        positivity.append(all(v > 0 for v in d[2:]))
    return ProbeReport(
        r=r,
        values=values,
        weakly_increasing=all(b >= a for a, b in steps),
        strictly_increasing_from_1=all(b > a for a, b in steps[1:]),
        below_fibonacci=all(v <= f for v, f in zip(values, fib)),
        fibonacci_recurrence_bound=all(
            values[n] <= r * values[n - 1] + values[n - 2] for n in range(2, N + 1)
        ),
        above_young_power=all(v >= y for v, y in zip(values, young)),
        delta_positive_from_2=positivity,
    )


def interval_demo(budget_secs: Optional[float] = None) -> IntervalDemoReport:
    """
    Show that rank functions of 4-differential posets lack the interval property.

    (1, 4, 14, 60, 254, ...) is realized by Wagner completion of the K4
    linear space, (1, 4, 16, ...) is impossible because 16 is not a possible
    p_2, and (1, 4, 17, 60, 254) is realized by a searched witness.
    """
    budget = settings.search.interval_demo_budget_secs if budget_secs is None else budget_secs
    verdicts = []

    prefix = poset_from_hypergraph(complete_graph(4), 4)
    completed = wagner_complete(prefix, 4, 5)
    realized = rank_function(completed).values
    verdicts.append(IntervalVerdict(
        label="p'",
        sequence=[1, 4, 14, 60, 254, 1076],
        verdict="realized" if realized == [1, 4, 14, 60, 254, 1076] else "mismatch",
        detail=f"Wagner completion of the K4 prefix has rank function {realized}",
        witness=completed,
    ))

    spectrum = p2_spectrum(4)
    refuted = search_rank_function(4, [1, 4, 16], budget_secs=budget)
    # the spectrum settles it; the search only cross-checks and may run out of budget
    impossible = 16 not in spectrum and refuted.status != SearchStatus.FOUND
    verdicts.append(IntervalVerdict(
        label="p'''",
        sequence=[1, 4, 16],
        verdict="impossible" if impossible else "mismatch",
        detail=f"p2 spectrum for r=4 is {spectrum}; exhaustive search: {refuted.status.value}",
    ))

    search = search_rank_function(4, [1, 4, 17, 60, 254], budget_secs=budget)
    if search.status == SearchStatus.FOUND:
        verdict, detail = "realized", f"witness found after {search.nodes_explored} nodes"
    elif search.status == SearchStatus.BUDGET_EXCEEDED:
        verdict, detail = "budget-exceeded", f"no witness within {budget}s"
    else:
        verdict, detail = "mismatch", "search space exhausted without a witness"
    verdicts.append(IntervalVerdict(
        label="p''",
        sequence=[1, 4, 17, 60, 254],
        verdict=verdict,
        detail=detail,
        witness=search.witness,
    ))
    for v in verdicts:
        logger.info(f"Interval demo {v.label} {v.sequence}: {v.verdict} ({v.detail})")
    return IntervalDemoReport(verdicts=verdicts)
