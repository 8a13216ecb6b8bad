"""
Command handlers.

dispatch() routes a validated RunConfig to its handler. Handlers write their
table to stdout, status lines to stderr, and return an ExitCode. Library
errors caused by bad input (unreadable files, inadmissible hypergraphs,
ranks out of range, limits) are reported here and mapped to exit status 2.
"""

import logging
import math
import re
from pathlib import Path
from typing import Callable, Dict, List

import click

from dposet_lib import (
    DposetError,
    FormatError,
    RankedPoset,
    SearchStatus,
    cartesian_product,
    desarguesian_plane,
    dimension_sum,
    enumerate_linear_spaces,
    enumerate_posets,
    fibonacci_poset,
    formats,
    get_tolerance,
    hr_log_estimate,
    hr_ratio,
    identity_checks,
    interval_demo,
    is_projective_plane,
    lemma33_ratio,
    meinardus_exponent_check,
    p2_value,
    partition_numbers,
    poset_from_hypergraph,
    rank_function_probes,
    search_rank_function,
    thm35_exponent_compare,
    validate_differential,
    wagner_complete,
    walk_stats,
    young_lattice,
    yr_rank_function,
    zr_rank_function,
)
from dposet_lib import delta as delta_transform

from .config import ExitCode, RunConfig
from .output import Table, emit, failure, info, success, warning

logger = logging.getLogger(__name__)


def _write_poset(P: RankedPoset, config: RunConfig) -> None:
    if config.output is not None:
        formats.write_poset(P, config.output, canonical=config.canonical)
        success(f"Wrote {config.output} (r={P.r}, rank function {list(P.levels)})")
    else:
        click.echo(formats.dumps_poset(P, canonical=config.canonical), nl=False)


def _read_sequence(path: Path) -> List[int]:
    with open(path, "r", encoding="utf-8") as f:
        tokens = [t for t in re.split(r"[\s,]+", f.read()) if t]
    try:
        return [int(t) for t in tokens]
    except ValueError as e:
        raise FormatError(f"{path}: expected integers separated by commas or whitespace ({e})") from e


def _edges_cell(edges) -> str:
    return "|".join(" ".join(str(v) for v in edge) for edge in edges)


def run_build(config: RunConfig) -> ExitCode:
    kind = config.kind
    if kind == "young":
        P = young_lattice(config.ranks)
    elif kind == "fibonacci":
        P = fibonacci_poset(config.r, config.ranks)
    elif kind == "product":
        left, right = (formats.read_poset(path) for path in config.inputs)
        P = cartesian_product(left, right, config.ranks)
    else:
        if kind == "linspace":
            H = formats.read_hypergraph(config.inputs[0])
        else:
            H = desarguesian_plane(config.q)
        P = poset_from_hypergraph(H, H.r)
        if config.ranks is not None and config.ranks > P.top_rank:
            P = wagner_complete(P, H.r, config.ranks)
    logger.info(f"Built {kind} poset with rank function {list(P.levels)}")
    _write_poset(P, config)
    return ExitCode.OK


def run_validate(config: RunConfig) -> ExitCode:
    P = formats.read_poset(config.inputs[0])
    r = config.r or P.r
    report = validate_differential(P, r)
    table = Table(["rank", "elements", "axiom", "message"])
    for v in report.violations:
        table.add(v.rank, v.elements, v.axiom, v.message)
    emit(table, config.output_format)
    if report.ok:
        success(f"{config.inputs[0]} is {r}-differential up to rank {P.top_rank}")
        return ExitCode.OK
    failure(f"{config.inputs[0]} fails {len(report.violations)} axiom checks for r={r}")
    return ExitCode.CHECK_FAILED


def run_extend(config: RunConfig) -> ExitCode:
    P = formats.read_poset(config.inputs[0])
    r = config.r or P.r
    extended = wagner_complete(P, r, P.top_rank + config.steps, validate=config.validate_input)
    _write_poset(extended, config)
    return ExitCode.OK


def run_enum_linspaces(config: RunConfig) -> ExitCode:
    spaces = enumerate_linear_spaces(config.r, limit=config.limit, jobs=config.jobs)
    headers = ["class", "dimension_sum", "edges"] + (["p2"] if config.spectrum else [])
    table = Table(headers)
    for i, H in enumerate(spaces):
        row = [i, dimension_sum(H), _edges_cell(H.edges)]
        if config.spectrum:
            row.append(p2_value(H))
        table.add(*row)
    emit(table, config.output_format)

    if config.output is not None:
        config.output.mkdir(parents=True, exist_ok=True)
        for i, H in enumerate(spaces):
            formats.write_hypergraph(H, config.output / f"linspace-r{config.r}-{i}.hg")
        success(f"Wrote {len(spaces)} hypergraphs to {config.output}")
    info(f"{len(spaces)} linear spaces on {config.r} points")
    return ExitCode.OK


def run_plane(config: RunConfig) -> ExitCode:
    H = desarguesian_plane(config.q)
    order = is_projective_plane(H)
    info(f"PG(2,{config.q}): {H.r} points, {len(H.edges)} lines, p2 = {p2_value(H)}")
    if config.embed:
        _write_poset(poset_from_hypergraph(H, H.r), config)
    elif config.output is not None:
        formats.write_hypergraph(H, config.output)
        success(f"Wrote {config.output}")
    else:
        click.echo(formats.dumps_hypergraph(H), nl=False)
    if order != config.q:
        failure(f"PG(2,{config.q}) failed the projective plane check")
        return ExitCode.CHECK_FAILED
    return ExitCode.OK


def run_enum_posets(config: RunConfig) -> ExitCode:
    result = enumerate_posets(
        config.r,
        config.ranks,
        jobs=config.jobs,
        budget_secs=config.budget_secs,
        keep_certs=config.certs_file is not None,
        spill_dir=config.spill_dir,
    )
    table = Table(["rank", "count"])
    if config.count_only:
        if result.complete:
            table.add(config.ranks, result.counts[config.ranks])
    else:
        table.extend(enumerate(result.counts))
    emit(table, config.output_format)

    if not result.complete:
        warning(f"Budget exhausted after {len(result.counts) - 1} complete ranks; counts are partial")
        return ExitCode.BUDGET_EXHAUSTED
    if config.certs_file is not None:
        with open(config.certs_file, "w", encoding="ascii", newline="\n") as f:
            f.write(formats.dumps_certs(result.certs))
        success(f"Wrote {len(result.certs)} certificates to {config.certs_file}")
    return ExitCode.OK


def run_search(config: RunConfig) -> ExitCode:
    result = search_rank_function(config.r, config.target, budget_secs=config.budget_secs)
    table = Table(["r", "target", "status", "nodes_explored"])
    table.add(result.r, ",".join(str(v) for v in result.target), result.status.value, result.nodes_explored)
    emit(table, config.output_format)
    if result.status == SearchStatus.FOUND and config.output is not None:
        formats.write_poset(result.witness, config.output, canonical=config.canonical)
        success(f"Wrote witness to {config.output}")
    if result.status == SearchStatus.BUDGET_EXCEEDED:
        warning(f"No answer within {result.elapsed_secs:.1f}s")
        return ExitCode.BUDGET_EXHAUSTED
    return ExitCode.OK


def run_walks(config: RunConfig) -> ExitCode:
    P = formats.read_poset(config.inputs[0])
    r = config.r or P.r
    stats = walk_stats(P, config.n)
    rows = identity_checks(P, config.n, config.checks, r=r)

    table = Table(["item", "n", "value", "relation", "expected", "result"])
    for field, value in stats.model_dump(exclude={"n"}).items():
        if value is not None:
            table.add(field, config.n, value, "", "", "")
    for row in rows:
        table.add(row.name, row.n, row.lhs, row.relation, row.rhs, "pass" if row.passed else "fail")
    emit(table, config.output_format)

    failed = [row.name for row in rows if not row.passed]
    if failed:
        failure(f"Identities failed at rank {config.n}: {', '.join(failed)}")
        return ExitCode.CHECK_FAILED
    success(f"{len(rows)} identities hold at rank {config.n}")
    return ExitCode.OK


def run_numerics(config: RunConfig) -> ExitCode:
    action = config.numerics
    name = action.name
    fmt = config.output_format

    if name in ("partitions", "yr", "zr"):
        if name == "partitions":
            seq = partition_numbers(action.partitions)
        elif name == "yr":
            seq = yr_rank_function(*action.yr)
        else:
            seq = zr_rank_function(*action.zr)
        table = Table(["n", "value"])
        table.extend(enumerate(seq.values))
    elif name == "hr_ratio":
        n = action.hr_ratio
        ratio = hr_ratio(n)
        table = Table(["n", "log_estimate", "ratio", "within_tolerance"])
        table.add(n, hr_log_estimate(n), ratio, abs(ratio - 1) <= get_tolerance("hr_ratio"))
    elif name == "meinardus":
        tolerance = get_tolerance("meinardus_relative")
        table = Table(["n", "value", "target", "relative_error", "within_tolerance"])
        for point in meinardus_exponent_check(*action.meinardus):
            error = abs(point.value - point.target) / point.target
            table.add(point.n, point.value, point.target, error, error <= tolerance)
    elif name == "lemma33":
        r, n = action.lemma33
        log_ratio = lemma33_ratio(r, n)
        tolerance = get_tolerance("lemma33_log_ratio" if r == 1 else "lemma33_log_ratio_r2")
        table = Table(["r", "n", "log_ratio", "within_tolerance"])
        table.add(r, n, log_ratio, abs(log_ratio) <= tolerance)
    elif name == "thm35":
        r, n = action.thm35
        exponent, bound = thm35_exponent_compare(r, n)
        limit = math.pi * math.sqrt(2 / 3) / 2
        tolerance = get_tolerance("thm35_ratio_relative")
        table = Table(["r", "n", "exponent", "bound_exponent", "ratio", "within_tolerance"])
        table.add(r, n, exponent, bound, exponent / bound, abs(exponent / bound - limit) <= tolerance * limit)
    elif name == "delta":
        seq = delta_transform(_read_sequence(action.seq), action.delta)
        table = Table(["n", "value"])
        table.extend(enumerate(seq.values))
    else:
        return _run_interval_demo(config)

    emit(table, fmt)
    return ExitCode.OK


def _run_interval_demo(config: RunConfig) -> ExitCode:
    report = interval_demo(budget_secs=config.budget_secs)
    table = Table(["label", "sequence", "verdict", "detail"])
    for v in report.verdicts:
        table.add(v.label, ",".join(str(x) for x in v.sequence), v.verdict, v.detail)
    emit(table, config.output_format)
    if any(v.verdict == "mismatch" for v in report.verdicts):
        failure("Interval demo disagrees with the expected verdicts")
        return ExitCode.CHECK_FAILED
    if not report.complete:
        warning("Interval demo ran out of budget before finding every witness")
        return ExitCode.BUDGET_EXHAUSTED
    success("Interval property fails for 4-differential posets")
    return ExitCode.OK


def run_probe(config: RunConfig) -> ExitCode:
    path = config.inputs[0]
    if path.suffix == ".dpo":
        P = formats.read_poset(path)
        values, r = list(P.levels), config.r or P.r
    else:
        if config.r is None:
            failure("probe on a sequence file needs --r")
            return ExitCode.USAGE
        values, r = _read_sequence(path), config.r
    report = rank_function_probes(values, r)
    table = Table(["property", "value"])
    for field in (
        "weakly_increasing",
        "strictly_increasing_from_1",
        "below_fibonacci",
        "fibonacci_recurrence_bound",
        "above_young_power",
    ):
        table.add(field, getattr(report, field))
    for t, positive in enumerate(report.delta_positive_from_2, start=1):
        table.add(f"delta{t}_positive_from_2", positive)
    emit(table, config.output_format)
    return ExitCode.OK


_HANDLERS: Dict[str, Callable[[RunConfig], ExitCode]] = {
    "build": run_build,
    "validate": run_validate,
    "extend": run_extend,
    "enum-linspaces": run_enum_linspaces,
    "plane": run_plane,
    "enum-posets": run_enum_posets,
    "search": run_search,
    "walks": run_walks,
    "numerics": run_numerics,
    "probe": run_probe,
}


def dispatch(config: RunConfig) -> int:
    """
    Run one validated configuration.

    Returns:
        0 on success, 1 when a check that should hold failed, 2 on bad input,
        3 when the time budget ran out
    """
    logger.debug(f"Dispatching {config.command}: {config.model_dump(exclude_defaults=True)}")
    try:
        return int(_HANDLERS[config.command](config))
    except (DposetError, ValueError, OSError) as e:
        logger.error(f"{config.command} failed: {e}")
        failure(str(e))
        return int(ExitCode.USAGE)
