#!/usr/bin/env python3
"""
dposet command line.

Builds, validates, extends and enumerates r-differential posets, enumerates
linear spaces, checks walk identities and runs the numerical experiments.
Results go to stdout as CSV (or an aligned text table); status lines go to
stderr.
"""

import logging
import sys
from pathlib import Path

import click
from colorama import init
from pydantic import ValidationError

from dposet_lib import CHECK_NAMES

from .config import ExitCode, NumericsAction, RunConfig
from .dispatch import dispatch
from .output import failure

# Initialize colorama
init(autoreset=True)

logger = logging.getLogger(__name__)

PATH = click.Path(path_type=Path)
EXISTING = click.Path(exists=True, dir_okay=False, path_type=Path)


def setup_logging(verbose: bool, log_file: Path = None) -> None:
    handlers = [logging.StreamHandler(sys.stderr)]
    if log_file is not None:
        handlers.append(logging.FileHandler(log_file))
    logging.basicConfig(
        level=logging.DEBUG if verbose else logging.WARNING,
        format='%(asctime)s - %(name)s - %(levelname)s - %(message)s',
        handlers=handlers,
    )


def _parse_target(ctx, param, value):
    if value is None:
        return None
    try:
        return [int(v) for v in value.split(",") if v.strip()]
    except ValueError:
        raise click.BadParameter(f"expected comma-separated integers, got {value!r}")


def run(ctx: click.Context, command: str, **fields) -> None:
    """Validate the flags of one subcommand and hand them to dispatch."""
    fields = {k: v for k, v in fields.items() if v is not None}
    try:
        config = RunConfig(command=command, output_format=ctx.obj['format'], **fields)
    except ValidationError as e:
        for error in e.errors():
            failure(error['msg'])
        ctx.exit(int(ExitCode.USAGE))
    ctx.exit(dispatch(config))


@click.group()
@click.option('--format', 'output_format', type=click.Choice(['csv', 'text']), default='csv',
              help='Table format on stdout')
@click.option('--verbose', '-v', is_flag=True, help='Debug logging on stderr')
@click.option('--log-file', type=PATH, default=None, help='Also write the log to this file')
@click.pass_context
def cli(ctx, output_format, verbose, log_file):
    """dposet: r-differential posets and their linear spaces."""
    ctx.ensure_object(dict)
    ctx.obj['format'] = output_format
    setup_logging(verbose, log_file)


@cli.command()
@click.argument('kind', type=click.Choice(['young', 'fibonacci', 'product', 'linspace', 'plane']))
@click.argument('inputs', nargs=-1, type=EXISTING)
@click.option('--r', type=int, help='Differential parameter (fibonacci)')
@click.option('--ranks', type=int, help='Top rank to build')
@click.option('--q', type=int, help='Field order (plane)')
@click.option('-o', '--output', type=PATH, help='Write the .dpo file here instead of stdout')
@click.option('--canonical', is_flag=True, help='Write canonical labels')
@click.pass_context
def build(ctx, kind, inputs, r, ranks, q, output, canonical):
    """Build Young's lattice, Z(r), a product, or the poset of a linear space."""
    run(ctx, 'build', kind=kind, inputs=list(inputs), r=r, ranks=ranks, q=q,
        output=output, canonical=canonical)


@cli.command()
@click.argument('poset', type=EXISTING)
@click.option('--r', type=int, help='Check against this r instead of the header value')
@click.pass_context
def validate(ctx, poset, r):
    """Check the differential axioms rank by rank."""
    run(ctx, 'validate', inputs=[poset], r=r)


@cli.command()
@click.argument('poset', type=EXISTING)
@click.option('--steps', type=int, default=1, show_default=True, help='Ranks to add')
@click.option('--r', type=int, help='Override the header value')
@click.option('--no-validate', is_flag=True, help='Skip validating the input first')
@click.option('-o', '--output', type=PATH, help='Write the .dpo file here instead of stdout')
@click.option('--canonical', is_flag=True, help='Write canonical labels')
@click.pass_context
def extend(ctx, poset, steps, r, no_validate, output, canonical):
    """Add ranks by Wagner's construction."""
    run(ctx, 'extend', inputs=[poset], steps=steps, r=r, validate_input=not no_validate,
        output=output, canonical=canonical)


@cli.command('enum-linspaces')
@click.option('--r', type=int, required=True, help='Number of points')
@click.option('--spectrum', is_flag=True, help='Add the p2 column')
@click.option('--limit', type=int, help='Largest r accepted, overriding the configured limit')
@click.option('--jobs', type=int, default=1, show_default=True, help='Worker processes')
@click.option('-o', '--output', type=PATH, help='Directory for one .hg file per class')
@click.pass_context
def enum_linspaces(ctx, r, spectrum, limit, jobs, output):
    """List linear spaces on r points up to isomorphism."""
    run(ctx, 'enum-linspaces', r=r, spectrum=spectrum, limit=limit, jobs=jobs, output=output)


@cli.command()
@click.option('--q', type=int, required=True, help='Prime power up to 9')
@click.option('--embed', is_flag=True, help='Write the rank 0..2 poset instead of the hypergraph')
@click.option('-o', '--output', type=PATH, help='Output file instead of stdout')
@click.option('--canonical', is_flag=True, help='Write canonical labels (with --embed)')
@click.pass_context
def plane(ctx, q, embed, output, canonical):
    """Build the projective plane PG(2, q)."""
    run(ctx, 'plane', q=q, embed=embed, output=output, canonical=canonical)


@cli.command('enum-posets')
@click.option('--r', type=int, required=True, help='Differential parameter')
@click.option('--ranks', type=int, required=True, help='Last rank to count')
@click.option('--jobs', type=int, default=1, show_default=True, help='Worker processes')
@click.option('--budget-secs', type=float, help='Wall-clock budget')
@click.option('--spill', '--spill-dir', 'spill_dir', type=PATH, help='Spill certificates of the last rank here')
@click.option('--certs', 'certs_file', type=PATH, help='Write the last rank certificates here')
@click.option('--count-only', is_flag=True, help='Print only the last rank')
@click.pass_context
def enum_posets(ctx, r, ranks, jobs, budget_secs, spill_dir, certs_file, count_only):
    """Count r-differential posets rank by rank, up to isomorphism."""
    run(ctx, 'enum-posets', r=r, ranks=ranks, jobs=jobs, budget_secs=budget_secs,
        spill_dir=spill_dir, certs_file=certs_file, count_only=count_only)


@cli.command()
@click.option('--r', type=int, required=True, help='Differential parameter')
@click.option('--target', callback=_parse_target, required=True, help='Rank function prefix, e.g. 1,4,17')
@click.option('--budget-secs', type=float, help='Wall-clock budget')
@click.option('-o', '--output', type=PATH, help='Write a found witness here')
@click.option('--canonical', is_flag=True, help='Write the witness with canonical labels')
@click.pass_context
def search(ctx, r, target, budget_secs, output, canonical):
    """Decide whether a rank function prefix is realized."""
    run(ctx, 'search', r=r, target=target, budget_secs=budget_secs, output=output,
        canonical=canonical)


@cli.command()
@click.argument('poset', type=EXISTING)
@click.option('--n', type=int, required=True, help='Rank to evaluate at')
@click.option('--check', 'checks', multiple=True, type=click.Choice(list(CHECK_NAMES) + ['all']),
              help='Identity to check; repeatable, default all')
@click.option('--r', type=int, help='Override the header value')
@click.pass_context
def walks(ctx, poset, n, checks, r):
    """Walk statistics and identity checks at rank n."""
    run(ctx, 'walks', inputs=[poset], n=n, checks=list(checks) or None, r=r)


@cli.command()
@click.option('--partitions', type=int, help='p(0..N)')
@click.option('--yr', type=(int, int), help='R N: rank function of Y^r')
@click.option('--zr', type=(int, int), help='R N: rank function of Z(r)')
@click.option('--hr-ratio', type=int, help='N: p(N) over its Hardy-Ramanujan estimate')
@click.option('--meinardus', type=(int, int), help='R N: log p_r(n) / sqrt(n) up to N')
@click.option('--lemma33', type=(int, int), help='R N: log ratio of chain count to its estimate')
@click.option('--thm35', type=(int, int), help='R N: growth exponent of Y^r against 2 sqrt(r)')
@click.option('--delta', type=int, help='T: t-fold difference of --seq')
@click.option('--seq', type=EXISTING, help='Integer sequence file for --delta')
@click.option('--interval-demo', is_flag=True, help='Rank functions without the interval property')
@click.option('--budget-secs', type=float, help='Search budget for --interval-demo')
@click.pass_context
def numerics(ctx, budget_secs, **actions):
    """Partition numbers, rank functions and asymptotic checks."""
    action = {k: v for k, v in actions.items() if v not in (None, False)}
    try:
        numerics_action = NumericsAction(**action)
    except ValidationError as e:
        for error in e.errors():
            failure(error['msg'])
        ctx.exit(int(ExitCode.USAGE))
    run(ctx, 'numerics', numerics=numerics_action, budget_secs=budget_secs)


@cli.command()
@click.argument('source', type=EXISTING)
@click.option('--r', type=int, help='Differential parameter (required for sequence files)')
@click.pass_context
def probe(ctx, source, r):
    """Probe a rank function from a .dpo file or an integer sequence file."""
    run(ctx, 'probe', inputs=[source], r=r)


if __name__ == '__main__':
    cli()
