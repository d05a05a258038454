"""
Command line surface. Every command writes one JSON report to stdout::

    {"command": ..., "inputs": ..., "results": ..., "pass": ...}

Exit codes: 0 when the report passes, 1 when a check fails, 2 on usage errors
and malformed inputs. Logs go to stderr.
"""

import hashlib
import json
import logging
import sys
import traceback
from datetime import datetime, timezone
from math import comb
from typing import Any, Callable, List, Optional, Sequence, Tuple

import click
import yaml

from .autgrp import automorphisms, colour_stabilizer, distinguishing_number, is_distinguishing, motion, orbits
from .backforth import closed_form, refute_order_colouring, replay, verify
from .colouring import dump_colouring, load_colouring, random_piecewise
from .config import RuntimeConfig, ValidationError
from .exactq import format_rational, parse_rational
from .exception import BudgetExhausted, Inconclusive, OrderCapExceeded, RejectedInput, SearchCapExceeded
from .experiment import get_rng, is_debugging, print_config, setup_experiment
from .fileio import dump
from .halfgraph import (ArcKind, Side, Vertex, arc_witness, base_arc, check_structure, dump_graph,
                        load_graph, refute_graph_colouring, support_grid, truncation)
from .logging import print_log

SEARCH_FAILURES = (BudgetExhausted, Inconclusive, OrderCapExceeded, SearchCapExceeded)
INPUT_ERRORS = (ValidationError, RejectedInput, json.JSONDecodeError, yaml.YAMLError, OSError)


class Session:
    def __init__(self, runtime: RuntimeConfig, stamp: bool):
        self.runtime = runtime
        self.stamp = stamp

    def emit(self, command: str, inputs: dict, results: Any, passed: bool) -> int:
        report = {'command': command, 'inputs': inputs, 'results': results, 'pass': bool(passed)}
        body = dump(report, file_format='json', sort_keys=True, indent=2)
        if self.stamp:
            report = {
                'body': report,
                'sha256': hashlib.sha256(body.encode('utf-8')).hexdigest(),
                'stamp': datetime.now(timezone.utc).isoformat(),
            }
            body = dump(report, file_format='json', sort_keys=True, indent=2)
        click.echo(body)
        return 0 if passed else 1

    def guarded(self, command: str, inputs: dict, compute: Callable[[], Tuple[Any, bool]]) -> int:
        try:
            results, passed = compute()
        except SEARCH_FAILURES as e:
            print_log(f'{command} failed: {e}', __name__, level=logging.ERROR)
            results, passed = {'error': type(e).__name__, 'message': str(e)}, False
        return self.emit(command, inputs, results, passed)


def _support(ctx, param, value) -> Optional[List]:
    if value is None:
        return None
    try:
        return [parse_rational(token) for token in value.split(',') if token.strip()]
    except RejectedInput as e:
        raise click.BadParameter(str(e))


def _resolve_support(support, grid) -> List:
    if (support is None) == (grid is None):
        raise click.UsageError('Give exactly one of --support and --support-grid.')
    if support is not None:
        return support
    a, b, n = grid
    try:
        return support_grid(parse_rational(a), parse_rational(b), int(n))
    except (RejectedInput, ValueError) as e:
        raise click.BadParameter(str(e), param_hint='--support-grid')


def _pick(value, default):
    return default if value is None else value


support_options = [
    click.option('--support', callback=_support, default=None, help='Comma separated rationals, e.g. 0,1/2,1.'),
    click.option('--support-grid', 'grid', nargs=3, default=None, metavar='A B N',
                 help='N evenly spaced rationals from A to B.'),
]


def with_support(f):
    for option in reversed(support_options):
        f = option(f)
    return f


@click.group()
@click.option('--config', 'config_file', type=click.Path(exists=True, dir_okay=False), default=None,
              help='Runtime config (JSON/YAML). Explicit flags override it.')
@click.option('--debug/--no-debug', default=None, help='Debug logging and back-and-forth audit.')
@click.option('--stamp', is_flag=True, default=False, help='Wrap the report with its hash and a UTC time stamp.')
@click.pass_context
def cli(ctx, config_file, debug, stamp):
    overrides = {} if debug is None else {'debug': debug}
    if config_file is not None:
        runtime = RuntimeConfig.fromfile(config_file, overrides)
    else:
        runtime = RuntimeConfig.fromdict(overrides)
    setup_experiment(runtime)
    print_config(runtime, dump_config=runtime.output_dir is not None, expand_config=False)
    ctx.obj = Session(runtime, stamp)


@cli.group()
def halfgraph():
    """Truncations of the half-graph."""


@halfgraph.command()
@with_support
@click.option('-o', '--output', type=click.Path(dir_okay=False, writable=True), default=None,
              help='Write the graph file here instead of embedding it in the report.')
@click.pass_obj
def gen(session, support, grid, output):
    """Generate the truncation on a support."""
    points = _resolve_support(support, grid)
    g = truncation(points)
    plain = dump_graph(g)
    if output is not None:
        dump(plain, output, file_format='json', sort_keys=True, indent=2)
    results = {'vertices': g.n, 'edges': len(g.edges), 'graph': output if output is not None else plain}
    inputs = {'support': [format_rational(q) for q in points], 'output': output}
    return session.emit('halfgraph gen', inputs, results, len(g.edges) == comb(len(points), 2))


@cli.group()
def aut():
    """Automorphism groups of finite graphs."""


@aut.command('enumerate')
@click.argument('graph_file', type=click.Path(exists=True, dir_okay=False))
@click.option('--order-cap', type=int, default=None, help='Largest group to enumerate.')
@click.pass_obj
def enumerate_command(session, graph_file, order_cap):
    """Enumerate the automorphism group of GRAPH_FILE."""
    g = load_graph(graph_file)
    order_cap = _pick(order_cap, session.runtime.order_cap)

    def compute():
        group = automorphisms(g, order_cap)
        return {**group.to_plain(), 'orbits': orbits(group)}, group.generates()

    return session.guarded('aut enumerate', {'graph': graph_file, 'order_cap': order_cap}, compute)


@cli.command('motion')
@click.argument('graph_file', type=click.Path(exists=True, dir_okay=False))
@click.pass_obj
def motion_command(session, graph_file):
    """Motion of the automorphism group of GRAPH_FILE (null if the group is trivial)."""
    g = load_graph(graph_file)

    def compute():
        group = automorphisms(g, session.runtime.order_cap)
        return {'motion': motion(group), 'order': group.order}, True

    return session.guarded('motion', {'graph': graph_file}, compute)


@cli.command()
@click.argument('graph_file', type=click.Path(exists=True, dir_okay=False))
@click.option('--max-colours', type=int, default=None, help='Largest number of colours to try.')
@click.pass_obj
def distnum(session, graph_file, max_colours):
    """Distinguishing number of GRAPH_FILE (null if above --max-colours)."""
    g = load_graph(graph_file)
    max_colours = _pick(max_colours, session.runtime.max_colours)

    def compute():
        group = automorphisms(g, session.runtime.order_cap)
        k = distinguishing_number(g, max_colours, session.runtime.search_cap, grp=group)
        return {'distinguishing_number': k, 'order': group.order}, k is not None

    return session.guarded('distnum', {'graph': graph_file, 'max_colours': max_colours}, compute)


@cli.command('verify-colouring')
@click.argument('graph_file', type=click.Path(exists=True, dir_okay=False))
@click.option('--colours', required=True, help='Comma separated colour per vertex, e.g. 0,1,0,0.')
@click.pass_obj
def verify_colouring(session, graph_file, colours):
    """Check whether a vertex colouring of GRAPH_FILE is distinguishing."""
    g = load_graph(graph_file)
    try:
        colouring = [int(c) for c in colours.split(',')]
    except ValueError as e:
        raise click.BadParameter(str(e), param_hint='--colours')

    def compute():
        group = automorphisms(g, session.runtime.order_cap)
        distinguishing = is_distinguishing(g, colouring, grp=group)
        stabilizer = colour_stabilizer(group, colouring)
        results = {'distinguishing': distinguishing, 'stabilizer_order': len(stabilizer),
                   'preserving': [list(p) for p in stabilizer[1:]]}
        return results, distinguishing and len(stabilizer) == 1

    return session.guarded('verify-colouring', {'graph': graph_file, 'colours': colouring}, compute)


@cli.group()
def check():
    """Structural checks."""


@check.command()
@with_support
@click.pass_obj
def lemmas(session, support, grid):
    """Bipartiteness, order/neighbourhood, minus-neighbourhood and automorphism group of a truncation."""
    points = _resolve_support(support, grid)

    def compute():
        report = check_structure(points, session.runtime.order_cap)
        return report.to_plain(), report.passed

    return session.guarded('check lemmas', {'support': [format_rational(q) for q in points]}, compute)


def _arc_target(ctx, param, value) -> Tuple:
    parts = value.split(',')
    if len(parts) != 3:
        raise click.BadParameter('expect q,r,kind')
    try:
        return parse_rational(parts[0]), parse_rational(parts[1]), ArcKind(parts[2].strip())
    except (RejectedInput, ValueError) as e:
        raise click.BadParameter(str(e))


@cli.command('arc-witness')
@click.option('--to', 'target', required=True, callback=_arc_target,
              help='Target arc q,r,kind with q < r and kind plus-to-minus or minus-to-plus.')
@click.pass_obj
def arc_witness_command(session, target):
    """An automorphism sending the arc (0+, 1-) onto the target arc."""
    q, r, kind = target
    witness = arc_witness(q, r, kind)
    images = [witness(v) for v in base_arc()]
    if kind is ArcKind.PLUS_TO_MINUS:
        expected = [Vertex(q, Side.PLUS), Vertex(r, Side.MINUS)]
    else:
        expected = [Vertex(r, Side.MINUS), Vertex(q, Side.PLUS)]
    results = {
        'witness': witness.to_plain(),
        'base_arc': [str(v) for v in base_arc()],
        'images': [str(v) for v in images],
        'target': [str(v) for v in expected],
    }
    inputs = {'q': format_rational(q), 'r': format_rational(r), 'kind': kind.value}
    return session.emit('arc-witness', inputs, results, images == expected)


@cli.command()
@click.option('--cplus', type=click.Path(exists=True, dir_okay=False), required=True,
              help='Colouring of the plus copy.')
@click.option('--cminus', type=click.Path(exists=True, dir_okay=False), required=True,
              help='Colouring of the minus copy.')
@click.option('--budget', type=int, default=None, help='Enumeration budget of every witness search.')
@click.option('--samples', type=int, default=None, help='Sampled rationals for verification.')
@click.pass_obj
def refute(session, cplus, cminus, budget, samples):
    """A nontrivial half-graph automorphism preserving the vertex colouring given by CPLUS and CMINUS."""
    plus, minus = load_colouring(cplus), load_colouring(cminus)
    budget = _pick(budget, session.runtime.budget)
    samples = _pick(samples, session.runtime.samples)

    def compute():
        witness, report = refute_graph_colouring(plus, minus, budget, samples)
        return {'witness': witness.to_plain(), 'report': report.to_plain()}, report.passed

    inputs = {'cplus': dump_colouring(plus), 'cminus': dump_colouring(minus), 'budget': budget, 'samples': samples}
    return session.guarded('refute', inputs, compute)


@cli.command('refute-order')
@click.option('--colouring', 'colouring_file', type=click.Path(exists=True, dir_okay=False), required=True,
              help='Colouring of Q.')
@click.option('--budget', type=int, default=None, help='Enumeration budget of every witness search.')
@click.option('--samples', type=int, default=None, help='Sampled rationals for verification.')
@click.pass_obj
def refute_order(session, colouring_file, budget, samples):
    """A nontrivial colour-preserving order automorphism of Q for the given colouring."""
    spec = load_colouring(colouring_file)
    budget = _pick(budget, session.runtime.budget)
    samples = _pick(samples, session.runtime.samples)

    def compute():
        witness = refute_order_colouring(spec, budget)
        report = verify(witness, samples)
        compact = closed_form(witness)
        results = {
            'witness': witness.transcript(),
            'report': report.to_plain(),
            'closed_form': None if compact is None else compact.asdict(),
        }
        return results, report.passed

    inputs = {'colouring': dump_colouring(spec), 'budget': budget, 'samples': samples}
    return session.guarded('refute-order', inputs, compute)


def sweep_trial(spec, budget: int, samples: int) -> dict:
    """Refute, verify and replay one colouring; failures are recorded, not raised."""
    try:
        witness = refute_order_colouring(spec, budget)
        report = verify(witness, samples)
        transcript = witness.transcript()
        replayed = replay(spec, transcript).transcript()
    except SEARCH_FAILURES as e:
        return {'colouring': dump_colouring(spec), 'error': type(e).__name__, 'pass': False}
    reproducible = json.dumps(replayed, sort_keys=True) == json.dumps(transcript, sort_keys=True)
    return {
        'colouring': dump_colouring(spec),
        'region': witness.region.to_plain(),
        'seed': [format_rational(v) for v in witness.seed],
        'report': report.to_plain(),
        'reproducible': reproducible,
        'pass': report.passed and reproducible,
    }


@cli.command()
@click.option('--trials', type=int, default=100, show_default=True, help='Number of random colourings.')
@click.option('--max-cuts', type=int, default=6, show_default=True, help='Most cuts per colouring.')
@click.option('--colours', type=int, default=5, show_default=True, help='Alphabet size.')
@click.option('--budget', type=int, default=None, help='Enumeration budget of every witness search.')
@click.option('--samples', type=int, default=None, help='Sampled rationals for verification.')
@click.pass_obj
def sweep(session, trials, max_cuts, colours, budget, samples):
    """Refute a seeded batch of random piecewise colourings of Q."""
    budget = _pick(budget, session.runtime.budget)
    samples = _pick(samples, session.runtime.samples)
    if trials < 1 or max_cuts < 0 or colours < 1:
        raise click.UsageError('Need trials >= 1, max-cuts >= 0 and colours >= 1.')
    rng = get_rng()
    outcomes = []
    for trial in range(trials):
        outcomes.append(sweep_trial(random_piecewise(rng, max_cuts, colours), budget, samples))
        print_log(f'Trial {trial + 1}/{trials}: {"pass" if outcomes[-1]["pass"] else "FAIL"}', __name__)
    passed = sum(outcome['pass'] for outcome in outcomes)
    inputs = {'trials': trials, 'max_cuts': max_cuts, 'colours': colours, 'budget': budget, 'samples': samples,
              'seed': session.runtime.seed}
    return session.emit('sweep', inputs, {'passed': passed, 'trials': outcomes}, passed == trials)


def run(argv: Optional[Sequence[str]] = None) -> int:
    """Run the command line on ``argv`` and return the exit code."""
    argv = sys.argv[1:] if argv is None else list(argv)
    try:
        rv = cli.main(args=argv, prog_name='qsym', standalone_mode=False)
    except click.exceptions.Exit as e:
        return e.exit_code
    except click.exceptions.Abort:
        click.echo('Aborted!', err=True)
        return 1
    except click.ClickException as e:
        e.show()
        return 2
    except INPUT_ERRORS as e:
        if is_debugging():
            print_log(traceback.format_exc(), __name__, level=logging.DEBUG)
        click.echo(f'Error: {type(e).__name__}: {e}', err=True)
        return 2
    # --help in non-standalone mode returns 0 instead of raising
    return rv if isinstance(rv, int) else 0


def main():
    sys.exit(run())


if __name__ == '__main__':
    main()
