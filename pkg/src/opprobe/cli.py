'''
Command line: ``opprobe reconstruct|classify|check-locality|demo``.

Every command reads a scenario with ``--scenario=path``, writes its JSON
report to stdout or ``--out=path`` and exits with 0 when all checks pass,
1 when one fails and 2 when the scenario is unusable.
'''
import logging
import sys

import cli2

from opprobe import settings
from opprobe.exceptions import OperatorError
from opprobe.scenario import (
    EXIT_ERROR,
    RUNNERS,
    Report,
    Scenario,
    run_demo,
)

logger = logging.getLogger(__name__)

cli = cli2.Group(
    'opprobe',
    doc='Reconstruct, classify and probe linear differential operators.',
    posix=True,
)


def configure_logging(verbose=False):
    level = logging.DEBUG if verbose else settings.LOG_LEVEL
    logging.basicConfig(
        level=level,
        format='%(levelname)s %(name)s: %(message)s',
        stream=sys.stderr,
    )


def write(report, out=None):
    text = report.dumps()
    if out:
        with open(out, 'w') as f:
            f.write(text)
    else:
        sys.stdout.write(text)


def error_report(command, exc):
    report = Report(command)
    report['error'] = dict(type=type(exc).__name__, message=str(exc))
    for name in ('field', 'line', 'alpha'):
        value = getattr(exc, name, None)
        if value is not None:
            report['error'][name] = list(value) if name == 'alpha' else value
    report.check('scenario', False)
    return report


def execute(command, build, out=None):
    try:
        report = build()
        code = report.exit_code
    except OperatorError as exc:
        logger.debug(f'{command} aborted: {exc}')
        report, code = error_report(command, exc), EXIT_ERROR
    write(report, out)
    raise SystemExit(code)


def _overrides(seed, tolerance):
    try:
        return dict(
            seed=int(seed) if seed is not None else None,
            tolerance=float(tolerance) if tolerance is not None else None,
        )
    except ValueError as exc:
        report = error_report('arguments', exc)
        sys.stdout.write(report.dumps())
        raise SystemExit(EXIT_ERROR)


def _run(command, scenario, out, seed, tolerance, verbose):
    configure_logging(verbose)
    overrides = _overrides(seed, tolerance)

    def build():
        if not scenario:
            raise OperatorError('--scenario is required')
        return RUNNERS[command](Scenario.from_file(scenario, **overrides))

    execute(command, build, out)


@cli.cmd
def reconstruct(scenario=None, out=None, seed=None, tolerance=None,
                verbose=False):
    '''
    Recover the operator behind the scenario subject and check residuals.

    :param scenario: path to the scenario JSON
    :param out: write the report there instead of stdout
    :param seed: overrides the scenario seed
    :param tolerance: overrides the scenario tolerance
    '''
    _run('reconstruct', scenario, out, seed, tolerance, verbose)


@cli.cmd
def classify(scenario=None, out=None, seed=None, tolerance=None,
             verbose=False):
    '''
    Decide whether the scenario operator maps C^m into C^r.

    :param scenario: path to the scenario JSON
    :param out: write the report there instead of stdout
    '''
    _run('classify', scenario, out, seed, tolerance, verbose)


@cli.cmd(name='check-locality')
def check_locality(scenario=None, out=None, seed=None, tolerance=None,
                   verbose=False):
    '''
    Partition of unity, support condition and flatness transfer checks.

    :param scenario: path to the scenario JSON
    :param out: write the report there instead of stdout
    '''
    _run('check-locality', scenario, out, seed, tolerance, verbose)


@cli.cmd
def demo(out=None, seed=None, tolerance=None, verbose=False):
    '''
    Run the built-in scenarios and report whether each behaves as expected.
    '''
    configure_logging(verbose)
    overrides = _overrides(seed, tolerance)
    execute('demo', lambda: run_demo(**overrides), out)

