'''
Scenario files and the reports produced from them.

A scenario is a JSON object::

    {
        "dimension": 1,
        "m": 2,
        "r": 2,
        "subject": {"operator": {...operator JSON...}},
        "grid": {"min": [-2], "max": [2], "points": 11},
        "mode": "exact",
        "tolerance": 1e-9,
        "trials": 20,
        "seed": 0,
        "half_angle": 1.1780972450961724,
        "bump": {"center": [0], "radius": 1},
        "timings": false
    }

Only ``subject`` is required. The subject is either an operator, or a
built-in adversary: ``{"adversary": "shift", "offset": 1, "operator":
{...}}``. Reports are plain dicts dumped with sorted keys, so a scenario
with a fixed seed gives the same bytes on every run.
'''
import importlib.metadata
import json
import logging
import math
import time

from opprobe import settings
from opprobe.classify import classify
from opprobe.diffop import DiffOperator, SampledFunction, make_grid
from opprobe.exceptions import ScenarioError
from opprobe.locality import (
    Bump,
    build_partition,
    flatness_transfer_check,
    partition_check,
    partition_samples,
    support_condition_check,
    support_violation,
)
from opprobe.prng import SplitMix64
from opprobe.reconstruct import (
    ADVERSARIES,
    MODES,
    OperatorBlackBox,
    linearity_spot_check,
    make_adversary,
    monomial_probe_residuals,
    reconstruct,
)
from opprobe.scalars import dump, is_zero, rational

logger = logging.getLogger(__name__)

EXIT_PASS = 0
EXIT_FAIL = 1
EXIT_ERROR = 2

PARTITION_SAMPLES = 1000


def version():
    try:
        return importlib.metadata.version('opprobe')
    except importlib.metadata.PackageNotFoundError:
        return 'dev'


def _integer(data, name, default, minimum=0):
    value = data.get(name, default)
    if isinstance(value, bool) or not isinstance(value, int):
        raise ScenarioError(f'{name} must be an integer', field=name)
    if value < minimum:
        raise ScenarioError(f'{name} must be >= {minimum}', field=name)
    return value


def _number(data, name, default):
    value = data.get(name, default)
    if isinstance(value, bool) or not isinstance(value, (int, float)):
        raise ScenarioError(f'{name} must be a number', field=name)
    return value


class Scenario:
    '''Validated scenario.

    :param dict data: decoded JSON
    :param int seed: overrides the ``seed`` field
    :param float tolerance: overrides the ``tolerance`` field
    '''

    def __init__(self, data, seed=None, tolerance=None):
        if not isinstance(data, dict):
            raise ScenarioError('scenario must be a JSON object')
        self.data = data
        self.subject = data.get('subject')
        if not isinstance(self.subject, dict):
            raise ScenarioError('subject is required', field='subject')
        self.operator = self._operator()
        default_dimension = self.operator.dimension if self.operator else 1
        self.dimension = _integer(
            data, 'dimension', default_dimension, minimum=1,
        )
        if self.operator and self.operator.dimension != self.dimension:
            raise ScenarioError(
                f'operator has dimension {self.operator.dimension}',
                field='dimension',
            )
        self.m = _integer(data, 'm', 2)
        self.r = _integer(data, 'r', self.m)
        self.mode = data.get('mode')
        if self.mode is not None and self.mode not in MODES:
            raise ScenarioError(f'mode must be one of {MODES}', field='mode')
        self.tolerance = tolerance if tolerance is not None else _number(
            data, 'tolerance', settings.TOLERANCE,
        )
        self.seed = seed if seed is not None else _integer(
            data, 'seed', settings.SEED,
        )
        self.trials = _integer(data, 'trials', 20, minimum=1)
        self.half_angle = _number(data, 'half_angle', 3 * math.pi / 8)
        self.timings = bool(data.get('timings', False))
        self.low, self.high, self.points = self._grid_spec()
        self.center, self.radius = self._bump_spec()
        self._check_domain()

    @classmethod
    def from_string(cls, text, **kwargs):
        try:
            data = json.loads(text)
        except json.JSONDecodeError as exc:
            raise ScenarioError(exc.msg, line=exc.lineno) from exc
        return cls(data, **kwargs)

    @classmethod
    def from_file(cls, path, **kwargs):
        try:
            with open(path) as f:
                text = f.read()
        except OSError as exc:
            raise ScenarioError(f'cannot read {path}: {exc}') from exc
        return cls.from_string(text, **kwargs)

    def _operator(self):
        data = self.subject.get('operator')
        if data is None:
            return None
        try:
            return DiffOperator.from_json(data)
        except (KeyError, TypeError, ValueError) as exc:
            raise ScenarioError(
                f'bad operator: {exc}', field='subject.operator',
            ) from exc

    def _grid_spec(self):
        grid = self.data.get('grid', {})
        n = self.dimension
        try:
            low = [rational(x) for x in grid.get('min', [-2] * n)]
            high = [rational(x) for x in grid.get('max', [2] * n)]
        except (TypeError, ValueError) as exc:
            raise ScenarioError(str(exc), field='grid') from exc
        if len(low) != n or len(high) != n:
            raise ScenarioError(
                f'grid corners need {n} coordinates', field='grid',
            )
        if any(a > b for a, b in zip(low, high)):
            raise ScenarioError('grid min exceeds max', field='grid')
        points = _integer(
            grid, 'points', settings.POINTS_PER_AXIS, minimum=1,
        )
        return low, high, points

    def _bump_spec(self):
        bump = self.data.get('bump', {})
        try:
            center = [rational(x) for x in bump.get(
                'center', [0] * self.dimension)]
            radius = rational(bump.get('radius', 1))
        except (TypeError, ValueError) as exc:
            raise ScenarioError(str(exc), field='bump') from exc
        if len(center) != self.dimension or radius <= 0:
            raise ScenarioError('bad bump center or radius', field='bump')
        return center, radius

    def _check_domain(self):
        if not self.operator:
            return
        for alpha, c in self.operator.coefficients.items():
            if not isinstance(c, SampledFunction):
                continue
            for x in self.grid():
                try:
                    c(x)
                except ValueError:
                    raise ScenarioError(
                        f'grid point {x} outside the samples of '
                        f'{list(alpha)}',
                        field='grid',
                    )

    def grid(self):
        return make_grid(self.low, self.high, self.points)

    def rng(self):
        return SplitMix64(self.seed)

    def black_box(self):
        name = self.subject.get('adversary')
        if name is None:
            if self.operator is None:
                raise ScenarioError(
                    'subject needs an operator or an adversary',
                    field='subject',
                )
            return OperatorBlackBox(self.operator, self.m, self.r)
        if name not in ADVERSARIES:
            raise ScenarioError(
                f'unknown adversary {name}', field='subject.adversary',
            )
        offset = rational(self.subject.get('offset', 1))
        return make_adversary(name, self.dimension, self.operator, offset)

    def echo(self):
        echo = dict(self.data)
        echo.update(seed=self.seed, tolerance=self.tolerance)
        return echo


class Report(dict):
    '''JSON report: every check carries a ``passed`` flag.'''

    def __init__(self, command, scenario=None):
        super().__init__(
            schema=settings.SCHEMA_VERSION,
            version=version(),
            command=command,
            checks={},
        )
        if scenario is not None:
            self['scenario'] = scenario.echo()

    def check(self, name, passed, **details):
        self['checks'][name] = dict(details, passed=bool(passed))

    @property
    def passed(self):
        return all(c['passed'] for c in self['checks'].values())

    @property
    def exit_code(self):
        return EXIT_PASS if self.passed else EXIT_FAIL

    def dumps(self):
        self['passed'] = self.passed
        return json.dumps(self, indent=2, sort_keys=True) + '\n'


def timed(function):
    '''Record wall time in the report when the scenario asks for it.'''
    def wrapper(scenario):
        start = time.perf_counter()
        report = function(scenario)
        if scenario.timings:
            report['timings'] = dict(
                seconds=round(time.perf_counter() - start, 6),
            )
        return report
    wrapper.__name__ = function.__name__
    wrapper.__doc__ = function.__doc__
    return wrapper


@timed
def run_reconstruct(scenario):
    '''Extract coefficients, check residual, monomial probes and linearity.'''
    u = scenario.black_box()
    grid = scenario.grid()
    rng = scenario.rng()
    result = reconstruct(u, scenario.m, grid, scenario.mode, rng)
    report = Report('reconstruct', scenario)
    report.check(
        'reconstruction',
        result.passed(scenario.tolerance),
        **result.to_json(),
    )
    monomials = monomial_probe_residuals(u, result.operator, grid)
    worst = max(monomials.values(), default=0)
    report.check(
        'monomial_probes',
        is_zero(worst, scenario.tolerance),
        worst=dump(worst),
    )
    linear, violation = linearity_spot_check(
        u, scenario.trials, grid, rng, tolerance=scenario.tolerance,
    )
    report.check('linearity', linear, worst=dump(violation))
    return report


@timed
def run_classify(scenario):
    '''Regime verdict for an operator subject.'''
    if scenario.operator is None or 'adversary' in scenario.subject:
        raise ScenarioError(
            'classification needs an operator subject', field='subject',
        )
    verdict = classify(scenario.operator, scenario.m, scenario.r)
    details = verdict.to_json()
    report = Report('classify', scenario)
    report.check('classification', details.pop('passed'), **details)
    return report


@timed
def run_locality(scenario):
    '''Partition sanity, support condition on a bump, flatness transfer.'''
    report = Report('check-locality', scenario)
    partition = build_partition(scenario.dimension, scenario.half_angle)
    samples = partition_samples(
        scenario.dimension, PARTITION_SAMPLES, scenario.seed,
    )
    sanity = partition_check(partition, samples)
    report.check('partition', sanity.pop('passed'), **sanity)

    u = scenario.black_box()
    bump = Bump(scenario.center, scenario.radius)
    grid = scenario.grid()
    report.check(
        'support',
        support_condition_check(u, bump, grid, tolerance=scenario.tolerance),
        worst=dump(support_violation(u, bump, grid)),
    )
    flat, worst = flatness_transfer_check(
        u, scenario.m, scenario.trials, scenario.rng(), scenario.tolerance,
    )
    report.check('flatness', flat, worst=dump(worst))
    return report


RUNNERS = {
    'reconstruct': run_reconstruct,
    'classify': run_classify,
    'check-locality': run_locality,
}


def _constant(value):
    return dict(alpha=[0], data=value)


SAMPLE_OPERATOR = dict(dimension=1, coefficients=[
    _constant('3'),
    dict(alpha=[2], kind='poly', data=[dict(alpha=[1], value='1')]),
])

DEMO = [
    ('reconstruct', 'reconstruct 3 + x d^2', EXIT_PASS, dict(
        m=2, subject=dict(operator=SAMPLE_OPERATOR),
    )),
    ('reconstruct', 'reconstruct the shift adversary', EXIT_FAIL, dict(
        m=2, trials=3, subject=dict(adversary='shift'),
    )),
    ('classify', 'multiplication by 5, C^2 -> C^2', EXIT_PASS, dict(
        m=2, r=2, subject=dict(operator=dict(
            dimension=1, coefficients=[_constant('5')],
        )),
    )),
    ('classify', 'd^2, C^3 -> C^1', EXIT_PASS, dict(
        m=3, r=1, subject=dict(operator=dict(
            dimension=1, coefficients=[dict(alpha=[2], data='1')],
        )),
    )),
    ('classify', 'identity, C^2 -> C^3', EXIT_FAIL, dict(
        m=2, r=3, subject=dict(operator=dict(
            dimension=1, coefficients=[_constant('1')],
        )),
    )),
    ('check-locality', 'locality of d', EXIT_PASS, dict(
        m=1, trials=5, subject=dict(operator=dict(
            dimension=1, coefficients=[dict(alpha=[1], data='1')],
        )),
    )),
    ('check-locality', 'locality of the shift adversary', EXIT_FAIL, dict(
        m=1, trials=5, subject=dict(adversary='shift'),
    )),
]


def run_demo(seed=None, tolerance=None):
    '''Built-in scenarios; each check passes when its outcome is the
    expected one, adversaries are expected to fail.'''
    report = Report('demo')
    for command, title, expected, data in DEMO:
        scenario = Scenario(data, seed=seed, tolerance=tolerance)
        result = RUNNERS[command](scenario)
        logger.debug(f'demo {title}: exit code {result.exit_code}')
        report.check(
            title,
            result.exit_code == expected,
            command=command,
            expected=expected,
            exit_code=result.exit_code,
            checks=result['checks'],
        )
    return report

