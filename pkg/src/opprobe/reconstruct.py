'''
Recover a differential operator from a black box by probing monomials.

Coefficients are extracted by induction on |alpha|: a_0 = u(1), then

    a_alpha = (u(x^alpha) - sum_{|beta| < |alpha|} a_beta d^beta x^alpha)
              / alpha!

so that (u - P)(x^beta) = 0 for every |beta| <= m. A black box which is a
differential operator of order <= m is then recovered exactly, and the
residual of u - P on any other test function measures how far u is from one.
'''
import logging

from opprobe import settings
from opprobe.diffop import (
    DiffOperator,
    SampledFunction,
    apply,
    apply_polynomial,
)
from opprobe.exceptions import ParameterError, ProbeError
from opprobe.jets import Analytic
from opprobe.multiindex import MultiIndex, enumerate_upto
from opprobe.polynomial import Polynomial, random_polynomial, x_power
from opprobe.prng import SplitMix64
from opprobe.scalars import dump, is_exact, is_zero

logger = logging.getLogger(__name__)

MODES = ('exact', 'float')


class BlackBox:
    '''Evaluation-only operator u: C^m -> C^r.

    Linearity and locality are assumed, never enforced. Subclasses
    implement ``evaluate(f, x)``; those able to return u(f) as an exact
    polynomial for polynomial f also implement ``symbolic(f)`` and set
    ``supports_symbolic``.
    '''

    name = 'blackbox'
    supports_symbolic = False

    def __init__(self, dimension, source_class=None, target_class=None):
        self.dimension = dimension
        self.source_class = source_class
        self.target_class = target_class

    def evaluate(self, f, x):
        raise NotImplementedError()

    def symbolic(self, f):
        raise NotImplementedError(f'{self.name} has no symbolic mode')

    def __repr__(self):
        return f'<{self.name} in dimension {self.dimension}>'


class OperatorBlackBox(BlackBox):
    '''A known DiffOperator behind the black-box interface.'''

    name = 'operator'

    def __init__(self, operator, source_class=None, target_class=None):
        super().__init__(operator.dimension, source_class, target_class)
        self.operator = operator
        self.supports_symbolic = all(
            isinstance(c, Polynomial) for c in operator.coefficients.values()
        )

    def evaluate(self, f, x):
        return apply(self.operator, f, x)

    def symbolic(self, f):
        return apply_polynomial(self.operator, f)


class ShiftAdversary(BlackBox):
    '''u(f)(x) = P(f)(x) + f(x + offset e_1): linear but not local.'''

    name = 'shift'
    supports_symbolic = True

    def __init__(self, dimension=1, operator=None, offset=1, **kwargs):
        super().__init__(dimension, **kwargs)
        self.operator = operator or DiffOperator.zero(dimension)
        self.offset = offset
        self.displacement = tuple(
            offset if i == 0 else 0 for i in range(dimension)
        )

    def evaluate(self, f, x):
        shifted = tuple(a + b for a, b in zip(x, self.displacement))
        return apply(self.operator, f, x) + f(shifted)

    def symbolic(self, f):
        return apply_polynomial(self.operator, f) + f.shift(self.displacement)


class SquareAdversary(BlackBox):
    '''u(f) = f^2: local but not linear.'''

    name = 'square'
    supports_symbolic = True

    def evaluate(self, f, x):
        return f(x) ** 2

    def symbolic(self, f):
        return f * f


class AbsAdversary(BlackBox):
    '''u(f) = |f|: neither linear nor polynomial.'''

    name = 'abs'

    def evaluate(self, f, x):
        return abs(f(x))


ADVERSARIES = {
    cls.name: cls for cls in (ShiftAdversary, SquareAdversary, AbsAdversary)
}


def make_adversary(name, dimension, operator=None, offset=1):
    try:
        cls = ADVERSARIES[name]
    except KeyError:
        raise ParameterError(
            f'unknown adversary {name}, known: {", ".join(ADVERSARIES)}'
        )
    if cls is ShiftAdversary:
        return cls(dimension, operator=operator, offset=offset)
    return cls(dimension)


def probe(u, f, x=None, alpha=None):
    '''u(f)(x), or u(f) symbolically when x is None.

    Any failure of the black box becomes a ProbeError naming alpha.
    '''
    try:
        if x is None:
            return u.symbolic(f)
        return u.evaluate(f, x)
    except ProbeError:
        raise
    except Exception as exc:
        raise ProbeError(alpha if alpha is not None else (), exc) from exc


def default_mode(u):
    return 'exact' if u.supports_symbolic else 'float'


def _check_mode(u, mode):
    if mode not in MODES:
        raise ParameterError(f'mode must be one of {MODES}, got {mode}')
    if mode == 'exact' and not u.supports_symbolic:
        raise ParameterError(f'{u.name} has no symbolic mode')


def extract_coefficients(u, m, grid=None, mode=None, normalized=True):
    '''DiffOperator of nominal order m agreeing with u on all x^beta.

    :param u: the black box
    :param int m: maximum order
    :param list grid: sample points, needed in float mode
    :param str mode: ``exact`` (symbolic polynomials) or ``float`` (grid
        samples), defaults to exact when the black box supports it
    :param bool normalized: divide by alpha!; False keeps the bare
        induction formula, which is wrong as soon as alpha! > 1
    '''
    if m < 0:
        raise ParameterError(f'order must be >= 0, got {m}')
    mode = mode or default_mode(u)
    _check_mode(u, mode)
    n = u.dimension
    if mode == 'exact':
        coefficients = _extract_symbolic(u, n, m, normalized)
    else:
        if not grid:
            raise ParameterError('float extraction needs a grid')
        coefficients = _extract_sampled(u, n, m, grid, normalized)
    return DiffOperator(n, coefficients, m)


def _extract_symbolic(u, n, m, normalized):
    coefficients = {}
    for alpha in enumerate_upto(n, m):
        monomial = x_power(alpha)
        value = probe(u, monomial, alpha=alpha)
        for beta, a in coefficients.items():
            if beta.degree() < alpha.degree():
                value = value - a * monomial.derivative(beta)
        if normalized:
            value = value / alpha.factorial()
        logger.debug(f'a_{list(alpha)} = {value!r}')
        coefficients[alpha] = value
    return coefficients


def _extract_sampled(u, n, m, grid, normalized):
    samples = {alpha: {} for alpha in enumerate_upto(n, m)}
    for x in grid:
        x = tuple(x)
        for alpha in samples:
            monomial = x_power(alpha)
            value = probe(u, monomial, x, alpha)
            for beta in samples:
                if beta.degree() >= alpha.degree():
                    break
                value -= samples[beta][x] * monomial.derivative(beta)(x)
            if normalized:
                value = value / alpha.factorial()
            samples[alpha][x] = float(value)
    return {
        alpha: SampledFunction(n, values)
        for alpha, values in samples.items()
    }


def residual_check(u, operator, tests, grid):
    '''max over tests and grid of |u(f)(x) - P(f)(x)|.

    Exact inputs give an exact residual.
    '''
    worst = 0
    for f in tests:
        for x in grid:
            x = tuple(x)
            difference = abs(probe(u, f, x) - apply(operator, f, x))
            if difference > worst:
                worst = difference
    logger.debug(f'residual over {len(tests)} tests: {worst}')
    return worst


def monomial_probe_residuals(u, operator, grid, m=None):
    '''beta -> max over grid of |(u - P)(x^beta)| for |beta| <= m.'''
    if m is None:
        m = operator.order
    return {
        beta: residual_check(u, operator, [x_power(beta)], grid)
        for beta in enumerate_upto(u.dimension, m)
    }


def linearity_spot_check(u, trials, grid, rng=None, degree=2,
                         tolerance=None):
    '''Compare u(f + c g) with u(f) + c u(g) on random polynomials.

    The first trial uses the antipodal pair g = -f, c = 1, which exposes
    sign-sensitive maps such as |f|.

    :return: (passed, worst violation)
    '''
    rng = rng or SplitMix64(settings.SEED)
    n = u.dimension
    worst = 0
    for trial in range(trials):
        f = random_polynomial(rng, n, degree)
        if trial == 0:
            f = f + x_power(MultiIndex.unit(n, 0))
            g, c = -f, 1
        else:
            g = random_polynomial(rng, n, degree)
            c = rng.nonzero_rational()
        combined = f + g.scale(c)
        for x in grid:
            x = tuple(x)
            violation = abs(
                probe(u, combined, x)
                - probe(u, f, x) - c * probe(u, g, x)
            )
            if violation > worst:
                worst = violation
    passed = is_zero(worst, tolerance)
    if not passed:
        logger.debug(f'{u!r} is not linear, worst violation {worst}')
    return passed, worst


def default_tests(n, m, mode, rng, count=5):
    '''Monomials through degree m + 1, random polynomials of degree m + 2,
    and in float mode exp and sin of an affine argument.'''
    tests = [x_power(beta) for beta in enumerate_upto(n, m + 1)]
    tests += [random_polynomial(rng, n, m + 2) for _ in range(count)]
    if mode == 'float':
        slope = tuple(1 if i == 0 else 0.5 for i in range(n))
        tests += [Analytic('exp', slope), Analytic('sin', slope, 0.25)]
    return tests


class ReconstructionReport:
    '''
    :param operator: recovered DiffOperator
    :param residual: max |u(f) - P(f)| over tests and grid
    :param int probes: black-box evaluations spent on extraction
    :param str mode: exact or float
    '''

    def __init__(self, operator, residual, probes, mode, tests=0):
        self.operator = operator
        self.residual = residual
        self.probes = probes
        self.mode = mode
        self.tests = tests

    def passed(self, tolerance=None):
        if self.mode == 'exact' and is_exact(self.residual):
            return self.residual == 0
        return is_zero(self.residual, tolerance)

    def to_json(self):
        return dict(
            operator=self.operator.to_json(),
            residual=dump(self.residual),
            probes=self.probes,
            mode=self.mode,
            tests=self.tests,
        )


def reconstruct(u, m, grid, mode=None, rng=None, tests=None,
                normalized=True):
    '''Extract coefficients, then measure the residual on test functions.'''
    mode = mode or default_mode(u)
    rng = rng or SplitMix64(settings.SEED)
    operator = extract_coefficients(u, m, grid, mode, normalized)
    if tests is None:
        tests = default_tests(u.dimension, m, mode, rng)
    probes = len(enumerate_upto(u.dimension, m))
    if mode == 'float':
        probes *= len(grid)
    residual = residual_check(u, operator, tests, grid)
    logger.debug(f'reconstructed {operator!r} with residual {residual}')
    return ReconstructionReport(operator, residual, probes, mode, len(tests))
