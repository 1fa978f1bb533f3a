'''
Linear differential operators in normal form, P = sum_alpha a_alpha(x) d^alpha.

Coefficients come in three kinds:

- ``poly``: exact multivariate :class:`~opprobe.polynomial.Polynomial`,
- ``pw``: 1-D :class:`~opprobe.pwpoly.PiecewisePoly`, with computed class,
- ``grid``: :class:`SampledFunction`, float values on a grid, whose class is
  advisory only.

Only nonzero coefficients are stored, the zero operator is the empty map.
'''
import itertools
import logging
from fractions import Fraction

from opprobe import settings
from opprobe.exceptions import (
    DimensionError,
    DomainError,
    InconclusiveError,
    ParameterError,
)
from opprobe.jets import UNBOUNDED
from opprobe.multiindex import MultiIndex, enumerate_upto, monomial_value
from opprobe.polynomial import Polynomial, random_polynomial
from opprobe.pwpoly import PiecewisePoly, as_piecewise, smoothness_class
from opprobe.scalars import dump_class, is_zero, parse, parse_class, rational

logger = logging.getLogger(__name__)


def grid_key(point):
    return tuple(float(x) for x in point)


class SampledFunction:
    '''Coefficient known only at grid points.

    :param int dimension: chart dimension
    :param dict values: point tuple -> float
    :param smoothness: declared class, not verified
    '''

    def __init__(self, dimension, values, smoothness=UNBOUNDED):
        self.dimension = dimension
        self.smoothness = smoothness
        self.values = {}
        for point, value in values.items():
            if len(point) != dimension:
                raise DimensionError(
                    f'sample point {tuple(point)} in dimension {dimension}'
                )
            self.values[grid_key(point)] = float(value)

    def __call__(self, point):
        try:
            return self.values[grid_key(point)]
        except KeyError:
            raise DomainError(f'{tuple(point)} is not a sample point')

    def points(self):
        return list(self.values)

    def is_zero(self, tolerance=None):
        return all(is_zero(v, tolerance) for v in self.values.values())

    def __repr__(self):
        return f'<sampled on {len(self.values)} points>'

    def to_json(self):
        return dict(
            smoothness=dump_class(self.smoothness),
            samples=[
                dict(point=list(point), value=value)
                for point, value in sorted(self.values.items())
            ],
        )

    @classmethod
    def from_json(cls, data, dimension):
        return cls(
            dimension,
            {tuple(s['point']): s['value'] for s in data['samples']},
            parse_class(data.get('smoothness')),
        )


def coefficient_kind(coefficient):
    if isinstance(coefficient, Polynomial):
        return 'poly'
    if isinstance(coefficient, PiecewisePoly):
        return 'pw'
    if isinstance(coefficient, SampledFunction):
        return 'grid'
    raise TypeError(f'unsupported coefficient {coefficient!r}')


def coefficient_is_zero(coefficient, tolerance=None):
    if isinstance(coefficient, SampledFunction):
        return coefficient.is_zero(tolerance)
    return coefficient.is_zero()


def coefficient_smoothness(coefficient):
    if isinstance(coefficient, PiecewisePoly):
        return smoothness_class(coefficient)
    return coefficient.smoothness


def is_exact_coefficient(coefficient):
    if isinstance(coefficient, Polynomial):
        return coefficient.is_exact()
    return isinstance(coefficient, PiecewisePoly)


class DiffOperator:
    '''
    :param int dimension: chart dimension n
    :param dict coefficients: MultiIndex -> coefficient
    :param int order: nominal order, defaults to the largest key degree
    '''

    def __init__(self, dimension, coefficients=None, order=None):
        self.dimension = dimension
        self.coefficients = {}
        for alpha, coefficient in (coefficients or {}).items():
            alpha = MultiIndex(alpha)
            self._check(alpha, coefficient)
            if isinstance(coefficient, SampledFunction):
                if coefficient.is_zero(0):
                    continue
            elif coefficient.is_zero():
                continue
            self.coefficients[alpha] = coefficient
        top = max((a.degree() for a in self.coefficients), default=0)
        self.order = top if order is None else order
        if top > self.order:
            raise ParameterError(
                f'coefficient of order {top} in an operator of nominal '
                f'order {self.order}'
            )

    def _check(self, alpha, coefficient):
        if len(alpha) != self.dimension:
            raise DimensionError(
                f'{list(alpha)} in an operator of dimension {self.dimension}'
            )
        if coefficient.dimension != self.dimension:
            raise DimensionError(
                f'coefficient of {list(alpha)} has dimension '
                f'{coefficient.dimension}, operator has {self.dimension}'
            )

    @classmethod
    def from_terms(cls, terms, dimension=None, order=None):
        '''Build from (alpha, coefficient) pairs; scalars become constants.

        Repeated multi-indices are summed.
        '''
        if isinstance(terms, dict):
            terms = terms.items()
        terms = [(MultiIndex(a), c) for a, c in terms]
        if dimension is None:
            if not terms:
                raise DimensionError('dimension of an empty operator')
            dimension = len(terms[0][0])
        coefficients = {}
        for alpha, coefficient in terms:
            if not isinstance(
                coefficient, (Polynomial, PiecewisePoly, SampledFunction),
            ):
                coefficient = Polynomial.constant(coefficient, dimension)
            if alpha in coefficients:
                coefficient = coefficients[alpha] + coefficient
            coefficients[alpha] = coefficient
        return cls(dimension, coefficients, order)

    @classmethod
    def zero(cls, dimension, order=0):
        return cls(dimension, {}, order)

    @classmethod
    def multiplication(cls, coefficient, dimension=None):
        '''The order-0 operator f -> a f.'''
        if dimension is None:
            dimension = getattr(coefficient, 'dimension', None) or 1
        return cls.from_terms(
            [(MultiIndex.zero(dimension), coefficient)], dimension,
        )

    def coefficient(self, alpha):
        return self.coefficients.get(
            MultiIndex(alpha), Polynomial.zero(self.dimension),
        )

    def is_zero(self, tolerance=None):
        return all(
            coefficient_is_zero(c, tolerance)
            for c in self.coefficients.values()
        )

    def is_exact(self):
        return all(
            is_exact_coefficient(c) for c in self.coefficients.values()
        )

    def sorted_coefficients(self):
        return sorted(
            self.coefficients.items(),
            key=lambda item: (item[0].degree(), tuple(item[0])),
        )

    def __eq__(self, other):
        if not isinstance(other, DiffOperator):
            return NotImplemented
        return (
            self.dimension == other.dimension
            and self.coefficients == other.coefficients
        )

    __hash__ = None

    def __repr__(self):
        if not self.coefficients:
            return 'DiffOperator(0)'
        parts = []
        for alpha, coefficient in self.sorted_coefficients():
            derivative = ''.join(
                f'd{i}^{a}' if a > 1 else f'd{i}'
                for i, a in enumerate(alpha) if a
            )
            if not derivative:
                parts.append(f'({coefficient!r})')
            else:
                parts.append(f'({coefficient!r})*{derivative}')
        return f'DiffOperator({" + ".join(parts)})'

    def to_json(self):
        return dict(
            dimension=self.dimension,
            order=self.order,
            coefficients=[
                dict(
                    alpha=alpha.to_json(),
                    kind=coefficient_kind(coefficient),
                    data=coefficient.to_json(),
                )
                for alpha, coefficient in self.sorted_coefficients()
            ],
        )

    @classmethod
    def from_json(cls, data):
        '''Decode operator JSON.

        A ``poly`` coefficient may also be given as a bare scalar, read as a
        constant.
        '''
        dimension = data['dimension']
        coefficients = []
        for item in data.get('coefficients', []):
            kind = item.get('kind', 'poly')
            payload = item['data']
            if kind == 'poly' and not isinstance(payload, list):
                coefficient = Polynomial.constant(parse(payload), dimension)
            elif kind == 'poly':
                coefficient = Polynomial.from_json(payload, dimension)
            elif kind == 'pw':
                coefficient = PiecewisePoly.from_json(payload)
            elif kind == 'grid':
                coefficient = SampledFunction.from_json(payload, dimension)
            else:
                raise ValueError(f'unknown coefficient kind {kind}')
            coefficients.append((MultiIndex(item['alpha']), coefficient))
        return cls.from_terms(coefficients, dimension, data.get('order'))


def random_operator(rng, dimension, order, degree=2):
    '''Operator with a random exact polynomial coefficient for every
    |alpha| <= order; some may come out zero.'''
    return DiffOperator.from_terms(
        [
            (alpha, random_polynomial(rng, dimension, degree))
            for alpha in enumerate_upto(dimension, order)
        ],
        dimension,
        order,
    )


def apply(operator, f, x):
    '''sum_alpha a_alpha(x) d^alpha f(x) through the jet of f at x.'''
    if not operator.coefficients:
        return 0
    x = tuple(x)
    order = max(alpha.degree() for alpha in operator.coefficients)
    f.check_order(order)
    jet = f.jet(x, order)
    return sum(
        coefficient(x) * jet.derivative(alpha)
        for alpha, coefficient in operator.coefficients.items()
    )


def effective_order(operator, tolerance=None):
    '''Largest |alpha| with a nonzero coefficient, None for the zero
    operator.'''
    return max(
        (
            alpha.degree()
            for alpha, c in operator.coefficients.items()
            if not coefficient_is_zero(c, tolerance)
        ),
        default=None,
    )


def coefficient_class(operator):
    '''alpha -> smoothness class of a_alpha.'''
    return {
        alpha: coefficient_smoothness(c)
        for alpha, c in operator.sorted_coefficients()
    }


def minimum_class(operator):
    return min(coefficient_class(operator).values(), default=UNBOUNDED)


def _exact_difference(a, b):
    if isinstance(a, PiecewisePoly) or isinstance(b, PiecewisePoly):
        return as_piecewise(a) - as_piecewise(b)
    return a - b


def operator_equal(P, Q, grid=None, tolerance=None):
    '''Coefficientwise comparison, exact when both operators are exact and
    on the grid otherwise.'''
    if P.dimension != Q.dimension:
        raise DimensionError(
            f'operators of dimension {P.dimension} and {Q.dimension}'
        )
    alphas = set(P.coefficients) | set(Q.coefficients)
    if P.is_exact() and Q.is_exact():
        return all(
            _exact_difference(P.coefficient(a), Q.coefficient(a)).is_zero()
            for a in alphas
        )
    if grid is None:
        raise ParameterError('comparing sampled operators needs a grid')
    if tolerance is None:
        tolerance = settings.TOLERANCE
    for alpha in alphas:
        a, b = P.coefficient(alpha), Q.coefficient(alpha)
        worst = max(
            (abs(float(a(x)) - float(b(x))) for x in grid), default=0.0,
        )
        if worst > tolerance:
            logger.debug(f'coefficients of {list(alpha)} differ by {worst}')
            return False
    return True


def apply_polynomial(operator, f):
    '''P(f) as an exact polynomial, for polynomial coefficients.'''
    result = Polynomial.zero(f.dimension)
    for alpha, coefficient in operator.coefficients.items():
        if not isinstance(coefficient, Polynomial):
            raise InconclusiveError(
                f'{coefficient_kind(coefficient)} coefficient of '
                f'{list(alpha)} has no polynomial form'
            )
        result = result + coefficient * f.derivative(alpha)
    return result


def restrict_to_line(operator, base, direction):
    '''The 1-D operator Q with P[w(<v, x - p>)](p + t v / <v, v>) = Q(w)(t).

    Its coefficient of d^j is sum_{|beta| = j} v^beta a_beta on the line
    through ``base`` along ``direction``, parametrized by the value of
    <v, x - p>.
    '''
    base = tuple(rational(b) for b in base)
    direction = tuple(rational(v) for v in direction)
    norm = sum(v * v for v in direction)
    if len(base) != operator.dimension or len(direction) != operator.dimension:
        raise DimensionError('line and operator dimensions differ')
    if norm == 0:
        raise ParameterError('direction must be nonzero')
    step = tuple(v / norm for v in direction)
    terms = []
    for beta, coefficient in operator.coefficients.items():
        if not isinstance(coefficient, Polynomial):
            raise InconclusiveError(
                'restriction to a line needs polynomial coefficients'
            )
        weight = monomial_value(beta, direction)
        if weight:
            terms.append((
                (beta.degree(),),
                coefficient.restrict(base, step).scale(weight),
            ))
    return DiffOperator.from_terms(terms, 1, operator.order)


def linspace(low, high, count):
    '''``count`` equally spaced exact rationals from low to high.'''
    low, high = rational(low), rational(high)
    if count < 1:
        raise ParameterError(f'points per axis must be >= 1, got {count}')
    if count == 1:
        return [(low + high) / 2]
    return [low + (high - low) * Fraction(k, count - 1) for k in range(count)]


def make_grid(low, high, points=None):
    '''Product grid over the box [low, high] with exact rational points.'''
    if points is None:
        points = settings.POINTS_PER_AXIS
    if len(low) != len(high):
        raise DimensionError('grid corners have different dimensions')
    axes = [linspace(a, b, points) for a, b in zip(low, high)]
    return [tuple(p) for p in itertools.product(*axes)]
