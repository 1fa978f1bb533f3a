'''
Truncated Taylor expansions ("jets") and the smooth-function interface.

A jet of order m at a stores, for every |alpha| <= m, the coefficient of
(x - a)^alpha, i.e. d^alpha f(a) / alpha!. Every smooth function in opprobe
(exact polynomials, analytic primitives, cone cutoffs, bumps) answers
``jet(point, order)`` and declares its smoothness class.
'''
import itertools
import logging
import math
from fractions import Fraction

import numpy

from opprobe import settings
from opprobe.exceptions import AlignmentError, DimensionError, SmoothnessError
from opprobe.multiindex import (
    MultiIndex,
    enumerate_degree,
    enumerate_upto,
    factorial,
    leq,
    monomial_value,
)
from opprobe.scalars import dump, is_exact, is_zero, parse

logger = logging.getLogger(__name__)

UNBOUNDED = math.inf


class Jet:
    '''Dense truncated Taylor polynomial.

    :param tuple base_point: expansion point a
    :param int order: truncation order m
    :param dict coeffs: MultiIndex -> scalar, missing keys are zero
    '''

    def __init__(self, base_point, order, coeffs=None):
        self.base_point = tuple(base_point)
        self.order = order
        n = len(self.base_point)
        self.coeffs = dict.fromkeys(enumerate_upto(n, order), 0)
        for alpha, value in (coeffs or {}).items():
            alpha = MultiIndex(alpha)
            if len(alpha) != n:
                raise DimensionError(
                    f'{alpha} does not match dimension {n} of the jet'
                )
            if alpha.degree() > order:
                raise AlignmentError(
                    f'{alpha} exceeds jet order {order}'
                )
            self.coeffs[alpha] = value

    @property
    def dimension(self):
        return len(self.base_point)

    def __getitem__(self, alpha):
        return self.coeffs.get(alpha, 0)

    def value(self):
        return self.coeffs[MultiIndex.zero(self.dimension)]

    def derivative(self, alpha):
        '''d^alpha f(a) = alpha! * coefficient.'''
        if sum(alpha) > self.order:
            raise SmoothnessError(
                f'jet of order {self.order} has no derivative {list(alpha)}'
            )
        return factorial(alpha) * self[alpha]

    def nilpotent_part(self):
        coeffs = dict(self.coeffs)
        coeffs[MultiIndex.zero(self.dimension)] = 0
        return Jet(self.base_point, self.order, coeffs)

    def is_zero(self, tolerance=None):
        return all(is_zero(v, tolerance) for v in self.coeffs.values())

    def __add__(self, other):
        return jet_add(self, other)

    def __sub__(self, other):
        return jet_add(self, other.scale(-1))

    def __mul__(self, other):
        if isinstance(other, Jet):
            return jet_mul(self, other)
        return self.scale(other)

    __rmul__ = __mul__

    def __neg__(self):
        return self.scale(-1)

    def scale(self, factor):
        return Jet(self.base_point, self.order, {
            alpha: factor * value for alpha, value in self.coeffs.items()
        })

    def __eq__(self, other):
        if not isinstance(other, Jet):
            return NotImplemented
        return (
            self.base_point == other.base_point
            and self.order == other.order
            and self.coeffs == other.coeffs
        )

    __hash__ = None

    def __repr__(self):
        nonzero = {
            tuple(a): v for a, v in self.coeffs.items() if v != 0
        }
        return f'Jet(base={self.base_point}, order={self.order}, {nonzero})'

    def to_json(self):
        return dict(
            base=[dump(x) for x in self.base_point],
            order=self.order,
            coeffs=[
                dict(alpha=alpha.to_json(), value=dump(value))
                for alpha, value in self.coeffs.items()
            ],
        )

    @classmethod
    def from_json(cls, data):
        return cls(
            [parse(x) for x in data['base']],
            data['order'],
            {
                MultiIndex(item['alpha']): parse(item['value'])
                for item in data['coeffs']
            },
        )


def check_aligned(a, b):
    if a.dimension != b.dimension:
        raise AlignmentError(
            f'jets live in dimensions {a.dimension} and {b.dimension}'
        )
    if a.order != b.order:
        raise AlignmentError(f'jet orders differ: {a.order} != {b.order}')
    if a.base_point != b.base_point:
        raise AlignmentError(
            f'jet base points differ: {a.base_point} != {b.base_point}'
        )


def jet_add(a, b):
    check_aligned(a, b)
    return Jet(a.base_point, a.order, {
        alpha: a.coeffs[alpha] + b.coeffs[alpha] for alpha in a.coeffs
    })


def jet_mul(a, b):
    '''Cauchy product truncated to the common order (Leibniz rule).'''
    check_aligned(a, b)
    coeffs = {}
    for alpha in a.coeffs:
        total = 0
        for beta, value in a.coeffs.items():
            if value == 0 or not leq(beta, alpha):
                continue
            other = b.coeffs[alpha - beta]
            if other != 0:
                total += value * other
        coeffs[alpha] = total
    return Jet(a.base_point, a.order, coeffs)


def _series(jet, coefficients):
    '''sum_k coefficients[k] * N^k for the nilpotent part N of jet.

    N^(order + 1) vanishes so the sum is exact through the order.
    '''
    nilpotent = jet.nilpotent_part()
    one = Jet(jet.base_point, jet.order, {
        MultiIndex.zero(jet.dimension): 1,
    })
    result = one.scale(coefficients[0])
    power = one
    for coefficient in coefficients[1:jet.order + 1]:
        power = jet_mul(power, nilpotent)
        if coefficient:
            result = jet_add(result, power.scale(coefficient))
    return result


def jet_exp(jet):
    '''exp of a jet: e^c0 * sum N^k / k!.'''
    coefficients = [1 / math.factorial(k) for k in range(jet.order + 1)]
    return _series(jet, coefficients).scale(math.exp(jet.value()))


def _sin_cos_series(jet):
    order = jet.order
    cos_part = [
        0 if k % 2 else (-1) ** (k // 2) / math.factorial(k)
        for k in range(order + 1)
    ]
    sin_part = [
        (-1) ** (k // 2) / math.factorial(k) if k % 2 else 0
        for k in range(order + 1)
    ]
    return _series(jet, cos_part), _series(jet, sin_part)


def jet_sin(jet):
    c0 = jet.value()
    cos_n, sin_n = _sin_cos_series(jet)
    return jet_add(cos_n.scale(math.sin(c0)), sin_n.scale(math.cos(c0)))


def jet_cos(jet):
    c0 = jet.value()
    cos_n, sin_n = _sin_cos_series(jet)
    return jet_add(cos_n.scale(math.cos(c0)), sin_n.scale(-math.sin(c0)))


def jet_reciprocal(jet):
    '''1 / jet, exact for rational jets: (1/c0) sum (-N/c0)^k.'''
    c0 = jet.value()
    if c0 == 0:
        raise ZeroDivisionError('reciprocal of a jet with zero value')
    inverse = Fraction(1) / c0 if is_exact(c0) else 1 / c0
    coefficients = [(-inverse) ** k for k in range(jet.order + 1)]
    return _series(jet, coefficients).scale(inverse)


COMPOSITIONS = {
    'exp': jet_exp,
    'sin': jet_sin,
    'cos': jet_cos,
    'reciprocal': jet_reciprocal,
}


class SmoothFn:
    '''A function known through its jets.

    Subclasses implement ``jet(point, order)`` and set ``dimension`` and
    ``smoothness`` (an int or UNBOUNDED). Requesting an order above the
    declared class raises SmoothnessError.
    '''

    dimension = None
    smoothness = UNBOUNDED

    def jet(self, point, order):
        raise NotImplementedError()

    def check_order(self, order):
        if order > self.smoothness:
            raise SmoothnessError(
                f'{self} is only C^{self.smoothness}, '
                f'order {order} requested'
            )

    def check_point(self, point):
        if len(point) != self.dimension:
            raise DimensionError(
                f'point {tuple(point)} has dimension {len(point)}, '
                f'{self} expects {self.dimension}'
            )

    def __call__(self, point):
        return self.jet(tuple(point), 0).value()

    def _lift(self, other):
        if isinstance(other, SmoothFn):
            return other
        from opprobe.polynomial import Polynomial
        return Polynomial.constant(other, self.dimension)

    def __add__(self, other):
        return Sum(self, self._lift(other))

    def __radd__(self, other):
        if not isinstance(other, SmoothFn) and other == 0:
            return self
        return Sum(self._lift(other), self)

    def __sub__(self, other):
        return Sum(self, Scaled(-1, self._lift(other)))

    def __mul__(self, other):
        if isinstance(other, SmoothFn):
            return Product(self, other)
        return Scaled(other, self)

    def __rmul__(self, other):
        return Scaled(other, self)

    def __neg__(self):
        return Scaled(-1, self)


class Sum(SmoothFn):
    def __init__(self, *terms):
        self.terms = terms
        self.dimension = terms[0].dimension
        self.smoothness = min(t.smoothness for t in terms)

    def jet(self, point, order):
        self.check_order(order)
        jets = [t.jet(point, order) for t in self.terms]
        result = jets[0]
        for jet in jets[1:]:
            result = jet_add(result, jet)
        return result

    def __repr__(self):
        return ' + '.join(repr(t) for t in self.terms)


class Product(SmoothFn):
    def __init__(self, *factors):
        self.factors = factors
        self.dimension = factors[0].dimension
        self.smoothness = min(f.smoothness for f in factors)

    def jet(self, point, order):
        self.check_order(order)
        jets = [f.jet(point, order) for f in self.factors]
        result = jets[0]
        for jet in jets[1:]:
            result = jet_mul(result, jet)
        return result

    def __repr__(self):
        return ' * '.join(f'({f!r})' for f in self.factors)


class Scaled(SmoothFn):
    def __init__(self, factor, function):
        self.factor = factor
        self.function = function
        self.dimension = function.dimension
        self.smoothness = function.smoothness

    def jet(self, point, order):
        return self.function.jet(point, order).scale(self.factor)

    def __repr__(self):
        return f'{self.factor} * ({self.function!r})'


class Composition(SmoothFn):
    '''outer(inner(x)) for outer in exp, sin, cos, reciprocal.'''

    def __init__(self, outer, inner):
        if outer not in COMPOSITIONS:
            raise ValueError(f'unknown composition {outer}')
        self.outer = outer
        self.inner = inner
        self.dimension = inner.dimension
        self.smoothness = inner.smoothness

    def jet(self, point, order):
        self.check_order(order)
        return COMPOSITIONS[self.outer](self.inner.jet(point, order))

    def __repr__(self):
        return f'{self.outer}({self.inner!r})'


class Analytic(SmoothFn):
    '''exp, sin or cos of the affine argument <slope, x> + offset.

    Jets are computed in closed form, so they are exact up to float
    arithmetic.
    '''

    kinds = ('exp', 'sin', 'cos')

    def __init__(self, kind, slope, offset=0):
        if kind not in self.kinds:
            raise ValueError(f'unknown analytic primitive {kind}')
        self.kind = kind
        self.slope = tuple(slope)
        self.offset = offset
        self.dimension = len(self.slope)

    def _derivative(self, argument, k):
        if self.kind == 'exp':
            return math.exp(argument)
        shift = k * math.pi / 2
        if self.kind == 'sin':
            return math.sin(argument + shift)
        return math.cos(argument + shift)

    def jet(self, point, order):
        self.check_point(point)
        argument = float(self.offset) + sum(
            float(c) * float(x) for c, x in zip(self.slope, point)
        )
        derivatives = [
            self._derivative(argument, k) for k in range(order + 1)
        ]
        return Jet(point, order, {
            alpha: monomial_value(alpha, self.slope)
            * derivatives[alpha.degree()] / factorial(alpha)
            for alpha in enumerate_upto(self.dimension, order)
        })

    def __repr__(self):
        return f'{self.kind}({list(self.slope)}.x + {self.offset})'


def central_difference(function, point, alpha, step):
    '''Tensor-product central difference approximation of d^alpha f.

    Second order accurate in the step.
    '''
    axes = []
    for d in alpha:
        axes.append([
            ((d / 2 - j) * step, (-1) ** j * math.comb(d, j))
            for j in range(d + 1)
        ])
    total = 0.0
    for combination in itertools.product(*axes):
        weight = math.prod(w for _, w in combination)
        shifted = tuple(
            float(x) + offset for x, (offset, _) in zip(point, combination)
        )
        total += weight * function(shifted)
    return total / step ** sum(alpha)


class FiniteDifferenceFn(SmoothFn):
    '''Float function whose jets come from central differences.

    The declared class is finite: the caller states how many derivatives
    may be requested.
    '''

    def __init__(self, function, dimension, smoothness, step=None,
                 name=None):
        self.function = function
        self.dimension = dimension
        self.smoothness = smoothness
        self.step = step or settings.FD_STEP
        self.name = name or getattr(function, '__name__', 'function')

    def __call__(self, point):
        return self.function(tuple(float(x) for x in point))

    def jet(self, point, order):
        self.check_point(point)
        self.check_order(order)
        coeffs = {}
        for alpha in enumerate_upto(self.dimension, order):
            if alpha.degree() == 0:
                value = self.function(tuple(float(x) for x in point))
            else:
                value = central_difference(
                    self.function, point, alpha, self.step,
                )
            coeffs[alpha] = value / factorial(alpha)
        return Jet(point, order, coeffs)

    def __repr__(self):
        return f'{self.name} (finite differences, C^{self.smoothness})'


def derivative_at(f, alpha, point):
    '''d^alpha f(point); exact for polynomials at rational points.'''
    f.check_order(sum(alpha))
    return f.jet(tuple(point), sum(alpha)).derivative(MultiIndex(alpha))


def taylor_polynomial(f, point, order):
    '''Degree <= order polynomial with the same jet as f at point.'''
    from opprobe.polynomial import Polynomial
    f.check_order(order)
    return Polynomial.from_jet(f.jet(tuple(point), order))


def gauss_legendre(nodes):
    '''Gauss-Legendre nodes and weights mapped to [0, 1].'''
    x, w = numpy.polynomial.legendre.leggauss(nodes)
    return (x + 1) / 2, w / 2


def taylor_remainder_quadrature(f, point, beta, x, nodes=None):
    '''Integral form of the Taylor remainder coefficient R_beta(x).

    R_beta(x) = |beta|/beta! * int_0^1 (1-t)^(|beta|-1) d^beta f(a+t(x-a)) dt
    '''
    beta = MultiIndex(beta)
    order = beta.degree()
    if order < 1:
        raise ValueError('remainder needs |beta| >= 1')
    f.check_order(order)
    a = numpy.array([float(c) for c in point])
    x = numpy.array([float(c) for c in x])
    ts, ws = gauss_legendre(nodes or settings.QUADRATURE_NODES)
    total = 0.0
    for t, w in zip(ts, ws):
        at = tuple(a + t * (x - a))
        total += w * (1 - t) ** (order - 1) * (
            f.jet(at, order).derivative(beta)
        )
    return order / factorial(beta) * total


def taylor_identity_error(f, point, order, x, nodes=None):
    '''|f(x) - q_k(x) - sum_{|beta|=k+1} R_beta(x) (x-a)^beta|.'''
    q = taylor_polynomial(f, point, order)
    x = tuple(float(c) for c in x)
    h = tuple(xi - float(ai) for xi, ai in zip(x, point))
    remainder = sum(
        taylor_remainder_quadrature(f, point, beta, x, nodes)
        * monomial_value(beta, h)
        for beta in enumerate_degree(f.dimension, order + 1)
    )
    return abs(float(f(x)) - float(q(x)) - remainder)


def taylor_residual_ratio(f, point, order, x):
    '''(f(x) - q_k(x)) / |x - a|^k, which tends to zero as x -> a.'''
    q = taylor_polynomial(f, point, order)
    x = tuple(float(c) for c in x)
    distance = math.dist(x, [float(c) for c in point])
    return (float(f(x)) - float(q(x))) / distance ** order


def dyadic_residuals(f, point, order, direction, steps=4, start=0.5):
    '''|residual ratio| along a + 2^-j * start * direction, j < steps.'''
    ratios = []
    for j in range(steps):
        scale = start / 2 ** j
        x = tuple(
            float(a) + scale * float(d) for a, d in zip(point, direction)
        )
        ratios.append(abs(taylor_residual_ratio(f, point, order, x)))
    logger.debug(f'dyadic residuals of {f!r} at {point}: {ratios}')
    return ratios


def vanishes_to_order(f, point, order, tolerance=None):
    '''Membership of f in the flat ideal: all d^alpha f(point) = 0.

    Exact values compare exactly, floats against the tolerance.
    '''
    f.check_order(order)
    jet = f.jet(tuple(point), order)
    return jet.is_zero(tolerance)
