'''
Exact sparse multivariate polynomials over the rationals.

Coefficients are stored per exponent vector; zero coefficients are never
stored, so the zero polynomial is the empty mapping. Polynomials are smooth
functions of unbounded class and re-center exactly, which makes their jets
exact at rational points.
'''
import itertools
from fractions import Fraction

from opprobe.exceptions import DimensionError
from opprobe.jets import UNBOUNDED, Jet, SmoothFn
from opprobe.multiindex import (
    MultiIndex,
    binomial,
    enumerate_degree,
    enumerate_upto,
    monomial_derivative,
    monomial_value,
)
from opprobe.scalars import dump, is_exact, parse


class Polynomial(SmoothFn):
    smoothness = UNBOUNDED

    def __init__(self, terms=None, dimension=None):
        terms = {MultiIndex(a): c for a, c in (terms or {}).items()}
        if dimension is None:
            if not terms:
                raise DimensionError('dimension of an empty polynomial')
            dimension = len(next(iter(terms)))
        self.dimension = dimension
        self.terms = {}
        for alpha, coefficient in terms.items():
            if len(alpha) != dimension:
                raise DimensionError(
                    f'exponent {list(alpha)} in a polynomial of '
                    f'dimension {dimension}'
                )
            if coefficient != 0:
                self.terms[alpha] = coefficient

    @classmethod
    def zero(cls, dimension):
        return cls({}, dimension)

    @classmethod
    def constant(cls, value, dimension):
        return cls({MultiIndex.zero(dimension): value}, dimension)

    @classmethod
    def monomial(cls, alpha, coefficient=1):
        alpha = MultiIndex(alpha)
        return cls({alpha: coefficient}, len(alpha))

    @classmethod
    def variable(cls, dimension, i):
        return cls.monomial(MultiIndex.unit(dimension, i))

    @classmethod
    def univariate(cls, coefficients):
        '''c0 + c1 s + c2 s^2 + ... in one variable.'''
        return cls({(k,): c for k, c in enumerate(coefficients)}, 1)

    @classmethod
    def from_jet(cls, jet):
        '''sum_alpha c_alpha (x - a)^alpha expanded in monomials.'''
        centered = cls(jet.coeffs, jet.dimension)
        return centered.shift(tuple(-a for a in jet.base_point))

    def degree(self):
        '''Total degree, -1 for the zero polynomial.'''
        return max((alpha.degree() for alpha in self.terms), default=-1)

    def is_zero(self):
        return not self.terms

    def is_exact(self):
        return all(is_exact(c) for c in self.terms.values())

    def coefficient(self, alpha):
        return self.terms.get(MultiIndex(alpha), 0)

    def univariate_coefficients(self):
        '''Dense [c0, c1, ...] of a one-variable polynomial.'''
        if self.dimension != 1:
            raise DimensionError('dense coefficients need dimension 1')
        return [self.coefficient((k,)) for k in range(self.degree() + 1)]

    def __call__(self, point):
        return self.evaluate(point)

    def evaluate(self, point):
        point = tuple(point)
        self.check_point(point)
        return sum(
            (c * monomial_value(alpha, point)
             for alpha, c in self.terms.items()),
            0,
        )

    def jet(self, point, order):
        point = tuple(point)
        self.check_point(point)
        shifted = self.shift(point)
        return Jet(point, order, {
            alpha: c for alpha, c in shifted.terms.items()
            if alpha.degree() <= order
        })

    def derivative(self, beta):
        beta = MultiIndex(beta)
        terms = {}
        for alpha, c in self.terms.items():
            factor, exponent = monomial_derivative(alpha, beta)
            if factor:
                terms[exponent] = terms.get(exponent, 0) + factor * c
        return Polynomial(terms, self.dimension)

    def shift(self, offset):
        '''x -> p(x + offset), exactly.'''
        offset = tuple(offset)
        self.check_point(offset)
        terms = {}
        for alpha, c in self.terms.items():
            for gamma in itertools.product(*(range(a + 1) for a in alpha)):
                gamma = MultiIndex(gamma)
                weight = binomial(alpha, gamma) * monomial_value(
                    alpha - gamma, offset,
                )
                if weight:
                    terms[gamma] = terms.get(gamma, 0) + c * weight
        return Polynomial(terms, self.dimension)

    def restrict(self, base, direction):
        '''One-variable polynomial s -> p(base + s * direction).'''
        base = tuple(base)
        self.check_point(base)
        self.check_point(direction)
        result = Polynomial.zero(1)
        for alpha, c in self.terms.items():
            term = Polynomial.constant(c, 1)
            for b, v, a in zip(base, direction, alpha):
                if a:
                    term = term * Polynomial.univariate([b, v]) ** a
            result = result + term
        return result

    def _coerce(self, other):
        if isinstance(other, Polynomial):
            if other.dimension != self.dimension:
                raise DimensionError(
                    f'polynomials of dimension {self.dimension} and '
                    f'{other.dimension}'
                )
            return other
        if isinstance(other, SmoothFn):
            return None
        return Polynomial.constant(other, self.dimension)

    def __add__(self, other):
        other_poly = self._coerce(other)
        if other_poly is None:
            return super().__add__(other)
        terms = dict(self.terms)
        for alpha, c in other_poly.terms.items():
            terms[alpha] = terms.get(alpha, 0) + c
        return Polynomial(terms, self.dimension)

    def __radd__(self, other):
        return self.__add__(other)

    def __neg__(self):
        return self.scale(-1)

    def __sub__(self, other):
        other_poly = self._coerce(other)
        if other_poly is None:
            return super().__sub__(other)
        return self + other_poly.scale(-1)

    def __rsub__(self, other):
        return self.scale(-1) + other

    def scale(self, factor):
        return Polynomial(
            {alpha: factor * c for alpha, c in self.terms.items()},
            self.dimension,
        )

    def __mul__(self, other):
        if not isinstance(other, SmoothFn):
            return self.scale(other)
        other_poly = self._coerce(other)
        if other_poly is None:
            return super().__mul__(other)
        terms = {}
        for a, c in self.terms.items():
            for b, d in other_poly.terms.items():
                key = a + b
                terms[key] = terms.get(key, 0) + c * d
        return Polynomial(terms, self.dimension)

    def __rmul__(self, other):
        return self.__mul__(other)

    def __pow__(self, exponent):
        result = Polynomial.constant(1, self.dimension)
        for _ in range(exponent):
            result = result * self
        return result

    def __truediv__(self, divisor):
        if is_exact(divisor):
            return self.scale(Fraction(1) / divisor)
        return self.scale(1 / divisor)

    def __eq__(self, other):
        if isinstance(other, Polynomial):
            return (
                self.dimension == other.dimension
                and self.terms == other.terms
            )
        if isinstance(other, SmoothFn):
            return NotImplemented
        return self == Polynomial.constant(other, self.dimension)

    __hash__ = None

    def sorted_terms(self):
        '''Terms in graded lexicographic order.'''
        return sorted(
            self.terms.items(),
            key=lambda item: (item[0].degree(), tuple(item[0])),
        )

    def __repr__(self):
        if not self.terms:
            return '0'
        names = [f'x{i}' for i in range(self.dimension)]
        if self.dimension == 1:
            names = ['x']
        parts = []
        for alpha, c in self.sorted_terms():
            factors = [
                name if a == 1 else f'{name}^{a}'
                for name, a in zip(names, alpha) if a
            ]
            if not factors:
                parts.append(str(c))
            elif c == 1:
                parts.append('*'.join(factors))
            else:
                parts.append(f'{c}*' + '*'.join(factors))
        return ' + '.join(parts)

    def to_json(self):
        return [
            dict(alpha=alpha.to_json(), value=dump(c))
            for alpha, c in self.sorted_terms()
        ]

    @classmethod
    def from_json(cls, data, dimension):
        return cls(
            {MultiIndex(item['alpha']): parse(item['value']) for item in data},
            dimension,
        )


def x_power(alpha):
    '''The probe monomial x^alpha.'''
    return Polynomial.monomial(alpha)


def random_polynomial(rng, dimension, degree, density=2, low=-5, high=5,
                      denominator=4):
    '''Random exact polynomial of degree <= degree.

    Each monomial is kept with probability (density - 1) / density.
    '''
    terms = {}
    for alpha in enumerate_upto(dimension, degree):
        if density > 1 and rng.randint(1, density) == 1:
            continue
        terms[alpha] = rng.nonzero_rational(low, high, denominator)
    return Polynomial(terms, dimension)


def random_flat_polynomial(rng, dimension, order, extra=2, low=-5, high=5,
                           denominator=4):
    '''Random polynomial whose jet of the given order vanishes at 0.

    Only monomials of degree order+1 .. order+extra occur; x_1^(order+1)
    always does, so a shift along e_1 never sees the zero function.
    '''
    terms = {}
    for d in range(order + 1, order + extra + 1):
        for alpha in enumerate_degree(dimension, d):
            if rng.randint(0, 3) == 0:
                continue
            terms[alpha] = rng.nonzero_rational(low, high, denominator)
    lead = MultiIndex.unit(dimension, 0, order + 1)
    terms[lead] = rng.nonzero_rational(low, high, denominator)
    return Polynomial(terms, dimension)


def grid_points(candidates, dimension, count):
    '''First ``count`` candidates per axis, as a product grid.'''
    axis = list(itertools.islice(candidates(), count))
    return itertools.product(axis, repeat=dimension)


def nonvanishing_point(polynomial, candidates):
    '''A point of a product grid where a nonzero polynomial is nonzero.

    A polynomial of degree d cannot vanish on a product of d + 1 distinct
    values per axis, so the search always succeeds.
    '''
    if polynomial.is_zero():
        return None
    size = max(polynomial.degree(), 0) + 1
    for point in grid_points(candidates, polynomial.dimension, size):
        if polynomial(point) != 0:
            return point
    raise AssertionError(f'{polynomial} vanishes on the whole grid')
