'''
Multi-index arithmetic.

A multi-index alpha = (alpha_1, ..., alpha_n) names both the monomial x^alpha
and the mixed partial derivative d^alpha. Everything is exact integer
arithmetic.
'''
import functools
import math

from opprobe.exceptions import DimensionError


class MultiIndex(tuple):
    '''Immutable exponent vector.

    Serializes as a JSON array of integers, ``[2, 1]``.
    '''

    def __new__(cls, exponents=()):
        exponents = tuple(int(e) for e in exponents)
        if any(e < 0 for e in exponents):
            raise ValueError(f'negative exponent in {list(exponents)}')
        return super().__new__(cls, exponents)

    @classmethod
    def zero(cls, n):
        return cls((0,) * n)

    @classmethod
    def unit(cls, n, i, k=1):
        '''k * e_i in dimension n.'''
        return cls(k if j == i else 0 for j in range(n))

    @property
    def dimension(self):
        return len(self)

    def degree(self):
        return degree(self)

    def factorial(self):
        return factorial(self)

    def __add__(self, other):
        check_dimensions(self, other)
        return MultiIndex(a + b for a, b in zip(self, other))

    def __sub__(self, other):
        check_dimensions(self, other)
        return MultiIndex(a - b for a, b in zip(self, other))

    def __repr__(self):
        return f'MultiIndex({list(self)})'

    def to_json(self):
        return list(self)

    @classmethod
    def from_json(cls, data):
        return cls(data)


def check_dimensions(beta, alpha):
    if len(beta) != len(alpha):
        raise DimensionError(
            f'multi-index {list(beta)} has length {len(beta)}, '
            f'expected {len(alpha)}'
        )


def degree(alpha):
    return sum(alpha)


def factorial(alpha):
    return math.prod(math.factorial(a) for a in alpha)


def leq(beta, alpha):
    '''Componentwise order beta <= alpha.'''
    check_dimensions(beta, alpha)
    return all(b <= a for b, a in zip(beta, alpha))


def falling_factorial(a, b):
    '''a! / (a - b)! for 0 <= b <= a.'''
    return math.perm(a, b)


def binomial(alpha, beta):
    '''Multi-index binomial coefficient, zero unless beta <= alpha.'''
    if not leq(beta, alpha):
        return 0
    return math.prod(math.comb(a, b) for a, b in zip(alpha, beta))


def monomial_derivative(alpha, beta):
    '''d^beta x^alpha as (coefficient, exponent).

    The exponent is None when the derivative vanishes.
    '''
    if not leq(beta, alpha):
        return 0, None
    coefficient = math.prod(
        falling_factorial(a, b) for a, b in zip(alpha, beta)
    )
    return coefficient, MultiIndex(alpha) - MultiIndex(beta)


def monomial_value(alpha, point):
    '''x^alpha at point.'''
    check_dimensions(point, alpha)
    return math.prod(x ** a for x, a in zip(point, alpha))


def compositions(n, total):
    '''All exponent vectors of length n summing to total, lexicographic.'''
    if n == 1:
        yield (total,)
        return
    for head in range(total + 1):
        for tail in compositions(n - 1, total - head):
            yield (head,) + tail


@functools.lru_cache(maxsize=None)
def enumerate_upto(n, m):
    '''All alpha with |alpha| <= m in graded lexicographic order.

    The result is a tuple (cached and shared): degree blocks are strictly
    increasing and each block is sorted lexicographically.
    '''
    if n < 1:
        raise DimensionError(f'dimension must be >= 1, got {n}')
    if m < 0:
        raise ValueError(f'maximum degree must be >= 0, got {m}')
    return tuple(
        MultiIndex(exponents)
        for d in range(m + 1)
        for exponents in compositions(n, d)
    )


def enumerate_degree(n, d):
    '''All alpha with |alpha| == d, lexicographic.'''
    return tuple(MultiIndex(exponents) for exponents in compositions(n, d))
