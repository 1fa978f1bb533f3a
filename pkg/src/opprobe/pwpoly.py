'''
Exact one-dimensional piecewise polynomials.

Breakpoints are rationals, pieces are rational polynomials; the two unbounded
end intervals carry pieces too, so there is always one more piece than
breakpoints. Continuity is never assumed: the smoothness class at a
breakpoint is computed from the one-sided Taylor expansions.
'''
import bisect
import logging
from fractions import Fraction

from opprobe.exceptions import (
    DimensionError,
    InconclusiveError,
    UndefinedDerivativeError,
)
from opprobe.jets import UNBOUNDED
from opprobe.polynomial import Polynomial
from opprobe.scalars import dump, rational

logger = logging.getLogger(__name__)


def _as_piece(piece):
    if isinstance(piece, Polynomial):
        if piece.dimension != 1:
            raise DimensionError(
                f'piecewise polynomials are 1-D, got dimension '
                f'{piece.dimension}'
            )
        return piece
    return Polynomial.univariate([rational(c) for c in piece])


class PiecewisePoly:
    '''
    :param list breakpoints: strictly increasing rationals
    :param list pieces: one polynomial (or coefficient list) per interval
    '''

    def __init__(self, breakpoints, pieces):
        self.breakpoints = [rational(b) for b in breakpoints]
        self.pieces = [_as_piece(p) for p in pieces]
        if len(self.pieces) != len(self.breakpoints) + 1:
            raise ValueError(
                f'{len(self.breakpoints)} breakpoints need '
                f'{len(self.breakpoints) + 1} pieces, got {len(self.pieces)}'
            )
        for a, b in zip(self.breakpoints, self.breakpoints[1:]):
            if not a < b:
                raise ValueError(f'breakpoints not increasing at {a}, {b}')

    dimension = 1

    @classmethod
    def from_polynomial(cls, polynomial):
        return cls([], [polynomial])

    @classmethod
    def zero(cls, breakpoints=()):
        return cls(breakpoints, [Polynomial.zero(1)] * (len(breakpoints) + 1))

    @property
    def smoothness(self):
        return smoothness_class(self)

    def piece_index(self, x):
        '''Interval containing x; a breakpoint belongs to its right side.'''
        return bisect.bisect_right(self.breakpoints, x)

    def __call__(self, x):
        if isinstance(x, (tuple, list)):
            if len(x) != 1:
                raise DimensionError(f'{x} is not a 1-D point')
            x = x[0]
        return self.pieces[self.piece_index(x)]((x,))

    def is_zero(self):
        return all(p.is_zero() for p in self.pieces)

    def degree(self):
        return max(p.degree() for p in self.pieces)

    def derivative(self, order=1):
        return PiecewisePoly(
            self.breakpoints,
            [p.derivative((order,)) for p in self.pieces],
        )

    def shift(self, offset):
        '''x -> f(x + offset).'''
        offset = rational(offset)
        return PiecewisePoly(
            [b - offset for b in self.breakpoints],
            [p.shift((offset,)) for p in self.pieces],
        )

    def sample_point(self, index, breakpoints):
        '''A point strictly inside interval ``index`` of ``breakpoints``.'''
        if not breakpoints:
            return Fraction(0)
        if index == 0:
            return breakpoints[0] - 1
        if index == len(breakpoints):
            return breakpoints[-1] + 1
        return (breakpoints[index - 1] + breakpoints[index]) / 2

    def refine(self, breakpoints):
        '''Same function over a superset of breakpoints.'''
        merged = set(self.breakpoints) | set(map(rational, breakpoints))
        merged = sorted(merged)
        pieces = [
            self.pieces[self.piece_index(self.sample_point(i, merged))]
            for i in range(len(merged) + 1)
        ]
        return PiecewisePoly(merged, pieces)

    def _aligned(self, other):
        if isinstance(other, Polynomial):
            other = PiecewisePoly.from_polynomial(other)
        elif not isinstance(other, PiecewisePoly):
            other = PiecewisePoly.from_polynomial(
                Polynomial.constant(rational(other), 1),
            )
        breakpoints = set(self.breakpoints) | set(other.breakpoints)
        return self.refine(breakpoints), other.refine(breakpoints)

    def __add__(self, other):
        left, right = self._aligned(other)
        return PiecewisePoly(left.breakpoints, [
            a + b for a, b in zip(left.pieces, right.pieces)
        ])

    __radd__ = __add__

    def __neg__(self):
        return self.scale(-1)

    def __sub__(self, other):
        left, right = self._aligned(other)
        return PiecewisePoly(left.breakpoints, [
            a - b for a, b in zip(left.pieces, right.pieces)
        ])

    def __mul__(self, other):
        if not isinstance(other, (PiecewisePoly, Polynomial)):
            return self.scale(rational(other))
        left, right = self._aligned(other)
        return PiecewisePoly(left.breakpoints, [
            a * b for a, b in zip(left.pieces, right.pieces)
        ])

    __rmul__ = __mul__

    def scale(self, factor):
        return PiecewisePoly(
            self.breakpoints, [p.scale(factor) for p in self.pieces],
        )

    def __eq__(self, other):
        if not isinstance(other, PiecewisePoly):
            return NotImplemented
        return (
            self.breakpoints == other.breakpoints
            and self.pieces == other.pieces
        )

    __hash__ = None

    def __repr__(self):
        parts = [repr(self.pieces[0])]
        for b, p in zip(self.breakpoints, self.pieces[1:]):
            parts.append(f'| {b} |')
            parts.append(repr(p))
        return f'PiecewisePoly({" ".join(parts)})'

    def to_json(self):
        return dict(
            breakpoints=[dump(b) for b in self.breakpoints],
            pieces=[
                [dump(c) for c in p.univariate_coefficients()]
                for p in self.pieces
            ],
        )

    @classmethod
    def from_json(cls, data):
        return cls(data['breakpoints'], data['pieces'])


def pw_derivative(f):
    return f.derivative()


def vanishing_order(polynomial, x0):
    '''Multiplicity of x0 as a root, None for the zero polynomial.'''
    centered = polynomial.shift((x0,))
    if centered.is_zero():
        return None
    return min(alpha[0] for alpha in centered.terms)


def smoothness_class_at(f, x0):
    '''Largest k such that the one-sided derivatives of orders 0..k agree.

    UNBOUNDED away from breakpoints or when both pieces coincide; -1 for a
    jump discontinuity.
    '''
    x0 = rational(x0)
    if x0 not in f.breakpoints:
        return UNBOUNDED
    i = f.breakpoints.index(x0)
    order = vanishing_order(f.pieces[i + 1] - f.pieces[i], x0)
    if order is None:
        return UNBOUNDED
    return order - 1


def smoothness_class(f):
    '''Class of f on the whole line: the minimum over its breakpoints.'''
    return min(
        (smoothness_class_at(f, b) for b in f.breakpoints),
        default=UNBOUNDED,
    )


def witness_cm(m, x0=0):
    '''(x - x0)^m |x - x0|: exactly C^m at x0 and not C^(m+1).'''
    if m < 0:
        raise ValueError(f'witness order must be >= 0, got {m}')
    x0 = rational(x0)
    power = Polynomial.univariate([-x0, 1]) ** (m + 1)
    return PiecewisePoly([x0], [-power, power])


def as_piecewise(coefficient):
    if isinstance(coefficient, PiecewisePoly):
        return coefficient
    if isinstance(coefficient, Polynomial):
        if not coefficient.is_exact():
            raise InconclusiveError(
                f'coefficient {coefficient} is not exact'
            )
        return PiecewisePoly.from_polynomial(coefficient)
    raise InconclusiveError(
        f'{type(coefficient).__name__} coefficients have no exact '
        f'piecewise form'
    )


def pw_apply_operator(operator, f):
    '''sum_j a_j(x) f^(j)(x) computed exactly, piece by piece.

    Raises UndefinedDerivativeError when a derivative order above zero
    exceeds the class of f at one of its breakpoints: that derivative does
    not exist there.
    '''
    if operator.dimension != 1:
        raise DimensionError(
            f'piecewise application needs a 1-D operator, got dimension '
            f'{operator.dimension}'
        )
    classes = {b: smoothness_class_at(f, b) for b in f.breakpoints}
    result = PiecewisePoly.zero(f.breakpoints)
    for alpha, coefficient in operator.coefficients.items():
        order = alpha[0]
        for breakpoint, smoothness in classes.items():
            if order > max(smoothness, 0):
                logger.debug(
                    f'd^{order} undefined at {breakpoint} (C^{smoothness})'
                )
                raise UndefinedDerivativeError(breakpoint, order, smoothness)
        result = result + as_piecewise(coefficient) * f.derivative(order)
    return result
