'''
Regime classification of operators C^m -> C^r.

For exact operators the three regimes reduce to one test: P maps C^m into
C^r iff its effective order J satisfies J <= m - r and every coefficient is
of class >= r. Which regime applies depends only on the sign of m - r:

- r < m: ``OrderBounded`` with bound m - r,
- r = m: ``MultiplicationOnly``,
- r > m: ``ForcedZero``.

On failure a witness is built. When J > m - r it is the profile
b = (x - x0)^m |x - x0|, exactly C^m, whose image is only C^(m-J) at x0.
When the order is fine but a coefficient is too rough, a monomial probe x^j
exposes it.
'''
import itertools
import logging
import math
from fractions import Fraction

from opprobe import settings
from opprobe.diffop import (
    coefficient_class,
    effective_order,
    restrict_to_line,
)
from opprobe.exceptions import (
    InconclusiveError,
    ParameterError,
    UndefinedDerivativeError,
)
from opprobe.jets import UNBOUNDED
from opprobe.multiindex import enumerate_degree, monomial_value
from opprobe.polynomial import Polynomial, nonvanishing_point
from opprobe.pwpoly import (
    PiecewisePoly,
    pw_apply_operator,
    smoothness_class_at,
    witness_cm,
)
from opprobe.scalars import dump, dump_class

logger = logging.getLogger(__name__)

ORDER_BOUNDED = 'OrderBounded'
MULTIPLICATION_ONLY = 'MultiplicationOnly'
FORCED_ZERO = 'ForcedZero'


def regime(m, r):
    if r < m:
        return ORDER_BOUNDED
    if r == m:
        return MULTIPLICATION_ONLY
    return FORCED_ZERO


def candidate_rationals():
    '''0, 1, -1, 2, -2, 1/2, -1/2, 3, -3, 1/3, ... by increasing height.'''
    yield Fraction(0)
    for height in itertools.count(1):
        for q in range(1, height + 1):
            for p in range(1, height + 1):
                if max(p, q) != height or math.gcd(p, q) != 1:
                    continue
                yield Fraction(p, q)
                yield Fraction(-p, q)


def candidates():
    return itertools.islice(candidate_rationals(), settings.WITNESS_CANDIDATES)


class Witness:
    '''Evidence that P does not map C^m into C^r.

    :param profile: the C^m input as a PiecewisePoly; a function of x in
        dimension 1, of <v, x - base_point> otherwise
    :param tuple base_point: where the input has its breakpoint
    :param tuple direction: line direction v
    :param output: P applied along the line, None when a derivative the
        operator needs does not exist
    :param output_class: class of the output at the breakpoint, -1 when
        undefined
    :param alpha: offending multi-index
    '''

    def __init__(self, profile, base_point, direction, output, output_class,
                 alpha):
        self.profile = profile
        self.base_point = tuple(base_point)
        self.direction = tuple(direction)
        self.output = output
        self.output_class = output_class
        self.alpha = tuple(alpha) if alpha is not None else None

    def __repr__(self):
        return (
            f'Witness({self.profile!r} at {self.base_point} along '
            f'{self.direction}, class {self.output_class})'
        )

    def to_json(self):
        return dict(
            profile=self.profile.to_json(),
            base_point=[dump(x) for x in self.base_point],
            direction=[dump(v) for v in self.direction],
            output=self.output.to_json() if self.output else None,
            output_class=dump_class(self.output_class),
            alpha=list(self.alpha) if self.alpha is not None else None,
        )


class ClassificationVerdict:
    def __init__(self, m, r, order, smoothness, passed, witness=None):
        self.m = m
        self.r = r
        self.regime = regime(m, r)
        self.bound = m - r if self.regime == ORDER_BOUNDED else None
        self.order = order
        self.smoothness = smoothness
        self.passed = passed
        self.witness = witness

    def __repr__(self):
        name = self.regime
        if self.bound is not None:
            name = f'{name}({self.bound})'
        status = 'pass' if self.passed else 'fail'
        return f'<{name} {status}>'

    def to_json(self):
        return dict(
            m=self.m,
            r=self.r,
            regime=self.regime,
            bound=self.bound,
            effective_order=self.order,
            coefficient_class=dump_class(self.smoothness),
            passed=self.passed,
            witness=self.witness.to_json() if self.witness else None,
        )


def check_exact(operator):
    if not operator.is_exact():
        raise InconclusiveError(
            'classification needs exact polynomial or piecewise coefficients'
        )


def classify(operator, m, r):
    '''Verdict on whether P maps C^m into C^r, with a witness on failure.'''
    if m < 0 or r < 0:
        raise ParameterError(f'classes must be >= 0, got m={m}, r={r}')
    check_exact(operator)
    order = effective_order(operator)
    smoothness = min(coefficient_class(operator).values(), default=UNBOUNDED)
    if order is None:
        passed = True
    else:
        passed = order <= m - r and smoothness >= r
    witness = None
    if not passed:
        witness = find_violation_witness(operator, m, r)
    verdict = ClassificationVerdict(m, r, order, smoothness, passed, witness)
    logger.debug(f'{operator!r} for C^{m} -> C^{r}: {verdict!r}')
    return verdict


def find_violation_witness(operator, m, r):
    '''Witness that P(C^m) is not inside C^r, None if none is found.'''
    check_exact(operator)
    order = effective_order(operator)
    if order is None:
        return None
    if order > m - r:
        if operator.dimension == 1:
            witness = _witness_on_axis(operator, m, order)
        else:
            witness = _witness_on_line(operator, m, order)
        if witness is not None and witness.output_class < r:
            return witness
    return _witness_from_monomials(operator, order, r)


def _apply_to_profile(operator, profile, x0):
    try:
        output = pw_apply_operator(operator, profile)
    except UndefinedDerivativeError:
        return None, -1
    return output, smoothness_class_at(output, x0)


def _coefficient_breakpoints(operator):
    return {
        b for c in operator.coefficients.values()
        if isinstance(c, PiecewisePoly)
        for b in c.breakpoints
    }


def _interior_points(f, index):
    '''Distinct rationals strictly inside interval ``index`` of f.'''
    breakpoints = f.breakpoints
    center = f.sample_point(index, breakpoints)
    width = 1
    if 0 < index < len(breakpoints):
        width = (breakpoints[index] - breakpoints[index - 1]) / 2
    for c in candidate_rationals():
        yield center + width * c / (1 + abs(c))


def _witness_point(top, breakpoints):
    '''Point off every breakpoint where the top coefficient is nonzero.'''
    if isinstance(top, PiecewisePoly):
        for index, piece in enumerate(top.pieces):
            if piece.is_zero():
                continue
            for x0 in _interior_points(top, index):
                if x0 not in breakpoints and piece((x0,)) != 0:
                    return x0
        return None
    for x0 in candidates():
        if x0 not in breakpoints and top((x0,)) != 0:
            return x0
    return None


def _witness_on_axis(operator, m, order):
    top = operator.coefficient((order,))
    x0 = _witness_point(top, _coefficient_breakpoints(operator))
    if x0 is None:
        logger.debug(f'no witness point among {settings.WITNESS_CANDIDATES}')
        return None
    logger.debug(f'placing C^{m} witness at {x0}')
    profile = witness_cm(m, x0)
    output, output_class = _apply_to_profile(operator, profile, x0)
    return Witness(profile, (x0,), (1,), output, output_class, (order,))


def directions(n, order):
    '''Coordinate axes first, then every nonzero vector in {0..order}^n.'''
    axes = [tuple(int(i == j) for j in range(n)) for i in range(n)]
    yield from axes
    for v in itertools.product(range(order + 1), repeat=n):
        if any(v) and v not in axes:
            yield v


def principal_symbol(operator, order, direction):
    '''sum_{|beta| = order} v^beta a_beta as a polynomial.'''
    symbol = Polynomial.zero(operator.dimension)
    for beta in enumerate_degree(operator.dimension, order):
        weight = monomial_value(beta, direction)
        if weight:
            symbol = symbol + operator.coefficient(beta).scale(weight)
    return symbol


def _witness_on_line(operator, m, order):
    for v in directions(operator.dimension, order):
        symbol = principal_symbol(operator, order, v)
        if symbol.is_zero():
            continue
        point = nonvanishing_point(symbol, candidate_rationals)
        logger.debug(f'placing C^{m} witness at {point} along {v}')
        line = restrict_to_line(operator, point, v)
        profile = witness_cm(m, 0)
        output, output_class = _apply_to_profile(line, profile, 0)
        alpha = next(
            beta for beta in enumerate_degree(operator.dimension, order)
            if monomial_value(beta, v)
            and operator.coefficient(beta)(point) != 0
        )
        return Witness(profile, point, v, output, output_class, alpha)
    return None


def _witness_from_monomials(operator, order, r):
    '''x^j for j <= order: the lowest rough coefficient shows in P(x^j).'''
    if operator.dimension != 1 or not _coefficient_breakpoints(operator):
        return None
    classes = coefficient_class(operator)
    for j in range(order + 1):
        profile = PiecewisePoly.from_polynomial(Polynomial.monomial((j,)))
        output = pw_apply_operator(operator, profile)
        for x0 in output.breakpoints:
            output_class = smoothness_class_at(output, x0)
            if output_class < r:
                alpha = min(
                    (a for a, c in classes.items() if c < r),
                    default=(j,),
                )
                return Witness(profile, (x0,), (1,), output, output_class,
                               alpha)
    return None


def diagram_consistency(m, n, k, operator):
    '''A C^m -> C^n operator must also be a C^m -> C^k operator, k < n.'''
    if not 0 <= k < n:
        raise ParameterError(f'need 0 <= k < n, got k={k}, n={n}')
    if not classify(operator, m, n).passed:
        raise ParameterError(f'{operator!r} does not map C^{m} into C^{n}')
    return classify(operator, m, k).passed
