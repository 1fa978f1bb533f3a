import math
from fractions import Fraction

import pytest

from opprobe.diffop import (
    DiffOperator,
    SampledFunction,
    apply,
    apply_polynomial,
    coefficient_class,
    effective_order,
    linspace,
    make_grid,
    minimum_class,
    operator_equal,
    random_operator,
    restrict_to_line,
)
from opprobe.exceptions import DomainError, ParameterError, SmoothnessError
from opprobe.jets import Analytic, FiniteDifferenceFn
from opprobe.polynomial import Polynomial, random_polynomial
from opprobe.prng import SplitMix64
from opprobe.pwpoly import PiecewisePoly, witness_cm

x = Polynomial.variable(1, 0)
X, Y = Polynomial.variable(2, 0), Polynomial.variable(2, 1)
D = DiffOperator.from_terms([((1,), 1)])
SAMPLE = DiffOperator.from_terms([((0,), 3), ((2,), x)])


@pytest.mark.parametrize('P,f,point,expected', [
    (D, x ** 2, (3,), 6),
    (SAMPLE, x ** 3, (2,), 48),
    (DiffOperator.zero(1), x ** 5 + 1, (7,), 0),
    (DiffOperator.zero(1), Analytic('exp', (1,)), (0,), 0),
])
def test_apply(P, f, point, expected):
    assert apply(P, f, point) == expected


def test_apply_needs_smoothness():
    f = FiniteDifferenceFn(lambda p: abs(p[0]) ** 1.5, 1, smoothness=1)
    with pytest.raises(SmoothnessError):
        apply(SAMPLE, f, (1,))


def test_apply_outside_samples():
    sampled = SampledFunction(1, {(0,): 1.0, (1,): 2.0})
    P = DiffOperator(1, {(0,): sampled})
    assert apply(P, x + 1, (1,)) == 4
    with pytest.raises(DomainError):
        apply(P, x, (Fraction(1, 2),))


@pytest.mark.parametrize('P,expected', [
    (DiffOperator.multiplication(Polynomial.constant(5, 1)), 0),
    (SAMPLE, 2),
    (DiffOperator.from_terms([((1,), 0), ((0,), x - x)]), None),
])
def test_effective_order(P, expected):
    assert effective_order(P) == expected


def test_effective_order_sampled():
    tiny = SampledFunction(1, {(0,): 1e-12, (1,): -1e-12})
    P = DiffOperator(1, {(2,): tiny, (0,): SampledFunction(1, {(0,): 1})})
    assert effective_order(P) == 0
    assert effective_order(P, tolerance=0) == 2


@pytest.mark.parametrize('coefficient,expected', [
    (x ** 2 + 1, math.inf),
    (witness_cm(0, 0), 0),
    (witness_cm(2, 0), 2),
])
def test_coefficient_class(coefficient, expected):
    P = DiffOperator.multiplication(coefficient)
    assert coefficient_class(P) == {(0,): expected}
    assert minimum_class(P) == expected


def test_operator_equal():
    assert operator_equal(SAMPLE, SAMPLE)
    twice = DiffOperator.from_terms([((1,), 2)])
    assert not operator_equal(D, twice, grid=[(1,)], tolerance=1e-9)
    assert not operator_equal(D, twice)


def test_operator_equal_mixed_kinds():
    pw = DiffOperator.multiplication(PiecewisePoly.from_polynomial(x))
    assert operator_equal(pw, DiffOperator.multiplication(x))


def test_operator_equal_sampled():
    grid = [(0,), (1,), (2,)]
    sampled = DiffOperator(1, {
        (0,): SampledFunction(1, {p: 3 for p in grid}),
        (2,): SampledFunction(1, {p: p[0] + 1e-12 for p in grid}),
    })
    assert operator_equal(sampled, SAMPLE, grid, 1e-9)
    assert not operator_equal(sampled, SAMPLE, grid, 1e-15)
    with pytest.raises(ParameterError):
        operator_equal(sampled, SAMPLE)


def test_linearity():
    rng = SplitMix64(11)
    for n in (1, 2, 3):
        P = random_operator(rng, n, 2)
        f = random_polynomial(rng, n, 3)
        g = random_polynomial(rng, n, 3)
        c = rng.nonzero_rational()
        point = tuple(rng.rational() for _ in range(n))
        assert apply(P, f + g, point) == (
            apply(P, f, point) + apply(P, g, point)
        )
        assert apply(P, f * c, point) == c * apply(P, f, point)


def test_locality():
    rng = SplitMix64(12)
    P = random_operator(rng, 2, 2)
    point = (Fraction(1, 2), -1)
    f = random_polynomial(rng, 2, 4)
    flat = ((X - point[0]) ** 2 * (Y - point[1])) * random_polynomial(
        rng, 2, 1,
    )
    assert apply(P, f, point) == apply(P, f + flat, point)


def test_multiplication_only():
    a = X * Y + 2
    P = DiffOperator.multiplication(a)
    f = X ** 3 - Y
    point = (2, 3)
    assert apply(P, f, point) == a(point) * f(point)


def test_apply_polynomial():
    assert apply_polynomial(SAMPLE, x ** 3) == 3 * x ** 3 + 6 * x ** 2


def test_restrict_to_line_mixed_derivative():
    P = DiffOperator.from_terms([((1, 1), 1)])
    Q = restrict_to_line(P, (0, 0), (1, 1))
    assert Q == DiffOperator.from_terms([((2,), 1)])


def test_restrict_to_line_identity():
    rng = SplitMix64(13)
    s = Polynomial.variable(1, 0)
    w = s ** 4 - 2 * s
    for _ in range(5):
        P = random_operator(rng, 2, 2)
        p = (rng.rational(), rng.rational())
        v = (1, 2)
        Q = restrict_to_line(P, p, v)
        line = (X - p[0]) * v[0] + (Y - p[1]) * v[1]
        b = line ** 4 - 2 * line
        Pb, Qw = apply_polynomial(P, b), apply_polynomial(Q, w)
        for t in (0, 1, Fraction(-1, 3)):
            point = (p[0] + t * Fraction(1, 5), p[1] + t * Fraction(2, 5))
            assert Pb(point) == Qw((t,))


def test_nominal_order():
    with pytest.raises(ParameterError):
        DiffOperator.from_terms([((2,), 1)], order=1)
    assert DiffOperator.zero(2, order=3).order == 3


def test_from_terms_sums_repeats():
    P = DiffOperator.from_terms([((1,), 1), ((1,), x), ((0,), 2)])
    assert P.coefficient((1,)) == 1 + x
    assert P.coefficient((3,)).is_zero()


def test_json():
    P = DiffOperator.from_terms([
        ((0,), witness_cm(1, 0)),
        ((2,), Fraction(1, 2) * x),
    ])
    data = P.to_json()
    assert [c['kind'] for c in data['coefficients']] == ['pw', 'poly']
    assert DiffOperator.from_json(data) == P


def test_json_scalar_shorthand():
    P = DiffOperator.from_json(dict(dimension=1, coefficients=[
        dict(alpha=[0], data='3'),
        dict(alpha=[2], kind='poly', data=[dict(alpha=[1], value='1')]),
    ]))
    assert P == SAMPLE


def test_linspace():
    assert linspace(-2, 2, 5) == [-2, -1, 0, 1, 2]
    assert linspace(0, 1, 1) == [Fraction(1, 2)]
    with pytest.raises(ParameterError):
        linspace(0, 1, 0)


def test_make_grid():
    grid = make_grid([0, 0], [1, 2], 3)
    assert len(grid) == 9
    assert grid[0] == (0, 0)
    assert grid[-1] == (1, 2)
