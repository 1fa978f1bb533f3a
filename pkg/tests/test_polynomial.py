from fractions import Fraction

import pytest

from opprobe.exceptions import DimensionError
from opprobe.jets import vanishes_to_order
from opprobe.polynomial import (
    Polynomial,
    nonvanishing_point,
    random_flat_polynomial,
    random_polynomial,
    x_power,
)
from opprobe.prng import SplitMix64

x = Polynomial.variable(1, 0)
X, Y = Polynomial.variable(2, 0), Polynomial.variable(2, 1)


def integers():
    value = 0
    while True:
        yield value
        value += 1


def test_zero_coefficients_are_dropped():
    p = x ** 2 - x ** 2 + 3
    assert p.terms == {(0,): 3}
    assert p.degree() == 0
    assert Polynomial.zero(2).degree() == -1


def test_evaluate_exact():
    p = X ** 2 * Y - Fraction(1, 2) * Y
    assert p((Fraction(1, 3), 2)) == Fraction(2, 9) - 1


def test_derivative():
    p = X ** 3 * Y ** 2 + 4 * X
    assert p.derivative((1, 0)) == 3 * X ** 2 * Y ** 2 + 4
    assert p.derivative((2, 2)) == 12 * X
    assert p.derivative((0, 3)).is_zero()


def test_shift():
    p = x ** 2 + 1
    assert p.shift((1,)) == x ** 2 + 2 * x + 2


def test_restrict():
    p = X * Y
    line = p.restrict((1, 0), (1, 2))
    s = Polynomial.variable(1, 0)
    assert line == (1 + s) * (2 * s)


def test_jet_at_rational_point():
    jet = (x ** 3).jet((Fraction(1, 2),), 3)
    assert jet[(0,)] == Fraction(1, 8)
    assert jet[(1,)] == Fraction(3, 4)
    assert jet[(2,)] == Fraction(3, 2)
    assert jet[(3,)] == 1


def test_from_jet_inverts_jet():
    p = X ** 2 * Y - 3 * Y + Fraction(1, 5)
    a = (Fraction(2, 3), -1)
    assert Polynomial.from_jet(p.jet(a, 3)) == p


def test_dimension_mismatch():
    with pytest.raises(DimensionError):
        X + x


def test_univariate():
    p = Polynomial.univariate([1, 0, 3])
    assert p == 1 + 3 * x ** 2
    assert p.univariate_coefficients() == [1, 0, 3]


def test_repr():
    assert repr(3 * X ** 2 * Y + 1) == '1 + 3*x0^2*x1'
    assert repr(x ** 2) == 'x^2'


def test_json():
    p = Fraction(1, 2) * X * Y + 2
    data = p.to_json()
    assert data == [
        dict(alpha=[0, 0], value='2'),
        dict(alpha=[1, 1], value='1/2'),
    ]
    assert Polynomial.from_json(data, 2) == p


def test_random_polynomial_degree():
    rng = SplitMix64(1)
    for _ in range(20):
        p = random_polynomial(rng, 3, 4)
        assert p.degree() <= 4
        assert p.is_exact()


def test_random_flat_polynomial():
    rng = SplitMix64(2)
    for m in range(4):
        phi = random_flat_polynomial(rng, 2, m)
        assert vanishes_to_order(phi, (0, 0), m)
        assert phi.coefficient((m + 1, 0)) != 0


def test_nonvanishing_point():
    p = (X - 1) * (Y - 2) * X
    point = nonvanishing_point(p, integers)
    assert p(point) != 0
    assert nonvanishing_point(Polynomial.zero(2), integers) is None


def test_x_power():
    assert x_power((2, 1)) == X ** 2 * Y
