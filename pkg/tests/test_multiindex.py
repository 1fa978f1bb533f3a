import itertools
import math

import pytest

from opprobe.exceptions import DimensionError
from opprobe.multiindex import (
    MultiIndex,
    binomial,
    degree,
    enumerate_degree,
    enumerate_upto,
    factorial,
    leq,
    monomial_derivative,
    monomial_value,
)


@pytest.mark.parametrize('alpha,expected', [
    ((0, 0), 0),
    ((2, 1), 3),
    ((0, 0, 5), 5),
])
def test_degree(alpha, expected):
    assert degree(alpha) == expected
    assert MultiIndex(alpha).degree() == expected


@pytest.mark.parametrize('alpha,expected', [
    ((0, 0), 1),
    ((2, 1), 2),
    ((3, 2), 12),
])
def test_factorial(alpha, expected):
    assert factorial(alpha) == expected


@pytest.mark.parametrize('beta,alpha,expected', [
    ((1, 0), (2, 1), True),
    ((0, 2), (2, 1), False),
    ((1, 1), (1, 1), True),
])
def test_leq(beta, alpha, expected):
    assert leq(beta, alpha) is expected


def test_leq_length_mismatch():
    with pytest.raises(DimensionError):
        leq((1,), (1, 2))


@pytest.mark.parametrize('alpha,beta,expected', [
    ((2, 0), (1, 0), (2, (1, 0))),
    ((2, 1), (2, 1), (2, (0, 0))),
    ((1, 0), (0, 1), (0, None)),
])
def test_monomial_derivative(alpha, beta, expected):
    assert monomial_derivative(alpha, beta) == expected


def test_monomial_derivative_length_mismatch():
    with pytest.raises(DimensionError):
        monomial_derivative((1, 0), (1,))


def test_negative_exponent():
    with pytest.raises(ValueError):
        MultiIndex((1, -1))


def test_addition_is_componentwise():
    assert MultiIndex((1, 2)) + MultiIndex((3, 0)) == (4, 2)
    assert MultiIndex((3, 2)) - MultiIndex((1, 2)) == (2, 0)


def test_unit():
    assert MultiIndex.unit(3, 1, 4) == (0, 4, 0)


def test_monomial_value():
    assert monomial_value((2, 1), (3, 5)) == 45


def test_binomial():
    assert binomial((3, 2), (1, 1)) == 6
    assert binomial((1, 0), (0, 1)) == 0


@pytest.mark.parametrize('n,m,expected', [
    (1, 2, [(0,), (1,), (2,)]),
    (3, 0, [(0, 0, 0)]),
])
def test_enumerate_upto(n, m, expected):
    assert list(enumerate_upto(n, m)) == expected


def test_enumerate_upto_count_and_order():
    for n, m in itertools.product(range(1, 5), range(0, 5)):
        indices = enumerate_upto(n, m)
        assert len(indices) == math.comb(n + m, n)
        assert len(set(indices)) == len(indices)
        keys = [(a.degree(), tuple(a)) for a in indices]
        assert keys == sorted(keys)


def test_enumerate_upto_plane():
    assert list(enumerate_upto(2, 2)) == [
        (0, 0), (0, 1), (1, 0), (0, 2), (1, 1), (2, 0),
    ]


def test_enumerate_upto_bad_dimension():
    with pytest.raises(DimensionError):
        enumerate_upto(0, 2)


def test_derivative_of_itself_is_factorial():
    for n in range(1, 5):
        for alpha in enumerate_upto(n, 6):
            coefficient, exponent = monomial_derivative(alpha, alpha)
            assert coefficient == factorial(alpha)
            assert exponent.degree() == 0


def test_derivative_vanishes_iff_not_leq():
    for alpha in enumerate_upto(2, 4):
        for beta in enumerate_upto(2, 4):
            coefficient, _ = monomial_derivative(alpha, beta)
            assert (coefficient == 0) == (not leq(beta, alpha))


def test_enumerate_degree():
    assert enumerate_degree(2, 2) == ((0, 2), (1, 1), (2, 0))


def test_json():
    alpha = MultiIndex((2, 1))
    assert alpha.to_json() == [2, 1]
    assert MultiIndex.from_json([2, 1]) == alpha
