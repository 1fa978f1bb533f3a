import math
from fractions import Fraction

import pytest

from opprobe.diffop import DiffOperator
from opprobe.exceptions import UndefinedDerivativeError
from opprobe.polynomial import Polynomial, random_polynomial
from opprobe.prng import SplitMix64
from opprobe.pwpoly import (
    PiecewisePoly,
    pw_apply_operator,
    pw_derivative,
    smoothness_class,
    smoothness_class_at,
    witness_cm,
)

x = Polynomial.variable(1, 0)
ABS = PiecewisePoly([0], [[0, -1], [0, 1]])
CUBIC_ABS = PiecewisePoly([0], [[0, 0, 0, -1], [0, 0, 0, 1]])
D = DiffOperator.from_terms([((1,), 1)])


def test_piece_count():
    with pytest.raises(ValueError):
        PiecewisePoly([0, 1], [[1]])
    with pytest.raises(ValueError):
        PiecewisePoly([1, 0], [[1], [2], [3]])


def test_evaluate_uses_right_piece_at_breakpoint():
    step = PiecewisePoly([0], [[0], [1]])
    assert step(0) == 1
    assert step(Fraction(-1, 2)) == 0
    assert ABS((Fraction(-3),)) == 3


@pytest.mark.parametrize('f,expected', [
    (CUBIC_ABS, PiecewisePoly([0], [[0, 0, -3], [0, 0, 3]])),
    (PiecewisePoly.from_polynomial(Polynomial.constant(5, 1)),
     PiecewisePoly([], [[]])),
    (ABS, PiecewisePoly([0], [[-1], [1]])),
])
def test_pw_derivative(f, expected):
    assert pw_derivative(f) == expected


@pytest.mark.parametrize('f,x0,expected', [
    (CUBIC_ABS, 0, 2),
    (ABS, 0, 0),
    (PiecewisePoly.from_polynomial(x ** 3), 0, math.inf),
    (PiecewisePoly([0], [[0], [1]]), 0, -1),
    (ABS, 1, math.inf),
    (PiecewisePoly([0], [[1, 2], [1, 2]]), 0, math.inf),
])
def test_smoothness_class_at(f, x0, expected):
    assert smoothness_class_at(f, x0) == expected


@pytest.mark.parametrize('m,x0', [
    (0, 0), (2, 0), (1, 1), (3, Fraction(-2, 3)),
])
def test_witness_examples(m, x0):
    b = witness_cm(m, x0)
    assert b.breakpoints == [x0]
    assert smoothness_class_at(b, x0) == m
    assert b(x0 + 1) == 1
    assert b(x0 - 1) == (-1) ** m * 1


def test_witness_is_x_abs():
    assert witness_cm(0, 0) == ABS
    assert witness_cm(2, 0) == CUBIC_ABS


def test_witness_class_exhaustive():
    for m in range(9):
        for x0 in (0, 1, Fraction(1, 2), -3):
            assert smoothness_class_at(witness_cm(m, x0), x0) == m


def test_derivative_lowers_class_by_one():
    for m in range(1, 8):
        b = witness_cm(m, 1)
        assert smoothness_class_at(pw_derivative(b), 1) == m - 1


def test_apply_derivative():
    assert pw_apply_operator(D, CUBIC_ABS) == PiecewisePoly(
        [0], [[0, 0, -3], [0, 0, 3]],
    )


def test_apply_multiplication():
    result = pw_apply_operator(DiffOperator.multiplication(x), ABS)
    assert result == PiecewisePoly([0], [[0, 0, -1], [0, 0, 1]])
    assert smoothness_class_at(result, 0) == 1


def test_apply_undefined_derivative():
    with pytest.raises(UndefinedDerivativeError) as e:
        pw_apply_operator(DiffOperator.from_terms([((2,), 1)]), ABS)
    assert e.value.breakpoint == 0
    assert e.value.order == 2
    assert e.value.smoothness == 0


def test_apply_zero_operator():
    assert pw_apply_operator(DiffOperator.zero(1), CUBIC_ABS).is_zero()


def test_apply_piecewise_coefficient():
    P = DiffOperator.multiplication(ABS)
    result = pw_apply_operator(P, witness_cm(1, 1))
    assert result.breakpoints == [0, 1]
    assert smoothness_class(result) == 0


def test_multiplication_keeps_class():
    rng = SplitMix64(3)
    for m in range(5):
        b = witness_cm(m, 0)
        for _ in range(5):
            p = random_polynomial(rng, 1, 3)
            product = b * PiecewisePoly.from_polynomial(p)
            assert smoothness_class_at(product, 0) >= m


def test_arithmetic_merges_breakpoints():
    f = PiecewisePoly([0], [[0], [1]])
    g = PiecewisePoly([1], [[0], [2]])
    h = f + g
    assert h.breakpoints == [0, 1]
    assert [h(t) for t in (-1, Fraction(1, 2), 2)] == [0, 1, 3]
    assert (f - f).is_zero()
    assert (f * 3)(5) == 3


def test_shift():
    b = witness_cm(1, 0).shift(2)
    assert b.breakpoints == [-2]
    assert smoothness_class_at(b, -2) == 1


def test_json():
    data = witness_cm(1, Fraction(1, 2)).to_json()
    assert data['breakpoints'] == ['1/2']
    assert data['pieces'][1] == ['1/4', '-1', '1']
    assert PiecewisePoly.from_json(data) == witness_cm(1, Fraction(1, 2))
