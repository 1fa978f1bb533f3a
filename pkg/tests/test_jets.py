import math
from fractions import Fraction

import pytest

from opprobe.exceptions import AlignmentError, SmoothnessError
from opprobe.jets import (
    Analytic,
    Composition,
    FiniteDifferenceFn,
    Jet,
    derivative_at,
    dyadic_residuals,
    jet_add,
    jet_mul,
    jet_reciprocal,
    taylor_identity_error,
    taylor_polynomial,
    taylor_remainder_quadrature,
    vanishes_to_order,
)
from opprobe.multiindex import enumerate_upto
from opprobe.polynomial import Polynomial, random_polynomial
from opprobe.prng import SplitMix64

x = Polynomial.variable(1, 0)
X, Y = Polynomial.variable(2, 0), Polynomial.variable(2, 1)
exp = Analytic('exp', (1,))
sin = Analytic('sin', (1,))


def test_add_cancels():
    assert jet_add(
        (x ** 2).jet((0,), 2), (-x ** 2).jet((0,), 2),
    ).is_zero()


def test_add():
    jet = jet_add(x.jet((0,), 1), Polynomial.constant(1, 1).jet((0,), 1))
    assert jet.coeffs == {(0,): 1, (1,): 1}


def test_add_exp():
    jet = exp.jet((0,), 2) + Polynomial.constant(-1, 1).jet((0,), 2)
    assert jet[(0,)] == pytest.approx(0)
    assert jet[(1,)] == pytest.approx(1)
    assert jet[(2,)] == pytest.approx(0.5)


def test_add_misaligned():
    with pytest.raises(AlignmentError):
        jet_add(x.jet((0,), 1), x.jet((0,), 2))
    with pytest.raises(AlignmentError):
        jet_add(x.jet((0,), 1), x.jet((1,), 1))


def test_mul():
    assert jet_mul(x.jet((0,), 2), x.jet((0,), 2)).coeffs == {
        (0,): 0, (1,): 0, (2,): 1,
    }
    assert jet_mul((1 + x).jet((0,), 2), (1 - x).jet((0,), 2)).coeffs == {
        (0,): 1, (1,): 0, (2,): -1,
    }


def test_mul_exp():
    square = jet_mul(exp.jet((0,), 3), exp.jet((0,), 3))
    expected = [1, 2, 2, Fraction(4, 3)]
    for k, value in enumerate(expected):
        assert square[(k,)] == pytest.approx(float(value))


def test_leibniz():
    rng = SplitMix64(7)
    for n in (1, 2, 3):
        for _ in range(5):
            p = random_polynomial(rng, n, 4)
            q = random_polynomial(rng, n, 4)
            a = tuple(rng.rational() for _ in range(n))
            assert jet_mul(p.jet(a, 4), q.jet(a, 4)) == (p * q).jet(a, 4)


@pytest.mark.parametrize('f,alpha,point,expected', [
    (x ** 3, (3,), (0,), 6),
    (X ** 2 * Y, (1, 1), (1, 1), 2),
    (exp, (2,), (0,), 1),
])
def test_derivative_at(f, alpha, point, expected):
    assert derivative_at(f, alpha, point) == pytest.approx(expected)


def test_derivative_beyond_class():
    f = FiniteDifferenceFn(lambda p: abs(p[0]) ** 3, 1, smoothness=2)
    with pytest.raises(SmoothnessError):
        derivative_at(f, (3,), (1,))


def test_taylor_polynomial_fixed_point():
    assert taylor_polynomial(x ** 3, (0,), 3) == x ** 3


def test_taylor_polynomial_exp():
    assert taylor_polynomial(exp, (0,), 1) == 1 + x


def test_taylor_polynomial_recentered():
    f = X ** 2 * Y
    q = taylor_polynomial(f, (1, 1), 2)
    assert q.degree() == 2
    for alpha in enumerate_upto(2, 2):
        assert derivative_at(q, alpha, (1, 1)) == derivative_at(
            f, alpha, (1, 1),
        )


def test_taylor_polynomial_reproduces_jets():
    f = Analytic('sin', (1, 0.5), 0.25)
    a = (0.1, -0.2)
    q = taylor_polynomial(f, a, 3)
    for alpha in enumerate_upto(2, 3):
        assert derivative_at(q, alpha, a) == pytest.approx(
            derivative_at(f, alpha, a), abs=1e-12,
        )


def test_remainder_exp():
    remainder = taylor_remainder_quadrature(exp, (0,), (2,), (1,))
    assert remainder == pytest.approx(math.e - 2, abs=1e-10)


def test_remainder_cubic():
    remainder = taylor_remainder_quadrature(x ** 3, (0,), (2,), (1,))
    assert remainder == pytest.approx(1, abs=1e-12)
    assert (x ** 3)((1,)) == taylor_polynomial(x ** 3, (0,), 1)((1,)) + 1


def test_remainder_of_exact_expansion():
    f = 3 * x ** 2 - x + 2
    assert taylor_remainder_quadrature(f, (0,), (3,), (2,)) == (
        pytest.approx(0, abs=1e-12)
    )


@pytest.mark.parametrize('k', [1, 2, 3])
@pytest.mark.parametrize('f,a,point', [
    (exp, (0,), (1,)),
    (sin, (0.3,), (-0.4,)),
    (Analytic('exp', (0.5, -1)), (0, 0), (0.7, 0.2)),
    (Analytic('sin', (1, 2)), (0.1, 0.2), (-0.3, 0.5)),
    (Analytic('cos', (2,), 0.5), (0.1,), (0.6,)),
    (Analytic('cos', (-1, 0.5)), (0, 0), (0.4, -0.8)),
])
def test_taylor_identity(f, a, point, k):
    assert taylor_identity_error(f, a, k, point) <= 1e-8


@pytest.mark.parametrize('k', [1, 2, 3])
def test_taylor_identity_polynomials(k):
    rng = SplitMix64(k)
    for _ in range(10):
        f = random_polynomial(rng, 2, 5)
        a = (rng.rational(-1, 1), rng.rational(-1, 1))
        point = (rng.rational(-1, 1), rng.rational(-1, 1))
        assert taylor_identity_error(f, a, k, point) <= 1e-8


def test_residual_decreases():
    ratios = dyadic_residuals(exp, (0,), 2, (1,))
    assert len(ratios) == 4
    assert all(b < a for a, b in zip(ratios, ratios[1:]))


@pytest.mark.parametrize('f,point,m,expected', [
    (x ** 3, (0,), 2, True),
    (x ** 3, (0,), 3, False),
    (X ** 2 * Y ** 2, (0, 0), 3, True),
])
def test_vanishes_to_order(f, point, m, expected):
    assert vanishes_to_order(f, point, m) is expected


def test_reciprocal_is_exact():
    jet = jet_reciprocal((1 + x).jet((0,), 3))
    assert jet.coeffs == {(0,): 1, (1,): -1, (2,): 1, (3,): -1}
    assert all(isinstance(v, Fraction) for v in jet.coeffs.values())


def test_composition_matches_closed_form():
    f = Composition('exp', 2 * x + 1)
    g = Analytic('exp', (2,), 1)
    a = (Fraction(1, 3),)
    for k in range(4):
        assert f.jet(a, 3)[(k,)] == pytest.approx(g.jet(a, 3)[(k,)])


def test_finite_differences():
    f = FiniteDifferenceFn(lambda p: p[0] ** 3, 1, smoothness=3)
    assert derivative_at(f, (2,), (1.0,)) == pytest.approx(6, abs=1e-5)


def test_sum_of_functions():
    f = exp + x
    assert sum([exp, x]).jet((0,), 1) == f.jet((0,), 1)
    assert f((0,)) == pytest.approx(1)


def test_json():
    jet = (x ** 2 + 1).jet((Fraction(1, 2),), 2)
    data = jet.to_json()
    assert data['base'] == ['1/2']
    assert Jet.from_json(data) == jet
