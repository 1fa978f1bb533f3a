'''
Partitions of unity on the sphere, cone cutoffs and locality checks.

The sphere S^(n-1) is covered by two caps around the poles +e_n (north) and
-e_n (south). With polar angle theta measured from the north pole and a
half-angle h in (pi/4, pi/2)::

    U_north = {theta < pi - h}        U_south = {theta > h}

The north bump g_N = rho(theta / (pi - h)) vanishes exactly on the closed
cone theta >= pi - h around the south pole, and symmetrically for the
south bump; rho(t) = exp(-1 / (1 - t^2)) on |t| < 1 and 0 elsewhere.
Normalizing the pair gives the partition phi_N + phi_S = 1.
'''
import logging
import math
from fractions import Fraction

import numpy

from opprobe import settings
from opprobe.exceptions import ApexError, CoverageError, FlatnessError
from opprobe.jets import (
    FiniteDifferenceFn,
    Jet,
    Product,
    SmoothFn,
    central_difference,
    jet_exp,
    jet_mul,
    jet_reciprocal,
    vanishes_to_order,
)
from opprobe.multiindex import MultiIndex
from opprobe.polynomial import Polynomial, random_flat_polynomial, x_power
from opprobe.prng import SplitMix64
from opprobe.scalars import is_zero, rational

logger = logging.getLogger(__name__)

NORTH, SOUTH = 0, 1
CAPS = ('north', 'south')


def mollifier(t):
    '''exp(-1 / (1 - t^2)) inside (-1, 1), exactly 0 outside.'''
    t = float(t)
    if abs(t) >= 1:
        return 0.0
    return math.exp(-1 / (1 - t * t))


def polar_angle(point):
    '''Angle between point and +e_n, homogeneous of degree 0.

    cos^2 is formed from exact rationals so that rescaling by a rational
    factor returns the same float.
    '''
    coordinates = [rational(x) for x in point]
    norm2 = sum(x * x for x in coordinates)
    if norm2 == 0:
        raise ApexError('polar angle of the origin')
    last = coordinates[-1]
    cos2 = last * last / norm2
    cosine = math.sqrt(cos2)
    if last < 0:
        cosine = -cosine
    return math.acos(max(-1.0, min(1.0, cosine)))


class SpherePartition:
    '''Two-cap partition of unity on S^(n-1).

    :param int dimension: ambient dimension n
    :param float half_angle: h in (pi/4, pi/2)
    '''

    def __init__(self, dimension, half_angle):
        if dimension < 1:
            raise ValueError(f'dimension must be >= 1, got {dimension}')
        if not math.pi / 4 < half_angle < math.pi / 2:
            raise CoverageError(
                f'half-angle {half_angle} outside (pi/4, pi/2): the caps '
                f'do not cover the sphere'
            )
        self.dimension = dimension
        self.half_angle = half_angle
        self.reach = math.pi - half_angle

    def bumps(self, point):
        theta = polar_angle(point)
        return (
            mollifier(theta / self.reach),
            mollifier((math.pi - theta) / self.reach),
        )

    def phi(self, index, point):
        '''phi_index at point / |point|.'''
        bumps = self.bumps(point)
        return bumps[index] / (bumps[NORTH] + bumps[SOUTH])

    def __call__(self, point):
        return tuple(self.phi(i, point) for i in (NORTH, SOUTH))

    def in_cap(self, index, point):
        '''Membership in the open cap U_index.'''
        theta = polar_angle(point)
        if index == NORTH:
            return theta < self.reach
        return theta > self.half_angle

    def __repr__(self):
        return (
            f'SpherePartition(n={self.dimension}, '
            f'half_angle={self.half_angle})'
        )


def build_partition(n, half_angle=3 * math.pi / 8):
    return SpherePartition(n, half_angle)


class ConeCutoff(SmoothFn):
    '''psi(x) = phi_i(x / |x|), defined away from the origin.

    Jets come from central differences, the declared class bounds the
    orders that may be requested.
    '''

    def __init__(self, partition, index, smoothness=4, step=None):
        self.partition = partition
        self.index = index
        self.dimension = partition.dimension
        self.smoothness = smoothness
        self.differences = FiniteDifferenceFn(
            self.value, self.dimension, smoothness, step,
            name=f'psi_{CAPS[index]}',
        )

    def value(self, point):
        return self.partition.phi(self.index, point)

    def __call__(self, point):
        return self.value(point)

    def jet(self, point, order):
        point = tuple(point)
        self.check_point(point)
        if all(x == 0 for x in point):
            raise ApexError('cone cutoffs are undefined at the origin')
        return self.differences.jet(point, order)

    def vanishes_at(self, point):
        '''True on the closed cone where psi is exactly zero.'''
        return not self.partition.in_cap(self.index, point)

    def __repr__(self):
        return f'psi_{CAPS[self.index]}'


def radial_extension(partition, index, order=4):
    '''Cone cutoff of cap ``index``, declared C^order.'''
    return ConeCutoff(partition, index, smoothness=order)


class CutoffProduct(SmoothFn):
    '''psi * phi away from the origin, 0 at the origin.'''

    def __init__(self, cutoff, function):
        self.cutoff = cutoff
        self.function = function
        self.dimension = function.dimension
        self.smoothness = min(cutoff.smoothness, function.smoothness)

    def jet(self, point, order):
        point = tuple(point)
        self.check_point(point)
        if all(x == 0 for x in point):
            if order > 0:
                raise ApexError(
                    'derivatives of a cutoff product at the apex'
                )
            return Jet(point, 0)
        return jet_mul(
            self.cutoff.jet(point, order), self.function.jet(point, order),
        )

    def __repr__(self):
        return f'{self.cutoff!r} * ({self.function!r})'


def cutoff_product(cutoff, function, m=0):
    '''psi * phi extended by zero, for phi flat to order m at the origin.'''
    origin = (0,) * function.dimension
    if not vanishes_to_order(function, origin, m):
        raise FlatnessError(
            f'{function!r} does not vanish to order {m} at the origin'
        )
    return CutoffProduct(cutoff, function)


def decomposition_error(partition, function, points, m=0):
    '''max |psi_N phi + psi_S phi - phi| over points.'''
    products = [
        cutoff_product(radial_extension(partition, i), function, m)
        for i in (NORTH, SOUTH)
    ]
    return max(
        (
            abs(sum(p(x) for p in products) - float(function(x)))
            for x in points
        ),
        default=0.0,
    )


def partition_samples(dimension, count, seed=None):
    '''Points on the unit sphere, both poles first.

    In the plane the remaining points are equally spaced angles, in higher
    dimensions normalized gaussian draws.
    '''
    north = (0.0,) * (dimension - 1) + (1.0,)
    south = (0.0,) * (dimension - 1) + (-1.0,)
    samples = [north, south]
    rest = max(count - 2, 0)
    if dimension == 1:
        return samples[:count]
    if dimension == 2:
        angles = 2 * math.pi * (numpy.arange(rest) + 0.5) / max(rest, 1)
        points = numpy.stack([numpy.cos(angles), numpy.sin(angles)], axis=1)
    else:
        rng = numpy.random.default_rng(
            settings.SEED if seed is None else seed,
        )
        points = rng.normal(size=(rest, dimension))
        points /= numpy.linalg.norm(points, axis=1)[:, None]
    samples += [tuple(float(c) for c in p) for p in points]
    return samples


def partition_check(partition, samples, tolerance=None):
    '''Sum, range and cap-support checks of a partition on samples.

    :return: dict with the worst sum error, the value range, the number of
        values outside the caps which are not exactly zero, and ``passed``
    '''
    if tolerance is None:
        tolerance = settings.PARTITION_TOLERANCE
    sum_error = 0.0
    low, high = 1.0, 0.0
    leaks = 0
    for x in samples:
        values = partition(x)
        sum_error = max(sum_error, abs(sum(values) - 1))
        low, high = min(low, *values), max(high, *values)
        leaks += sum(
            1 for i, v in enumerate(values)
            if v != 0 and not partition.in_cap(i, x)
        )
    passed = sum_error <= tolerance and low >= 0 and high <= 1 and not leaks
    return dict(
        sum_error=sum_error, low=low, high=high, leaks=leaks, passed=passed,
    )


def derivative_bound(cutoff, alpha, samples, step=None):
    '''max over samples of |d^alpha psi| by central differences.'''
    step = step or settings.FD_STEP
    alpha = MultiIndex(alpha)
    return max(
        abs(central_difference(cutoff.value, x, alpha, step))
        for x in samples
    )


class Bump(SmoothFn):
    '''prod_i rho((x_i - c_i) / radius), supported on the closed box of
    half-width radius around the center.

    Inside the open box the jets are exact Taylor-mode compositions of
    1 / (1 - t^2) and exp; outside they are zero.
    '''

    def __init__(self, center, radius=1):
        self.center = tuple(rational(c) for c in center)
        self.radius = rational(radius)
        if self.radius <= 0:
            raise ValueError(f'radius must be positive, got {radius}')
        self.dimension = len(self.center)
        self.factors = [
            _MollifierFactor(self._argument(i))
            for i in range(self.dimension)
        ]
        self.smooth = Product(*self.factors)

    def _argument(self, i):
        t = (Polynomial.variable(self.dimension, i) - self.center[i])
        return t / self.radius

    @property
    def support(self):
        return [(c - self.radius, c + self.radius) for c in self.center]

    def inside(self, point):
        '''Open box, where the bump is positive.'''
        return all(
            abs(rational(x) - c) < self.radius
            for x, c in zip(point, self.center)
        )

    def in_support(self, point):
        return all(
            lo <= rational(x) <= hi
            for x, (lo, hi) in zip(point, self.support)
        )

    def jet(self, point, order):
        point = tuple(point)
        self.check_point(point)
        if not self.inside(point):
            return Jet(point, order)
        return self.smooth.jet(point, order)

    def __repr__(self):
        return f'Bump(center={list(self.center)}, radius={self.radius})'


class _MollifierFactor(SmoothFn):
    '''rho(t(x)) for an affine polynomial t, valid where |t| < 1.'''

    def __init__(self, argument):
        self.argument = argument
        self.dimension = argument.dimension

    def jet(self, point, order):
        gap = (1 - self.argument * self.argument).jet(point, order)
        return jet_exp(jet_reciprocal(gap).scale(-1))


def support_violation(u, f, grid, support=None):
    '''max |u(f)(x)| over grid points outside the support box of f.'''
    support = support or f.support
    worst = 0
    for x in grid:
        outside = any(
            not lo <= rational(c) <= hi for c, (lo, hi) in zip(x, support)
        )
        if outside:
            worst = max(worst, abs(u.evaluate(f, tuple(x))))
    return worst


def support_condition_check(u, f, grid, support=None, tolerance=None):
    '''supp u(f) within supp f, sampled on the grid.'''
    worst = support_violation(u, f, grid, support)
    passed = is_zero(worst, tolerance)
    if not passed:
        logger.debug(f'{u!r} leaks {worst} outside the support of {f!r}')
    return passed


def flatness_transfer_check(u, m, trials, rng=None, tolerance=None):
    '''u(phi)(0) for random phi flat to order m at the origin.

    The first probe is x_1^(m+1).

    :return: (passed, worst |u(phi)(0)|)
    '''
    rng = rng or SplitMix64(settings.SEED)
    n = u.dimension
    origin = (Fraction(0),) * n
    worst = 0
    for trial in range(trials):
        if trial == 0:
            phi = x_power(MultiIndex.unit(n, 0, m + 1))
        else:
            phi = random_flat_polynomial(rng, n, m)
        if not vanishes_to_order(phi, origin, m):
            raise FlatnessError(f'probe {phi!r} is not flat to order {m}')
        value = abs(u.evaluate(phi, origin))
        if value > worst:
            worst = value
    passed = is_zero(worst, tolerance)
    if not passed:
        logger.debug(f'{u!r} moves flat functions: |u(phi)(0)| = {worst}')
    return passed, worst
