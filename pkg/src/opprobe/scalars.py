'''
Dual-mode scalars: exact rationals (int / Fraction) or binary floats.

Arithmetic mixes freely, a float anywhere makes the result a float.
'''
import math
from fractions import Fraction

from opprobe import settings


def is_exact(value):
    return isinstance(value, (int, Fraction)) and not isinstance(value, bool)


def is_zero(value, tolerance=None):
    if is_exact(value):
        return value == 0
    if tolerance is None:
        tolerance = settings.TOLERANCE
    return abs(value) <= tolerance


def rational(value):
    '''Exact rational from int, Fraction, "p/q" string or float (bitwise).'''
    if isinstance(value, str):
        return Fraction(value.strip())
    return Fraction(value)


def parse(value):
    '''Scalar from JSON: strings are rationals, numbers keep their type.'''
    if isinstance(value, str):
        return Fraction(value.strip())
    if isinstance(value, bool):
        raise TypeError(f'boolean is not a scalar: {value}')
    return value


def dump(value):
    '''JSON form: rationals as "p/q" strings, floats as floats.'''
    if is_exact(value):
        return str(Fraction(value))
    value = float(value)
    if math.isinf(value) or math.isnan(value):
        return str(value)
    return value


def dump_class(smoothness):
    '''JSON form of a smoothness class, "unbounded" for infinity.'''
    if smoothness == math.inf:
        return 'unbounded'
    return int(smoothness)


def parse_class(value):
    if value in ('unbounded', 'inf', None):
        return math.inf
    return int(value)
