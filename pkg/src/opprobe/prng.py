'''
Portable 64-bit splitmix generator.

Reports must reproduce across platforms, so random trials never touch the
interpreter's or numpy's global generators.
'''
from fractions import Fraction

MASK = (1 << 64) - 1


class SplitMix64:
    def __init__(self, seed=0):
        self.state = seed & MASK

    def next_u64(self):
        self.state = (self.state + 0x9E3779B97F4A7C15) & MASK
        z = self.state
        z = ((z ^ (z >> 30)) * 0xBF58476D1CE4E5B9) & MASK
        z = ((z ^ (z >> 27)) * 0x94D049BB133111EB) & MASK
        return z ^ (z >> 31)

    def randint(self, low, high):
        '''Uniform integer in [low, high].'''
        span = high - low + 1
        return low + self.next_u64() % span

    def rational(self, low=-5, high=5, denominator=4):
        '''Rational in [low, high] with denominator dividing denominator.'''
        numerator = self.randint(low * denominator, high * denominator)
        return Fraction(numerator, denominator)

    def nonzero_rational(self, low=-5, high=5, denominator=4):
        while True:
            value = self.rational(low, high, denominator)
            if value:
                return value
