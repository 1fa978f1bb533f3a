'''
opprobe represents linear differential operators whose coefficients have
limited smoothness, recovers them from black-box evaluations by probing
monomials, and decides exactly whether an operator maps C^m into C^r.

Polynomials and piecewise polynomials are exact rationals throughout, so the
sharp cases of the classification never depend on rounding.
'''
