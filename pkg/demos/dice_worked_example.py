"""
A lower prevision for a six-sided die
=====================================

We only know that repeated rolls are exchangeable. How low can the
expectation of g(theta) = theta1^2 - theta1*theta2 + theta2^2 + 0.05 go
when we only look at two rolls?
"""

import numpy as np
from quasiexp import dice
from quasiexp.simplex import homogenize, parse_polynomial

g = parse_polynomial("th1^2 - th1*th2 + th2^2 + 0.05", 6)

# written over all six faces, degree two, every term lives in the same space
h = homogenize(g, 6, 2)
print("negative coefficients:", {n: c for n, c in h.coeffs.items() if c < 0})

# the only negative term is theta1*theta2, so the bound is negative too
res = dice.lower_prevision(g, 2)
print("lower prevision at r=2:", res.value)

# the extremal quasi-expectation puts all its mass on the mixed moment
print("dual:", res.dual.values)
print("normalized:", res.dual.is_normalized(), " L(g) =", res.dual.apply(g))

# the true minimum over the simplex is positive: two rolls are not enough
print("grid minimum of g:", dice.classical_minimum(g, 6, resolution=30))
