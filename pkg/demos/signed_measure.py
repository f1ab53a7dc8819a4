"""
Two rolls that never agree
==========================

A table of two-roll probabilities that puts no weight on doubles is
exchangeable but cannot come from mixing i.i.d. dice. It still has a
representation as a signed mixture.
"""

import numpy as np
from quasiexp import dice

p = dice.check_exchangeable(dice.pair_exclusion_table(6))
print(np.round(p.table, 4))

nu = dice.represent_signed(p, grid_resolution=6)
print("atoms:", len(nu.weights))
print("total weight:", nu.weights.sum())
print("most negative weight:", nu.weights.min())
print("total variation:", nu.total_variation)

# mixing back reproduces the table
back = dice.signed_mixture_probability(nu, 6, 2)
print("round trip error:", np.abs(back.table - p.table).max())

# a nonnegative mixture does not exist
try:
    dice.represent_signed(p, 6, nonnegative=True)
except dice.InfeasibleAtResolution as exc:
    print("nonnegative:", exc)
