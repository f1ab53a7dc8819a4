"""
Symmetric subspaces
===================

The symmetrizer projects m copies of C^n onto the bosonic subspace. Its
rank is the number of occupation patterns.
"""

import math

import numpy as np
from quasiexp import quantum

for n in (2, 3):
    for m in (2, 3):
        s = quantum.symmetrizer(n, m, +1)
        a = quantum.symmetrizer(n, m, -1)
        print(f"n={n} m={m}  rank S={np.trace(s).real:.0f} (C={math.comb(n + m - 1, m)})"
              f"  rank A={np.trace(a).real:.0f}  |S^2-S|={np.abs(s @ s - s).max():.1e}")

iso = quantum.symmetric_isometry(2, 3)
print("occupations:", iso.occupations)
print("V^T V = I:", np.allclose(iso.matrix.conj().T @ iso.matrix, np.eye(len(iso.occupations))))

# moment matrices of power states and bosonic density matrices carry the same data
print(quantum.power_symmetry_equivalence(20, 2, 3, seed=1))
