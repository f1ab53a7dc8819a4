"""
An entangled two-qubit state
============================

The witness W is nonnegative on every product state but has a negative
expectation on the maximally entangled state.
"""

import numpy as np
from quasiexp import quantum
from quasiexp.linalg import eigenvalues

w = quantum.example_witness()
print("W =\n", w.matrix.real)
print("spectrum:", eigenvalues(w.matrix))

rho_e = quantum.maximally_entangled_state()
print("Tr(W rho_e) =", quantum.expectation(w.matrix, rho_e))

# product states never go below a positive number
print("min over random product states:", quantum.product_state_minimum(w, 10_000, seed=0))

# Gleason: the Bell basis sees rho_e as a sure outcome
print("Bell basis probabilities:", quantum.gleason_probabilities(rho_e, quantum.bell_basis()))

# the perfectly correlated pattern is a pure, non-product state
d = quantum.schmidt_diagnosis(quantum.correlated_bell_matrix(), (2, 2))
print(d)
