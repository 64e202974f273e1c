"""
States, channels and their representations
==========================================

Build a few states, push them through an amplitude-damping channel and
check that every representation of the channel acts the same way.
"""

import numpy as np

import qinfo as q

np.set_printoptions(precision=4, suppress=True)

# A ket and its projector
psi = (q.ket(0, 2) + q.ket(1, 2)) / np.sqrt(2)
rho = q.proj(psi)
print("rho =\n", rho)

# Amplitude damping with decay probability 0.4, given by Kraus operators
damping = q.amplitude_damping(0.4)
print("CP-TP:", q.iscptp(damping))

# The same map as a superoperator, a Choi matrix and a Stinespring isometry
superop = q.convert(damping, "superoperator")
choi = q.convert(damping, "dynamical")
stine = q.convert(damping, "stinespring")
print("superoperator =\n", superop.superoperator().real)
print("Choi matrix =\n", choi.choi().real)

# Every form gives the same output; kets are projected first
for ch in (damping, superop, choi, stine):
    print(type(ch).__name__, "->", ch(psi).real.round(6).tolist())

# Reshuffling swaps superoperator and Choi matrix
print("reshuffle matches:", np.allclose(q.reshuffle(superop.superoperator()), choi.choi()))

# Sequential and parallel composition
print("damping twice =\n", (superop @ choi)(rho).real)
phi = 0.5 * q.ket(0, 2) + np.sqrt(3) / 2 * q.ket(1, 2)
both = q.compose_parallel(damping, damping)
print("on a product state =\n", both(np.kron(rho, q.proj(phi))).real)

# Measurements are channels too
e0 = q.proj(q.ket(0, 3))
e1 = q.proj(q.ket(1, 3)) + q.proj(q.ket(2, 3))
rho3 = q.proj((q.ket(0, 3) + q.ket(2, 3)) / np.sqrt(2))
print("POVM output =\n", q.POVMMeasurement([e0, e1])(rho3).real)
print("post-selected =\n", q.PostSelectionMeasurement(e1)(rho3).real)
