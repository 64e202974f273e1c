"""
Distances, entropies and entanglement
=====================================

Compare two qubit states with the usual distinguishability measures, then
look at the entanglement of a Werner family.
"""

import numpy as np

import qinfo as q

rho = np.array([[0.25, 0.25j], [-0.25j, 0.75]])
sigma = np.array([[0.4, 0.1j], [-0.1j, 0.6]])

for name, f in [
    ("trace distance", q.trace_distance),
    ("HS distance", q.hs_distance),
    ("fidelity", q.fidelity),
    ("superfidelity", q.superfidelity),
    ("relative entropy", q.relative_entropy),
    ("symmetrized KL", q.js_divergence),
    ("quantum JS", q.qjs_divergence),
    ("Bures distance", q.bures_distance),
    ("Bures angle", q.bures_angle),
]:
    print(f"{name:>17}: {f(rho, sigma):.10f}")

print("S(0.4 rho + 0.6 sigma) =", q.vonneumann_entropy(0.4 * rho + 0.6 * sigma))

# Werner states become entangled once the PPT value turns negative
print("\n   a   ppt      negativity  concurrence")
for a in np.linspace(0, 1, 6):
    w = q.werner_state(4, a)
    print(f"{a:4.1f}  {q.ppt(w, [2, 2], 2):+.4f}  {q.negativity(w, [2, 2], 2):.4f}      "
          f"{q.concurrence(w):.4f}")

# Diamond distance between the identity and a bit flip reaches its maximum
flip = q.UnitaryChannel(q.pauli_x)
print("\n||Id - X||_diamond =", q.diamond_distance(q.IdentityChannel(2), flip))
print("||damping||_diamond =", q.norm_diamond(q.amplitude_damping(0.4)))
