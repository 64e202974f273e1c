"""
Sampling random quantum objects
===============================

Draw Haar unitaries, random states and random channels, and compare a few
sample statistics with their known values.
"""

import numpy as np

import qinfo as q

rng = np.random.default_rng(2024)

# Eigenphases of CUE matrices are uniform on the circle
phases = np.concatenate([np.angle(np.linalg.eigvals(q.CUE(4).sample(rng))) for _ in range(2000)])
hist, _ = np.histogram(phases, bins=8, range=(-np.pi, np.pi))
print("CUE(4) eigenphase histogram:", hist)

# E|tr U|^2 is 1 for the CUE and 2d/(d+1) for the COE
for name, desc, exact in [("CUE", q.CUE(3), 1.0), ("COE", q.COE(3), 1.5)]:
    est = np.mean([abs(np.trace(desc.sample(rng))) ** 2 for _ in range(5000)])
    print(f"{name}(3): E|tr U|^2 ~ {est:.3f} (exact {exact})")

# Hilbert-Schmidt states have mean purity 2d/(d^2+1)
d = 3
purity = np.mean([np.trace(r @ r).real for r in (q.HilbertSchmidtStates(d).sample(rng) for _ in range(5000))])
print(f"HS states, d={d}: mean purity {purity:.4f} (exact {2 * d / (d * d + 1):.4f})")

# Low-rank Wishart matrices
w = q.WishartEnsemble(5, beta=1, K=0.2).sample(rng)
print("Wishart{1, 0.2}(5) rank:", np.linalg.matrix_rank(w))

# A random channel from 2 to 3 levels is trace preserving
channel = q.ChoiJamiolkowskiMatrices(2, 3).sample(rng)
print("Tr_out J =\n", q.ptrace(channel.choi(), [3, 2], [1]).real.round(12))
print("Kraus rank:", len(channel.kraus_operators()))
