"""Computational-basis states and fixed single-qubit gates.

States are plain numpy arrays: kets are 1-D complex vectors, density
matrices are 2-D. Basis indices start at zero, so ``ket(0, 2)`` is |0>.
"""

from __future__ import annotations

import numpy as np
import scipy.linalg

from .tensorops import DimensionError, _isqrt

__all__ = [
    "ket",
    "bra",
    "ketbra",
    "proj",
    "max_entangled",
    "max_mixed",
    "werner_state",
    "pauli_x",
    "pauli_y",
    "pauli_z",
    "sx",
    "sy",
    "sz",
    "hadamard",
]

_NORM_TOL = 1e-6


def ket(i: int, d: int):
    """Basis ket |i> in dimension ``d``."""
    if not 0 <= i < d:
        raise IndexError(f"basis index {i} out of range for dimension {d}")
    v = np.zeros(d, dtype=complex)
    v[i] = 1
    return v


def bra(i: int, d: int):
    """Basis bra <i| as a 1-D conjugated vector."""
    return ket(i, d).conj()


def ketbra(i: int, j: int, d: int):
    """The matrix unit |i><j|."""
    if not (0 <= i < d and 0 <= j < d):
        raise IndexError(f"basis indices ({i}, {j}) out of range for dimension {d}")
    m = np.zeros((d, d), dtype=complex)
    m[i, j] = 1
    return m


def proj(psi):
    """Rank-one projector |psi><psi| of a normalized ket."""
    psi = np.asarray(psi).reshape(-1)
    norm = np.linalg.norm(psi)
    if abs(norm - 1) > _NORM_TOL:
        raise ValueError(f"ket is not normalized (norm {norm})")
    return np.outer(psi, psi.conj())


def max_entangled(d: int):
    """(1/sqrt(s)) sum_i |i>|i> for ``d = s**2``."""
    s = _isqrt(d, "max_entangled")
    return np.eye(s, dtype=complex).reshape(-1) / np.sqrt(s)


def max_mixed(d: int):
    if d < 1:
        raise DimensionError(f"dimension must be positive, got {d}")
    return np.eye(d, dtype=complex) / d


def werner_state(d: int, a: float):
    """Mixture ``a |Omega><Omega| + (1 - a) I/d`` with |Omega> maximally entangled."""
    if not 0 <= a <= 1:
        raise ValueError(f"mixing weight must lie in [0, 1], got {a}")
    return a * proj(max_entangled(d)) + (1 - a) * max_mixed(d)


pauli_x = np.array([[0, 1], [1, 0]], dtype=complex)
pauli_y = np.array([[0, -1j], [1j, 0]], dtype=complex)
pauli_z = np.array([[1, 0], [0, -1]], dtype=complex)
sx, sy, sz = pauli_x, pauli_y, pauli_z
for _m in (pauli_x, pauli_y, pauli_z):
    _m.flags.writeable = False


def hadamard(d: int = 2):
    """Normalized Sylvester-Hadamard matrix; ``d`` must be a power of two."""
    if d < 1 or d & (d - 1):
        raise DimensionError(f"hadamard dimension must be a power of two, got {d}")
    return scipy.linalg.hadamard(d).astype(complex) / np.sqrt(d)
