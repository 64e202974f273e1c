"""Quantum channels in Kraus, natural, Choi and Stinespring form.

All representations share the row-major ``res`` convention:

* superoperator ``K(Phi) res(rho) = res(Phi(rho))``, shape ``(odim**2, idim**2)``;
* Choi (dynamical) matrix ``J(Phi) = sum_ij Phi(|i><j|) (x) |i><j|`` with
  factor order ``[output, input]``;
* Stinespring operator ``A = sum_k K_k (x) |e_k>`` of shape ``(odim*r, idim)``,
  environment as the trailing factor.

Nothing is validated at construction time. Use :func:`validate`,
:func:`iscptp` or :func:`iscptni` when it matters.
"""

from __future__ import annotations

import enum

import numpy as np

from .tensorops import (
    TOL_EIG,
    TOL_HERM,
    TOL_RANK,
    TOL_TP,
    DimensionError,
    _isqrt,
    hermitian_part,
    ptrace,
    res,
    reshuffle,
    unres,
)

__all__ = [
    "QuantumChannel",
    "KrausOperators",
    "SuperOperator",
    "DynamicalMatrix",
    "Stinespring",
    "UnitaryChannel",
    "IdentityChannel",
    "ChannelClass",
    "validate",
    "iscptp",
    "iscptni",
    "convert",
    "compose_sequential",
    "compose_parallel",
    "choi_to_kraus",
    "amplitude_damping",
]


class QuantumChannel:
    """Base class. Subclasses provide ``idim``, ``odim`` and Kraus operators.

    The Kraus set is the conversion hub: every representation can be
    produced from it, and every representation can produce one.
    """

    idim: int
    odim: int

    def kraus_operators(self) -> list[np.ndarray]:
        raise NotImplementedError

    def superoperator(self) -> np.ndarray:
        return sum(np.kron(k, k.conj()) for k in self.kraus_operators())

    def choi(self) -> np.ndarray:
        return sum(np.outer(res(k), res(k).conj()) for k in self.kraus_operators())

    def stinespring(self) -> np.ndarray:
        ks = self.kraus_operators()
        return np.stack(ks, axis=1).reshape(self.odim * len(ks), self.idim)

    def completeness(self) -> np.ndarray:
        """``sum_k K_k^dagger K_k``; the identity exactly when trace preserving."""
        return sum(k.conj().T @ k for k in self.kraus_operators())

    def _apply(self, rho: np.ndarray) -> np.ndarray:
        ks = np.stack(self.kraus_operators())
        return (ks @ rho @ ks.conj().transpose(0, 2, 1)).sum(axis=0)

    def _maps_kets(self) -> bool:
        return False

    def __call__(self, state):
        state = np.asarray(state)
        if state.ndim == 1:
            if state.size != self.idim:
                raise DimensionError(f"ket of length {state.size} does not match idim {self.idim}")
            if self._maps_kets():
                return self._apply_ket(state)
            state = np.outer(state, state.conj())
        if state.shape != (self.idim, self.idim):
            raise DimensionError(f"state of shape {state.shape} does not match idim {self.idim}")
        return self._apply(state)

    def __matmul__(self, other):
        if not isinstance(other, QuantumChannel):
            return NotImplemented
        return compose_sequential(self, other)

    def __repr__(self):
        return f"{type(self).__name__}(idim={self.idim}, odim={self.odim})"


class KrausOperators(QuantumChannel):
    def __init__(self, operators):
        ops = [np.asarray(k) for k in operators]
        if not ops:
            raise ValueError("at least one Kraus operator is required")
        shape = ops[0].shape
        if len(shape) != 2 or any(k.shape != shape for k in ops):
            raise DimensionError("Kraus operators must be matrices of a common shape")
        self.operators = ops
        self.odim, self.idim = shape

    def kraus_operators(self):
        return list(self.operators)

    def __len__(self):
        return len(self.operators)

    def __iter__(self):
        return iter(self.operators)


class SuperOperator(QuantumChannel):
    """Natural representation; ``matrix`` maps ``res(rho)`` to ``res(Phi(rho))``."""

    def __init__(self, matrix, idim: int | None = None, odim: int | None = None):
        m = np.asarray(matrix)
        if m.ndim != 2:
            raise DimensionError("superoperator must be a matrix")
        self.matrix = m
        self.idim = idim if idim is not None else _isqrt(m.shape[1], "superoperator columns")
        self.odim = odim if odim is not None else _isqrt(m.shape[0], "superoperator rows")
        if m.shape != (self.odim**2, self.idim**2):
            raise DimensionError(f"superoperator shape {m.shape} inconsistent with dims ({self.idim}, {self.odim})")

    def superoperator(self):
        return self.matrix

    def choi(self):
        return reshuffle(self.matrix, [[self.odim, self.odim], [self.idim, self.idim]])

    def kraus_operators(self):
        return choi_to_kraus(self.choi(), self.idim, self.odim)

    def completeness(self):
        return ptrace(self.choi(), [self.odim, self.idim], [1]).T

    def _apply(self, rho):
        return unres(self.matrix @ res(rho), self.odim, self.odim)


class DynamicalMatrix(QuantumChannel):
    """Choi-Jamiolkowski representation with factor order [output, input]."""

    def __init__(self, matrix, idim: int | None = None, odim: int | None = None):
        m = np.asarray(matrix)
        if m.ndim != 2 or m.shape[0] != m.shape[1]:
            raise DimensionError("dynamical matrix must be square")
        if idim is None and odim is None:
            idim = odim = _isqrt(m.shape[0], "dynamical matrix")
        elif idim is None:
            idim = m.shape[0] // odim
        elif odim is None:
            odim = m.shape[0] // idim
        if idim * odim != m.shape[0]:
            raise DimensionError(f"dynamical matrix of shape {m.shape} inconsistent with dims ({idim}, {odim})")
        self.matrix = m
        self.idim, self.odim = idim, odim

    def choi(self):
        return self.matrix

    def superoperator(self):
        return reshuffle(self.matrix, [[self.odim, self.idim], [self.odim, self.idim]])

    def kraus_operators(self):
        return choi_to_kraus(self.matrix, self.idim, self.odim)

    def completeness(self):
        return ptrace(self.matrix, [self.odim, self.idim], [1]).T

    def _apply(self, rho):
        lifted = self.matrix @ np.kron(np.eye(self.odim), rho.T)
        return ptrace(lifted, [self.odim, self.idim], [2])


class Stinespring(QuantumChannel):
    """Isometry-like ``A`` with ``Phi(rho) = Tr_env(A rho A^dagger)``."""

    def __init__(self, matrix, odim: int | None = None):
        a = np.asarray(matrix)
        if a.ndim != 2:
            raise DimensionError("Stinespring operator must be a matrix")
        self.idim = a.shape[1]
        self.odim = odim if odim is not None else self.idim
        if a.shape[0] % self.odim:
            raise DimensionError(f"{a.shape[0]} rows do not factor through odim {self.odim}")
        self.envdim = a.shape[0] // self.odim
        self.matrix = a

    def stinespring(self):
        return self.matrix

    def kraus_operators(self):
        blocks = self.matrix.reshape(self.odim, self.envdim, self.idim)
        return [blocks[:, k, :] for k in range(self.envdim)]

    def _apply(self, rho):
        full = self.matrix @ rho @ self.matrix.conj().T
        return ptrace(full, [self.odim, self.envdim], [2])


class UnitaryChannel(QuantumChannel):
    """``rho -> U rho U^dagger``; maps kets to kets."""

    def __init__(self, matrix):
        u = np.asarray(matrix)
        if u.ndim != 2:
            raise DimensionError("unitary must be a matrix")
        self.matrix = u
        self.odim, self.idim = u.shape

    def kraus_operators(self):
        return [self.matrix]

    def _maps_kets(self):
        return True

    def _apply_ket(self, psi):
        return self.matrix @ psi

    def _apply(self, rho):
        return self.matrix @ rho @ self.matrix.conj().T


class IdentityChannel(UnitaryChannel):
    def __init__(self, d: int):
        super().__init__(np.eye(d, dtype=complex))

    def _apply_ket(self, psi):
        return psi.copy()

    def _apply(self, rho):
        return rho.copy()


def choi_to_kraus(choi, idim: int, odim: int) -> list[np.ndarray]:
    """Kraus operators from the spectral decomposition of a Choi matrix.

    Eigenpairs with eigenvalue below ``TOL_RANK`` are dropped; an eigenvalue
    below ``-TOL_EIG`` (relative to the spectral scale) means the map is not
    completely positive and raises ``ValueError``.
    """
    choi = np.asarray(choi)
    vals, vecs = np.linalg.eigh(hermitian_part(choi))
    scale = max(1.0, float(np.abs(vals).max(initial=0.0)))
    if vals.size and vals.min() < -TOL_EIG * scale:
        raise ValueError(f"Choi matrix is not positive semidefinite (min eigenvalue {vals.min():.3e})")
    keep = vals > TOL_RANK
    if not keep.any():
        return [np.zeros((odim, idim), dtype=complex)]
    return [unres(np.sqrt(lam) * v, odim, idim) for lam, v in zip(vals[keep], vecs[:, keep].T)]


class ChannelClass(str, enum.Enum):
    CPTP = "cptp"
    CPTNI = "cptni"
    NEITHER = "neither"


def _is_cp(c: QuantumChannel) -> bool:
    if not isinstance(c, (SuperOperator, DynamicalMatrix)):
        return True  # Kraus-form maps are CP by construction.
    j = c.choi()
    if np.linalg.norm(j - j.conj().T) > TOL_HERM * max(1.0, np.linalg.norm(j)):
        return False
    vals = np.linalg.eigvalsh(hermitian_part(j))
    return bool(vals.min() >= -TOL_EIG * max(1.0, np.abs(vals).max()))


def validate(c: QuantumChannel) -> ChannelClass:
    """Classify ``c`` as CP-TP, strictly CP-TNI, or neither."""
    if not _is_cp(c):
        return ChannelClass.NEITHER
    m = c.completeness()
    if np.linalg.norm(m - np.eye(c.idim)) <= TOL_TP:
        return ChannelClass.CPTP
    vals = np.linalg.eigvalsh(hermitian_part(m))
    if vals.max() <= 1 + TOL_TP:
        return ChannelClass.CPTNI
    return ChannelClass.NEITHER


def iscptp(c: QuantumChannel) -> bool:
    return validate(c) is ChannelClass.CPTP


def iscptni(c: QuantumChannel) -> bool:
    """True for trace non-increasing CP maps, trace preserving ones included."""
    return validate(c) is not ChannelClass.NEITHER


_TARGETS = {
    "kraus": "KrausOperators",
    "superoperator": "SuperOperator",
    "dynamical": "DynamicalMatrix",
    "choi": "DynamicalMatrix",
    "stinespring": "Stinespring",
}


def convert(c: QuantumChannel, target) -> QuantumChannel:
    """Convert ``c`` to another representation.

    ``target`` is one of the classes :class:`KrausOperators`,
    :class:`SuperOperator`, :class:`DynamicalMatrix`, :class:`Stinespring`,
    or the strings ``"kraus"``, ``"superoperator"``, ``"dynamical"``
    (alias ``"choi"``), ``"stinespring"``.
    """
    if isinstance(target, str):
        try:
            target = globals()[_TARGETS[target.lower()]]
        except KeyError:
            raise ValueError(f"unknown channel representation {target!r}") from None
    if target is KrausOperators:
        return KrausOperators(c.kraus_operators())
    if target is SuperOperator:
        return SuperOperator(c.superoperator(), c.idim, c.odim)
    if target is DynamicalMatrix:
        return DynamicalMatrix(c.choi(), c.idim, c.odim)
    if target is Stinespring:
        return Stinespring(c.stinespring(), c.odim)
    raise TypeError(f"cannot convert to {target!r}")


def compose_sequential(f: QuantumChannel, g: QuantumChannel) -> QuantumChannel:
    """``f o g``: apply ``g`` first, then ``f``."""
    if g.odim != f.idim:
        raise DimensionError(f"cannot compose: g.odim={g.odim} but f.idim={f.idim}")
    if isinstance(f, UnitaryChannel) and isinstance(g, UnitaryChannel):
        if isinstance(f, IdentityChannel):
            return g
        if isinstance(g, IdentityChannel):
            return f
        return UnitaryChannel(f.matrix @ g.matrix)
    return SuperOperator(f.superoperator() @ g.superoperator(), g.idim, f.odim)


def compose_parallel(f: QuantumChannel, g: QuantumChannel) -> QuantumChannel:
    """``f (x) g`` acting on the tensor product of the two inputs."""
    if isinstance(f, UnitaryChannel) and isinstance(g, UnitaryChannel):
        if isinstance(f, IdentityChannel) and isinstance(g, IdentityChannel):
            return IdentityChannel(f.idim * g.idim)
        return UnitaryChannel(np.kron(f.matrix, g.matrix))
    return KrausOperators([np.kron(k, l) for k in f.kraus_operators() for l in g.kraus_operators()])


def amplitude_damping(gamma: float) -> KrausOperators:
    """Qubit amplitude-damping channel with decay probability ``gamma``."""
    if not 0 <= gamma <= 1:
        raise ValueError(f"gamma must lie in [0, 1], got {gamma}")
    k0 = np.array([[1, 0], [0, np.sqrt(1 - gamma)]], dtype=complex)
    k1 = np.array([[0, np.sqrt(gamma)], [0, 0]], dtype=complex)
    return KrausOperators([k0, k1])
