"""Random matrices, states and channels.

Every sampler draws from a ``numpy.random.Generator``. Pass a seed or a
generator; the same seed always yields the same sequence. Streams are
numpy's PCG64 (``numpy.random.default_rng``); independent streams for
parallel work are derived with :func:`derive_stream` as ``seed ^ index``.

Gaussian convention: real entries are N(0, 1); complex entries are
``(x + iy)/sqrt(2)`` so that ``E|g|^2 = 1``. Quaternion (beta=4) entries
``a + b j`` use the 2x2 complex embedding ``[[a, b], [-conj(b), conj(a)]]``,
so a quaternionic m x n matrix is stored as a complex 2m x 2n array.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from .channels import DynamicalMatrix
from .tensorops import DimensionError, herm_func, ptrace

__all__ = [
    "as_rng",
    "derive_stream",
    "GinibreEnsemble",
    "WishartEnsemble",
    "CircularEnsemble",
    "COE",
    "CUE",
    "CSE",
    "CircularRealEnsemble",
    "CircularQuaternionEnsemble",
    "HaarKet",
    "HilbertSchmidtStates",
    "ChoiJamiolkowskiMatrices",
    "sample",
    "sample_ginibre",
    "sample_wishart",
    "sample_circular",
    "sample_haar_isometry",
    "sample_haar_ket",
    "sample_hs_state",
    "sample_channel",
    "qr_haar",
]

_CHANNEL_RETRIES = 5


def as_rng(rng=None) -> np.random.Generator:
    """Coerce a seed, ``None`` or generator into a ``numpy.random.Generator``."""
    if isinstance(rng, np.random.Generator):
        return rng
    return np.random.default_rng(rng)


def derive_stream(seed: int, index: int) -> np.random.Generator:
    """Independent stream number ``index`` for a base ``seed``."""
    return np.random.default_rng(int(seed) ^ int(index))


def _check_beta(beta, allowed=(1, 2, 4)):
    if beta not in allowed:
        raise ValueError(f"Dyson index must be one of {allowed}, got {beta}")


def _rank(K, d: int) -> int:
    r = math.ceil(Fraction(K).limit_denominator(10**6) * d)
    if r < 1:
        raise ValueError(f"rank factor K={K} gives an empty Ginibre matrix for d={d}")
    return r


# -- descriptors ---------------------------------------------------------------


@dataclass(frozen=True)
class GinibreEnsemble:
    m: int
    n: int | None = None
    beta: int = 2

    def __post_init__(self):
        _check_beta(self.beta)
        if self.n is None:
            object.__setattr__(self, "n", self.m)
        if self.m < 1 or self.n < 1:
            raise DimensionError("dimensions must be positive")

    def sample(self, rng=None):
        return sample_ginibre(self, rng)


@dataclass(frozen=True)
class WishartEnsemble:
    """``G G^dagger`` with ``G`` a ``d x ceil(K d)`` Ginibre matrix."""

    d: int
    beta: int = 2
    K: float = 1

    def __post_init__(self):
        _check_beta(self.beta)
        if self.d < 1:
            raise DimensionError("dimension must be positive")
        _rank(self.K, self.d)

    def sample(self, rng=None):
        return sample_wishart(self, rng)


@dataclass(frozen=True)
class CircularEnsemble:
    """COE (beta=1), CUE (beta=2) or CSE (beta=4).

    For the CSE, ``d`` is the quaternionic dimension and samples are
    ``2d x 2d`` complex matrices.
    """

    d: int
    beta: int = 2

    def __post_init__(self):
        _check_beta(self.beta)
        if self.d < 1:
            raise DimensionError("dimension must be positive")

    def sample(self, rng=None):
        return sample_circular(self, rng)


def COE(d: int) -> CircularEnsemble:
    return CircularEnsemble(d, 1)


def CUE(d: int) -> CircularEnsemble:
    return CircularEnsemble(d, 2)


def CSE(d: int) -> CircularEnsemble:
    return CircularEnsemble(d, 4)


@dataclass(frozen=True)
class CircularRealEnsemble:
    """Haar measure on the orthogonal group O(d)."""

    d: int

    def __post_init__(self):
        if self.d < 1:
            raise DimensionError("dimension must be positive")

    def sample(self, rng=None):
        return sample_circular(self, rng)


@dataclass(frozen=True)
class CircularQuaternionEnsemble:
    """Haar measure on the compact symplectic group, embedded as ``2d x 2d`` unitaries."""

    d: int

    def __post_init__(self):
        if self.d < 1:
            raise DimensionError("dimension must be positive")

    def sample(self, rng=None):
        return sample_circular(self, rng)


@dataclass(frozen=True)
class HaarKet:
    d: int
    beta: int = 2

    def __post_init__(self):
        _check_beta(self.beta, (1, 2))
        if self.d < 1:
            raise DimensionError("dimension must be positive")

    def sample(self, rng=None):
        return sample_haar_ket(self, rng)


@dataclass(frozen=True)
class HilbertSchmidtStates:
    """Induced measure on density matrices; ``K=1`` is the flat HS measure."""

    d: int
    beta: int = 2
    K: float = 1

    def __post_init__(self):
        _check_beta(self.beta)
        if self.d < 1:
            raise DimensionError("dimension must be positive")
        _rank(self.K, self.d)

    def sample(self, rng=None):
        return sample_hs_state(self, rng)


@dataclass(frozen=True)
class ChoiJamiolkowskiMatrices:
    """Random CP-TP channels from normalized Wishart matrices on output (x) input."""

    idim: int
    odim: int | None = None
    beta: int = 2
    K: float = 1

    def __post_init__(self):
        _check_beta(self.beta, (1, 2))
        if self.odim is None:
            object.__setattr__(self, "odim", self.idim)
        if self.idim < 1 or self.odim < 1:
            raise DimensionError("dimensions must be positive")
        _rank(self.K, self.idim * self.odim)

    def sample(self, rng=None):
        return sample_channel(self, rng)


def sample(desc, rng=None):
    """Draw one sample from any ensemble descriptor."""
    return desc.sample(rng)


# -- samplers ------------------------------------------------------------------


def _ginibre(m: int, n: int, beta: int, rng: np.random.Generator):
    if beta == 1:
        return rng.standard_normal((m, n))
    if beta == 2:
        return (rng.standard_normal((m, n)) + 1j * rng.standard_normal((m, n))) / np.sqrt(2)
    a = (rng.standard_normal((m, n)) + 1j * rng.standard_normal((m, n))) / 2
    b = (rng.standard_normal((m, n)) + 1j * rng.standard_normal((m, n))) / 2
    g = np.empty((2 * m, 2 * n), dtype=complex)
    g[0::2, 0::2] = a
    g[0::2, 1::2] = b
    g[1::2, 0::2] = -b.conj()
    g[1::2, 1::2] = a.conj()
    return g


def sample_ginibre(desc: GinibreEnsemble, rng=None):
    """``m x n`` matrix of i.i.d. Gaussian entries (``2m x 2n`` for beta=4)."""
    return _ginibre(desc.m, desc.n, desc.beta, as_rng(rng))


def sample_wishart(desc: WishartEnsemble, rng=None):
    g = _ginibre(desc.d, _rank(desc.K, desc.d), desc.beta, as_rng(rng))
    return g @ g.conj().T


def qr_haar(g):
    """Q factor of ``g`` with the phases fixed so that ``diag(R) > 0``.

    Multiplying column ``i`` of ``Q`` by ``r_ii/|r_ii|`` makes the result
    Haar distributed when ``g`` is Ginibre.
    """
    q, r = np.linalg.qr(g)
    diag = np.diagonal(r)
    phases = np.where(diag == 0, 1, diag / np.where(diag == 0, 1, np.abs(diag)))
    return q * phases


def _quaternion_partner(v):
    """The second complex column of the quaternion column whose first column is ``v``."""
    w = np.empty_like(v)
    w[0::2] = -v[1::2].conj()
    w[1::2] = v[0::2].conj()
    return w


def _symplectic_qr(g):
    """Quaternionic Gram-Schmidt on an embedded quaternion matrix.

    Orthonormalizes the first complex column of each quaternion column
    against everything before it and rebuilds its partner, so the span
    stays quaternionic and the result lies in the symplectic group. Each
    column is orthogonalized twice for stability.
    """
    n2 = g.shape[1]
    q = np.zeros_like(g, dtype=complex)
    for k in range(0, n2, 2):
        v = g[:, k].astype(complex)
        for _ in range(2):
            v = v - q[:, :k] @ (q[:, :k].conj().T @ v)
        v /= np.linalg.norm(v)
        q[:, k] = v
        q[:, k + 1] = _quaternion_partner(v)
    return q


def _symplectic_form(n: int, sign: int):
    block = np.array([[0, -sign], [sign, 0]], dtype=complex)
    return np.kron(np.eye(n), block)


def sample_circular(desc, rng=None):
    """Sample from a circular ensemble.

    * CUE: QR of a complex Ginibre matrix with the phase fix.
    * COE: ``U^T U`` with ``U`` from the CUE.
    * CSE: ``U_R U`` with ``U_R = Jm U^T Jp`` and ``U`` from the 2d x 2d CUE.
    * CRE: QR of a real Ginibre matrix with the sign fix.
    * CQE: quaternionic QR of a quaternion Ginibre matrix.
    """
    rng = as_rng(rng)
    if isinstance(desc, CircularRealEnsemble):
        return qr_haar(_ginibre(desc.d, desc.d, 1, rng))
    if isinstance(desc, CircularQuaternionEnsemble):
        return _symplectic_qr(_ginibre(desc.d, desc.d, 4, rng))
    if not isinstance(desc, CircularEnsemble):
        raise TypeError(f"not a circular ensemble: {desc!r}")
    if desc.beta == 2:
        return qr_haar(_ginibre(desc.d, desc.d, 2, rng))
    if desc.beta == 1:
        u = qr_haar(_ginibre(desc.d, desc.d, 2, rng))
        return u.T @ u
    u = qr_haar(_ginibre(2 * desc.d, 2 * desc.d, 2, rng))
    u_r = _symplectic_form(desc.d, 1) @ u.T @ _symplectic_form(desc.d, -1)
    return u_r @ u


def sample_haar_isometry(m: int, n: int, rng=None):
    """Haar-random isometry ``V`` of shape ``m x n`` (``V^dagger V = I_n``)."""
    if m < n:
        raise DimensionError(f"an isometry needs m >= n, got {m} x {n}")
    return qr_haar(_ginibre(m, n, 2, as_rng(rng)))


def sample_haar_ket(desc: HaarKet, rng=None):
    rng = as_rng(rng)
    if desc.beta == 1:
        v = rng.standard_normal(desc.d)
    else:
        v = rng.standard_normal(desc.d) + 1j * rng.standard_normal(desc.d)
    return v / np.linalg.norm(v)


def sample_hs_state(desc: HilbertSchmidtStates, rng=None):
    w = sample_wishart(WishartEnsemble(desc.d, desc.beta, desc.K), rng)
    return w / np.trace(w).real


def sample_channel(desc: ChoiJamiolkowskiMatrices, rng=None) -> DynamicalMatrix:
    """Random channel as a Choi matrix with factor order [output, input].

    ``W = G G^dagger`` is normalized by ``I (x) (Tr_out W)^{-1/2}`` on both
    sides so that its partial trace over the output is the identity.
    """
    rng = as_rng(rng)
    d = desc.idim * desc.odim
    r = _rank(desc.K, d)
    for _ in range(_CHANNEL_RETRIES):
        g = _ginibre(d, r, desc.beta, rng)
        w = g @ g.conj().T
        y = ptrace(w, [desc.odim, desc.idim], [1])
        if np.linalg.cond(y) > 1e12:
            continue
        y_inv_sqrt = herm_func(y, lambda x: 1 / np.sqrt(x), psd=True)
        s = np.kron(np.eye(desc.odim), y_inv_sqrt)
        return DynamicalMatrix(s @ w @ s, desc.idim, desc.odim)
    raise ArithmeticError(f"normalization matrix singular after {_CHANNEL_RETRIES} draws")
