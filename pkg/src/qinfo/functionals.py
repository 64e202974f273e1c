"""Norms, distances, entropies and entanglement measures.

Entropies use the natural logarithm. Functions accepting states take
either density matrices or kets; kets are turned into projectors where a
matrix is needed.
"""

from __future__ import annotations

import warnings

import numpy as np

from .channels import QuantumChannel
from .states import pauli_y
from .tensorops import (
    TOL_EIG,
    TOL_RANK,
    DimensionError,
    _clip_spectrum,
    herm_func,
    hermitian_part,
    ptranspose,
)

__all__ = [
    "norm_trace",
    "trace_distance",
    "norm_hs",
    "hs_distance",
    "fidelity_sqrt",
    "fidelity",
    "superfidelity",
    "shannon_entropy",
    "vonneumann_entropy",
    "relative_entropy",
    "kl_divergence",
    "js_divergence",
    "qjs_divergence",
    "bures_distance",
    "bures_angle",
    "negativity",
    "log_negativity",
    "ppt",
    "concurrence",
    "norm_diamond",
    "diamond_distance",
]

_PROB_TOL = 1e-10


def _as_matrix(x):
    x = np.asarray(x)
    if x.ndim == 1:
        return np.outer(x, x.conj())
    return x


def _same_shape(a, b):
    if a.shape != b.shape:
        raise DimensionError(f"shape mismatch: {a.shape} vs {b.shape}")


def _psd_eigvals(rho):
    return _clip_spectrum(np.linalg.eigvalsh(hermitian_part(rho)))


def _entropy_terms(p):
    p = p[p > 0]
    return -np.sum(p * np.log(p))


def norm_trace(m) -> float:
    """Trace norm, the sum of singular values."""
    return float(np.linalg.svd(_as_matrix(m), compute_uv=False).sum())


def trace_distance(rho, sigma) -> float:
    """Half the trace norm of ``rho - sigma``."""
    rho, sigma = _as_matrix(rho), _as_matrix(sigma)
    _same_shape(rho, sigma)
    return 0.5 * norm_trace(rho - sigma)


def norm_hs(m) -> float:
    """Hilbert-Schmidt (Frobenius) norm."""
    return float(np.linalg.norm(_as_matrix(m), "fro"))


def hs_distance(rho, sigma) -> float:
    """Hilbert-Schmidt norm of ``rho - sigma``.

    No factor of one half is applied.
    """
    rho, sigma = _as_matrix(rho), _as_matrix(sigma)
    _same_shape(rho, sigma)
    return norm_hs(rho - sigma)


def fidelity_sqrt(rho, sigma) -> float:
    """Root fidelity ``||sqrt(rho) sqrt(sigma)||_1``."""
    rho, sigma = np.asarray(rho), np.asarray(sigma)
    if rho.ndim == 1 or sigma.ndim == 1:
        return float(np.sqrt(max(fidelity(rho, sigma), 0.0)))
    _same_shape(rho, sigma)
    a = herm_func(rho, np.sqrt, psd=True)
    b = herm_func(sigma, np.sqrt, psd=True)
    return float(np.linalg.svd(a @ b, compute_uv=False).sum())


def fidelity(rho, sigma) -> float:
    """Squared root fidelity, ``F = ||sqrt(rho) sqrt(sigma)||_1 ** 2``.

    Kets are handled without forming projectors: ``|<psi|phi>|^2`` for two
    kets and ``<psi|sigma|psi>`` when one side is a ket.
    """
    rho, sigma = np.asarray(rho), np.asarray(sigma)
    if rho.ndim == 1 and sigma.ndim == 1:
        _same_shape(rho, sigma)
        return float(abs(np.vdot(rho, sigma)) ** 2)
    if rho.ndim == 1:
        rho, sigma = sigma, rho
    if sigma.ndim == 1:
        if rho.shape != (sigma.size, sigma.size):
            raise DimensionError(f"shape mismatch: {rho.shape} vs ket of length {sigma.size}")
        return float(np.vdot(sigma, rho @ sigma).real)
    return fidelity_sqrt(rho, sigma) ** 2


def superfidelity(rho, sigma) -> float:
    """``Tr(rho sigma) + sqrt(1 - Tr rho^2) sqrt(1 - Tr sigma^2)``, an upper bound on fidelity."""
    rho, sigma = _as_matrix(rho), _as_matrix(sigma)
    _same_shape(rho, sigma)
    overlap = np.trace(rho @ sigma).real
    pr = np.trace(rho @ rho).real
    ps = np.trace(sigma @ sigma).real
    return float(overlap + np.sqrt(max(1 - pr, 0.0)) * np.sqrt(max(1 - ps, 0.0)))


def shannon_entropy(p) -> float:
    """Shannon entropy of a probability vector, or the binary entropy of a scalar."""
    if np.ndim(p) == 0:
        a = float(p)
        if not 0 <= a <= 1:
            raise ValueError(f"point entropy needs a in [0, 1], got {a}")
        return float(_entropy_terms(np.array([a, 1 - a])))
    p = np.asarray(p, dtype=float).reshape(-1)
    if np.any(p < 0):
        raise ValueError("probability vector has negative entries")
    if abs(p.sum() - 1) > _PROB_TOL:
        raise ValueError(f"probability vector sums to {p.sum()}, not 1")
    return float(_entropy_terms(p))


def vonneumann_entropy(rho) -> float:
    """``-Tr rho log rho``, computed from the spectrum."""
    return float(_entropy_terms(_psd_eigvals(_as_matrix(rho))))


def relative_entropy(rho, sigma) -> float:
    """Quantum relative entropy ``Tr rho (log rho - log sigma)``.

    Returns ``inf`` when the support of ``rho`` is not contained in the
    support of ``sigma``.
    """
    rho, sigma = _as_matrix(rho), _as_matrix(sigma)
    _same_shape(rho, sigma)
    neg_entropy = -vonneumann_entropy(rho)
    mu, v = np.linalg.eigh(hermitian_part(sigma))
    mu = _clip_spectrum(mu)
    weights = np.einsum("ij,ik,kj->j", v.conj(), rho, v).real
    support = mu > TOL_RANK
    if np.any(weights[~support] > TOL_EIG):
        return float("inf")
    cross = np.sum(weights[support] * np.log(mu[support]))
    return float(neg_entropy - cross)


kl_divergence = relative_entropy


def js_divergence(rho, sigma) -> float:
    """Symmetrized relative entropy ``(S(rho||sigma) + S(sigma||rho)) / 2``.

    For the entropy-of-the-mixture form bounded by ``ln 2`` see
    :func:`qjs_divergence`.
    """
    return 0.5 * (relative_entropy(rho, sigma) + relative_entropy(sigma, rho))


def qjs_divergence(rho, sigma) -> float:
    """``S((rho + sigma)/2) - (S(rho) + S(sigma))/2``; lies in ``[0, ln 2]``."""
    rho, sigma = _as_matrix(rho), _as_matrix(sigma)
    _same_shape(rho, sigma)
    mid = vonneumann_entropy((rho + sigma) / 2)
    return mid - 0.5 * (vonneumann_entropy(rho) + vonneumann_entropy(sigma))


def bures_distance(rho, sigma) -> float:
    f = min(fidelity_sqrt(rho, sigma), 1.0)
    return float(np.sqrt(2 * (1 - f)))


def bures_angle(rho, sigma) -> float:
    f = min(fidelity_sqrt(rho, sigma), 1.0)
    return float(np.arccos(f))


def _pt_spectrum(rho, dims, sys):
    rho = _as_matrix(rho)
    return np.linalg.eigvalsh(hermitian_part(ptranspose(rho, dims, [sys])))


def negativity(rho, dims, sys) -> float:
    """``(||rho^{T_sys}||_1 - 1) / 2``; ``sys`` is a 1-based subsystem index."""
    return float((np.abs(_pt_spectrum(rho, dims, sys)).sum() - 1) / 2)


def log_negativity(rho, dims, sys) -> float:
    return float(np.log(np.abs(_pt_spectrum(rho, dims, sys)).sum()))


def ppt(rho, dims, sys) -> float:
    """Smallest eigenvalue of the partial transpose.

    A negative value certifies entanglement (Peres-Horodecki).
    """
    return float(_pt_spectrum(rho, dims, sys).min())


_YY = np.kron(pauli_y, pauli_y)


def concurrence(rho) -> float:
    """Wootters concurrence of a two-qubit state."""
    rho = _as_matrix(rho)
    if rho.shape != (4, 4):
        raise DimensionError(f"concurrence is defined for two qubits, got shape {rho.shape}")
    r = herm_func(rho, np.sqrt, psd=True)
    flipped = _YY @ rho.conj() @ _YY
    vals = np.linalg.eigvalsh(hermitian_part(r @ flipped @ r))
    lam = np.sort(np.sqrt(np.clip(vals, 0, None)))[::-1]
    return float(max(0.0, lam[0] - lam[1:].sum()))


# -- diamond norm ------------------------------------------------------------


def _extend(k4, a):
    """(Delta (x) I)(|psi><psi|) for psi reshaped as ``a[system, ancilla]``."""
    out = np.einsum("pqij,ib,jc->pbqc", k4, a, a.conj())
    n = out.shape[0] * out.shape[1]
    return out.reshape(n, n)


def _pullback(k4, s, odim, anc):
    """(Delta^dagger (x) I)(S) as a matrix on system (x) ancilla."""
    s4 = s.reshape(odim, anc, odim, anc)
    q = np.einsum("pqij,qcpb->jcib", k4, s4)
    n = q.shape[0] * q.shape[1]
    return hermitian_part(q.reshape(n, n))


def _diamond_ascent(k4, psi, odim, idim, tol, max_iter):
    best = -np.inf
    for it in range(max_iter):
        m = _extend(k4, psi.reshape(idim, idim))
        vals, vecs = np.linalg.eigh(hermitian_part(m))
        value = np.abs(vals).sum()
        if value - best < tol:
            return max(best, value), True
        best = value
        sign = (vecs * np.sign(vals)) @ vecs.conj().T
        _, qvecs = np.linalg.eigh(_pullback(k4, sign, odim, idim))
        psi = qvecs[:, -1]
    return best, False


def _diamond(superop, idim, odim, rng, starts, tol, max_iter):
    if starts < 1:
        raise ValueError("need at least one start")
    rng = np.random.default_rng(rng)
    k4 = np.asarray(superop).reshape(odim, odim, idim, idim)
    if not np.any(k4):
        return 0.0
    best, all_converged = 0.0, True
    n = idim * idim
    for _ in range(starts):
        g = rng.standard_normal(n) + 1j * rng.standard_normal(n)
        value, converged = _diamond_ascent(k4, g / np.linalg.norm(g), odim, idim, tol, max_iter)
        best = max(best, value)
        all_converged &= converged
    if not all_converged:
        warnings.warn(
            f"diamond-norm ascent hit {max_iter} iterations; returning lower bound {best}",
            RuntimeWarning,
            stacklevel=3,
        )
    return float(best)


def norm_diamond(channel: QuantumChannel, rng=0, starts: int = 20, tol: float = 1e-9, max_iter: int = 500) -> float:
    """Diamond norm of a Hermiticity-preserving map, as a certified lower bound.

    Maximizes ``||(Phi (x) I)(|psi><psi|)||_1`` over unit ``psi`` on the
    input doubled by an equal-sized ancilla. Each of ``starts`` Haar-random
    initial vectors is improved by alternating between the sign matrix of
    the output and the top eigenvector of the adjoint map applied to it;
    every step is non-decreasing, and a start stops once the gain drops
    below ``tol``.

    Args:
        channel: Map to evaluate; any representation.
        rng: Seed or ``numpy.random.Generator`` for the random starts.
        starts: Number of random initial vectors.
        tol: Convergence threshold on the per-step gain.
        max_iter: Iteration cap per start. A ``RuntimeWarning`` is issued
            if any start hits it.
    """
    return _diamond(channel.superoperator(), channel.idim, channel.odim, rng, starts, tol, max_iter)


def diamond_distance(phi: QuantumChannel, psi: QuantumChannel, rng=0, starts: int = 20, tol: float = 1e-9, max_iter: int = 500) -> float:
    """``||phi - psi||_diamond`` (no factor of one half); see :func:`norm_diamond`."""
    if (phi.idim, phi.odim) != (psi.idim, psi.odim):
        raise DimensionError(
            f"channel dimensions differ: {(phi.idim, phi.odim)} vs {(psi.idim, psi.odim)}"
        )
    delta = phi.superoperator() - psi.superoperator()
    return _diamond(delta, phi.idim, phi.odim, rng, starts, tol, max_iter)
