"""Reshaping and multilinear primitives in the fixed computational basis.

Vectorization is row-major: ``res(|a><b|) = |a> (x) conj(|b>)``. Every
superoperator and Choi-matrix formula in the package relies on this.

Subsystem indices passed to :func:`ptrace` and :func:`ptranspose` are
1-based positions in ``dims`` (``ptrace(rho, [2, 2], [2])`` traces out the
second factor). Basis-state indices elsewhere are 0-based.
"""

from __future__ import annotations

from functools import reduce
from typing import Callable, Sequence

import numpy as np

__all__ = [
    "DimensionError",
    "TOL_HERM",
    "TOL_EIG",
    "TOL_TP",
    "TOL_RANK",
    "res",
    "unres",
    "ptrace",
    "ptranspose",
    "reshuffle",
    "tensor",
    "kron",
    "herm_func",
    "is_hermitian",
    "hermitian_part",
]

# Relative Frobenius asymmetry allowed before a matrix is rejected as non-Hermitian.
TOL_HERM = 1e-8
# Eigenvalues in [-TOL_EIG, 0) are clipped to zero; anything lower is an error.
TOL_EIG = 1e-10
# Trace-preservation / completeness tolerance.
TOL_TP = 1e-8
# Eigenpairs of a Choi matrix below this are dropped when extracting Kraus operators.
TOL_RANK = 1e-10


class DimensionError(ValueError):
    """Raised when array shapes or subsystem dimensions are incompatible."""


def res(m):
    """Row-major vectorization of a matrix."""
    m = np.asarray(m)
    if m.ndim != 2:
        raise DimensionError(f"res expects a matrix, got shape {m.shape}")
    return m.reshape(-1)


def unres(v, rows: int | None = None, cols: int | None = None):
    """Inverse of :func:`res`.

    With ``rows`` and ``cols`` omitted the vector must have a perfect-square
    length and a square matrix is returned.
    """
    v = np.asarray(v).reshape(-1)
    if rows is None and cols is None:
        rows = cols = _isqrt(v.size, "unres without explicit shape")
    elif cols is None:
        cols = v.size // rows
    elif rows is None:
        rows = v.size // cols
    if rows * cols != v.size:
        raise DimensionError(f"cannot reshape vector of length {v.size} into {rows}x{cols}")
    return v.reshape(rows, cols)


def _isqrt(n: int, what: str = "dimension") -> int:
    s = int(round(np.sqrt(n)))
    if s * s != n:
        raise DimensionError(f"{what}: {n} is not a perfect square")
    return s


def _check_subsystems(m, dims, systems):
    m = np.asarray(m)
    dims = [int(d) for d in dims]
    if any(d < 1 for d in dims):
        raise DimensionError(f"subsystem dimensions must be positive, got {dims}")
    total = int(np.prod(dims))
    if m.ndim != 2 or m.shape != (total, total):
        raise DimensionError(f"matrix of shape {m.shape} does not match dims {dims}")
    if np.isscalar(systems):
        systems = [systems]
    systems = [int(s) for s in systems]
    if len(set(systems)) != len(systems):
        raise ValueError(f"subsystem indices must be distinct, got {systems}")
    for s in systems:
        if not 1 <= s <= len(dims):
            raise IndexError(f"subsystem index {s} out of range for {len(dims)} subsystems")
    return m, dims, [s - 1 for s in systems]


def ptrace(m, dims: Sequence[int], traced):
    """Partial trace over the subsystems listed in ``traced`` (1-based)."""
    m, dims, axes = _check_subsystems(m, dims, traced)
    t = m.reshape(dims + dims)
    # Trace highest axes first so lower axis numbers stay valid.
    for k in sorted(axes, reverse=True):
        t = np.trace(t, axis1=k, axis2=k + t.ndim // 2)
    kept = int(np.prod([d for i, d in enumerate(dims) if i not in axes]))
    return t.reshape(kept, kept)


def ptranspose(m, dims: Sequence[int], transposed):
    """Partial transpose of the subsystems listed in ``transposed`` (1-based)."""
    m, dims, axes = _check_subsystems(m, dims, transposed)
    n = len(dims)
    perm = list(range(2 * n))
    for k in axes:
        perm[k], perm[k + n] = perm[k + n], perm[k]
    return m.reshape(dims + dims).transpose(perm).reshape(m.shape)


def reshuffle(m, dims=None):
    """Reshuffle a bipartite matrix: ``R[(m,mu),(n,nu)] = M[(m,n),(mu,nu)]``.

    ``dims`` may be ``None`` (square matrix with two equal square factors),
    a pair ``[d1, d2]`` used for both rows and columns, or a nested pair
    ``[[r1, r2], [c1, c2]]`` giving the row and column factorizations
    separately. The nested form is what maps a superoperator of shape
    ``(o*o, i*i)`` to a Choi matrix of shape ``(o*i, o*i)`` and back.
    """
    m = np.asarray(m)
    if m.ndim != 2:
        raise DimensionError(f"reshuffle expects a matrix, got shape {m.shape}")
    if dims is None:
        if m.shape[0] != m.shape[1]:
            raise DimensionError("reshuffle without dims needs a square matrix")
        d = _isqrt(m.shape[0], "reshuffle")
        rdims = cdims = (d, d)
    else:
        dims = list(dims)
        if np.ndim(dims[0]) == 0:
            rdims = cdims = (int(dims[0]), int(dims[1]))
        else:
            rdims = tuple(int(x) for x in dims[0])
            cdims = tuple(int(x) for x in dims[1])
    if rdims[0] * rdims[1] != m.shape[0] or cdims[0] * cdims[1] != m.shape[1]:
        raise DimensionError(f"shape {m.shape} does not factor as rows {rdims}, cols {cdims}")
    t = m.reshape(rdims[0], rdims[1], cdims[0], cdims[1])
    return t.transpose(0, 2, 1, 3).reshape(rdims[0] * cdims[0], rdims[1] * cdims[1])


def tensor(*factors):
    """Kronecker product, leftmost factor most significant."""
    if not factors:
        raise ValueError("tensor needs at least one factor")
    return reduce(np.kron, (np.asarray(f) for f in factors))


kron = tensor


def hermitian_part(m):
    m = np.asarray(m)
    return (m + m.conj().T) / 2


def is_hermitian(m, tol: float = TOL_HERM) -> bool:
    m = np.asarray(m)
    if m.ndim != 2 or m.shape[0] != m.shape[1]:
        return False
    scale = max(1.0, np.linalg.norm(m))
    return bool(np.linalg.norm(m - m.conj().T) <= tol * scale)


def herm_func(m, f: Callable[[np.ndarray], np.ndarray], psd: bool = False):
    """Apply a scalar function to a Hermitian matrix through its spectrum.

    Args:
        m: Hermitian matrix (within ``TOL_HERM``).
        f: Vectorized function applied to the eigenvalues.
        psd: If True, eigenvalues in ``[-TOL_EIG, 0)`` are clipped to zero
            and anything more negative raises ``ValueError``.

    Returns:
        ``V f(L) V^dagger`` where ``m = V L V^dagger``.
    """
    m = np.asarray(m)
    if not is_hermitian(m):
        raise ValueError("herm_func requires a Hermitian matrix")
    vals, vecs = np.linalg.eigh(hermitian_part(m))
    if psd:
        vals = _clip_spectrum(vals)
    with np.errstate(divide="raise", invalid="raise"):
        try:
            fv = np.asarray(f(vals))
        except FloatingPointError as exc:
            raise ValueError(f"function undefined on spectrum {vals}") from exc
    if not np.all(np.isfinite(fv)):
        raise ValueError(f"function undefined on spectrum {vals}")
    return (vecs * fv) @ vecs.conj().T


def _clip_spectrum(vals):
    if vals.size and vals.min() < -TOL_EIG:
        raise ValueError(f"matrix is not positive semidefinite (min eigenvalue {vals.min():.3e})")
    return np.where(vals < 0, 0.0, vals)
