"""Measurements modelled as quantum operations.

A POVM measurement destroys the system and returns a classical
(diagonal) state of outcome probabilities. A post-selection measurement
keeps the system and returns the sub-normalized post-measurement state
for one chosen outcome.
"""

from __future__ import annotations

import numpy as np

from .channels import QuantumChannel
from .tensorops import TOL_EIG, TOL_TP, DimensionError, hermitian_part, is_hermitian

__all__ = ["POVMMeasurement", "PostSelectionMeasurement", "ispovm", "iseffect"]


class POVMMeasurement(QuantumChannel):
    """``rho -> sum_xi tr(rho mu(xi)) |xi><xi|`` with outcomes labelled 0..n-1."""

    def __init__(self, effects):
        effects = [np.asarray(e) for e in effects]
        if not effects:
            raise ValueError("a POVM needs at least one effect")
        d = effects[0].shape[0]
        if any(e.shape != (d, d) for e in effects):
            raise DimensionError("POVM effects must be square matrices of a common size")
        self.effects = effects
        self.idim = d
        self.odim = len(effects)

    def probabilities(self, rho) -> np.ndarray:
        rho = np.asarray(rho)
        if rho.shape != (self.idim, self.idim):
            raise DimensionError(f"state of shape {rho.shape} does not match idim {self.idim}")
        # tr(rho E) without forming the product.
        return np.array([np.sum(rho * e.T) for e in self.effects]).real

    def _apply(self, rho):
        return np.diag(self.probabilities(rho)).astype(complex)

    def kraus_operators(self):
        ops = []
        for xi, e in enumerate(self.effects):
            vals, vecs = np.linalg.eigh(hermitian_part(e))
            for lam, v in zip(vals, vecs.T):
                if lam > TOL_EIG:
                    k = np.zeros((self.odim, self.idim), dtype=complex)
                    k[xi] = np.sqrt(lam) * v.conj()
                    ops.append(k)
        if not ops:
            ops.append(np.zeros((self.odim, self.idim), dtype=complex))
        return ops


class PostSelectionMeasurement(QuantumChannel):
    """Single-outcome measurement ``rho -> mu rho mu^dagger``."""

    def __init__(self, effect):
        m = np.asarray(effect)
        if m.ndim != 2:
            raise DimensionError("effect must be a matrix")
        self.matrix = m
        self.odim, self.idim = m.shape

    def kraus_operators(self):
        return [self.matrix]

    def _apply(self, rho):
        return self.matrix @ rho @ self.matrix.conj().T


def _is_psd(e) -> bool:
    if not is_hermitian(e):
        return False
    vals = np.linalg.eigvalsh(hermitian_part(e))
    return bool(vals.min() >= -TOL_EIG)


def ispovm(effects) -> bool:
    """Every effect positive semidefinite and all of them summing to the identity."""
    if isinstance(effects, POVMMeasurement):
        effects = effects.effects
    effects = [np.asarray(e) for e in effects]
    if not effects or any(e.ndim != 2 or e.shape != effects[0].shape for e in effects):
        return False
    if not all(_is_psd(e) for e in effects):
        return False
    return bool(np.linalg.norm(sum(effects) - np.eye(effects[0].shape[0])) <= TOL_TP)


def iseffect(effect) -> bool:
    """Whether ``mu`` is a valid post-selection operator, i.e. ``mu^dagger mu <= I``."""
    if isinstance(effect, PostSelectionMeasurement):
        effect = effect.matrix
    m = np.asarray(effect)
    if m.ndim != 2:
        return False
    vals = np.linalg.eigvalsh(hermitian_part(m.conj().T @ m))
    return bool(vals.max() <= 1 + TOL_TP)
