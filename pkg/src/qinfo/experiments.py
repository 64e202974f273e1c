"""Noisy teleportation experiment and the timing benchmark harness."""

from __future__ import annotations

import math
import sys
import time
from dataclasses import dataclass
from typing import Callable, Sequence

import numpy as np

from .channels import (
    IdentityChannel,
    QuantumChannel,
    SuperOperator,
    UnitaryChannel,
    amplitude_damping,
    compose_parallel,
    convert,
)
from .functionals import fidelity, trace_distance, vonneumann_entropy
from .measurements import PostSelectionMeasurement
from .randobj import CUE, ChoiJamiolkowskiMatrices, HaarKet, HilbertSchmidtStates, derive_stream
from .states import hadamard, ket, max_mixed, pauli_x, pauli_z, proj
from .tensorops import hermitian_part, ptrace, unres

__all__ = [
    "NumericalError",
    "TeleportSpec",
    "BenchmarkSpec",
    "TASKS",
    "BENCH_COLUMNS",
    "TELEPORT_COLUMNS",
    "stationary_state",
    "teleportation_circuit",
    "teleport_trial",
    "run_teleportation",
    "run_benchmark",
]

BENCH_COLUMNS = ("task", "dim", "steps", "total_seconds", "mean_seconds")
TELEPORT_COLUMNS = ("gamma", "mean_fidelity", "branch0", "branch1", "branch2", "branch3")


class NumericalError(ArithmeticError):
    """A numerical procedure could not produce a trustworthy result."""


def stationary_state(channel: QuantumChannel, tol: float = 1e-6) -> np.ndarray:
    """Fixed point of a channel from the eigenvalue-1 eigenvector of its superoperator.

    The eigenvector is reshaped into a matrix, divided by its trace (which
    also removes the arbitrary global phase), made Hermitian and
    renormalized.
    """
    if channel.idim != channel.odim:
        raise ValueError("stationary states need idim == odim")
    vals, vecs = np.linalg.eig(channel.superoperator())
    k = int(np.argmin(np.abs(vals - 1)))
    if abs(vals[k] - 1) > tol:
        raise NumericalError(f"no eigenvalue within {tol} of 1 (closest {vals[k]})")
    x = unres(vecs[:, k], channel.odim, channel.odim)
    x = hermitian_part(x / np.trace(x))
    return x / np.trace(x).real


# -- teleportation -------------------------------------------------------------

_CNOT = np.array([[1, 0, 0, 0], [0, 1, 0, 0], [0, 0, 0, 1], [0, 0, 1, 0]], dtype=complex)
_BELL = (ket(0, 4) + ket(3, 4)) / np.sqrt(2)
_POSTSELECT = [PostSelectionMeasurement(np.kron(proj(ket(i, 4)), np.eye(2))) for i in range(4)]
_CORRECTIONS = [
    UnitaryChannel(np.eye(2, dtype=complex)),
    UnitaryChannel(pauli_x),
    UnitaryChannel(pauli_z),
    UnitaryChannel(pauli_x @ pauli_z),
]


@dataclass(frozen=True)
class TeleportSpec:
    gamma_start: float = 0.0
    gamma_stop: float = 1.0
    gamma_step: float = 0.01
    trials: int = 100
    seed: int = 42

    def __post_init__(self):
        if not 0 <= self.gamma_start <= self.gamma_stop <= 1:
            raise ValueError("need 0 <= gamma_start <= gamma_stop <= 1")
        if not 0 < self.gamma_step:
            raise ValueError("gamma_step must be positive")
        if self.trials < 1:
            raise ValueError("trials must be positive")

    def gammas(self) -> np.ndarray:
        n = int(math.floor((self.gamma_stop - self.gamma_start) / self.gamma_step + 1e-9)) + 1
        return np.minimum(self.gamma_start + self.gamma_step * np.arange(n), self.gamma_stop)


def teleportation_circuit(gamma: float) -> QuantumChannel:
    """Noise on Bob's half of the Bell pair, then Alice's CNOT and Hadamard.

    Qubit order: input, Alice's half, Bob's half.
    """
    noise = compose_parallel(IdentityChannel(4), amplitude_damping(gamma))
    cnot = compose_parallel(UnitaryChannel(_CNOT), IdentityChannel(2))
    had = compose_parallel(UnitaryChannel(hadamard(2)), IdentityChannel(4))
    return had @ cnot @ noise


def teleport_trial(circuit: QuantumChannel, phi) -> tuple[np.ndarray, np.ndarray]:
    """Branch fidelities and branch probabilities for one input ket ``phi``."""
    rho = circuit(np.kron(phi, _BELL))
    fids = np.empty(4)
    probs = np.empty(4)
    for j, (post, fix) in enumerate(zip(_POSTSELECT, _CORRECTIONS)):
        sigma = fix(ptrace(post(rho), [2, 2, 2], [1, 2]))
        p = np.trace(sigma).real
        probs[j] = p
        fids[j] = fidelity(phi, sigma / p) if p > 0 else np.nan
    return fids, probs


def run_teleportation(spec: TeleportSpec, with_probabilities: bool = False):
    """Mean teleportation fidelity over Haar-random inputs for each gamma.

    Each gamma gets its own stream ``derive_stream(seed, k)``. Returns a
    list of dict rows keyed by :data:`TELEPORT_COLUMNS`; with
    ``with_probabilities`` also returns an array of branch probabilities of
    shape ``(n_gamma, trials, 4)``.
    """
    haar = HaarKet(2)
    rows, all_probs = [], []
    for k, gamma in enumerate(spec.gammas()):
        rng = derive_stream(spec.seed, k)
        circuit = teleportation_circuit(float(gamma))
        fids = np.empty((spec.trials, 4))
        probs = np.empty((spec.trials, 4))
        for i in range(spec.trials):
            fids[i], probs[i] = teleport_trial(circuit, haar.sample(rng))
        branch = fids.mean(axis=0)
        rows.append({
            "gamma": float(gamma),
            "mean_fidelity": float(branch.mean()),
            **{f"branch{j}": float(branch[j]) for j in range(4)},
        })
        all_probs.append(probs)
    if with_probabilities:
        return rows, np.array(all_probs)
    return rows


# -- benchmarks ----------------------------------------------------------------


def _channel_dim(d: int) -> int:
    return max(1, round(math.sqrt(d)))


def _rand_unitary(d, rng):
    dist = CUE(d)
    return lambda: dist.sample(rng)


def _rand_pure(d, rng):
    dist = HaarKet(d)
    return lambda: dist.sample(rng)


def _rand_mixed(d, rng):
    dist = HilbertSchmidtStates(d)
    return lambda: dist.sample(rng)


def _rand_channel(d, rng):
    dist = ChoiJamiolkowskiMatrices(_channel_dim(d))
    return lambda: convert(dist.sample(rng), SuperOperator)


def _tracedist_maxmixed(d, rng):
    dist = HilbertSchmidtStates(d)
    rho = max_mixed(d)
    return lambda: trace_distance(dist.sample(rng), rho)


def _tracedist_pair(d, rng):
    dist = HilbertSchmidtStates(d)
    return lambda: trace_distance(dist.sample(rng), dist.sample(rng))


def _stationary_entropy(d, rng):
    dist = ChoiJamiolkowskiMatrices(_channel_dim(d))

    def body():
        channel = dist.sample(rng)
        rho = stationary_state(channel)
        return channel, rho, vonneumann_entropy(rho)

    return body


TASKS: dict[str, Callable] = {
    "rand_unitary": _rand_unitary,
    "rand_pure": _rand_pure,
    "rand_mixed": _rand_mixed,
    "rand_channel": _rand_channel,
    "tracedist_maxmixed": _tracedist_maxmixed,
    "tracedist_pair": _tracedist_pair,
    "stationary_entropy": _stationary_entropy,
}
_TASK_INDEX = {name: i for i, name in enumerate(TASKS)}


@dataclass(frozen=True)
class BenchmarkSpec:
    """``rand_channel`` and ``stationary_entropy`` use channels on ``round(sqrt(dim))``
    levels, so their superoperators are ``dim x dim``."""

    task: str
    dims: Sequence[int] = (4, 16, 64, 256, 1024)
    steps: int = 1000
    seed: int = 42

    def __post_init__(self):
        if self.task != "all" and self.task not in TASKS:
            raise ValueError(f"unknown task {self.task!r}; choose from {', '.join(TASKS)} or 'all'")
        if not self.dims or any(int(d) < 1 for d in self.dims):
            raise ValueError("dims must be a nonempty list of positive integers")
        if self.steps < 1:
            raise ValueError("steps must be positive")

    def tasks(self) -> list[str]:
        return list(TASKS) if self.task == "all" else [self.task]


def run_benchmark(spec: BenchmarkSpec, observer: Callable | None = None) -> list[dict]:
    """Time ``spec.steps`` iterations of each task body for each dimension.

    Setup and one warm-up iteration are excluded from the timings. Each
    (task, dim) cell samples from stream ``derive_stream(seed, task_index
    * 2**20 + dim)``. ``observer(task, dim, result)``, if given, is called
    on every timed iteration's result outside the timed region.
    """
    rows = []
    for task in spec.tasks():
        for d in (int(x) for x in spec.dims):
            rng = derive_stream(spec.seed, _TASK_INDEX[task] * 2**20 + d)
            try:
                body = TASKS[task](d, rng)
                body()
                total = 0.0
                for _ in range(spec.steps):
                    t0 = time.perf_counter()
                    result = body()
                    total += time.perf_counter() - t0
                    if observer is not None:
                        observer(task, d, result)
            except MemoryError:
                print(f"warning: {task} at dim {d} ran out of memory", file=sys.stderr)
                total = float("nan")
            rows.append({
                "task": task,
                "dim": d,
                "steps": spec.steps,
                "total_seconds": total,
                "mean_seconds": total / spec.steps,
            })
    return rows
