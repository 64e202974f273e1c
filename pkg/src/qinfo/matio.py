"""Plain-text complex matrix format.

Line one holds ``rows cols``; each following line holds one row of
``cols`` whitespace-separated tokens of the form ``RE+IMj`` / ``RE-IMj``
written with 17 significant digits, which round-trips float64 exactly.
"""

from __future__ import annotations

import os

import numpy as np

__all__ = ["dump_matrix", "read_matrix", "format_matrix", "parse_matrix"]


def _token(z: complex) -> str:
    return f"{z.real:.17g}{z.imag:+.17g}j"


def format_matrix(m) -> str:
    m = np.asarray(m, dtype=complex)
    if m.ndim == 1:
        m = m.reshape(-1, 1)
    if m.ndim != 2:
        raise ValueError(f"expected a vector or matrix, got shape {m.shape}")
    lines = [f"{m.shape[0]} {m.shape[1]}"]
    lines += [" ".join(_token(z) for z in row) for row in m]
    return "\n".join(lines) + "\n"


def parse_matrix(text: str) -> np.ndarray:
    lines = [ln for ln in text.splitlines() if ln.strip()]
    if not lines:
        raise ValueError("empty matrix file")
    rows, cols = (int(x) for x in lines[0].split())
    body = lines[1:]
    if len(body) != rows:
        raise ValueError(f"expected {rows} rows, found {len(body)}")
    out = np.empty((rows, cols), dtype=complex)
    for i, line in enumerate(body):
        tokens = line.split()
        if len(tokens) != cols:
            raise ValueError(f"row {i} has {len(tokens)} entries, expected {cols}")
        out[i] = [complex(t) for t in tokens]
    return out


def dump_matrix(m, path: str | os.PathLike) -> None:
    with open(path, "w", encoding="ascii") as fh:
        fh.write(format_matrix(m))


def read_matrix(path: str | os.PathLike) -> np.ndarray:
    with open(path, encoding="ascii") as fh:
        return parse_matrix(fh.read())
