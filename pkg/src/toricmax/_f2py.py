"""Pure numpy implementations of the GF(2) kernels in ``_f2core``.

Same calling conventions as the compiled module: matrices are C-contiguous
``uint64`` arrays of packed rows, little-endian bit order within each word.
"""
from __future__ import annotations

import numpy as np

_ONE = np.uint64(1)


def _column_bits(w: np.ndarray, col: int) -> np.ndarray:
    return (w[:, col >> 6] >> np.uint64(col & 63)) & _ONE


def rref_inplace(w: np.ndarray, ncols: int) -> list[int]:
    nrows = w.shape[0]
    rank = 0
    pivots = []
    for col in range(ncols):
        if rank == nrows:
            break
        wi = col >> 6
        hits = np.flatnonzero(_column_bits(w[rank:], col))
        if hits.size == 0:
            continue
        piv = rank + int(hits[0])
        if piv != rank:
            w[[rank, piv]] = w[[piv, rank]]
        mask = _column_bits(w, col).astype(bool)
        mask[rank] = False
        if mask.any():
            w[mask, wi:] ^= w[rank, wi:]
        pivots.append(col)
        rank += 1
    return pivots


def echelon_rank(w: np.ndarray, ncols: int) -> int:
    nrows = w.shape[0]
    rank = 0
    for col in range(ncols):
        if rank == nrows:
            break
        wi = col >> 6
        hits = np.flatnonzero(_column_bits(w[rank:], col))
        if hits.size == 0:
            continue
        piv = rank + int(hits[0])
        if piv != rank:
            w[[rank, piv]] = w[[piv, rank]]
        below = w[rank + 1:]
        mask = _column_bits(below, col).astype(bool)
        if mask.any():
            below[mask, wi:] ^= w[rank, wi:]
        rank += 1
    return rank


def matmul(a: np.ndarray, inner: int, b: np.ndarray) -> np.ndarray:
    out = np.zeros((a.shape[0], b.shape[1]), dtype=np.uint64)
    for k in range(inner):
        mask = _column_bits(a, k).astype(bool)
        if mask.any():
            out[mask] ^= b[k]
    return out
