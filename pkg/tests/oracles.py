"""Reference implementations used only by the tests.

They share no code with the package: plain ``numpy`` elimination on unpacked
0/1 arrays and brute-force enumeration of small vector spaces.
"""
from __future__ import annotations

import itertools

import numpy as np


def dense_rank(a) -> int:
    a = (np.array(a, dtype=np.uint8) & 1).copy()
    if a.size == 0:
        return 0
    r = 0
    rows, cols = a.shape
    for c in range(cols):
        hit = next((i for i in range(r, rows) if a[i, c]), None)
        if hit is None:
            continue
        a[[r, hit]] = a[[hit, r]]
        for i in range(rows):
            if i != r and a[i, c]:
                a[i] ^= a[r]
        r += 1
        if r == rows:
            break
    return r


def span_set(vectors, n: int) -> frozenset[tuple[int, ...]]:
    """All elements of the span, by closure under addition."""
    out = {tuple([0] * n)}
    for v in vectors:
        v = tuple(int(x) & 1 for x in v)
        out |= {tuple(a ^ b for a, b in zip(x, v)) for x in out}
    return frozenset(out)


def all_vectors(n: int):
    return [tuple(bits) for bits in itertools.product((0, 1), repeat=n)]


def apply(m, x) -> tuple[int, ...]:
    return tuple(int(v) for v in (np.asarray(m, dtype=np.int64) @ np.asarray(x, dtype=np.int64)) % 2)


def homology_dims(boundaries, dims) -> list[int]:
    """``dims[p] - rank d_p - rank d_{p+1}`` from dense boundary matrices ``d_p: C_p -> C_{p-1}``."""
    ranks = [dense_rank(d) if np.size(d) else 0 for d in boundaries] + [0]
    return [dims[p] - ranks[p] - ranks[p + 1] for p in range(len(dims))]
