"""Exterior-power complex of the complex toric variety (its ``E^1`` page).

``E1[p][q]`` is the sum over cones ``s`` of dimension ``n - p`` of
``wedge^q (V / [s]_2)``; its basis is ``(cone, I)`` with ``I`` a ``q``-subset
of the quotient coordinates in colexicographic order.  The differential from
a cone to a covering cone is the ``q``-th exterior power of the induced
projection, whose entries are ``q x q`` minors.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from functools import lru_cache
from math import comb

import numpy as np

from .f2 import F2Matrix, rank
from .fan import Fan
from .lattice import induced_map
from .orbit_complex import monomials

__all__ = [
    "ExteriorComplex",
    "PageDims",
    "build_exterior_complex",
    "exterior_power",
    "det_f2",
    "e2_dims",
]

PageDims = dict[tuple[int, int], int]


def det_f2(dense: np.ndarray) -> int:
    """Determinant over GF(2) of a small square 0/1 array."""
    a = (np.asarray(dense, dtype=np.uint8) & 1).copy()
    n = a.shape[0]
    for col in range(n):
        hits = np.flatnonzero(a[col:, col])
        if hits.size == 0:
            return 0
        piv = col + int(hits[0])
        if piv != col:
            a[[col, piv]] = a[[piv, col]]
        below = np.flatnonzero(a[col + 1 :, col]) + col + 1
        a[below] ^= a[col]
    return 1


@lru_cache(maxsize=4096)
def exterior_power(f: F2Matrix, q: int) -> F2Matrix:
    """``wedge^q f``: entry ``(J, I)`` is the minor of ``f`` on rows ``J``, columns ``I``."""
    rows, cols = monomials(f.nrows, q), monomials(f.ncols, q)
    dense = f.to_dense()
    out = np.zeros((len(rows), len(cols)), dtype=np.uint8)
    row_idx = [[i for i in range(f.nrows) if (J >> i) & 1] for J in rows]
    col_idx = [[j for j in range(f.ncols) if (I >> j) & 1] for I in cols]
    for b, ci in enumerate(col_idx):
        for a, ri in enumerate(row_idx):
            out[a, b] = det_f2(dense[np.ix_(ri, ci)]) if q else 1
    return F2Matrix.from_dense(out, len(cols))


@dataclass
class ExteriorComplex:
    fan: Fan
    n: int
    blocks: list[list[int]]
    dims: dict[tuple[int, int], int]
    d1: dict[tuple[int, int], F2Matrix] = field(repr=False)

    def labels(self, p: int, q: int) -> list[tuple[int, int]]:
        return [(cid, I) for cid in self.blocks[p] for I in monomials(p, q)]


def build_exterior_complex(fan: Fan) -> ExteriorComplex:
    n = fan.n
    blocks = [[c.id for c in fan.cones_of_dim(n - p)] for p in range(n + 1)]
    dims = {(p, q): len(blocks[p]) * comb(p, q) for p in range(n + 1) for q in range(n + 1)}
    d1: dict[tuple[int, int], F2Matrix] = {}
    for q in range(n + 1):
        d1[(0, q)] = F2Matrix.zeros(0, dims[(0, q)])
    for p in range(1, n + 1):
        lower = {cid: k for k, cid in enumerate(blocks[p - 1])}
        for q in range(n + 1):
            src, dst = comb(p, q), comb(p - 1, q)
            dense = np.zeros((dims[(p - 1, q)], dims[(p, q)]), dtype=np.uint8)
            if src and dst:
                for k, tau_id in enumerate(blocks[p]):
                    tau = fan.cones[tau_id]
                    for sigma_id in fan.covers_from[tau_id]:
                        f = induced_map(tau.mod2, fan.cones[sigma_id].mod2)
                        r0 = lower[sigma_id] * dst
                        dense[r0 : r0 + dst, k * src : (k + 1) * src] = exterior_power(f, q).to_dense()
            d1[(p, q)] = F2Matrix.from_dense(dense, dims[(p, q)])
    return ExteriorComplex(fan, n, blocks, dims, d1)


def e2_dims(x: ExteriorComplex) -> PageDims:
    """Homology of ``(E1, d1)`` at every ``(p, q)`` with ``q <= p``."""
    ranks = {key: rank(m) for key, m in x.d1.items()}
    out: PageDims = {}
    for p in range(x.n + 1):
        for q in range(p + 1):
            out[(p, q)] = x.dims[(p, q)] - ranks[(p, q)] - ranks.get((p + 1, q), 0)
    return out
