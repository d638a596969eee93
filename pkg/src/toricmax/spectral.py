"""Spectral sequence of the orbit complex filtered by powers of the augmentation ideal.

Indexing: ``G^r[(p, q)]`` lives in chain degree ``p`` at filtration level
``q`` (``W^q = I^q A_p``, decreasing in ``q``), and the page differential is
``d^r: G^r[(p, q)] -> G^r[(p - 1, q + r)]``.  The sequence abuts to
``H_p``: summing ``G^inf[(p, q)]`` over ``q`` gives the ``p``-th Betti number.
In the classical bookkeeping with filtration degree ``s = -q`` and
complementary degree ``t = p + q`` the total degree is ``s + t``; see
:func:`tilde_dims`.

With ``Z_r(p, q) = {x in W^q A_p : D x in W^{q+r} A_{p-1}}`` and
``B_r(p, q) = W^q A_p & D(W^{q-r} A_{p+1})`` the pages are

    G^r(p, q) = Z_r(p, q) / (Z_{r-1}(p, q+1) + B_{r-1}(p, q))

all computed as honest subspaces of ``A_p``.
"""
from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .exterior_complex import ExteriorComplex, PageDims
from .f2 import (
    F2Matrix,
    F2Subspace,
    image_subspace,
    preimage_subspace,
    subspace_intersect,
    subspace_sum,
)
from .orbit_complex import OrbitChainComplex

__all__ = [
    "FilteredComplexView",
    "PageReport",
    "compute_pages",
    "degenerates_at_one",
    "check_s_condition",
    "s_table",
    "verify_g0_matches_e1",
    "verify_g1_equals_e2",
    "tilde_dims",
    "abutment",
]


class FilteredComplexView:
    """Differentials and filtration steps of an orbit complex.

    ``adapted=True`` works in the basis of coordinate-subspace classes, where
    each ``W^q`` is a coordinate subspace; ``adapted=False`` uses the basis of
    group elements and the generator-spanned ``I^q``.  Both describe the same
    filtered complex.
    """

    def __init__(self, complex: OrbitChainComplex, adapted: bool = True):
        self.complex = complex
        self.adapted = adapted
        self.n = complex.n
        self._W: dict[tuple[int, int], F2Subspace] = {}

    def dim(self, p: int) -> int:
        return self.complex.dims[p] if 0 <= p <= self.n else 0

    def D(self, p: int) -> F2Matrix:
        if p < 0 or p > self.n + 1:
            raise IndexError(p)
        if p == self.n + 1:
            return F2Matrix.zeros(self.dim(self.n), 0)
        return self.complex.adapted_D[p] if self.adapted else self.complex.D[p]

    def W(self, p: int, q: int) -> F2Subspace:
        if p < 0 or p > self.n:
            return F2Subspace.zero(0)
        q = min(max(q, 0), p + 1)
        key = (p, q)
        if key not in self._W:
            if not self.adapted:
                self._W[key] = self.complex.ideal_power(p, q)
            else:
                grades = self.complex.grades(p)
                self._W[key] = F2Subspace.coordinate(self.dim(p), np.flatnonzero(grades >= q))
        return self._W[key]


@dataclass
class PageReport:
    n: int
    r_max: int
    dims: list[PageDims]
    diff_ranks: list[PageDims]
    degenerate_at_one: bool
    s_table: dict[tuple[int, int], bool] = field(default_factory=dict)

    @property
    def infinity(self) -> PageDims:
        return self.dims[min(self.r_max, self.n + 1)]


class _Pages:
    def __init__(self, view: FilteredComplexView):
        self.v = view
        self.n = view.n
        self._pre: dict = {}
        self._img: dict = {}
        self._Z: dict = {}
        self._B: dict = {}

    def pre(self, p: int, level: int) -> F2Subspace:
        """``{x in A_p : D x in W^level A_{p-1}}``."""
        level = min(max(level, 0), p)
        key = (p, level)
        if key not in self._pre:
            if level == 0 or p == 0:
                out = F2Subspace.full(self.v.dim(p))
            else:
                out = preimage_subspace(self.v.D(p), self.v.W(p - 1, level))
            self._pre[key] = out
        return self._pre[key]

    def img(self, p: int, level: int) -> F2Subspace:
        """``D(W^level A_p)`` inside ``A_{p-1}``."""
        level = min(max(level, 0), p + 1)
        key = (p, level)
        if key not in self._img:
            if p > self.n:
                out = F2Subspace.zero(self.v.dim(p - 1))
            else:
                out = image_subspace(self.v.D(p), self.v.W(p, level))
            self._img[key] = out
        return self._img[key]

    def Z(self, p: int, q: int, r: int) -> F2Subspace:
        key = (p, q, min(max(q + r, 0), p))
        if key not in self._Z:
            self._Z[key] = subspace_intersect(self.v.W(p, q), self.pre(p, q + r))
        return self._Z[key]

    def B(self, p: int, q: int, r: int) -> F2Subspace:
        key = (p, q, min(max(q - r, 0), p + 2))
        if key not in self._B:
            self._B[key] = subspace_intersect(self.v.W(p, q), self.img(p + 1, q - r))
        return self._B[key]

    def den(self, p: int, q: int, r: int) -> F2Subspace:
        return subspace_sum(self.Z(p, q + 1, r - 1), self.B(p, q, r - 1))

    def page_dim(self, p: int, q: int, r: int) -> int:
        return self.Z(p, q, r).dim - self.den(p, q, r).dim

    def rank_out(self, p: int, q: int, r: int) -> int:
        """Rank of ``d^r`` leaving ``(p, q)``: ``Z_r`` modulo the lifts of its kernel."""
        if not (0 <= p <= self.n and 0 <= q <= p):
            return 0
        kernel = subspace_sum(self.Z(p, q, r + 1), self.den(p, q, r))
        return self.Z(p, q, r).dim - kernel.dim


def compute_pages(view: FilteredComplexView, r_max: int | None = None) -> PageReport:
    n = view.n
    if r_max is None:
        r_max = n + 2
    if r_max < 1:
        raise ValueError("r_max must be at least 1")
    eng = _Pages(view)
    dims: list[PageDims] = []
    ranks: list[PageDims] = []
    for r in range(r_max + 1):
        dims.append({(p, q): eng.page_dim(p, q, r) for p in range(n + 1) for q in range(p + 1)})
        ranks.append({(p, q): eng.rank_out(p, q, r) for p in range(n + 1) for q in range(p + 1)})
    # each page is the homology of the previous one
    for r in range(r_max):
        for (p, q), d in dims[r].items():
            expected = d - ranks[r][(p, q)] - eng.rank_out(p + 1, q - r, r)
            if dims[r + 1][(p, q)] != expected:
                raise AssertionError(
                    f"page {r + 1} at {(p, q)}: {dims[r + 1][(p, q)]} != {expected}"
                )
    degenerate = all(v == 0 for r in range(1, r_max + 1) for v in ranks[r].values())
    report = PageReport(n, r_max, dims, ranks, degenerate)
    report.s_table = s_table(view, _engine=eng)
    return report


def degenerates_at_one(pr: PageReport) -> bool:
    if pr.r_max <= pr.n:
        raise ValueError(f"pages up to r={pr.r_max} cannot decide degeneration in dimension {pr.n}")
    return all(v == 0 for r in range(1, pr.r_max + 1) for v in pr.diff_ranks[r].values())


def check_s_condition(view: FilteredComplexView, p: int, q: int, _engine: _Pages | None = None) -> bool:
    """Every chain of level ``q`` whose boundary has level ``q + 1`` shares its
    boundary with a chain of level ``q + 1``."""
    if not (0 <= p <= view.n and 0 <= q <= view.n):
        raise ValueError(f"({p}, {q}) outside 0..{view.n}")
    if q > p or p == 0:
        return True
    eng = _engine or _Pages(view)
    lhs = subspace_intersect(eng.img(p, q), view.W(p - 1, q + 1))
    return lhs == eng.img(p, q + 1)


def s_table(view: FilteredComplexView, _engine: _Pages | None = None) -> dict[tuple[int, int], bool]:
    eng = _engine or _Pages(view)
    return {
        (p, q): check_s_condition(view, p, q, eng)
        for p in range(view.n + 1)
        for q in range(view.n + 1)
    }


def verify_g0_matches_e1(view: FilteredComplexView, x: ExteriorComplex) -> bool:
    """The differential induced on ``G^0``, read through ``psi``, equals ``d1``."""
    c = view.complex
    if x.fan is not c.fan and x.fan.key() != c.fan.key():
        raise ValueError("complexes come from different fans")
    for p in range(1, c.n + 1):
        dense = c.adapted_D[p].to_dense()
        src, dst = c.grades(p), c.grades(p - 1)
        for q in range(p + 1):
            cols = np.flatnonzero(src == q)
            # the boundary of a level-q chain has no component below level q
            if dense[np.ix_(np.flatnonzero(dst < q), cols)].any():
                return False
            block = dense[np.ix_(np.flatnonzero(dst == q), cols)]
            if not np.array_equal(block, x.d1[(p, q)].to_dense()):
                return False
    return True


def verify_g1_equals_e2(pr: PageReport, e2: PageDims) -> bool:
    keys = set(pr.dims[1]) | set(e2)
    return all(pr.dims[1].get(k, 0) == e2.get(k, 0) for k in keys)


def tilde_dims(dims: PageDims) -> PageDims:
    """Re-key ``(p, q) -> (s, t) = (-q, p + q)``, whose total degree ``s + t`` is ``p``."""
    return {(-q, p + q): d for (p, q), d in dims.items()}


def abutment(dims: PageDims, n: int) -> list[int]:
    """Total dimension in each total degree ``s + t``."""
    out = [0] * (n + 1)
    for (s, t), d in tilde_dims(dims).items():
        out[s + t] += d
    return out
