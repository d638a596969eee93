"""The orbit chain complex of a real toric variety and its ideal filtration.

Degree ``p`` of the complex is the sum, over cones ``s`` of dimension
``n - p``, of the group algebra ``F2[V / [s]_2]``; a basis element is a pair
``(cone, x)`` with ``x`` an element of the quotient written as a little-endian
bitmask.  Every cone in degree ``p`` has a quotient of dimension exactly ``p``.

Inside one group algebra ``F2[F2^m]``:

* the class of a subspace ``H`` is the indicator chain ``sum_{v in H} [v]``;
* ``I^q`` is spanned by the classes of ``q``-dimensional subspaces;
* ``psi`` sends the monomial ``e_I`` to the class of ``span(e_i : i in I)``,
  so the class of a coordinate subspace is the indicator of all submasks of
  ``I``.  Monomials are ordered by grade, then colexicographically (which is
  the order of their bitmasks).
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass
from functools import cached_property, lru_cache
from math import comb
from typing import Iterator, Sequence

import numpy as np

from .f2 import (
    F2Matrix,
    F2Subspace,
    block_diagonal,
    inverse,
    rank,
)
from .fan import Fan
from .lattice import induced_map

__all__ = [
    "GroupAlgebraChain",
    "OrbitChainComplex",
    "build_orbit_complex",
    "betti_real",
    "class_of_subspace",
    "ideal_power",
    "ideal_power_subspace",
    "enumerate_subspaces",
    "monomials",
    "graded_monomials",
    "psi",
    "psi_matrix",
    "psi_inverse",
    "exterior_class",
    "section_map",
    "section_matrix",
    "push_forward",
]


def _bits(x: int) -> Iterator[int]:
    i = 0
    while x:
        if x & 1:
            yield i
        x >>= 1
        i += 1


@dataclass(frozen=True)
class GroupAlgebraChain:
    """Element of ``F2[F2^m]``; bit ``x`` of ``support`` is the coefficient of ``[x]``."""

    m: int
    support: int
    cone_id: int | None = None

    @classmethod
    def unit(cls, m: int, cone_id: int | None = None) -> GroupAlgebraChain:
        return cls(m, 1, cone_id)

    @classmethod
    def point(cls, m: int, x: int, cone_id: int | None = None) -> GroupAlgebraChain:
        return cls(m, 1 << x, cone_id)

    @classmethod
    def from_vector(cls, m: int, vec, cone_id: int | None = None) -> GroupAlgebraChain:
        support = 0
        for x, c in enumerate(vec):
            if int(c) & 1:
                support |= 1 << x
        return cls(m, support, cone_id)

    def elements(self) -> list[int]:
        return list(_bits(self.support))

    def to_vector(self) -> np.ndarray:
        out = np.zeros(1 << self.m, dtype=np.uint8)
        out[self.elements()] = 1
        return out

    def augmentation(self) -> int:
        return self.support.bit_count() & 1

    def in_augmentation_ideal(self) -> bool:
        return self.augmentation() == 0

    def _check(self, other: GroupAlgebraChain) -> None:
        if other.m != self.m:
            raise ValueError(f"chains live in F2[F2^{self.m}] and F2[F2^{other.m}]")

    def __add__(self, other: GroupAlgebraChain) -> GroupAlgebraChain:
        self._check(other)
        return GroupAlgebraChain(self.m, self.support ^ other.support, self.cone_id)

    def __mul__(self, other: GroupAlgebraChain) -> GroupAlgebraChain:
        self._check(other)
        out = 0
        mine = self.elements()
        for b in other.elements():
            for a in mine:
                out ^= 1 << (a ^ b)
        return GroupAlgebraChain(self.m, out, self.cone_id)

    def __bool__(self) -> bool:
        return self.support != 0


# -- subspaces and their classes ------------------------------------------


def enumerate_subspaces(m: int, q: int) -> Iterator[tuple[int, ...]]:
    """Canonical bases (as row bitmasks) of all ``q``-dim subspaces of ``F2^m``."""
    for pivots in itertools.combinations(range(m), q):
        pivset = set(pivots)
        frees = [[j for j in range(p + 1, m) if j not in pivset] for p in pivots]
        slots = [(i, j) for i, fr in enumerate(frees) for j in fr]
        for assignment in itertools.product((0, 1), repeat=len(slots)):
            rows = [1 << p for p in pivots]
            for (i, j), bit in zip(slots, assignment):
                if bit:
                    rows[i] |= 1 << j
            yield tuple(rows)


def _span_elements(basis: Sequence[int]) -> list[int]:
    out = [0]
    for b in basis:
        out += [x ^ b for x in out]
    return out


def _class_support(basis: Sequence[int]) -> int:
    support = 0
    for x in _span_elements(basis):
        support |= 1 << x
    return support


def class_of_subspace(h: F2Subspace, cone_id: int | None = None) -> GroupAlgebraChain:
    """``[H] = sum_{v in H} [v]`` in ``F2[F2^m]`` with ``m = h.ambient_dim``."""
    return GroupAlgebraChain(h.ambient_dim, _class_support(h.basis.row_masks()), cone_id)


def push_forward(chain: GroupAlgebraChain, f: F2Matrix, cone_id: int | None = None) -> GroupAlgebraChain:
    """Image under the algebra map induced by the linear map ``f``: ``[x] -> [f x]``."""
    if f.ncols != chain.m:
        raise ValueError(f"map starts at F2^{f.ncols}, chain lives over F2^{chain.m}")
    images = _images(f)
    out = 0
    for x in chain.elements():
        out ^= 1 << int(images[x])
    return GroupAlgebraChain(f.nrows, out, cone_id)


def _images(f: F2Matrix) -> np.ndarray:
    """``f x`` as bitmasks for every ``x`` in ``F2^{f.ncols}``."""
    xs = np.arange(1 << f.ncols, dtype=np.int64)
    out = np.zeros_like(xs)
    cols = f.T.row_masks() if f.nrows else [0] * f.ncols
    for j, col in enumerate(cols):
        out ^= ((xs >> j) & 1) * col
    return out


# -- monomials, psi, sections ---------------------------------------------


@lru_cache(maxsize=None)
def monomials(m: int, q: int) -> tuple[int, ...]:
    """``q``-subsets of ``{0..m-1}`` as bitmasks, colexicographic order."""
    return tuple(x for x in range(1 << m) if x.bit_count() == q)


@lru_cache(maxsize=None)
def graded_monomials(m: int) -> tuple[int, ...]:
    return tuple(x for q in range(m + 1) for x in monomials(m, q))


def _check_coords(q: int, m: int, w: Sequence[int]) -> list[int]:
    w = [int(x) & 1 for x in w]
    if len(w) != comb(m, q):
        raise ValueError(f"expected {comb(m, q)} coordinates for degree {q} over F2^{m}")
    return w


def psi(q: int, w: Sequence[int], m: int, cone_id: int | None = None) -> GroupAlgebraChain:
    """Representative in ``I^q`` of ``psi_q(w)``, ``w`` in monomial coordinates."""
    w = _check_coords(q, m, w)
    support = 0
    for coef, mask in zip(w, monomials(m, q)):
        if coef:
            support ^= _class_support([1 << i for i in _bits(mask)])
    return GroupAlgebraChain(m, support, cone_id)


@lru_cache(maxsize=None)
def psi_matrix(m: int) -> F2Matrix:
    """Columns: classes of coordinate subspaces, in graded monomial order."""
    size = 1 << m
    dense = np.zeros((size, size), dtype=np.uint8)
    xs = np.arange(size)
    for col, mask in enumerate(graded_monomials(m)):
        dense[(xs & ~mask) == 0, col] = 1
    return F2Matrix.from_dense(dense, size)


@lru_cache(maxsize=None)
def psi_inverse(m: int) -> F2Matrix:
    return inverse(psi_matrix(m))


def exterior_class(q: int, chain: GroupAlgebraChain) -> tuple[int, ...]:
    """Class of ``chain`` in ``I^q / I^{q+1}`` as exterior coordinates (the map ``f^q``).

    Raises ``ValueError`` if the chain is not in ``I^q``.
    """
    m = chain.m
    coords = (psi_inverse(m) @ F2Matrix.from_dense(chain.to_vector()[:, None])).to_dense()[:, 0]
    grades = [x.bit_count() for x in graded_monomials(m)]
    if any(c and g < q for c, g in zip(coords, grades)):
        raise ValueError(f"chain is not in I^{q}")
    return tuple(int(c) for c, g in zip(coords, grades) if g == q)


def section_map(
    q: int, e: Sequence[int], w: Sequence[int], cone_id: int | None = None
) -> GroupAlgebraChain:
    """``s^q(w) = sum_I w_I [span(e_i : i in I)]`` for the ordered basis ``e`` (bitmasks)."""
    m = len(e)
    w = _check_coords(q, m, w)
    if F2Subspace.span(F2Matrix.from_masks(e, m)).dim != m:
        raise ValueError("e is not a basis")
    support = 0
    for coef, mask in zip(w, monomials(m, q)):
        if coef:
            support ^= _class_support([e[i] for i in _bits(mask)])
    return GroupAlgebraChain(m, support, cone_id)


def section_matrix(q: int, e: Sequence[int]) -> F2Matrix:
    """Matrix of ``s^q`` from exterior coordinates to chain coordinates."""
    m = len(e)
    cols = []
    for k in range(comb(m, q)):
        w = [int(i == k) for i in range(comb(m, q))]
        cols.append(section_map(q, e, w).to_vector())
    if not cols:
        return F2Matrix.zeros(1 << m, 0)
    return F2Matrix.from_dense(np.stack(cols, axis=1), comb(m, q))


@lru_cache(maxsize=None)
def ideal_power_subspace(m: int, q: int) -> F2Subspace:
    """``I^q`` inside ``F2[F2^m]``, spanned by classes of all ``q``-dim subspaces."""
    size = 1 << m
    if q <= 0:
        return F2Subspace.full(size)
    if q > m:
        return F2Subspace.zero(size)
    gens = [_class_support(b) for b in enumerate_subspaces(m, q)]
    return F2Subspace.span(F2Matrix.from_masks(gens, size))


# -- the complex ---------------------------------------------------------------


class OrbitChainComplex:
    """Chain complex ``A_*`` of a fan with its filtration by powers of ``I``.

    ``D[p]`` maps ``A_p -> A_{p-1}`` (``D[0]`` has zero rows).  Built complexes
    are treated as immutable; derived data is cached on first use.
    """

    def __init__(self, fan: Fan):
        self.fan = fan
        self.n = fan.n
        self.blocks: list[list[int]] = [
            [c.id for c in fan.cones_of_dim(fan.n - p)] for p in range(fan.n + 1)
        ]
        self.offsets: list[dict[int, int]] = []
        self.dims: list[int] = []
        for p, ids in enumerate(self.blocks):
            offs = {cid: k << p for k, cid in enumerate(ids)}
            self.offsets.append(offs)
            self.dims.append(len(ids) << p)
        self.D: list[F2Matrix] = [F2Matrix.zeros(0, self.dims[0])]
        for p in range(1, self.n + 1):
            self.D.append(self._boundary(p))
        self._W: dict[tuple[int, int], F2Subspace] = {}

    def _boundary(self, p: int) -> F2Matrix:
        fan = self.fan
        dense = np.zeros((self.dims[p - 1], self.dims[p]), dtype=np.uint8)
        cols = np.arange(1 << p)
        for tau_id in self.blocks[p]:
            tau = fan.cones[tau_id]
            c0 = self.offsets[p][tau_id]
            for sigma_id in fan.covers_from[tau_id]:
                f = induced_map(tau.mod2, fan.cones[sigma_id].mod2)
                r0 = self.offsets[p - 1][sigma_id]
                dense[r0 + _images(f), c0 + cols] = 1
        return F2Matrix.from_dense(dense, self.dims[p])

    def labels(self, p: int) -> list[tuple[int, int]]:
        return [(cid, x) for cid in self.blocks[p] for x in range(1 << p)]

    def ideal_power(self, p: int, q: int) -> F2Subspace:
        key = (p, max(q, 0))
        if key not in self._W:
            self._W[key] = self._ideal_power(p, key[1])
        return self._W[key]

    def _ideal_power(self, p: int, q: int) -> F2Subspace:
        if q == 0:
            return F2Subspace.full(self.dims[p])
        if q > p or not self.blocks[p]:
            return F2Subspace.zero(self.dims[p])
        local = ideal_power_subspace(p, q).basis
        return F2Subspace.span(block_diagonal([local] * len(self.blocks[p])))

    def chain(self, p: int, parts: dict[int, GroupAlgebraChain]) -> np.ndarray:
        """Coordinate vector in ``A_p`` of a family of per-cone chains."""
        vec = np.zeros(self.dims[p], dtype=np.uint8)
        for cid, ch in parts.items():
            if ch.m != p:
                raise ValueError(f"cone {cid} has quotient dimension {p}, chain has {ch.m}")
            off = self.offsets[p][cid]
            vec[off : off + (1 << p)] ^= ch.to_vector()
        return vec

    def split(self, p: int, vec) -> dict[int, GroupAlgebraChain]:
        vec = np.asarray(vec, dtype=np.uint8)
        out = {}
        for cid in self.blocks[p]:
            off = self.offsets[p][cid]
            out[cid] = GroupAlgebraChain.from_vector(p, vec[off : off + (1 << p)], cid)
        return out

    # -- psi-adapted coordinates --------------------------------------------
    def psi_block(self, p: int) -> F2Matrix:
        return block_diagonal([psi_matrix(p)] * len(self.blocks[p]))

    def psi_block_inverse(self, p: int) -> F2Matrix:
        return block_diagonal([psi_inverse(p)] * len(self.blocks[p]))

    @cached_property
    def adapted_D(self) -> list[F2Matrix]:
        """Differentials in the basis of coordinate-subspace classes.

        In these coordinates every filtration step is a coordinate subspace.
        """
        out = [self.D[0]]
        for p in range(1, self.n + 1):
            out.append(self.psi_block_inverse(p - 1) @ self.D[p] @ self.psi_block(p))
        return out

    def grades(self, p: int) -> np.ndarray:
        """Filtration level of each adapted coordinate of ``A_p``."""
        g = np.array([x.bit_count() for x in graded_monomials(p)], dtype=np.int64)
        return np.tile(g, len(self.blocks[p]))

    def adapted_labels(self, p: int) -> list[tuple[int, int]]:
        return [(cid, mask) for cid in self.blocks[p] for mask in graded_monomials(p)]


def build_orbit_complex(fan: Fan) -> OrbitChainComplex:
    return OrbitChainComplex(fan)


def ideal_power(c: OrbitChainComplex, p: int, q: int) -> F2Subspace:
    return c.ideal_power(p, q)


def betti_real(c: OrbitChainComplex) -> list[int]:
    ranks = [rank(d) for d in c.D] + [0]
    return [c.dims[p] - ranks[p] - ranks[p + 1] for p in range(c.n + 1)]
