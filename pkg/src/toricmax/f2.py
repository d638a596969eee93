"""Exact linear algebra over GF(2) on bit-packed rows.

Matrices act on column vectors: an ``r x c`` matrix maps ``F2^c -> F2^r``.
Subspaces are held in canonical form (reduced row-echelon basis, no zero rows),
so two subspaces are equal exactly when their bases are equal.
"""
from __future__ import annotations

from typing import Iterable, Sequence

import numpy as np

from ._backend import kernels

__all__ = [
    "F2Vector",
    "F2Matrix",
    "F2Subspace",
    "rref",
    "rank",
    "kernel_basis",
    "subspace_sum",
    "subspace_intersect",
    "preimage_subspace",
    "image_subspace",
    "inverse",
    "block_diagonal",
]


def _nwords(ncols: int) -> int:
    return max(1, (ncols + 63) >> 6)


def _pack(dense: np.ndarray) -> np.ndarray:
    dense = np.asarray(dense, dtype=np.uint8) & 1
    rows, cols = dense.shape
    nbytes = _nwords(cols) * 8
    buf = np.zeros((rows, nbytes), dtype=np.uint8)
    if cols:
        packed = np.packbits(dense, axis=1, bitorder="little")
        buf[:, : packed.shape[1]] = packed
    return np.ascontiguousarray(buf).view("<u8").astype(np.uint64, copy=False)


def _unpack(words: np.ndarray, ncols: int) -> np.ndarray:
    if words.shape[0] == 0:
        return np.zeros((0, ncols), dtype=np.uint8)
    as_bytes = np.ascontiguousarray(words).astype("<u8", copy=False).view(np.uint8)
    return np.unpackbits(as_bytes, axis=1, count=ncols, bitorder="little")


class F2Vector:
    """Fixed-length vector over GF(2), stored as a Python int bitmask."""

    __slots__ = ("mask", "length")

    def __init__(self, mask: int, length: int):
        if length < 0 or mask < 0 or mask >> length:
            raise ValueError(f"mask {mask:#x} does not fit in length {length}")
        self.mask = mask
        self.length = length

    @classmethod
    def from_bits(cls, bits: Sequence[int]) -> F2Vector:
        mask = 0
        for i, b in enumerate(bits):
            if b & 1:
                mask |= 1 << i
        return cls(mask, len(bits))

    @property
    def bits(self) -> tuple[int, ...]:
        return tuple((self.mask >> i) & 1 for i in range(self.length))

    def __len__(self) -> int:
        return self.length

    def __add__(self, other: F2Vector) -> F2Vector:
        if other.length != self.length:
            raise ValueError("length mismatch")
        return F2Vector(self.mask ^ other.mask, self.length)

    __sub__ = __add__

    def __eq__(self, other: object) -> bool:
        return (
            isinstance(other, F2Vector)
            and self.length == other.length
            and self.mask == other.mask
        )

    def __hash__(self) -> int:
        return hash((self.mask, self.length))

    def __repr__(self) -> str:
        return f"F2Vector({''.join(map(str, self.bits))})"


class F2Matrix:
    """Immutable dense GF(2) matrix with rows packed into 64-bit words."""

    __slots__ = ("_w", "nrows", "ncols", "_t")

    def __init__(self, words: np.ndarray, nrows: int, ncols: int):
        words = np.ascontiguousarray(words, dtype=np.uint64)
        if words.shape != (nrows, _nwords(ncols)):
            raise ValueError(f"packed shape {words.shape} does not fit {nrows}x{ncols}")
        words.flags.writeable = False
        self._w = words
        self.nrows = nrows
        self.ncols = ncols
        self._t = None

    # -- constructors ----------------------------------------------------
    @classmethod
    def from_dense(cls, dense, ncols: int | None = None) -> F2Matrix:
        arr = np.asarray(dense, dtype=np.int64)
        if arr.ndim == 1 and arr.size == 0:
            arr = arr.reshape(0, ncols or 0)
        if arr.ndim != 2:
            raise ValueError("expected a 2-d array")
        if ncols is not None and arr.shape[1] != ncols:
            raise ValueError("column count mismatch")
        return cls(_pack(arr & 1), arr.shape[0], arr.shape[1])

    @classmethod
    def from_masks(cls, masks: Iterable[int], ncols: int) -> F2Matrix:
        masks = list(masks)
        nw = _nwords(ncols)
        words = np.zeros((len(masks), nw), dtype=np.uint64)
        for i, m in enumerate(masks):
            if m >> ncols:
                raise ValueError("row mask wider than ncols")
            for k in range(nw):
                words[i, k] = (m >> (64 * k)) & 0xFFFFFFFFFFFFFFFF
        return cls(words, len(masks), ncols)

    @classmethod
    def zeros(cls, nrows: int, ncols: int) -> F2Matrix:
        return cls(np.zeros((nrows, _nwords(ncols)), dtype=np.uint64), nrows, ncols)

    @classmethod
    def identity(cls, n: int) -> F2Matrix:
        return cls.from_dense(np.eye(n, dtype=np.uint8)) if n else cls.zeros(0, 0)

    # -- views -----------------------------------------------------------
    @property
    def words(self) -> np.ndarray:
        return self._w

    @property
    def shape(self) -> tuple[int, int]:
        return (self.nrows, self.ncols)

    def to_dense(self) -> np.ndarray:
        return _unpack(self._w, self.ncols)

    def row_masks(self) -> list[int]:
        out = []
        for row in self._w:
            m = 0
            for k, word in enumerate(row):
                m |= int(word) << (64 * k)
            out.append(m)
        return out

    def __getitem__(self, ij: tuple[int, int]) -> int:
        i, j = ij
        return int((self._w[i, j >> 6] >> np.uint64(j & 63)) & np.uint64(1))

    def __eq__(self, other: object) -> bool:
        return (
            isinstance(other, F2Matrix)
            and self.shape == other.shape
            and bool(np.array_equal(self._w, other._w))
        )

    def __hash__(self) -> int:
        return hash((self.nrows, self.ncols, self._w.tobytes()))

    def __repr__(self) -> str:
        return f"F2Matrix({self.nrows}x{self.ncols})"

    # -- algebra ---------------------------------------------------------
    @property
    def T(self) -> F2Matrix:
        if self._t is None:
            self._t = F2Matrix(_pack(self.to_dense().T), self.ncols, self.nrows)
        return self._t

    def __matmul__(self, other: F2Matrix) -> F2Matrix:
        if self.ncols != other.nrows:
            raise ValueError(f"cannot compose {self.shape} with {other.shape}")
        out = kernels.matmul(self._w, self.ncols, other._w)
        return F2Matrix(out, self.nrows, other.ncols)

    def __add__(self, other: F2Matrix) -> F2Matrix:
        if self.shape != other.shape:
            raise ValueError("shape mismatch")
        return F2Matrix(self._w ^ other._w, self.nrows, self.ncols)

    def apply(self, x: int) -> int:
        """Image of the column vector with bitmask ``x``, as a bitmask."""
        out = 0
        if self.nrows == 0:
            return 0
        cols = self.T.row_masks()
        j = 0
        while x:
            if x & 1:
                out ^= cols[j]
            x >>= 1
            j += 1
        return out

    def is_zero(self) -> bool:
        return not self._w.any()

    def vstack(self, other: F2Matrix) -> F2Matrix:
        if self.ncols != other.ncols:
            raise ValueError("column count mismatch")
        return F2Matrix(np.vstack([self._w, other._w]), self.nrows + other.nrows, self.ncols)

    def hstack(self, other: F2Matrix) -> F2Matrix:
        if self.nrows != other.nrows:
            raise ValueError("row count mismatch")
        dense = np.hstack([self.to_dense(), other.to_dense()])
        return F2Matrix(_pack(dense), self.nrows, self.ncols + other.ncols)

    def select_rows(self, idx: Sequence[int]) -> F2Matrix:
        idx = np.asarray(idx, dtype=np.intp)
        return F2Matrix(self._w[idx], len(idx), self.ncols)

    def select_columns(self, idx: Sequence[int]) -> F2Matrix:
        idx = np.asarray(idx, dtype=np.intp)
        return F2Matrix(_pack(self.to_dense()[:, idx]), self.nrows, len(idx))

    def rank(self) -> int:
        return rank(self)


# -- elimination ---------------------------------------------------------


def _rref_words(m: F2Matrix) -> tuple[np.ndarray, list[int]]:
    w = np.array(m.words, dtype=np.uint64, copy=True, order="C")
    pivots = kernels.rref_inplace(w, m.ncols)
    return w, list(pivots)


def rref(m: F2Matrix) -> F2Matrix:
    """Reduced row-echelon form, same shape as ``m`` (zero rows at the bottom)."""
    w, _ = _rref_words(m)
    return F2Matrix(w, m.nrows, m.ncols)


def rank(m: F2Matrix) -> int:
    if m.nrows == 0 or m.ncols == 0:
        return 0
    w = np.array(m.words, dtype=np.uint64, copy=True, order="C")
    return int(kernels.echelon_rank(w, m.ncols))


class F2Subspace:
    """Subspace of ``F2^ambient_dim`` in canonical reduced row-echelon form."""

    __slots__ = ("ambient_dim", "basis", "pivots", "_coords")

    def __init__(self, basis: F2Matrix, pivots: Sequence[int], ambient_dim: int):
        # trusted constructor: ``basis`` must already be canonical
        self.basis = basis
        self.pivots = tuple(pivots)
        self.ambient_dim = ambient_dim
        self._coords = None

    @classmethod
    def span(cls, gens: F2Matrix) -> F2Subspace:
        w, pivots = _rref_words(gens)
        r = len(pivots)
        return cls(F2Matrix(w[:r], r, gens.ncols), pivots, gens.ncols)

    @classmethod
    def from_vectors(cls, vectors: Iterable[Sequence[int]], ambient_dim: int) -> F2Subspace:
        rows = [list(v) for v in vectors]
        if not rows:
            return cls.zero(ambient_dim)
        return cls.span(F2Matrix.from_dense(rows, ambient_dim))

    @classmethod
    def zero(cls, n: int) -> F2Subspace:
        return cls(F2Matrix.zeros(0, n), (), n)

    @classmethod
    def full(cls, n: int) -> F2Subspace:
        return cls(F2Matrix.identity(n), range(n), n)

    @classmethod
    def coordinate(cls, n: int, coords: Iterable[int]) -> F2Subspace:
        coords = sorted(set(coords))
        dense = np.zeros((len(coords), n), dtype=np.uint8)
        dense[np.arange(len(coords)), coords] = 1
        sub = cls(F2Matrix.from_dense(dense, n), coords, n)
        sub._coords = tuple(coords)
        return sub

    @property
    def dim(self) -> int:
        return self.basis.nrows

    def coordinate_support(self) -> tuple[int, ...] | None:
        """Coordinates spanning this subspace if it is a coordinate subspace."""
        if self._coords is None:
            counts = np.bitwise_count(self.basis.words).sum(axis=1)
            self._coords = self.pivots if bool(np.all(counts == 1)) else False
        return self._coords if self._coords is not False else None

    def contains(self, x: Sequence[int] | F2Vector) -> bool:
        if isinstance(x, F2Vector):
            x = x.bits
        row = F2Matrix.from_dense([list(x)], self.ambient_dim)
        return rank(self.basis.vstack(row)) == self.dim

    def issubset(self, other: F2Subspace) -> bool:
        _check_ambient(self, other)
        if self.dim > other.dim:
            return False
        return rank(other.basis.vstack(self.basis)) == other.dim

    def elements(self) -> list[int]:
        """All vectors as bitmasks; only sensible for small dimensions."""
        out = [0]
        for b in self.basis.row_masks():
            out += [x ^ b for x in out]
        return out

    def __eq__(self, other: object) -> bool:
        return (
            isinstance(other, F2Subspace)
            and self.ambient_dim == other.ambient_dim
            and self.basis == other.basis
        )

    def __hash__(self) -> int:
        return hash((self.ambient_dim, self.basis))

    def __repr__(self) -> str:
        return f"F2Subspace(dim={self.dim}, ambient={self.ambient_dim})"


def _check_ambient(a: F2Subspace, b: F2Subspace) -> None:
    if a.ambient_dim != b.ambient_dim:
        raise ValueError(f"ambient mismatch: {a.ambient_dim} vs {b.ambient_dim}")


def kernel_basis(m: F2Matrix) -> F2Subspace:
    n = m.ncols
    w, pivots = _rref_words(m)
    free = [j for j in range(n) if j not in set(pivots)]
    if not free:
        return F2Subspace.zero(n)
    r = len(pivots)
    red = _unpack(w[:r], n)
    k = np.zeros((len(free), n), dtype=np.uint8)
    k[np.arange(len(free)), free] = 1
    if r:
        k[:, pivots] = red[:, free].T
    return F2Subspace.span(F2Matrix(_pack(k), len(free), n))


def subspace_sum(a: F2Subspace, b: F2Subspace) -> F2Subspace:
    _check_ambient(a, b)
    if a.dim == 0:
        return b
    if b.dim == 0:
        return a
    return F2Subspace.span(a.basis.vstack(b.basis))


def _restrict_to_coordinates(a: F2Subspace, coords: Sequence[int]) -> F2Subspace:
    """``a`` intersected with the coordinate subspace on ``coords``."""
    n = a.ambient_dim
    keep = set(coords)
    outside = [j for j in range(n) if j not in keep]
    if not outside:
        return a
    constraint = a.basis.select_columns(outside).T  # (outside) x dim a
    combos = kernel_basis(constraint)
    if combos.dim == 0:
        return F2Subspace.zero(n)
    return F2Subspace.span(combos.basis @ a.basis)


def subspace_intersect(a: F2Subspace, b: F2Subspace) -> F2Subspace:
    _check_ambient(a, b)
    n = a.ambient_dim
    if a.dim == 0 or b.dim == 0:
        return F2Subspace.zero(n)
    if a.dim == n:
        return b
    if b.dim == n:
        return a
    for x, y in ((a, b), (b, a)):
        coords = y.coordinate_support()
        if coords is not None:
            return _restrict_to_coordinates(x, coords)
    # Zassenhaus: rows (u, u) for u in a and (v, 0) for v in b; rows of the
    # echelon form whose left half vanishes carry a basis of a & b on the right.
    top = a.basis.hstack(a.basis)
    bottom = b.basis.hstack(F2Matrix.zeros(b.dim, n))
    w, pivots = _rref_words(top.vstack(bottom))
    r = len(pivots)
    start = next((i for i, p in enumerate(pivots) if p >= n), r)
    if start == r:
        return F2Subspace.zero(n)
    right = _unpack(w[start:r], 2 * n)[:, n:]
    return F2Subspace.span(F2Matrix(_pack(right), r - start, n))


def preimage_subspace(m: F2Matrix, s: F2Subspace) -> F2Subspace:
    """``{x : m x in s}``."""
    if s.ambient_dim != m.nrows:
        raise ValueError(f"subspace lives in F2^{s.ambient_dim}, map lands in F2^{m.nrows}")
    if s.dim == s.ambient_dim:
        return F2Subspace.full(m.ncols)
    coords = s.coordinate_support()
    if coords is not None:
        keep = set(coords)
        rows = [i for i in range(m.nrows) if i not in keep]
        return kernel_basis(m.select_rows(rows))
    annihilator = kernel_basis(s.basis)  # x in s  <=>  annihilator . x = 0
    return kernel_basis(annihilator.basis @ m)


def image_subspace(m: F2Matrix, s: F2Subspace) -> F2Subspace:
    """``{m x : x in s}``."""
    if s.ambient_dim != m.ncols:
        raise ValueError(f"subspace lives in F2^{s.ambient_dim}, map starts at F2^{m.ncols}")
    if s.dim == 0:
        return F2Subspace.zero(m.nrows)
    return F2Subspace.span(s.basis @ m.T)


def inverse(m: F2Matrix) -> F2Matrix:
    """Inverse of a square matrix; ``ValueError`` when singular."""
    n = m.nrows
    if m.ncols != n:
        raise ValueError("only square matrices have inverses")
    if n == 0:
        return m
    aug = m.hstack(F2Matrix.identity(n))
    w, pivots = _rref_words(aug)
    if pivots[:n] != list(range(n)) or len(pivots) < n:
        raise ValueError("matrix is singular")
    return F2Matrix(_pack(_unpack(w, 2 * n)[:, n:]), n, n)


def block_diagonal(blocks: Sequence[F2Matrix]) -> F2Matrix:
    rows = sum(b.nrows for b in blocks)
    cols = sum(b.ncols for b in blocks)
    dense = np.zeros((rows, cols), dtype=np.uint8)
    r = c = 0
    for b in blocks:
        dense[r : r + b.nrows, c : c + b.ncols] = b.to_dense()
        r += b.nrows
        c += b.ncols
    return F2Matrix(_pack(dense), rows, cols)
