"""Integer lattice tools: Smith normal form, saturation, mod-2 reduction.

Integer matrices are plain lists of rows of Python ints.  Every arithmetic
result is checked against the signed 64-bit range and an ``OverflowError`` is
raised instead of silently growing.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

import numpy as np

from .f2 import F2Matrix, F2Subspace

IntegerMatrix = list[list[int]]

_I64_MIN = -(1 << 63)
_I64_MAX = (1 << 63) - 1


def _chk(x: int) -> int:
    if x < _I64_MIN or x > _I64_MAX:
        raise OverflowError(f"integer {x} leaves the signed 64-bit range")
    return x


def _identity(n: int) -> IntegerMatrix:
    return [[int(i == j) for j in range(n)] for i in range(n)]


def matmul_int(a: IntegerMatrix, b: IntegerMatrix) -> IntegerMatrix:
    inner = len(b)
    cols = len(b[0]) if b else 0
    return [
        [_chk(sum(row[k] * b[k][j] for k in range(inner))) for j in range(cols)]
        for row in a
    ]


def det_int(a: IntegerMatrix) -> int:
    """Determinant by fraction-free (Bareiss) elimination."""
    n = len(a)
    if n == 0:
        return 1
    m = [list(r) for r in a]
    sign, prev = 1, 1
    for k in range(n - 1):
        if m[k][k] == 0:
            swap = next((i for i in range(k + 1, n) if m[i][k] != 0), None)
            if swap is None:
                return 0
            m[k], m[swap] = m[swap], m[k]
            sign = -sign
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                m[i][j] = _chk((m[i][j] * m[k][k] - m[i][k] * m[k][j]) // prev)
        prev = m[k][k]
    return sign * m[n - 1][n - 1]


@dataclass(frozen=True)
class SmithDecomposition:
    """``u @ a @ v == d`` with ``u``, ``v`` unimodular; ``u_inv`` is kept for saturation."""

    u: IntegerMatrix
    d: IntegerMatrix
    v: IntegerMatrix
    u_inv: IntegerMatrix

    @property
    def diagonal(self) -> list[int]:
        return [self.d[i][i] for i in range(min(len(self.d), len(self.v)))]

    @property
    def rank(self) -> int:
        return sum(1 for x in self.diagonal if x)


def smith_normal_form(a: Sequence[Sequence[int]]) -> SmithDecomposition:
    rows = len(a)
    cols = len(a[0]) if rows else 0
    d = [[_chk(int(x)) for x in r] for r in a]
    u, u_inv, v = _identity(rows), _identity(rows), _identity(cols)

    # row i -= q * row t   (u_inv compensates with column t += q * column i)
    def row_axpy(i: int, t: int, q: int) -> None:
        for mat in (d, u):
            mat[i] = [_chk(x - q * y) for x, y in zip(mat[i], mat[t])]
        for r in u_inv:
            r[t] = _chk(r[t] + q * r[i])

    def col_axpy(j: int, t: int, q: int) -> None:
        for mat in (d, v):
            for r in mat:
                r[j] = _chk(r[j] - q * r[t])

    def swap_rows(i: int, t: int) -> None:
        for mat in (d, u):
            mat[i], mat[t] = mat[t], mat[i]
        for r in u_inv:
            r[i], r[t] = r[t], r[i]

    def swap_cols(j: int, t: int) -> None:
        for mat in (d, v):
            for r in mat:
                r[j], r[t] = r[t], r[j]

    for t in range(min(rows, cols)):
        while True:
            entries = [
                (abs(d[i][j]), i, j)
                for i in range(t, rows)
                for j in range(t, cols)
                if d[i][j]
            ]
            if not entries:
                break
            _, pi, pj = min(entries)
            swap_rows(t, pi)
            swap_cols(t, pj)
            clean = True
            for i in range(t + 1, rows):
                if d[i][t]:
                    row_axpy(i, t, d[i][t] // d[t][t])
                    clean &= d[i][t] == 0
            for j in range(t + 1, cols):
                if d[t][j]:
                    col_axpy(j, t, d[t][j] // d[t][t])
                    clean &= d[t][j] == 0
            if not clean:
                continue
            bad = next(
                (i for i in range(t + 1, rows) for j in range(t + 1, cols) if d[i][j] % d[t][t]),
                None,
            )
            if bad is None:
                break
            # pull the offending row into row t; the next pass lowers |d[t][t]|
            row_axpy(t, bad, -1)
        if t < rows and t < cols and d[t][t] < 0:
            d[t] = [-x for x in d[t]]
            u[t] = [-x for x in u[t]]
            for r in u_inv:
                r[t] = -r[t]
    return SmithDecomposition(u=u, d=d, v=v, u_inv=u_inv)


def saturate_span(gens: Sequence[Sequence[int]], n: int) -> IntegerMatrix:
    """Basis (as rows) of ``span_Q(gens) & Z^n``.

    With generators as the columns of ``a`` and ``u a v = d``, the columns of
    ``u^-1`` form a basis of ``Z^n`` whose first ``rank`` members span the
    saturated lattice.
    """
    gens = [list(g) for g in gens]
    for g in gens:
        if len(g) != n:
            raise ValueError(f"generator {g} is not of length {n}")
    if not gens:
        return []
    a = [[g[i] for g in gens] for i in range(n)]
    snf = smith_normal_form(a)
    r = snf.rank
    return [[snf.u_inv[i][j] for i in range(n)] for j in range(r)]


def rational_rank(gens: Sequence[Sequence[int]], n: int) -> int:
    return len(saturate_span(gens, n))


def mod2_cone_subspace(gens: Sequence[Sequence[int]], n: int) -> F2Subspace:
    basis = saturate_span(gens, n)
    if not basis:
        return F2Subspace.zero(n)
    return F2Subspace.span(F2Matrix.from_dense(np.asarray(basis, dtype=np.int64) & 1, n))


@dataclass(frozen=True, eq=False)
class QuotientData:
    """``V / sub`` with the projection ``proj: F2^n -> F2^m``.

    The complement is spanned by the coordinates that are not pivots of
    ``sub``'s canonical basis, so coordinate ``k`` of the quotient is ambient
    coordinate ``free[k]``.
    """

    ambient_dim: int
    sub: F2Subspace
    proj: F2Matrix
    free: tuple[int, ...]

    @property
    def quot_dim(self) -> int:
        return self.ambient_dim - self.sub.dim


def quotient_data(sub: F2Subspace) -> QuotientData:
    n = sub.ambient_dim
    pivots = sub.pivots
    pivset = set(pivots)
    free = tuple(j for j in range(n) if j not in pivset)
    basis = sub.basis.to_dense()
    proj = np.zeros((len(free), n), dtype=np.uint8)
    for k, f in enumerate(free):
        proj[k, f] = 1
        # x -> x + sum_i x[pivot_i] * b_i clears every pivot coordinate
        for i, p in enumerate(pivots):
            proj[k, p] = basis[i, f]
    return QuotientData(n, sub, F2Matrix.from_dense(proj, n), free)


def induced_map(src: QuotientData, dst: QuotientData) -> F2Matrix:
    """Matrix ``f`` with ``f @ src.proj == dst.proj``; needs ``src.sub <= dst.sub``."""
    if src.ambient_dim != dst.ambient_dim:
        raise ValueError("quotients of different ambient spaces")
    if not src.sub.issubset(dst.sub):
        raise ValueError("source subspace is not contained in the target subspace")
    # coordinate k of src's quotient lifts to the unit vector e_{free[k]}
    if not src.free:
        return F2Matrix.zeros(dst.quot_dim, 0)
    return dst.proj.select_columns(src.free)
