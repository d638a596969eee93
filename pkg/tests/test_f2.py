import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from oracles import all_vectors, apply, dense_rank, span_set
from toricmax.f2 import (
    F2Matrix,
    F2Subspace,
    F2Vector,
    block_diagonal,
    image_subspace,
    inverse,
    kernel_basis,
    preimage_subspace,
    rank,
    rref,
    subspace_intersect,
    subspace_sum,
)


def M(rows, ncols=None):
    return F2Matrix.from_dense(np.array(rows, dtype=np.int64).reshape(len(rows), -1) if rows else np.zeros((0, ncols)), ncols)


def S(vectors, n):
    return F2Subspace.from_vectors(vectors, n)


@st.composite
def matrices(draw, max_rows=9, max_cols=70):
    r = draw(st.integers(0, max_rows))
    c = draw(st.integers(0, max_cols))
    bits = draw(st.lists(st.integers(0, 1), min_size=r * c, max_size=r * c))
    return np.array(bits, dtype=np.uint8).reshape(r, c)


@st.composite
def subspace_pairs(draw, max_n=6):
    n = draw(st.integers(1, max_n))
    vec = st.lists(st.integers(0, 1), min_size=n, max_size=n)
    a = draw(st.lists(vec, max_size=n + 1))
    b = draw(st.lists(vec, max_size=n + 1))
    return n, a, b


# -- examples ------------------------------------------------------------------


class TestRref:
    def test_invertible(self):
        assert rref(M([[1, 1], [0, 1]])) == M([[1, 0], [0, 1]])

    def test_duplicate_rows(self):
        assert rref(M([[1, 1], [1, 1]])) == M([[1, 1], [0, 0]])

    def test_zero(self):
        assert rref(F2Matrix.zeros(3, 4)) == F2Matrix.zeros(3, 4)

    @given(matrices())
    def test_idempotent_and_same_row_space(self, a):
        m = F2Matrix.from_dense(a, a.shape[1])
        r = rref(m)
        assert rref(r) == r
        assert F2Subspace.span(m) == F2Subspace.span(r)
        assert rank(m) == dense_rank(a)


class TestKernel:
    def test_single_relation(self):
        assert kernel_basis(M([[1, 1]])) == S([[1, 1]], 2)

    def test_identity(self):
        assert kernel_basis(F2Matrix.identity(3)).dim == 0

    def test_two_equations(self):
        assert kernel_basis(M([[1, 0, 1], [0, 1, 1]])) == S([[1, 1, 1]], 3)

    @given(matrices(max_rows=5, max_cols=6))
    def test_against_enumeration(self, a):
        k = kernel_basis(F2Matrix.from_dense(a, a.shape[1]))
        expected = {v for v in all_vectors(a.shape[1]) if not any(apply(a, v))} if a.shape[0] else set(all_vectors(a.shape[1]))
        assert set(span_set(k.basis.to_dense(), a.shape[1])) == expected


class TestSumIntersect:
    def test_sum_examples(self):
        assert subspace_sum(S([[1, 0]], 2), S([[0, 1]], 2)) == F2Subspace.full(2)
        a = S([[1, 0, 1]], 3)
        assert subspace_sum(a, F2Subspace.zero(3)) == a
        assert subspace_sum(S([[1, 1, 0]], 3), S([[0, 1, 1]], 3)).dim == 2

    def test_intersect_examples(self):
        assert subspace_intersect(S([[1, 0]], 2), S([[0, 1]], 2)).dim == 0
        a = S([[1, 1, 0], [0, 0, 1]], 3)
        assert subspace_intersect(a, a) == a
        assert subspace_intersect(F2Subspace.full(2), S([[1, 1]], 2)) == S([[1, 1]], 2)

    def test_ambient_mismatch(self):
        with pytest.raises(ValueError):
            subspace_sum(F2Subspace.zero(2), F2Subspace.zero(3))
        with pytest.raises(ValueError):
            subspace_intersect(F2Subspace.zero(2), F2Subspace.zero(3))

    @given(subspace_pairs())
    def test_dimension_identity_and_enumeration(self, data):
        n, av, bv = data
        a, b = S(av, n), S(bv, n)
        s, i = subspace_sum(a, b), subspace_intersect(a, b)
        assert s.dim + i.dim == a.dim + b.dim
        ea, eb = span_set(av, n), span_set(bv, n)
        assert set(span_set(i.basis.to_dense(), n)) == ea & eb
        assert set(span_set(s.basis.to_dense(), n)) == span_set(list(av) + list(bv), n)

    @given(subspace_pairs(), st.data())
    def test_coordinate_fast_path(self, data, draw):
        n, av, _ = data
        coords = draw.draw(st.sets(st.integers(0, n - 1)))
        a, c = S(av, n), F2Subspace.coordinate(n, sorted(coords))
        expected = {v for v in span_set(av, n) if all(v[j] == 0 for j in range(n) if j not in coords)}
        for got in (subspace_intersect(a, c), subspace_intersect(c, a)):
            assert set(span_set(got.basis.to_dense(), n)) == expected

    @given(subspace_pairs())
    def test_canonical_form_is_order_independent(self, data):
        n, av, _ = data
        assert S(av, n) == S(list(reversed(av)), n)
        assert hash(S(av, n)) == hash(S(list(reversed(av)), n))


class TestImagePreimage:
    def test_examples(self):
        s = S([[1, 0, 1]], 3)
        assert preimage_subspace(F2Matrix.identity(3), s) == s
        assert preimage_subspace(M([[1, 1], [0, 1]]), F2Subspace.full(2)) == F2Subspace.full(2)
        assert preimage_subspace(M([[1, 1]]), F2Subspace.zero(1)) == S([[1, 1]], 2)
        assert image_subspace(F2Matrix.identity(3), s) == s
        assert image_subspace(M([[1, 1]]), F2Subspace.zero(2)).dim == 0
        assert image_subspace(M([[1, 1], [0, 0]]), F2Subspace.full(2)) == S([[1, 0]], 2)

    def test_dimension_mismatch(self):
        with pytest.raises(ValueError):
            preimage_subspace(M([[1, 1]]), F2Subspace.full(2))
        with pytest.raises(ValueError):
            image_subspace(M([[1, 1]]), F2Subspace.full(3))

    @given(matrices(max_rows=5, max_cols=5), st.data())
    def test_against_enumeration(self, a, data):
        rows, cols = a.shape
        if rows == 0 or cols == 0:
            return
        m = F2Matrix.from_dense(a, cols)
        vec = st.lists(st.integers(0, 1), min_size=rows, max_size=rows)
        target = data.draw(st.lists(vec, max_size=rows))
        s = S(target, rows)
        elems = span_set(target, rows)
        pre = preimage_subspace(m, s)
        assert set(span_set(pre.basis.to_dense(), cols)) == {v for v in all_vectors(cols) if apply(a, v) in elems}
        assert preimage_subspace(m, image_subspace(m, F2Subspace.full(cols))) == F2Subspace.full(cols)
        img = image_subspace(m, F2Subspace.full(cols))
        assert set(span_set(img.basis.to_dense(), rows)) == {apply(a, v) for v in all_vectors(cols)}


class TestMatrix:
    @given(matrices(max_rows=6, max_cols=6), matrices(max_rows=6, max_cols=6))
    def test_matmul_matches_integer_product(self, a, b):
        if a.shape[1] != b.shape[0]:
            b = np.resize(b, (a.shape[1], b.shape[1])) if b.size else np.zeros((a.shape[1], b.shape[1]), np.uint8)
        got = (F2Matrix.from_dense(a, a.shape[1]) @ F2Matrix.from_dense(b, b.shape[1])).to_dense()
        assert np.array_equal(got, (a.astype(np.int64) @ b.astype(np.int64)) % 2)

    def test_transpose_apply_and_index(self):
        m = M([[1, 0, 1], [0, 1, 1]])
        assert np.array_equal(m.T.to_dense(), m.to_dense().T)
        assert m.apply(0b101) == 0b01 ^ 0b11
        assert m[0, 2] == 1 and m[1, 0] == 0

    def test_wide_rows_cross_word_boundaries(self):
        rng = np.random.default_rng(0)
        a = rng.integers(0, 2, size=(40, 200), dtype=np.uint8)
        m = F2Matrix.from_dense(a, 200)
        assert np.array_equal(m.to_dense(), a)
        assert rank(m) == dense_rank(a)

    def test_inverse_and_block_diagonal(self):
        m = M([[1, 1, 0], [0, 1, 1], [0, 0, 1]])
        assert m @ inverse(m) == F2Matrix.identity(3)
        with pytest.raises(ValueError):
            inverse(M([[1, 1], [1, 1]]))
        bd = block_diagonal([m, F2Matrix.identity(2)])
        assert bd.shape == (5, 5) and rank(bd) == 5

    def test_immutable(self):
        m = F2Matrix.identity(2)
        with pytest.raises(ValueError):
            m.words[0, 0] = 7


def test_vector_arithmetic():
    v = F2Vector.from_bits([1, 0, 1])
    assert (v + F2Vector.from_bits([1, 1, 0])).bits == (0, 1, 1)
    with pytest.raises(ValueError):
        v + F2Vector.from_bits([1])


@settings(deadline=None, max_examples=20)
@given(st.integers(1, 300), st.integers(1, 300), st.integers(0, 2**32 - 1))
def test_rank_matches_oracle_on_random_matrices(r, c, seed):
    a = np.random.default_rng(seed).integers(0, 2, size=(r, c), dtype=np.uint8)
    assert rank(F2Matrix.from_dense(a, c)) == dense_rank(a)
