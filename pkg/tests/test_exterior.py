from math import comb

import numpy as np
from hypothesis import given
from hypothesis import strategies as st

from oracles import dense_rank
from toricmax.exterior_complex import build_exterior_complex, det_f2, e2_dims, exterior_power
from toricmax.f2 import F2Matrix
from toricmax.fan import point_fan, projective
from toricmax.orbit_complex import build_orbit_complex

square = st.integers(1, 5).flatmap(
    lambda n: st.lists(st.integers(0, 1), min_size=n * n, max_size=n * n).map(
        lambda b: np.array(b, dtype=np.uint8).reshape(n, n)
    )
)


@given(square)
def test_det_against_integer_determinant(a):
    assert det_f2(a) == int(round(np.linalg.det(a.astype(float)))) % 2


@given(st.integers(1, 4), st.integers(1, 4), st.integers(1, 4), st.data())
def test_exterior_power_is_functorial(a, b, c, data):
    def mat(r, k):
        bits = data.draw(st.lists(st.integers(0, 1), min_size=r * k, max_size=r * k))
        return F2Matrix.from_dense(np.array(bits, dtype=np.uint8).reshape(r, k), k)

    f, g = mat(b, a), mat(c, b)
    for q in range(min(a, b, c) + 1):
        assert exterior_power(g @ f, q) == exterior_power(g, q) @ exterior_power(f, q)
    assert exterior_power(f, 1) == f


def test_p1():
    x = build_exterior_complex(projective(1))
    assert (x.dims[(1, 0)], x.dims[(1, 1)], x.dims[(0, 0)]) == (1, 1, 2)
    assert np.array_equal(x.d1[(1, 0)].to_dense(), [[1], [1]])
    assert e2_dims(x) == {(0, 0): 1, (1, 0): 0, (1, 1): 1}


def test_point():
    x = build_exterior_complex(point_fan())
    assert e2_dims(x) == {(0, 0): 1} == {k: v for k, v in x.dims.items() if k[1] <= k[0]}


def test_structure(fans):
    for f in fans.values():
        x = build_exterior_complex(f)
        c = build_orbit_complex(f)
        for p in range(f.n + 1):
            for q in range(f.n + 1):
                assert x.dims[(p, q)] == len(x.blocks[p]) * comb(p, q)
                if q > p:
                    assert x.dims[(p, q)] == 0
                if p >= 2:
                    assert (x.d1[(p - 1, q)] @ x.d1[(p, q)]).is_zero()
            assert sum(x.dims[(p, q)] for q in range(f.n + 1)) == c.dims[p]
        # the q = 0 row is the cone-incidence complex
        for p in range(1, f.n + 1):
            inc = np.zeros((len(x.blocks[p - 1]), len(x.blocks[p])), dtype=np.uint8)
            row = {cid: i for i, cid in enumerate(x.blocks[p - 1])}
            for j, cid in enumerate(x.blocks[p]):
                for up in f.covers_from[cid]:
                    inc[row[up], j] = 1
            assert np.array_equal(x.d1[(p, 0)].to_dense(), inc)


def test_e2_against_dense_oracle(fans):
    for f in fans.values():
        x = build_exterior_complex(f)
        e2 = e2_dims(x)
        for (p, q), d in e2.items():
            r_out = dense_rank(x.d1[(p, q)].to_dense()) if x.dims[(p, q)] and p else 0
            r_in = dense_rank(x.d1[(p + 1, q)].to_dense()) if p < f.n and x.dims[(p + 1, q)] else 0
            assert d == x.dims[(p, q)] - r_out - r_in


def test_bottom_row_of_projective_space_is_a_point():
    for k in range(1, 5):
        e2 = e2_dims(build_exterior_complex(projective(k)))
        assert [e2[(p, 0)] for p in range(k + 1)] == [1] + [0] * k
        assert sum(e2.values()) == k + 1
