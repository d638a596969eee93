"""Acceptance criteria, one test per criterion.

Each test records a ``CRITERION k: PASS|FAIL`` line; the lines are printed as
they are produced and repeated in the pytest terminal summary.  Run directly
with ``python tests/test_acceptance.py`` for the lines alone.
"""
from __future__ import annotations

import time
from functools import lru_cache
from math import comb

import numpy as np
import pytest

from oracles import homology_dims
from toricmax import _backend
from toricmax.exterior_complex import build_exterior_complex, e2_dims
from toricmax.f2 import F2Matrix, F2Subspace, rank, subspace_intersect
from toricmax.fan import product_fan, projective
from toricmax.lattice import induced_map, quotient_data
from toricmax.orbit_complex import (
    betti_real,
    build_orbit_complex,
    class_of_subspace,
    enumerate_subspaces,
    ideal_power_subspace,
    push_forward,
)
from toricmax.report import check_fan, seeded_corpus
from toricmax.spectral import (
    FilteredComplexView,
    abutment,
    compute_pages,
    degenerates_at_one,
    verify_g0_matches_e1,
    verify_g1_equals_e2,
)

SEEDS = range(1, 51)
RESULTS: dict[int, str] = {}


def record(k: int, ok: bool, detail: str) -> None:
    line = f"CRITERION {k}: {'PASS' if ok else 'FAIL'} - {detail}"
    RESULTS[k] = line
    print(line)
    assert ok, line


@lru_cache(maxsize=None)
def corpus(dim: int):
    seeds = SEEDS if dim <= 4 else range(1, 11)
    return tuple(seeded_corpus(dim, seeds))


@lru_cache(maxsize=None)
def analysis(dim: int):
    out = []
    for fan in corpus(dim):
        c = build_orbit_complex(fan)
        view = FilteredComplexView(c)
        pages = compute_pages(view)
        x = build_exterior_complex(fan)
        out.append(
            {
                "fan": fan,
                "complex": c,
                "view": view,
                "pages": pages,
                "ext": x,
                "e2": e2_dims(x),
                "betti": betti_real(c),
            }
        )
    return out


def all_analysed(dims=(1, 2, 3, 4)):
    return [a for d in dims for a in analysis(d)]


def test_criterion_1_dimension_four_degenerates():
    t0 = time.perf_counter()
    fans = corpus(4)
    reports = [check_fan(f) for f in fans]
    elapsed = time.perf_counter() - t0
    distinct = len({f.key() for f in fans})
    bad = sum(not r.degenerate_at_one for r in reports)
    ok = distinct >= 50 and bad == 0 and all(f.n == 4 for f in fans) and elapsed < 60
    record(1, ok, f"{distinct} distinct dim-4 fans, {bad} non-degenerate, {elapsed:.1f}s (< 60s)")


def test_criterion_2_low_dimensions_degenerate():
    t0 = time.perf_counter()
    fans = [f for d in (1, 2, 3) for f in seeded_corpus(d, SEEDS)]
    reports = [check_fan(f) for f in fans]
    elapsed = time.perf_counter() - t0
    bad = sum(not r.degenerate_at_one for r in reports)
    ok = len(fans) >= 30 and bad == 0 and elapsed < 10
    record(2, ok, f"{len(fans)} fans of dim 1-3, {bad} non-degenerate, {elapsed:.1f}s (< 10s)")


def test_criterion_3_classical_betti_sums():
    rows, ok = [], True
    p1 = projective(1)
    for n in range(1, 5):
        power = p1
        for _ in range(n - 1):
            power = product_fan(power, p1)
        for name, fan, want in ((f"P^{n}", projective(n), n + 1), (f"(P^1)^{n}", power, 2**n)):
            c = build_orbit_complex(fan)
            b = betti_real(c)
            oracle = homology_dims([d.to_dense() for d in c.D], c.dims)
            e2 = sum(e2_dims(build_exterior_complex(fan)).values())
            good = sum(b) == want == e2 and oracle == b
            ok &= good
            rows.append(f"{name}:{sum(b)}/{e2}")
    record(3, ok, "betti/e2 sums " + " ".join(rows) + " (dense oracle agrees)")


def test_criterion_4_convergence():
    items = all_analysed()
    bad = [a["fan"] for a in items if abutment(a["pages"].infinity, a["fan"].n) != a["betti"]]
    record(
        4,
        not bad,
        f"G^inf reproduces betti_real on {len(items) - len(bad)}/{len(items)} corpus fans "
        "(total degree s+t with (s,t) = (-q, p+q), i.e. summing over q at fixed p)",
    )


def test_criterion_5_structure_ties():
    items = all_analysed()
    g0 = sum(verify_g0_matches_e1(a["view"], a["ext"]) for a in items)
    g1 = sum(verify_g1_equals_e2(a["pages"], a["e2"]) for a in items)
    record(5, g0 == g1 == len(items), f"G0~E1 on {g0}/{len(items)}, G1~E2 on {g1}/{len(items)} corpus fans")


def test_criterion_6_s_condition_lemmas():
    items = all_analysed((1, 2, 3, 4, 5))
    failures = []
    for a in items:
        n, s = a["fan"].n, a["pages"].s_table
        needed = [(p, 0) for p in range(n + 1)] + [(n, q) for q in range(n + 1)] + [(n - 1, 1)]
        failures += [(a["fan"], pq) for pq in needed if not s[pq]]
    dims = sorted({a["fan"].n for a in items})
    record(6, not failures, f"s_p0, s_nq, s_(n-1)1 hold on {len(items)} fans of dims {dims}; {len(failures)} failures")


def test_criterion_7_s_conditions_iff_degeneration():
    items = all_analysed((1, 2, 3, 4, 5))
    agree = sum(all(a["pages"].s_table.values()) == degenerates_at_one(a["pages"]) for a in items)
    nondeg = sum(not degenerates_at_one(a["pages"]) for a in items)
    record(
        7,
        agree == len(items),
        f"biconditional holds on {agree}/{len(items)} corpus fans ({nondeg} non-degenerate; "
        "the false-false direction is exercised on synthetic complexes in test_spectral)",
    )


def test_criterion_8_annulation_lemma():
    checked = failures = 0
    for m in range(1, 5):
        subs = [F2Subspace.span(F2Matrix.from_masks(b, m)) for q in range(1, m + 1) for b in enumerate_subspaces(m, q)]
        ident = quotient_data(F2Subspace.zero(m))
        for h in subs:
            cls = class_of_subspace(h)
            for v in subs:
                if subspace_intersect(h, v).dim == 0:
                    continue
                checked += 1
                failures += bool(push_forward(cls, induced_map(ident, quotient_data(v))))
    record(8, failures == 0, f"[H] killed in {checked - failures}/{checked} pairs with H meeting V', m <= 4")


def test_criterion_9_psi_isomorphism():
    cones = bad = 0
    for a in all_analysed():
        c = a["complex"]
        for cone in a["fan"].cones:
            cones += 1
            m = cone.quot_dim
            steps = [ideal_power_subspace(m, q).dim - ideal_power_subspace(m, q + 1).dim for q in range(m + 1)]
            bad += steps != [comb(m, q) for q in range(m + 1)]
        for p in range(c.n + 1):
            bad += rank(c.psi_block(p)) != c.dims[p]
    record(9, bad == 0, f"graded pieces have binomial dimensions on {cones} cones; assembled psi invertible; {bad} failures")


def test_criterion_10_rank_benchmark():
    a = np.random.default_rng(2024).integers(0, 2, size=(2000, 2000), dtype=np.uint8)
    m = F2Matrix.from_dense(a, 2000)
    t0 = time.perf_counter()
    r = rank(m)
    elapsed = time.perf_counter() - t0
    reference = _backend.python_kernels.echelon_rank(np.array(m.words), 2000)
    record(10, elapsed < 1 and r == reference, f"rank {r} of random 2000x2000 in {elapsed:.3f}s ({_backend.BACKEND} backend)")


if __name__ == "__main__":
    import sys

    sys.exit(pytest.main([__file__, "-q", "-s"]))
