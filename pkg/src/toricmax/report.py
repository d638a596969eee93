"""End-to-end maximality check, JSON reports and reproducible fan corpora."""
from __future__ import annotations

import itertools
import json
import os
import random
from dataclasses import dataclass, field
from typing import Any

from .exterior_complex import build_exterior_complex, e2_dims
from .fan import (
    Fan,
    FanError,
    fan_to_json,
    hirzebruch,
    is_complete,
    load_fan,
    product_fan,
    projective,
    star_subdivision,
    validate_fan,
    weighted_p112,
)
from .orbit_complex import betti_real, build_orbit_complex
from .spectral import (
    FilteredComplexView,
    abutment,
    compute_pages,
    degenerates_at_one,
    verify_g0_matches_e1,
    verify_g1_equals_e2,
)

__all__ = [
    "ConsistencyError",
    "MaximalityReport",
    "run_check",
    "check_fan",
    "report_to_json",
    "emit_report",
    "read_report",
    "base_fans",
    "random_chain",
    "generate_corpus",
    "seeded_corpus",
    "write_corpus",
]

MAXIMAL = "maximal_certified"
UNDETERMINED = "undetermined"


class ConsistencyError(RuntimeError):
    """Two independent computations of the same quantity disagree."""


@dataclass
class MaximalityReport:
    fan: dict[str, Any]
    betti_real: list[int]
    e2: dict[tuple[int, int], int]
    pages: list[dict[str, Any]]
    degenerate_at_one: bool
    s_conditions: dict[tuple[int, int], bool]
    verdict: str = field(init=False)

    def __post_init__(self) -> None:
        self.verdict = MAXIMAL if self.degenerate_at_one else UNDETERMINED

    @property
    def betti_real_sum(self) -> int:
        return sum(self.betti_real)

    @property
    def e2_sum(self) -> int:
        return sum(self.e2.values())

    def to_dict(self) -> dict[str, Any]:
        return {
            "fan": self.fan,
            "betti_real": list(self.betti_real),
            "betti_real_sum": self.betti_real_sum,
            "e2": {"dims": [[p, q, d] for (p, q), d in sorted(self.e2.items())], "sum": self.e2_sum},
            "pages": self.pages,
            "degenerate_at_one": self.degenerate_at_one,
            "s_conditions": [[p, q, ok] for (p, q), ok in sorted(self.s_conditions.items())],
            "verdict": self.verdict,
        }

    @classmethod
    def from_dict(cls, doc: dict[str, Any]) -> MaximalityReport:
        rep = cls(
            fan=doc["fan"],
            betti_real=list(doc["betti_real"]),
            e2={(p, q): d for p, q, d in doc["e2"]["dims"]},
            pages=doc["pages"],
            degenerate_at_one=bool(doc["degenerate_at_one"]),
            s_conditions={(p, q): bool(ok) for p, q, ok in doc["s_conditions"]},
        )
        if rep.verdict != doc["verdict"] or rep.betti_real_sum != doc["betti_real_sum"]:
            raise ValueError("report is internally inconsistent")
        return rep


def check_fan(fan: Fan, max_r: int | None = None) -> MaximalityReport:
    problems = validate_fan(fan)
    if problems:
        raise FanError("invalid fan: " + "; ".join(problems))
    n = fan.n
    shown = n + 2 if max_r is None else max_r
    if shown < 1:
        raise ValueError("max_r must be at least 1")

    complex_ = build_orbit_complex(fan)
    betti = betti_real(complex_)
    view = FilteredComplexView(complex_)
    pages = compute_pages(view, max(shown, n + 1))
    ext = build_exterior_complex(fan)
    e2 = e2_dims(ext)

    for p in range(n + 1):
        if sum(ext.dims[(p, q)] for q in range(n + 1)) != complex_.dims[p]:
            raise ConsistencyError(f"exterior and orbit complexes differ in size at degree {p}")
    if not verify_g0_matches_e1(view, ext):
        raise ConsistencyError("G^0 differential does not match d1 through psi")
    if not verify_g1_equals_e2(pages, e2):
        raise ConsistencyError("G^1 and E^2 dimensions differ")
    if abutment(pages.infinity, n) != betti:
        raise ConsistencyError("stable page does not reproduce the Betti numbers")
    if sum(betti) > sum(e2.values()):
        raise ConsistencyError("Smith-Thom inequality violated")

    page_docs = [
        {
            "r": r,
            "dims": [[p, q, d] for (p, q), d in sorted(pages.dims[r].items())],
            "diff_ranks": [[p, q, k] for (p, q), k in sorted(pages.diff_ranks[r].items())],
        }
        for r in range(shown + 1)
    ]
    summary = {
        "lattice_dim": n,
        "ray_count": len(fan.rays),
        "cone_counts": fan.counts_by_dim(),
        "complete": is_complete(fan),
    }
    return MaximalityReport(
        fan=summary,
        betti_real=betti,
        e2=e2,
        pages=page_docs,
        degenerate_at_one=degenerates_at_one(pages),
        s_conditions=pages.s_table,
    )


def run_check(fan_file: str, max_r: int | None = None) -> MaximalityReport:
    return check_fan(load_fan(fan_file), max_r)


def report_to_json(report: MaximalityReport) -> str:
    return json.dumps(report.to_dict(), sort_keys=True, indent=2) + "\n"


def emit_report(report: MaximalityReport, path: str) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        fh.write(report_to_json(report))


def read_report(path: str) -> MaximalityReport:
    with open(path, encoding="utf-8") as fh:
        return MaximalityReport.from_dict(json.load(fh))


# -- corpora -----------------------------------------------------------------


def _builtins(dim: int) -> list[Fan]:
    if dim == 1:
        return [projective(1)]
    if dim == 2:
        return [projective(2)] + [hirzebruch(a) for a in range(4)] + [weighted_p112()]
    return [projective(dim)]


def _factors(dim: int) -> list[Fan]:
    if dim == 2:
        return [projective(2), hirzebruch(1), weighted_p112()]
    return [projective(dim)]


def _partitions(d: int, largest: int | None = None):
    largest = d if largest is None else largest
    if d == 0:
        yield ()
        return
    for k in range(min(d, largest), 0, -1):
        for rest in _partitions(d - k, k):
            yield (k,) + rest


def base_fans(dim: int) -> list[Fan]:
    """Builtins of dimension ``dim``, then products of lower-dimensional builtins."""
    out: list[Fan] = []
    seen: set = set()

    def add(f: Fan) -> None:
        if f.key() not in seen:
            seen.add(f.key())
            out.append(f)

    for f in _builtins(dim):
        add(f)
    for parts in _partitions(dim):
        if len(parts) < 2:
            continue
        choices = []
        for k, group in itertools.groupby(parts):
            choices.append(list(itertools.combinations_with_replacement(_factors(k), len(list(group)))))
        for pick in itertools.product(*choices):
            factors = [f for grp in pick for f in grp]
            prod = factors[0]
            for f in factors[1:]:
                prod = product_fan(prod, f)
            add(prod)
    return out


def random_chain(base: Fan, rng: random.Random, max_steps: int = 10) -> Fan:
    """Apply between 1 and ``max_steps`` star subdivisions at random cones of dim >= 2."""
    fan = base
    for _ in range(rng.randint(1, max_steps)):
        targets = [c.id for c in fan.cones if c.dim >= 2 and c.is_simplicial]
        if not targets:
            break
        fan = star_subdivision(fan, rng.choice(targets))
    return fan


def generate_corpus(seed: int, count: int, dim: int, max_steps: int = 10) -> list[Fan]:
    """``count`` distinct fans: base fans first, then seeded subdivision chains.

    When fewer than ``count`` distinct fans exist (dimension 1 has a single
    complete fan) the list is padded by repeating it cyclically.
    """
    if not 1 <= dim <= 6:
        raise ValueError("dim must be in 1..6")
    if count < 1:
        raise ValueError("count must be positive")
    out = base_fans(dim)[:count]
    seen = {f.key() for f in out}
    bases = base_fans(dim)
    rng = random.Random(seed)
    attempts = 0
    while len(out) < count and attempts < 20 * count and dim >= 2:
        attempts += 1
        fan = random_chain(rng.choice(bases), rng, max_steps)
        if fan.key() not in seen:
            seen.add(fan.key())
            out.append(fan)
    pool = list(out)
    for f in itertools.cycle(pool):
        if len(out) >= count:
            break
        out.append(f)
    return out


def seeded_corpus(dim: int, seeds, max_steps: int = 10) -> list[Fan]:
    """Base fans plus the first subdivision chain of every seed, without repeats."""
    bases = base_fans(dim)
    out = list(bases)
    seen = {f.key() for f in out}
    if dim < 2:
        return out
    for s in seeds:
        rng = random.Random(s)
        fan = random_chain(rng.choice(bases), rng, max_steps)
        if fan.key() not in seen:
            seen.add(fan.key())
            out.append(fan)
    return out


def write_corpus(fans: list[Fan], out_dir: str) -> list[str]:
    os.makedirs(out_dir, exist_ok=True)
    paths = []
    for i, f in enumerate(fans):
        path = os.path.join(out_dir, f"fan_{i:03d}.json")
        with open(path, "w", encoding="utf-8") as fh:
            fh.write(fan_to_json(f))
        paths.append(path)
    return paths
