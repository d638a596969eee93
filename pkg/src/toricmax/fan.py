"""Fans: ingestion, validation, standard constructors and star subdivision.

A cone is identified by the set of its rays.  Cones are stored sorted by
``(dim, ray_ids)``, so the zero cone always has id 0 and every listing of the
same fan produces the same ids.
"""
from __future__ import annotations

import itertools
import json
import math
from dataclasses import dataclass
from functools import cached_property
from typing import Iterable, Sequence

from .lattice import QuotientData, mod2_cone_subspace, quotient_data, rational_rank

__all__ = [
    "Cone",
    "Fan",
    "FanError",
    "make_fan",
    "parse_fan",
    "load_fan",
    "fan_to_json",
    "validate_fan",
    "builtin_fan",
    "projective",
    "hirzebruch",
    "weighted_p112",
    "point_fan",
    "product_fan",
    "star_subdivision",
    "is_complete",
]


class FanError(ValueError):
    """Malformed or invalid fan input."""


@dataclass(frozen=True)
class Cone:
    id: int
    ray_ids: tuple[int, ...]
    dim: int
    mod2: QuotientData

    @property
    def quot_dim(self) -> int:
        return self.mod2.quot_dim

    @property
    def is_simplicial(self) -> bool:
        return self.dim == len(self.ray_ids)


@dataclass(frozen=True, eq=False)
class Fan:
    n: int
    rays: tuple[tuple[int, ...], ...]
    cones: tuple[Cone, ...]
    covers: tuple[tuple[int, int], ...]

    @cached_property
    def cone_index(self) -> dict[tuple[int, ...], int]:
        return {c.ray_ids: c.id for c in self.cones}

    def cones_of_dim(self, k: int) -> list[Cone]:
        return [c for c in self.cones if c.dim == k]

    def counts_by_dim(self) -> list[int]:
        counts = [0] * (self.n + 1)
        for c in self.cones:
            counts[c.dim] += 1
        return counts

    @cached_property
    def covers_from(self) -> dict[int, list[int]]:
        """Cone id -> ids of the cones covering it."""
        out: dict[int, list[int]] = {c.id: [] for c in self.cones}
        for lo, hi in self.covers:
            out[lo].append(hi)
        return out

    def key(self) -> frozenset:
        """Labelling-independent identity of the fan."""
        return frozenset(
            frozenset(self.rays[i] for i in c.ray_ids) for c in self.cones
        ) | {("dim", self.n)}

    def __repr__(self) -> str:
        return f"Fan(n={self.n}, rays={len(self.rays)}, cones={self.counts_by_dim()})"


# -- construction ---------------------------------------------------------

_MOD2_CACHE: dict[tuple, QuotientData] = {}


def _mod2(vectors: tuple[tuple[int, ...], ...], n: int) -> QuotientData:
    key = (n, vectors)
    q = _MOD2_CACHE.get(key)
    if q is None:
        q = quotient_data(mod2_cone_subspace(vectors, n))
        if len(_MOD2_CACHE) < 100_000:
            _MOD2_CACHE[key] = q
    return q


def _faces(ray_ids: Sequence[int]) -> Iterable[tuple[int, ...]]:
    for k in range(len(ray_ids) + 1):
        yield from itertools.combinations(ray_ids, k)


def make_fan(
    n: int,
    rays: Sequence[Sequence[int]],
    cones: Iterable[Sequence[int]],
    close_faces: bool = False,
) -> Fan:
    """Build a fan from ray vectors and cone ray-sets.

    The zero cone is added when absent.  With ``close_faces`` every listed
    cone must be simplicial and all its sub-ray-sets are added as faces.
    """
    rays = tuple(tuple(int(x) for x in r) for r in rays)
    raysets: set[tuple[int, ...]] = {()}
    for c in cones:
        ids = tuple(sorted(c))
        if close_faces:
            vecs = [rays[i] for i in ids]
            if rational_rank(vecs, n) != len(ids):
                raise FanError(f"cone {list(ids)} is not simplicial; cannot generate its faces")
            raysets.update(_faces(ids))
        else:
            raysets.add(ids)
    info = []
    for ids in raysets:
        vecs = tuple(rays[i] for i in ids)
        q = _mod2(vecs, n)
        info.append((q.sub.dim, ids, q))
    info.sort(key=lambda t: (t[0], t[1]))
    cone_list = tuple(Cone(i, ids, dim, q) for i, (dim, ids, q) in enumerate(info))
    return Fan(n, rays, cone_list, _compute_covers(cone_list))


def _compute_covers(cones: Sequence[Cone]) -> tuple[tuple[int, int], ...]:
    by_dim: dict[int, list[Cone]] = {}
    for c in cones:
        by_dim.setdefault(c.dim, []).append(c)
    out = []
    for c in cones:
        rays = set(c.ray_ids)
        for hi in by_dim.get(c.dim + 1, ()):
            if rays.issubset(hi.ray_ids):
                out.append((c.id, hi.id))
    return tuple(sorted(out))


# -- file format ------------------------------------------------------------


def _where(source: str, path: str) -> str:
    return f"{source}: at {path}"


def parse_fan(text: str, source: str = "<fan>") -> Fan:
    """Parse the JSON fan format (see README) into a :class:`Fan`."""
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise FanError(f"{source}:{exc.lineno}:{exc.colno}: malformed JSON: {exc.msg}") from None
    if not isinstance(doc, dict):
        raise FanError(_where(source, "$") + ": expected a JSON object")
    for key in ("lattice_dim", "rays", "cones"):
        if key not in doc:
            raise FanError(_where(source, "$") + f": missing key {key!r}")
    unknown = set(doc) - {"lattice_dim", "rays", "cones", "maximal_only"}
    if unknown:
        raise FanError(_where(source, "$") + f": unknown keys {sorted(unknown)}")
    n = doc["lattice_dim"]
    if not isinstance(n, int) or isinstance(n, bool) or n < 0:
        raise FanError(_where(source, "$.lattice_dim") + ": expected a nonnegative integer")
    maximal_only = doc.get("maximal_only", False)
    if not isinstance(maximal_only, bool):
        raise FanError(_where(source, "$.maximal_only") + ": expected a boolean")

    rays_doc = doc["rays"]
    if not isinstance(rays_doc, list):
        raise FanError(_where(source, "$.rays") + ": expected a list")
    rays: list[tuple[int, ...]] = []
    seen: dict[tuple[int, ...], int] = {}
    for i, r in enumerate(rays_doc):
        path = f"$.rays[{i}]"
        if not isinstance(r, list) or not all(
            isinstance(x, int) and not isinstance(x, bool) for x in r
        ):
            raise FanError(_where(source, path) + ": expected a list of integers")
        if len(r) != n:
            raise FanError(_where(source, path) + f": ray has length {len(r)}, lattice_dim is {n}")
        vec = tuple(r)
        if math.gcd(*vec) != 1:
            raise FanError(_where(source, path) + f": ray {list(vec)} is not primitive")
        if vec in seen:
            raise FanError(_where(source, path) + f": duplicate ray, same as $.rays[{seen[vec]}]")
        seen[vec] = i
        rays.append(vec)

    cones_doc = doc["cones"]
    if not isinstance(cones_doc, list):
        raise FanError(_where(source, "$.cones") + ": expected a list")
    cone_sets: list[tuple[int, ...]] = []
    seen_cones: dict[tuple[int, ...], int] = {}
    for i, c in enumerate(cones_doc):
        path = f"$.cones[{i}]"
        if not isinstance(c, list) or not all(
            isinstance(x, int) and not isinstance(x, bool) for x in c
        ):
            raise FanError(_where(source, path) + ": expected a list of ray indices")
        if any(x < 0 or x >= len(rays) for x in c):
            raise FanError(_where(source, path) + ": ray index out of range")
        if list(c) != sorted(set(c)):
            raise FanError(_where(source, path) + ": ray indices must be strictly ascending")
        ids = tuple(c)
        if ids in seen_cones:
            raise FanError(_where(source, path) + f": duplicate cone, same as $.cones[{seen_cones[ids]}]")
        seen_cones[ids] = i
        if maximal_only and rational_rank([rays[j] for j in ids], n) != len(ids):
            raise FanError(
                _where(source, path) + ": maximal_only requires simplicial cones"
            )
        cone_sets.append(ids)
    try:
        return make_fan(n, rays, cone_sets, close_faces=maximal_only)
    except OverflowError as exc:
        raise FanError(f"{source}: {exc}") from None


def load_fan(path: str, validate: bool = True) -> Fan:
    with open(path, encoding="utf-8") as fh:
        fan = parse_fan(fh.read(), source=str(path))
    if validate:
        problems = validate_fan(fan)
        if problems:
            raise FanError(f"{path}: invalid fan: " + "; ".join(problems))
    return fan


def fan_to_json(fan: Fan) -> str:
    """Canonical serialization; equal fans give identical bytes."""
    doc = {
        "lattice_dim": fan.n,
        "rays": [list(r) for r in fan.rays],
        "cones": [list(c.ray_ids) for c in fan.cones if c.ray_ids],
        "maximal_only": False,
    }
    return json.dumps(doc, sort_keys=True) + "\n"


# -- validation -------------------------------------------------------------


def validate_fan(f: Fan) -> list[str]:
    """Invariant violations of ``f``; empty when the fan is valid.

    Geometric intersection axioms are not checked for non-simplicial cones;
    face relations are taken to be ray-set inclusion.
    """
    out: list[str] = []
    seen_rays: set[tuple[int, ...]] = set()
    for i, r in enumerate(f.rays):
        if len(r) != f.n:
            out.append(f"ray {i} has length {len(r)}, expected {f.n}")
        elif math.gcd(*r) != 1:
            out.append(f"ray {i} {list(r)} is not primitive")
        if r in seen_rays:
            out.append(f"ray {i} is a duplicate")
        seen_rays.add(r)
    if out:
        return out

    zero = [c for c in f.cones if not c.ray_ids]
    if len(zero) != 1:
        out.append(f"zero cone present {len(zero)} times, expected once")
    listed: set[tuple[int, ...]] = set()
    for c in f.cones:
        if any(i < 0 or i >= len(f.rays) for i in c.ray_ids):
            out.append(f"cone {c.id} references a missing ray")
            continue
        if c.ray_ids in listed:
            out.append(f"cone {c.id} {list(c.ray_ids)} is listed twice")
        listed.add(c.ray_ids)
        rk = rational_rank([f.rays[i] for i in c.ray_ids], f.n)
        if c.dim != rk:
            out.append(f"cone {c.id} has dim {c.dim} but its rays span rank {rk}")
        if c.mod2.sub.dim != c.dim:
            out.append(f"cone {c.id} mod-2 subspace has dim {c.mod2.sub.dim}, cone dim {c.dim}")
    ids = {c.id: c for c in f.cones}
    if len(ids) != len(f.cones):
        out.append("cone ids are not unique")
    for c in f.cones:
        if c.is_simplicial:
            for face in _faces(c.ray_ids):
                if face not in listed:
                    out.append(f"simplicial cone {c.id} {list(c.ray_ids)} lacks face {list(face)}")
    expected = set(_compute_covers(f.cones))
    given = set(f.covers)
    for lo, hi in sorted(given - expected):
        out.append(f"cover ({lo}, {hi}) is not a codimension-one face relation")
    for lo, hi in sorted(expected - given):
        out.append(f"cover ({lo}, {hi}) is missing")
    return out


def is_complete(f: Fan) -> bool:
    """Combinatorial completeness: each wall lies in exactly two maximal cones."""
    if f.n == 0:
        return True
    top = f.cones_of_dim(f.n)
    if not top:
        return False
    counts = {c.id: 0 for c in f.cones_of_dim(f.n - 1)}
    for lo, hi in f.covers:
        if lo in counts:
            counts[lo] += 1
    return all(v == 2 for v in counts.values())


# -- standard fans ------------------------------------------------------------


def point_fan() -> Fan:
    return make_fan(0, [], [])


def projective(k: int) -> Fan:
    if k < 1:
        raise FanError("projective space needs k >= 1")
    rays = [tuple(int(i == j) for j in range(k)) for i in range(k)]
    rays.append(tuple([-1] * k))
    maximal = itertools.combinations(range(k + 1), k)
    return make_fan(k, rays, maximal, close_faces=True)


def hirzebruch(a: int) -> Fan:
    rays = [(1, 0), (0, 1), (-1, a), (0, -1)]
    return make_fan(2, rays, [(0, 1), (1, 2), (2, 3), (0, 3)], close_faces=True)


def weighted_p112() -> Fan:
    # relation v0 + v1 + 2*v2 = 0 with v2 = (0, 1)
    rays = [(-1, -2), (1, 0), (0, 1)]
    return make_fan(2, rays, [(0, 1), (1, 2), (0, 2)], close_faces=True)


def builtin_fan(name: str, **params: int) -> Fan:
    if name == "projective":
        return projective(int(params.get("k", 1)))
    if name == "hirzebruch":
        return hirzebruch(int(params.get("a", 0)))
    if name == "weighted_p112":
        return weighted_p112()
    if name == "point":
        return point_fan()
    raise FanError(f"unknown builtin fan {name!r}")


def product_fan(a: Fan, b: Fan) -> Fan:
    n = a.n + b.n
    rays = [r + (0,) * b.n for r in a.rays] + [(0,) * a.n + r for r in b.rays]
    off = len(a.rays)
    cones = [
        ca.ray_ids + tuple(off + i for i in cb.ray_ids) for ca in a.cones for cb in b.cones
    ]
    return make_fan(n, rays, cones)


def _primitive(v: Sequence[int]) -> tuple[int, ...]:
    g = math.gcd(*v)
    if g == 0:
        raise FanError("zero vector has no primitive direction")
    return tuple(x // g for x in v)


def star_subdivision(f: Fan, cone_id: int) -> Fan:
    """Insert the ray through the sum of the target's generators.

    Every cone ``eta`` not containing the target survives, and ``eta + ray``
    is added whenever ``eta`` and the target lie in a common cone.
    """
    target = f.cones[cone_id]
    if target.dim < 1:
        raise FanError("cannot subdivide the zero cone")
    if not target.is_simplicial:
        raise FanError(f"cone {cone_id} is not simplicial")
    if target.dim == 1:
        return f
    new_ray = _primitive([sum(f.rays[i][k] for i in target.ray_ids) for k in range(f.n)])
    if new_ray in f.rays:
        raise FanError("subdivision ray already present; the fan is not valid")
    rho = len(f.rays)
    tset = set(target.ray_ids)
    star = [set(c.ray_ids) for c in f.cones if tset.issubset(c.ray_ids)]
    cones = []
    for c in f.cones:
        if tset.issubset(c.ray_ids):
            continue
        cones.append(c.ray_ids)
        joined = tset | set(c.ray_ids)
        if any(joined <= g for g in star):
            cones.append(c.ray_ids + (rho,))
    return make_fan(f.n, list(f.rays) + [new_ray], cones)
