"""Maps that are affine on the first barycentric subdivision of ``Delta_N``.

Vertices of ``Delta_N`` are labelled ``1..N+1``; coordinate ``i`` of a
barycentric point belongs to vertex ``i + 1``.  A subdivision vertex is a
nonempty face, stored as a ``frozenset`` of labels.
"""

from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from fractions import Fraction
from functools import reduce
from itertools import combinations, permutations
from math import lcm

from .._rng import substream
from ..geometry import GeometryError, check_barycentric, fmt, hulls_intersect, hulls_meet, squared_distance_to_skeleton
from ..partitions import DimensionTuple, IndexPartition, enumerate_partitions, partition_count
from .search import Outcome, SearchError, SearchOutcome, boxes_disjoint


def all_faces(labels):
    labels = sorted(labels)
    for k in range(1, len(labels) + 1):
        for c in combinations(labels, k):
            yield frozenset(c)


@dataclass
class PLMap:
    n: int
    target_dim: int
    values: dict

    def __post_init__(self):
        expected = (1 << (self.n + 1)) - 1
        if len(self.values) != expected:
            raise GeometryError(f"expected values on {expected} faces, got {len(self.values)}")
        for face, v in self.values.items():
            if len(v) != self.target_dim:
                raise GeometryError(f"value at {sorted(face)} has wrong length")

    def vertex_value(self, label):
        return self.values[frozenset((label,))]

    def to_dict(self):
        return {
            "n": self.n,
            "target_dim": self.target_dim,
            "values": [
                {"face": sorted(face), "value": [fmt(c) for c in v]}
                for face, v in sorted(self.values.items(), key=lambda kv: (len(kv[0]), sorted(kv[0])))
            ],
        }


def _mean(points):
    k = len(points)
    return tuple(sum(c) / k for c in zip(*points))


def affine_pl_map(g):
    """The affine map sending vertex ``i`` of ``Delta_N`` to point ``i`` of ``g``."""
    n = len(g) - 1
    values = {face: _mean([g.point(i) for i in face]) for face in all_faces(g.labels)}
    return PLMap(n, g.dim, values)


def build_counterexample_map(n, d, d1, g):
    """PL map ``x -> (g(x), dist^2(x, d1-skeleton))`` into ``Q^d``.

    Exact at every subdivision vertex (face barycenter) and interpolated
    affinely on the subdivision cells, so the last coordinate vanishes
    exactly on the ``d1``-skeleton.
    """
    if g.dim != d - 1:
        raise GeometryError(f"g must live in dimension {d - 1}, not {g.dim}")
    if len(g) != n + 1:
        raise GeometryError(f"g must have {n + 1} points, not {len(g)}")
    if not 0 <= d1 <= n:
        raise GeometryError(f"skeleton dimension {d1} outside 0..{n}")
    by_size = {}
    for s in range(1, n + 2):
        bary = [Fraction(1, s)] * s + [Fraction(0)] * (n + 1 - s)
        by_size[s] = squared_distance_to_skeleton(bary, d1)
    values = {}
    for face in all_faces(g.labels):
        values[face] = _mean([g.point(i) for i in face]) + (by_size[len(face)],)
    return PLMap(n, d, values)


def subdivision_chain(x):
    """Faces and weights expressing ``x`` in its subdivision cell.

    The cell is the flag of faces obtained by sorting coordinates in
    decreasing order; faces with zero weight are omitted.
    """
    order = sorted(range(len(x)), key=lambda i: (-x[i], i))
    chain = []
    for j, i in enumerate(order):
        nxt = x[order[j + 1]] if j + 1 < len(order) else Fraction(0)
        w = (j + 1) * (x[i] - nxt)
        if w:
            chain.append((frozenset(order[t] + 1 for t in range(j + 1)), w))
    return chain


def evaluate_pl_map(f, x):
    x = check_barycentric(x)
    if len(x) != f.n + 1:
        raise GeometryError(f"point has {len(x)} coordinates, map domain needs {f.n + 1}")
    out = [Fraction(0)] * f.target_dim
    for face, w in subdivision_chain(x):
        for k, c in enumerate(f.values[face]):
            out[k] += w * c
    return tuple(out)


@dataclass(frozen=True)
class MapWitness:
    """Common image point; per face, the subdivision vertices used and their weights."""

    point: tuple
    cells: tuple
    weights: tuple

    def verify(self, f, faces):
        for face, cell, ws in zip(faces, self.cells, self.weights):
            if any(w < 0 for w in ws) or sum(ws) != 1:
                return False
            if any(not v <= frozenset(face) for v in cell):
                return False
            combo = [Fraction(0)] * f.target_dim
            for v, w in zip(cell, ws):
                for k, c in enumerate(f.values[v]):
                    combo[k] += w * c
            if tuple(combo) != tuple(self.point):
                return False
        return True

    def to_dict(self):
        return {
            "point": [fmt(c) for c in self.point],
            "cells": [[sorted(v) for v in cell] for cell in self.cells],
            "weights": [[fmt(w) for w in ws] for ws in self.weights],
        }


class _FaceTester:
    """Decides ``f(s_1) & ... & f(s_r) != {}`` exactly for faces of ``Delta_N``.

    Each face image is the union of the images of its subdivision cells
    (affine simplices).  Before any LP:

    * a face on which ``f`` is affine contributes its vertex image only;
    * bounding boxes of the whole images must overlap;
    * when the overlap interval in some coordinate is a single value ``c``,
      every intersection point lies on that hyperplane, and each cell whose
      coordinate range ends at ``c`` is cut down to its face at ``c``;
    * every pair of cells must intersect (memoised) before the r-fold LP.

    Coordinates are rescaled to integers internally; a positive scaling per
    axis changes no intersection decision.
    """

    def __init__(self, f):
        self.f = f
        self.scale = [
            reduce(lcm, (v[k].denominator for v in f.values.values()), 1) for k in range(f.target_dim)
        ]
        self.ivals = {
            face: tuple(int(c * s) for c, s in zip(v, self.scale)) for face, v in f.values.items()
        }
        self.piece_cache = {}
        self.pair_cache = {}
        self.slice_cache = {}
        self.bounds_cache = {}

    def pieces(self, face):
        got = self.piece_cache.get(face)
        if got is None:
            got = self._pieces(face)
            self.piece_cache[face] = got
        return got

    def _pieces(self, face):
        vals = self.f.values
        ivals = self.ivals
        verts = sorted(face)
        if all(vals[sub] == _mean([vals[frozenset((v,))] for v in sub]) for sub in all_faces(verts)):
            cells = [tuple(frozenset((v,)) for v in verts)]
        else:
            cells = [
                tuple(frozenset(perm[: j + 1]) for j in range(len(perm)))
                for perm in permutations(verts)
            ]
        return [(tuple(ivals[v] for v in cell), cell) for cell in cells]

    def intersect(self, faces):
        lists = [self.pieces(frozenset(face)) for face in faces]
        dim = self.f.target_dim
        changed = True
        while changed:
            changed = False
            for k in range(dim):
                bounds = [self._bounds(ps, k) for ps in lists]
                lo = max(b[0] for b in bounds)
                hi = min(b[1] for b in bounds)
                if lo > hi:
                    return None
                if lo == hi:
                    new_lists = [self._slice(ps, k, lo) for ps in lists]
                    if any(not ps for ps in new_lists):
                        return None
                    if new_lists != lists:
                        lists, changed = new_lists, True
        return self._combine(lists)

    def _bounds(self, ps, k):
        key = (id(ps), k)
        got = self.bounds_cache.get(key)
        if got is None:
            vals = [p[k] for pts, _ in ps for p in pts]
            got = self.bounds_cache[key] = (min(vals), max(vals), ps)
        return got

    def _slice(self, ps, k, c):
        key = (id(ps), k, c)
        got = self.slice_cache.get(key)
        if got is None:
            got = self.slice_cache[key] = (_slice(ps, k, c), ps)
        return got[0]

    def _combine(self, lists):
        r = len(lists)
        chosen = []

        def rec(i):
            if i == r:
                pts = [c[0] for c in chosen]
                if boxes_disjoint(pts):
                    return None
                res = hulls_intersect(pts)
                if res is None:
                    return None
                point, weights = res
                point = tuple(Fraction(c) / s for c, s in zip(point, self.scale))
                return MapWitness(point, tuple(c[1] for c in chosen), tuple(tuple(w) for w in weights))
            for piece in lists[i]:
                if all(self._pair_points(c[0], piece[0]) for c in chosen):
                    chosen.append(piece)
                    res = rec(i + 1)
                    chosen.pop()
                    if res is not None:
                        return res
            return None

        return rec(0)

    def _pair_points(self, a, b):
        key = (a, b) if hash(a) <= hash(b) else (b, a)
        hit = self.pair_cache.get(key)
        if hit is None:
            hit = not boxes_disjoint([a, b]) and hulls_meet([a, b])
            self.pair_cache[key] = hit
        return hit


def _slice(pieces, k, c):
    out, seen = [], set()
    for pts, cell in pieces:
        vals = [p[k] for p in pts]
        lo, hi = min(vals), max(vals)
        if c < lo or c > hi:
            continue
        if c == lo or c == hi:
            keep = [i for i, v in enumerate(vals) if v == c]
            pts, cell = tuple(pts[i] for i in keep), tuple(cell[i] for i in keep)
        if pts not in seen:
            seen.add(pts)
            out.append((pts, cell))
    return out


def _check_dims(f, r, dims):
    if isinstance(dims, DimensionTuple):
        dims = dims.dims
    dims = tuple(int(x) for x in dims)
    if len(dims) != r:
        raise SearchError(f"need {r} face dimensions, got {dims}")
    if any(x < 0 for x in dims) or sum(x + 1 for x in dims) > f.n + 1:
        raise SearchError(f"no {r} disjoint faces of dimensions {dims} in Delta_{f.n}")
    return dims


def _face_tuple(n, sizes, seed, index):
    rng = substream(seed, index)
    labels = list(range(1, n + 2))
    rng.shuffle(labels)
    parts, pos = [], 0
    for s in sizes:
        parts.append(tuple(sorted(labels[pos:pos + s])))
        pos += s
    return parts


def _probe(f, sizes, seed, start, stop, exhaustive, tester=None):
    tester = tester or _FaceTester(f)
    if exhaustive:
        items = enumerate_partitions(range(1, f.n + 2), sizes, start, stop)
        faces_iter = ((i, p.parts) for i, p in enumerate(items, start=start))
    else:
        faces_iter = ((i, _face_tuple(f.n, sizes, seed, i)) for i in range(start, stop))
    for idx, faces in faces_iter:
        wit = tester.intersect(faces)
        if wit is not None:
            return idx, faces, wit
    return None


def search_map_violation(f, r, dims, budget, seed=0, workers=1, chunk=4096):
    """Look for ``r`` pairwise disjoint faces with prescribed dimensions whose images meet.

    Exhausts all face tuples when there are at most ``budget`` of them,
    otherwise probes ``budget`` seeded random tuples.  A clean sampled run
    ends as ``budget-exhausted``.
    """
    dims = _check_dims(f, r, dims)
    sizes = tuple(x + 1 for x in dims)
    total = partition_count(f.n + 1, sizes)
    exhaustive = total <= budget
    limit = total if exhaustive else budget
    ranges = [(s, min(s + chunk, limit)) for s in range(0, limit, chunk)]
    hit = None
    if workers <= 1 or len(ranges) <= 1:
        tester = _FaceTester(f)
        for s, e in ranges:
            hit = _probe(f, sizes, seed, s, e, exhaustive, tester)
            if hit is not None:
                break
    else:
        with ProcessPoolExecutor(workers) as pool:
            futures = [pool.submit(_probe, f, sizes, seed, s, e, exhaustive) for s, e in ranges]
            for fut in futures:
                hit = fut.result()
                if hit is not None:
                    break
            for fut in futures:
                fut.cancel()
    stats = {"face_tuples_total": total, "exhaustive": exhaustive}
    if hit is not None:
        idx, faces, wit = hit
        stats["face_tuples_examined"] = idx + 1
        return SearchOutcome(Outcome.FOUND, IndexPartition(f.n + 1, faces), wit, stats)
    stats["face_tuples_examined"] = limit
    return SearchOutcome(Outcome.EXHAUSTED if exhaustive else Outcome.BUDGET, stats=stats)
