"""Dimension tuples, index partitions and the colorful-partition builder.

Indices are 1-based throughout, matching point labels of a
:class:`~tverberg.geometry.PointConfiguration`.
"""

from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations
import json


class PartitionError(ValueError):
    pass


@dataclass(frozen=True)
class IndexPartition:
    """``r`` pairwise disjoint subsets of ``{1..ground_size}``.

    Parts keep their given order; each part is stored sorted.  The union
    need not cover the ground set.
    """

    ground_size: int
    parts: tuple

    def __post_init__(self):
        parts = tuple(tuple(sorted(int(i) for i in p)) for p in self.parts)
        seen = set()
        for p in parts:
            if len(set(p)) != len(p):
                raise PartitionError(f"repeated index inside part {p}")
            for i in p:
                if not 1 <= i <= self.ground_size:
                    raise PartitionError(f"index {i} outside 1..{self.ground_size}")
                if i in seen:
                    raise PartitionError(f"parts overlap in index {i}")
                seen.add(i)
        object.__setattr__(self, "parts", parts)

    @property
    def r(self):
        return len(self.parts)

    @property
    def sizes(self):
        return tuple(len(p) for p in self.parts)

    def to_json(self):
        return json.dumps([list(p) for p in self.parts])

    @classmethod
    def from_json(cls, text, ground_size=None):
        parts = json.loads(text)
        if ground_size is None:
            ground_size = max((max(p) for p in parts if p), default=0)
        return cls(ground_size, parts)


@dataclass(frozen=True)
class DimensionTuple:
    r: int
    d: int
    dims: tuple

    def __post_init__(self):
        dims = tuple(int(x) for x in self.dims)
        if self.r < 2:
            raise PartitionError("r must be at least 2")
        if self.d < 1:
            raise PartitionError("d must be at least 1")
        if len(dims) != self.r:
            raise PartitionError(f"expected {self.r} dimensions, got {len(dims)}")
        if list(dims) != sorted(dims):
            raise PartitionError(f"dimensions must be nondecreasing: {dims}")
        object.__setattr__(self, "dims", dims)

    def to_json(self):
        return json.dumps({"r": self.r, "d": self.d, "dims": list(self.dims)})

    @classmethod
    def from_json(cls, text):
        obj = json.loads(text)
        return cls(obj["r"], obj["d"], tuple(obj["dims"]))


def is_admissible(t):
    return sum(t.dims) == (t.r - 1) * t.d and t.d // 2 <= t.dims[0] and t.dims[-1] <= t.d


def is_balanced(t):
    return max(t.dims) - min(t.dims) <= 1


def admissible_tuples(r, d):
    """All admissible dimension tuples for ``(r, d)`` in lexicographic order."""
    lo, total = d // 2, (r - 1) * d

    def rec(prefix, remaining, slots, floor):
        if slots == 0:
            if remaining == 0:
                yield tuple(prefix)
            return
        for x in range(floor, d + 1):
            if x * slots > remaining:
                break
            if remaining - x > d * (slots - 1):
                continue
            yield from rec(prefix + [x], remaining - x, slots - 1, x)

    for dims in rec([], total, r, lo):
        yield DimensionTuple(r, d, dims)


def continuous_lower_bound(r, d):
    """Lower bound ``(r-1)(d-1)/r`` on every prescribable dimension for continuous maps."""
    if r < 2 or d < 1:
        raise PartitionError("need r >= 2 and d >= 1")
    return Fraction((r - 1) * (d - 1), r)


def color_classes(r, d):
    """The classes ``Y_k = {(r-1)(k-1)+1, ..., (r-1)k+1}`` for ``k = 1..d+1``."""
    return [tuple(range((r - 1) * (k - 1) + 1, (r - 1) * k + 2)) for k in range(1, d + 2)]


def colorful_ground_size(r, d):
    return (r - 1) * (d + 1) + 1


def is_colorful(p, r, d):
    n = colorful_ground_size(r, d)
    if p.ground_size != n:
        raise PartitionError(f"ground size {p.ground_size} != (r-1)(d+1)+1 = {n}")
    if p.r != r:
        return False
    if sorted(i for part in p.parts for i in part) != list(range(1, n + 1)):
        return False
    parts = [set(part) for part in p.parts]
    return all(
        len(part.intersection(y)) == 1 for y in color_classes(r, d) for part in parts
    )


def split_indices(t):
    """Split ``{1..d}`` into ``A_1..A_r`` with ``|A_i| = d - d_i``.

    Odd integers are handed out in increasing order, filling ``A_1`` first,
    then ``A_2``, and so on; the even integers follow in the same fashion.
    """
    order = list(range(1, t.d + 1, 2)) + list(range(2, t.d + 1, 2))
    split, pos = [], 0
    for di in t.dims:
        size = t.d - di
        split.append(order[pos:pos + size])
        pos += size
    return split


def build_colorful_partition(t):
    """Colorful partition of ``{1..(r-1)(d+1)+1}`` with part sizes ``d_i + 1``.

    Every free point is handed to eligible parts in increasing point order,
    eligible parts taken in increasing index.
    """
    if not is_admissible(t):
        raise PartitionError(f"tuple {t.dims} is not admissible for r={t.r}, d={t.d}")
    r, d = t.r, t.d
    owner = {}
    for i, a in enumerate(split_indices(t)):
        for k in a:
            owner[(r - 1) * k + 1] = i
    parts = [[] for _ in range(r)]
    for point, i in owner.items():
        parts[i].append(point)

    def distribute(points, blocked):
        free = [i for i in range(r) if i not in blocked]
        assert len(free) == len(points), (points, blocked)
        for point, i in zip(points, free):
            parts[i].append(point)

    distribute(list(range(1, r)), {owner[r]})
    for k in range(1, d):
        lo, hi = (r - 1) * k + 1, (r - 1) * (k + 1) + 1
        distribute(list(range(lo + 1, hi)), {owner[lo], owner[hi]})
    last = (r - 1) * d + 1
    distribute(list(range(last + 1, last + r)), {owner[last]})
    return IndexPartition(colorful_ground_size(r, d), parts)


def partition_count(ground_len, sizes):
    """Number of partitions :func:`enumerate_partitions` yields."""
    from math import comb, factorial, prod
    from collections import Counter

    n = sum(sizes)
    if n > ground_len or any(s < 0 for s in sizes):
        return 0
    mult = prod(factorial(m) for m in Counter(sizes).values())
    return comb(ground_len, n) * factorial(n) // (prod(factorial(s) for s in sizes) * mult)


def enumerate_partitions(ground, sizes, start=0, stop=None):
    """Yield every way to pick disjoint parts of the given sizes from ``ground``.

    Lexicographic in the parts as chosen left to right.  Parts of equal size
    are forced into increasing order of their minimum element, so each
    unordered choice among equal-size parts appears once.  ``start``/``stop``
    select a deterministic sub-range of the stream.  Sizes that do not fit
    give an empty stream.
    """
    ground = tuple(sorted(ground))
    sizes = tuple(sizes)
    if any(s < 0 for s in sizes):
        raise PartitionError("part sizes must be nonnegative")
    if sum(sizes) > len(ground):
        return
    n = max(ground, default=0)
    # previous position with the same size, whose minimum must be smaller
    prev_same = []
    for i, s in enumerate(sizes):
        j = next((j for j in range(i - 1, -1, -1) if sizes[j] == s), None)
        prev_same.append(j)

    def rec(i, avail, chosen):
        if i == len(sizes):
            yield chosen
            return
        j = prev_same[i]
        floor = chosen[j][0] if j is not None and sizes[i] > 0 else None
        for part in combinations(avail, sizes[i]):
            if floor is not None and part[0] < floor:
                continue
            rest = tuple(x for x in avail if x not in part)
            yield from rec(i + 1, rest, chosen + (part,))

    for idx, parts in enumerate(rec(0, ground, ())):
        if idx < start:
            continue
        if stop is not None and idx >= stop:
            return
        yield IndexPartition(n, parts)


def size_profiles(n_points, r):
    """Nondecreasing ``r``-tuples of positive part sizes with sum at most ``n_points``."""

    def rec(prefix, remaining, slots, floor):
        if slots == 0:
            yield tuple(prefix)
            return
        for s in range(floor, remaining // slots + 1):
            yield from rec(prefix + [s], remaining - s, slots - 1, s)

    yield from rec([], n_points, r, 1)
