"""Exact rational geometry: LP feasibility, simplex projections, position tests.

Every quantity is a :class:`fractions.Fraction` or an ``int``; nothing here
ever rounds.
"""

import csv
from dataclasses import dataclass, field
from enum import Enum
from fractions import Fraction
from functools import reduce
from itertools import combinations
import io
from math import comb, factorial, gcd, lcm

from ._rng import SplitMix64
from .partitions import IndexPartition, PartitionError


class GeometryError(ValueError):
    pass


def as_rational(value):
    """Parse ``int``, ``Fraction`` or a ``"p/q"`` string into a Fraction."""
    if isinstance(value, Fraction):
        return value
    if isinstance(value, int):
        return Fraction(value)
    if isinstance(value, str):
        return Fraction(value.strip())
    raise GeometryError(f"not an exact rational: {value!r}")


def fmt(q):
    """Canonical text form of a rational: ``"p/q"`` or ``"p"``."""
    return str(q)


@dataclass(frozen=True)
class PointConfiguration:
    """Ordered points in ``Q^dim``; point ``i`` carries label ``i`` (1-based)."""

    dim: int
    points: tuple

    def __post_init__(self):
        if self.dim < 1:
            raise GeometryError("dimension must be positive")
        pts = tuple(tuple(as_rational(c) for c in p) for p in self.points)
        if not pts:
            raise GeometryError("a configuration needs at least one point")
        for p in pts:
            if len(p) != self.dim:
                raise GeometryError(f"point {p} does not have {self.dim} coordinates")
        object.__setattr__(self, "points", pts)

    @classmethod
    def from_rows(cls, rows):
        rows = [tuple(r) for r in rows]
        return cls(len(rows[0]), rows)

    def __len__(self):
        return len(self.points)

    @property
    def labels(self):
        return range(1, len(self.points) + 1)

    def point(self, label):
        return self.points[label - 1]

    def transformed(self, matrix, shift):
        """Apply ``x -> matrix @ x + shift`` to every point."""
        pts = [
            tuple(sum((a * x for a, x in zip(row, p)), Fraction(0)) + s for row, s in zip(matrix, shift))
            for p in self.points
        ]
        return PointConfiguration(self.dim, pts)

    def to_csv(self):
        buf = io.StringIO()
        buf.write(f"dim={self.dim}\n")
        writer = csv.writer(buf, lineterminator="\n")
        for p in self.points:
            writer.writerow([fmt(c) for c in p])
        return buf.getvalue()

    @classmethod
    def from_csv(cls, text):
        lines = [ln for ln in text.splitlines() if ln.strip()]
        if not lines or not lines[0].strip().startswith("dim="):
            raise GeometryError("missing 'dim=<d>' header")
        dim = int(lines[0].strip()[4:])
        rows = [[as_rational(c) for c in row] for row in csv.reader(lines[1:])]
        return cls(dim, rows)


@dataclass(frozen=True)
class IntersectionWitness:
    point: tuple
    coefficients: tuple  # per part: {label: Fraction}

    def residual_free(self, config):
        """True iff every part's convex combination reproduces ``point`` exactly."""
        for coeffs in self.coefficients:
            if any(c < 0 for c in coeffs.values()) or sum(coeffs.values()) != 1:
                return False
            combo = [Fraction(0)] * config.dim
            for label, c in coeffs.items():
                for k, x in enumerate(config.point(label)):
                    combo[k] += c * x
            if tuple(combo) != tuple(self.point):
                return False
        return True

    def to_dict(self):
        return {
            "point": [fmt(c) for c in self.point],
            "coefficients": [{str(k): fmt(v) for k, v in sorted(c.items())} for c in self.coefficients],
        }


class Status(str, Enum):
    HOLDS = "holds"
    VIOLATED = "violated"
    INCONCLUSIVE = "inconclusive-budget-exhausted"


@dataclass(frozen=True)
class PositionVerdict:
    status: Status
    witness: tuple = None
    checked: int = 0
    exhaustive: bool = False

    def __post_init__(self):
        if self.status is Status.VIOLATED and self.witness is None:
            raise GeometryError("a violated verdict needs a witness")


# --- integer linear algebra -------------------------------------------------


def integer_row(row):
    """Scale a rational row to a primitive integer row with the same span."""
    if all(type(x) is int for x in row):
        ints = list(row)
    else:
        den = reduce(lcm, (Fraction(x).denominator for x in row), 1)
        ints = [int(Fraction(x) * den) for x in row]
    g = reduce(gcd, ints, 0)
    return [x // g for x in ints] if g > 1 else ints


def rank(rows):
    """Exact rank of a rational matrix (fraction-free Bareiss elimination)."""
    m = [integer_row(r) for r in rows if any(r)]
    if not m:
        return 0
    ncols = len(m[0])
    rk, prev = 0, 1
    for c in range(ncols):
        piv = next((i for i in range(rk, len(m)) if m[i][c]), None)
        if piv is None:
            continue
        m[rk], m[piv] = m[piv], m[rk]
        p = m[rk][c]
        for i in range(rk + 1, len(m)):
            a = m[i][c]
            m[i] = [(x * p - a * y) // prev for x, y in zip(m[i], m[rk])]
        prev = p
        rk += 1
        if rk == len(m):
            break
    return rk


def solve(a_rows, b):
    """Solve a square nonsingular rational system; ``None`` if singular."""
    n = len(a_rows)
    m = [[Fraction(x) for x in row] + [Fraction(y)] for row, y in zip(a_rows, b)]
    for c in range(n):
        piv = next((i for i in range(c, n) if m[i][c] != 0), None)
        if piv is None:
            return None
        m[c], m[piv] = m[piv], m[c]
        inv = 1 / m[c][c]
        m[c] = [x * inv for x in m[c]]
        for i in range(n):
            if i != c and m[i][c] != 0:
                f = m[i][c]
                m[i] = [x - f * y for x, y in zip(m[i], m[c])]
    return [row[n] for row in m]


def affine_rank(points):
    """Dimension of the affine hull of ``points`` (-1 for no points)."""
    if not points:
        return -1
    base = points[0]
    return rank([[x - y for x, y in zip(p, base)] for p in points[1:]])


# --- LP feasibility ---------------------------------------------------------


def lp_feasible(a_rows, b):
    """Find ``x >= 0`` with ``A x = b`` over Q, or return ``None``.

    Phase-one simplex on an integer tableau (fraction-free pivoting, all
    entries share the denominator of the last pivot) with Bland's rule.
    """
    res = _phase_one(a_rows, b)
    if res is None:
        return None
    tab, basis, den, n = res
    x = [Fraction(0)] * n
    for i, j in enumerate(basis):
        if j < n:
            x[j] = Fraction(tab[i][-1], den)
    return x


def _phase_one(a_rows, b):
    m = len(a_rows)
    n = len(a_rows[0]) if m else 0
    tab = []
    for row, rhs in zip(a_rows, b):
        ints = integer_row(list(row) + [rhs])
        if ints[-1] < 0:
            ints = [-x for x in ints]
        tab.append(ints[:-1] + [0] * m + [ints[-1]])
    for i in range(m):
        tab[i][n + i] = 1
    width = n + m + 1
    z = [0] * width
    for row in tab:
        for j in range(n):
            z[j] -= row[j]
        z[-1] -= row[-1]
    for i in range(m):
        z[n + i] = 0
    basis = [n + i for i in range(m)]
    den = 1
    while True:
        # artificials never re-enter: they are fixed at zero once nonbasic
        col = next((j for j in range(n) if z[j] < 0), None)
        if col is None:
            break
        best = None
        for i in range(m):
            a = tab[i][col]
            if a > 0:
                if best is None:
                    best = i
                    continue
                lhs, rhs_ = tab[i][-1] * tab[best][col], tab[best][-1] * a
                if lhs < rhs_ or (lhs == rhs_ and basis[i] < basis[best]):
                    best = i
        # phase one is bounded below, so a column with negative reduced cost
        # always has a positive entry
        prow = tab[best]
        p = prow[col]
        for i in range(m):
            if i != best:
                a = tab[i][col]
                if a:
                    tab[i] = [(x * p - a * y) // den for x, y in zip(tab[i], prow)]
                else:
                    tab[i] = [x * p // den for x in tab[i]]
        a = z[col]
        z = [(x * p - a * y) // den for x, y in zip(z, prow)]
        den = p
        basis[best] = col
    if z[-1] != 0:
        return None
    return tab, basis, den, n


def _hull_system(point_sets):
    r = len(point_sets)
    dim = len(point_sets[0][0])
    offsets, total = [], 0
    for s in point_sets:
        offsets.append(total)
        total += len(s)
    rows, rhs = [], []
    for i, s in enumerate(point_sets):
        row = [0] * total
        for j in range(len(s)):
            row[offsets[i] + j] = 1
        rows.append(row)
        rhs.append(1)
    first = point_sets[0]
    for i in range(1, r):
        s = point_sets[i]
        for k in range(dim):
            row = [0] * total
            for j, p in enumerate(first):
                row[j] = p[k]
            for j, p in enumerate(s):
                row[offsets[i] + j] = -p[k]
            rows.append(row)
            rhs.append(0)
    return rows, rhs, offsets


def hulls_meet(point_sets):
    """Whether ``conv(S_1), ..., conv(S_r)`` share a point (no certificate)."""
    rows, rhs, _ = _hull_system(point_sets)
    return _phase_one(rows, rhs) is not None


def hulls_intersect(point_sets):
    """Common point of ``conv(S_1), ..., conv(S_r)`` and convex weights, or ``None``.

    ``point_sets`` is a sequence of nonempty lists of equal-length rational
    vectors.
    """
    rows, rhs, offsets = _hull_system(point_sets)
    first, dim = point_sets[0], len(point_sets[0][0])
    sol = lp_feasible(rows, rhs)
    if sol is None:
        return None
    weights = [sol[offsets[i]:offsets[i] + len(s)] for i, s in enumerate(point_sets)]
    point = tuple(sum((w * p[k] for w, p in zip(weights[0], first)), Fraction(0)) for k in range(dim))
    return point, weights


def _as_partition(config, partition):
    if not isinstance(partition, IndexPartition):
        try:
            partition = IndexPartition(len(config), partition)
        except PartitionError as exc:
            raise GeometryError(str(exc)) from exc
    if partition.ground_size > len(config):
        raise GeometryError(
            f"partition ground size {partition.ground_size} exceeds {len(config)} points"
        )
    return partition


def convex_hulls_intersect(config, partition):
    """Exact r-fold convex hull intersection test for the parts of ``partition``.

    Returns an :class:`IntersectionWitness` or ``None``.
    """
    partition = _as_partition(config, partition)
    if partition.r < 1:
        raise GeometryError("need at least one part")
    if any(len(p) == 0 for p in partition.parts):
        raise GeometryError("empty part")
    sets = [[config.point(i) for i in p] for p in partition.parts]
    res = hulls_intersect(sets)
    if res is None:
        return None
    point, weights = res
    coeffs = tuple(dict(zip(p, w)) for p, w in zip(partition.parts, weights))
    return IntersectionWitness(point, coeffs)


# --- the standard simplex ---------------------------------------------------


def check_barycentric(x):
    x = tuple(as_rational(c) for c in x)
    if not x or any(c < 0 for c in x) or sum(x) != 1:
        raise GeometryError(f"not a point of the standard simplex: {x}")
    return x


def project_onto_simplex(v):
    """Euclidean projection of ``v`` onto ``{y >= 0, sum(y) = 1}`` (sort and threshold)."""
    u = sorted(v, reverse=True)
    csum, theta = Fraction(0), None
    for j, uj in enumerate(u, start=1):
        csum += uj
        t = (csum - 1) / j
        if uj - t > 0:
            theta = t
    return tuple(max(x - theta, Fraction(0)) for x in v)


def squared_distance_to_face(x, face):
    """Squared distance from ``x`` to ``conv{e_i : i in face}`` (0-based indices)."""
    face = sorted(face)
    proj = project_onto_simplex([x[i] for i in face])
    inside = set(face)
    off = sum((c * c for i, c in enumerate(x) if i not in inside), Fraction(0))
    return off + sum(((x[i] - y) ** 2 for i, y in zip(face, proj)), Fraction(0))


def squared_distance_to_skeleton(x, k):
    """Squared Euclidean distance from ``x`` in ``Delta_N`` to its ``k``-skeleton.

    The nearest ``k``-face is spanned by the ``k + 1`` largest coordinates of
    ``x``: swapping a smaller coordinate into the face never brings it closer.
    """
    x = check_barycentric(x)
    if not 0 <= k < len(x):
        raise GeometryError(f"skeleton dimension {k} outside 0..{len(x) - 1}")
    top = sorted(range(len(x)), key=lambda i: (-x[i], i))[: k + 1]
    return squared_distance_to_face(x, top)


# --- general position -------------------------------------------------------


def in_general_position(config):
    """Every ``min(N, d+1)`` points are affinely independent."""
    size = min(len(config), config.dim + 1)
    checked = 0
    for subset in combinations(config.labels, size):
        checked += 1
        if affine_rank([config.point(i) for i in subset]) != size - 1:
            return PositionVerdict(Status.VIOLATED, subset, checked, True)
    return PositionVerdict(Status.HOLDS, None, checked, True)


def _affine_equations(points, dim):
    """Rows ``[n | c]`` with ``n . x = c`` cutting out the affine hull of ``points``."""
    base = points[0]
    dirs = [[x - y for x, y in zip(p, base)] for p in points[1:]]
    normals = nullspace(dirs, dim) if dirs else [[Fraction(int(i == j)) for j in range(dim)] for i in range(dim)]
    return [list(nv) + [sum((a * b for a, b in zip(nv, base)), Fraction(0))] for nv in normals]


def nullspace(rows, ncols):
    """Basis of ``{v : rows @ v = 0}`` over Q."""
    m = [[Fraction(x) for x in r] for r in rows]
    pivots, rk = [], 0
    for c in range(ncols):
        piv = next((i for i in range(rk, len(m)) if m[i][c] != 0), None)
        if piv is None:
            continue
        m[rk], m[piv] = m[piv], m[rk]
        inv = 1 / m[rk][c]
        m[rk] = [x * inv for x in m[rk]]
        for i in range(len(m)):
            if i != rk and m[i][c] != 0:
                f = m[i][c]
                m[i] = [x - f * y for x, y in zip(m[i], m[rk])]
        pivots.append(c)
        rk += 1
    free = [c for c in range(ncols) if c not in pivots]
    basis = []
    for fc in free:
        v = [Fraction(0)] * ncols
        v[fc] = Fraction(1)
        for i, pc in enumerate(pivots):
            v[pc] = -m[i][fc]
        basis.append(v)
    return basis


def intersection_codim(point_sets, dim):
    """Codimension of the intersection of affine hulls; ``dim + 1`` when empty."""
    eqs = [row for s in point_sets for row in _affine_equations(s, dim)]
    if not eqs:
        return 0
    a = [row[:-1] for row in eqs]
    ra = rank(a)
    if rank(eqs) > ra:
        return dim + 1
    return ra


def expected_codim(sizes, dim):
    return min(sum(max(0, dim - s + 1) for s in sizes), dim + 1)


def disjoint_tuple_count(n, r, max_part_size=None):
    """Unordered ``r``-tuples of pairwise disjoint nonempty subsets of an ``n``-set."""
    if max_part_size is None:
        # surjections onto r labelled parts plus an 'unused' bucket
        total = sum((-1) ** j * comb(r, j) * (r - j + 1) ** n for j in range(r + 1))
        return total // factorial(r)
    # count ordered tuples by dynamic programming over part sizes
    sizes = range(1, max_part_size + 1)
    ways = {0: 1}
    for _ in range(r):
        nxt = {}
        for used, w in ways.items():
            for s in sizes:
                if used + s <= n:
                    nxt[used + s] = nxt.get(used + s, 0) + w * comb(n - used, s)
        ways = nxt
    return sum(ways.values()) // factorial(r)


def _disjoint_tuples(n, r, max_part_size):
    """Canonical (increasing-minimum) r-tuples of disjoint nonempty subsets of 1..n."""
    cap = n if max_part_size is None else max_part_size

    def rec(avail, prefix, floor):
        if len(prefix) == r:
            yield prefix
            return
        need = r - len(prefix) - 1
        for first in avail:
            if first <= floor:
                continue
            rest = [x for x in avail if x > first]
            for size in range(1, cap + 1):
                for tail in combinations(rest, size - 1):
                    part = (first,) + tail
                    remaining = [x for x in avail if x not in part]
                    if len(remaining) < need:
                        continue
                    yield from rec(remaining, prefix + (part,), first)

    yield from rec(list(range(1, n + 1)), (), 0)


def strong_general_position_check(config, r, budget, seed=0, max_part_size=None):
    """Check that disjoint r-tuples of subsets meet in the generic codimension.

    For each tuple ``(S_1..S_r)`` the codimension of the intersection of the
    affine hulls must equal ``min(sum of codims, d + 1)``.  The space is
    exhausted when it has at most ``budget`` tuples; otherwise ``budget``
    tuples are sampled and a clean run is reported as inconclusive.
    ``max_part_size`` restricts the subsets that take part.
    """
    if r < 2:
        raise GeometryError("r must be at least 2")
    if budget < 1:
        raise GeometryError("budget must be at least 1")
    n, dim = len(config), config.dim
    cache = {}

    def eqs(part):
        if part not in cache:
            cache[part] = _affine_equations([config.point(i) for i in part], dim)
        return cache[part]

    def violates(parts):
        rows = [row for p in parts for row in eqs(p)]
        a = [row[:-1] for row in rows]
        ra = rank(a)
        actual = dim + 1 if rank(rows) > ra else ra
        # the generic codimension comes from part sizes, not realised ranks
        return actual != expected_codim([len(p) for p in parts], dim)

    total = disjoint_tuple_count(n, r, max_part_size)
    if total <= budget:
        checked = 0
        for parts in _disjoint_tuples(n, r, max_part_size):
            checked += 1
            if violates(parts):
                return PositionVerdict(Status.VIOLATED, parts, checked, True)
        return PositionVerdict(Status.HOLDS, None, checked, True)
    rng = SplitMix64(seed)
    cap = n if max_part_size is None else max_part_size
    checked = 0
    labels = list(config.labels)
    while checked < budget:
        rng.shuffle(labels)
        sizes = [rng.between(1, cap) for _ in range(r)]
        if sum(sizes) > n:
            continue
        parts, pos = [], 0
        for s in sizes:
            parts.append(tuple(sorted(labels[pos:pos + s])))
            pos += s
        parts = tuple(sorted(parts))
        checked += 1
        if violates(parts):
            return PositionVerdict(Status.VIOLATED, parts, checked, False)
    return PositionVerdict(Status.INCONCLUSIVE, None, checked, False)
