"""Brute-force reference implementations, written independently of the package."""

from fractions import Fraction
from itertools import combinations, product


def _gauss_jordan(rows, rhs):
    """Solve a square system exactly; ``None`` when singular."""
    n = len(rows)
    m = [list(map(Fraction, r)) + [Fraction(b)] for r, b in zip(rows, rhs)]
    for c in range(n):
        p = next((i for i in range(c, n) if m[i][c] != 0), None)
        if p is None:
            return None
        m[c], m[p] = m[p], m[c]
        piv = m[c][c]
        m[c] = [x / piv for x in m[c]]
        for i in range(n):
            if i != c and m[i][c] != 0:
                f = m[i][c]
                m[i] = [a - f * b for a, b in zip(m[i], m[c])]
    return [m[i][n] for i in range(n)]


def _row_rank(rows):
    m = [list(map(Fraction, r)) for r in rows]
    rank, ncols = 0, len(m[0]) if m else 0
    for c in range(ncols):
        p = next((i for i in range(rank, len(m)) if m[i][c] != 0), None)
        if p is None:
            continue
        m[rank], m[p] = m[p], m[rank]
        for i in range(len(m)):
            if i != rank and m[i][c] != 0:
                f = m[i][c] / m[rank][c]
                m[i] = [a - f * b for a, b in zip(m[i], m[rank])]
        rank += 1
    return rank


def barycentric_oracle(point_sets):
    """Whether the convex hulls share a point, by enumerating basic solutions.

    The system is ``sum_j l_ij = 1`` per part and ``sum_j l_1j p_1j = sum_j l_ij p_ij``;
    a nonempty polyhedron ``{l >= 0 : A l = b}`` has a vertex, which is the
    unique solution on some set of independent columns.
    """
    dim = len(point_sets[0][0])
    cols = [(i, p) for i, s in enumerate(point_sets) for p in s]
    rows, rhs = [], []
    for i in range(len(point_sets)):
        rows.append([Fraction(int(ci == i)) for ci, _ in cols])
        rhs.append(Fraction(1))
    for i in range(1, len(point_sets)):
        for k in range(dim):
            rows.append([Fraction(p[k]) * ((ci == 0) - (ci == i)) for ci, p in cols])
            rhs.append(Fraction(0))
    # keep an independent set of rows of the augmented system
    basis_rows, basis_rhs = [], []
    for r, b in zip(rows, rhs):
        if _row_rank(basis_rows + [r]) > len(basis_rows):
            basis_rows.append(r)
            basis_rhs.append(b)
        elif _row_rank([x + [y] for x, y in zip(basis_rows + [r], basis_rhs + [b])]) > len(basis_rows):
            return False  # inconsistent
    k = len(basis_rows)
    for chosen in combinations(range(len(cols)), k):
        sub = [[row[j] for j in chosen] for row in basis_rows]
        sol = _gauss_jordan(sub, basis_rhs)
        if sol is not None and all(x >= 0 for x in sol):
            return True
    return False


def brute_tverberg_exists(points, r):
    """Any assignment of points to ``r`` nonempty parts (others unused) with meeting hulls."""
    n = len(points)
    for assign in product(range(r + 1), repeat=n):
        parts = [[points[j] for j in range(n) if assign[j] == i] for i in range(1, r + 1)]
        if any(not p for p in parts):
            continue
        # canonical: part minima increasing, so each unordered partition is tried once
        mins = [min(j for j in range(n) if assign[j] == i) for i in range(1, r + 1)]
        if mins != sorted(mins):
            continue
        if barycentric_oracle(parts):
            return True
    return False


def brute_sq_distance_to_skeleton(x, k):
    """Minimum over faces with at most ``k + 1`` vertices of the distance to their affine hulls.

    Only feasible projections (nonnegative coordinates) count, so this is
    the distance to the closed face.
    """
    x = [Fraction(c) for c in x]
    n = len(x)
    best = None
    for size in range(1, k + 2):
        for t in combinations(range(n), size):
            shift = (1 - sum(x[i] for i in t)) / size
            if any(x[i] + shift < 0 for i in t):
                continue
            dist = sum(x[i] ** 2 for i in range(n) if i not in t) + size * shift ** 2
            best = dist if best is None else min(best, dist)
    return best


def brute_partition_count(ground, sizes):
    """Count unordered choices of disjoint parts, equal-size parts unordered."""
    seen = set()
    n = len(ground)
    r = len(sizes)
    for assign in product(range(r + 1), repeat=n):
        parts = tuple(frozenset(g for g, a in zip(ground, assign) if a == i + 1) for i in range(r))
        if [len(p) for p in parts] != list(sizes):
            continue
        key = frozenset((s, p) for s, p in zip(sizes, parts))
        seen.add(key)
    return len(seen)
