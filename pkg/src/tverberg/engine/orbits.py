"""Colorful Caratheodory pivoting and Z/r orbit collapsing on ``[r]^{*(n+1)}``."""

from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations

from .._rng import SplitMix64
from ..generators import random_rational
from ..geometry import GeometryError, affine_rank, fmt, hulls_intersect, solve


class OrbitError(ValueError):
    pass


def _dot(a, b):
    return sum((x * y for x, y in zip(a, b)), Fraction(0))


def _combo(points, weights):
    dim = len(points[0])
    return tuple(sum((w * p[k] for w, p in zip(weights, points)), Fraction(0)) for k in range(dim))


def captures_origin(points):
    """Convex weights writing the origin as a combination of ``points``, or ``None``."""
    origin = tuple(Fraction(0) for _ in points[0])
    res = hulls_intersect([list(points), [origin]])
    return None if res is None else res[1][0]


def min_norm_point(points):
    """Point of ``conv(points)`` nearest the origin, with convex weights.

    Affine projections onto subsets are tried by increasing size; the first
    one that is a convex combination and satisfies ``<p, y> >= |y|^2`` for
    every input point is the optimum.
    """
    pts = [tuple(Fraction(c) for c in p) for p in points]
    for size in range(1, len(pts) + 1):
        for sub in combinations(range(len(pts)), size):
            chosen = [pts[i] for i in sub]
            if affine_rank(chosen) != size - 1:
                continue
            # KKT system for min |sum mu_i p_i|^2 subject to sum mu_i = 1
            a = [[_dot(p, q) for q in chosen] + [Fraction(1)] for p in chosen]
            a.append([Fraction(1)] * size + [Fraction(0)])
            sol = solve(a, [Fraction(0)] * size + [Fraction(1)])
            if sol is None:
                continue
            mu = sol[:size]
            if any(m < 0 for m in mu):
                continue
            y = _combo(chosen, mu)
            yy = _dot(y, y)
            if all(_dot(p, y) >= yy for p in pts):
                weights = [Fraction(0)] * len(pts)
                for i, m in zip(sub, mu):
                    weights[i] = m
                return y, weights
    raise GeometryError("no nearest point found")  # unreachable for nonempty input


@dataclass
class ColorfulSelection:
    """One index per input set and convex weights putting the origin in their hull."""

    indices: tuple
    points: tuple
    weights: tuple
    pivots: int = 0
    potentials: list = field(default_factory=list)

    def certified(self):
        return (
            all(w >= 0 for w in self.weights)
            and sum(self.weights) == 1
            and all(c == 0 for c in _combo(self.points, self.weights))
        )


def colorful_caratheodory(sets):
    """Pick one point per set so that the origin lies in their convex hull.

    Needs ``d + 1`` sets in ``Q^d``, each capturing the origin.  Starting
    from the first point of every set, the nearest point ``y`` of the
    current hull to the origin is computed; the lowest-indexed set whose
    point carries zero weight in ``y`` swaps in its point minimising
    ``<x, y>``.  The squared distance ``|y|^2`` strictly decreases, so the
    loop terminates.
    """
    sets = [[tuple(Fraction(c) for c in p) for p in s] for s in sets]
    if not sets or any(not s for s in sets):
        raise OrbitError("every set must be nonempty")
    dim = len(sets[0][0])
    if len(sets) != dim + 1:
        raise OrbitError(f"need {dim + 1} sets in dimension {dim}, got {len(sets)}")
    for i, s in enumerate(sets):
        if any(len(p) != dim for p in s):
            raise OrbitError(f"set {i} has points of the wrong dimension")
        if captures_origin(s) is None:
            raise OrbitError(f"set {i} does not capture the origin")
    choice = [0] * len(sets)
    potentials = []
    while True:
        pts = [sets[i][j] for i, j in enumerate(choice)]
        weights = captures_origin(pts)
        if weights is not None:
            return ColorfulSelection(tuple(choice), tuple(pts), tuple(weights), len(potentials), potentials)
        y, weights = min_norm_point(pts)
        potentials.append(_dot(y, y))
        i = next(k for k, w in enumerate(weights) if w == 0)
        scores = [_dot(p, y) for p in sets[i]]
        best = min(range(len(scores)), key=lambda j: (scores[j], j))
        assert scores[best] <= 0 < potentials[-1]
        choice[i] = best


# --- the join [r]^{*(n+1)} --------------------------------------------------


@dataclass(frozen=True)
class JoinPoint:
    """``sum_j lambda_j (j, x_j)`` with symbols ``x_j`` in ``1..r``."""

    r: int
    coefficients: tuple
    symbols: tuple

    def __post_init__(self):
        if len(self.coefficients) != len(self.symbols):
            raise OrbitError("one coefficient and one symbol per column")
        if any(c < 0 for c in self.coefficients) or sum(self.coefficients) != 1:
            raise OrbitError("coefficients must be nonnegative and sum to 1")
        if any(not 1 <= s <= self.r for s in self.symbols):
            raise OrbitError(f"symbols must lie in 1..{self.r}")

    def shifted(self, k=1):
        """Image under ``t^k``: every symbol moves ``k`` steps around ``Z/r``."""
        syms = tuple((s - 1 + k) % self.r + 1 for s in self.symbols)
        return JoinPoint(self.r, self.coefficients, syms)

    def support(self):
        return frozenset((j, s) for j, (c, s) in enumerate(zip(self.coefficients, self.symbols)) if c)

    def to_dict(self):
        return {"coefficients": [fmt(c) for c in self.coefficients], "symbols": list(self.symbols)}


@dataclass(frozen=True)
class AffineJoinMap:
    """Values in ``Q^d`` on the ``r(n+1)`` vertices ``(column, symbol)``."""

    r: int
    n: int
    d: int
    values: dict

    def __post_init__(self):
        for j in range(self.n + 1):
            for s in range(1, self.r + 1):
                v = self.values.get((j, s))
                if v is None or len(v) != self.d:
                    raise OrbitError(f"missing or malformed value at vertex {(j, s)}")

    def __call__(self, x):
        out = [Fraction(0)] * self.d
        for j, (c, s) in enumerate(zip(x.coefficients, x.symbols)):
            if c:
                for k, v in enumerate(self.values[(j, s)]):
                    out[k] += c * v
        return tuple(out)

    def orbit_image(self, j, s):
        """``F(v) = (f(v), f(t v), ..., f(t^{r-1} v))`` for the vertex ``v = (j, s)``."""
        return tuple(self.values[(j, (s - 1 + k) % self.r + 1)] for k in range(self.r))

    def to_dict(self):
        return {
            "r": self.r,
            "n": self.n,
            "d": self.d,
            "values": [
                {"column": j, "symbol": s, "value": [fmt(c) for c in self.values[(j, s)]]}
                for j in range(self.n + 1)
                for s in range(1, self.r + 1)
            ],
        }


def random_affine_join_map(r, n, d, seed, bound=16):
    rng = SplitMix64(seed)
    values = {
        (j, s): tuple(random_rational(rng, bound) for _ in range(d))
        for j in range(n + 1)
        for s in range(1, r + 1)
    }
    return AffineJoinMap(r, n, d, values)


def diagonal_chart(images):
    """Coordinates ``(y_1 - y_r, ..., y_{r-1} - y_r)`` on the complement of the diagonal.

    Linear with kernel exactly the diagonal, hence an isomorphism on its
    orthogonal complement; capturing the origin is preserved.
    """
    last = images[-1]
    return tuple(a - b for y in images[:-1] for a, b in zip(y, last))


def project_off_diagonal(images):
    """Orthogonal projection of ``(y_1, ..., y_r)`` onto the complement of the diagonal."""
    r = len(images)
    mean = [sum(c) / r for c in zip(*images)]
    return tuple(tuple(a - m for a, m in zip(y, mean)) for y in images)


@dataclass
class OrbitCollapse:
    point: JoinPoint
    value: tuple
    pivots: int

    def to_dict(self):
        return {"point": self.point.to_dict(), "value": [fmt(c) for c in self.value], "pivots": self.pivots}


def collapse_orbit(f):
    """A point ``x`` with ``f(x) = f(t x) = ... = f(t^{r-1} x)``.

    Each vertex column ``j`` gives the orbit set ``{F(j, s) : s}``, whose
    barycenter lies on the diagonal.  Colorful Caratheodory on the first
    ``(r-1)d + 1`` columns picks one symbol per column; its weights become
    the coefficients of ``x``.
    """
    r, n, d = f.r, f.n, f.d
    need = (r - 1) * d
    if n < need:
        raise OrbitError(f"need n >= (r-1)d = {need}, got n = {n}")
    used = need + 1
    sets = [[diagonal_chart(f.orbit_image(j, s)) for s in range(1, r + 1)] for j in range(used)]
    if need == 0:
        raise OrbitError("r >= 2 and d >= 1 are required")
    sel = colorful_caratheodory(sets)
    coeffs = list(sel.weights) + [Fraction(0)] * (n + 1 - used)
    symbols = [i + 1 for i in sel.indices] + [1] * (n + 1 - used)
    x = JoinPoint(r, tuple(coeffs), tuple(symbols))
    value = f(x)
    for k in range(1, r):
        if f(x.shifted(k)) != value:
            raise OrbitError("orbit failed to collapse")  # guards the certificate
    return OrbitCollapse(x, value, sel.pivots)
