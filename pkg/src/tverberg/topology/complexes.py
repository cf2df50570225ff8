"""Finite abstract simplicial complexes and the constructions built on them."""

from dataclasses import dataclass
from itertools import combinations, permutations, product
import json


class ComplexError(ValueError):
    pass


def vertex_key(v):
    """Sort key that also orders frozenset vertices (faces of a subdivided complex)."""
    if isinstance(v, frozenset):
        return (len(v), sorted(vertex_key(x) for x in v))
    return v


def sort_face(face):
    return tuple(sorted(face, key=vertex_key))


class SimplicialComplex:
    """A complex given by its vertices and maximal faces.

    Facets contained in other facets are dropped on construction; declared
    vertices that lie in no facet become 0-dimensional facets.
    """

    def __init__(self, facets, vertices=None):
        facets = {frozenset(f) for f in facets}
        facets.discard(frozenset())
        covered = set().union(*facets) if facets else set()
        if vertices is not None:
            vertices = set(vertices)
            missing = covered - vertices
            if missing:
                raise ComplexError(f"facet members not declared as vertices: {sorted(missing, key=vertex_key)}")
            facets |= {frozenset((v,)) for v in vertices - covered}
        else:
            vertices = covered
        by_size = sorted(facets, key=len, reverse=True)
        maximal = []
        for f in by_size:
            if not any(f < g for g in maximal):
                maximal.append(f)
        self.vertices = tuple(sorted(vertices, key=vertex_key))
        self.facets = tuple(sorted(maximal, key=lambda f: (len(f), [vertex_key(v) for v in sort_face(f)])))
        self._faces = None

    @property
    def dim(self):
        return max((len(f) for f in self.facets), default=0) - 1

    def is_pure(self):
        return len({len(f) for f in self.facets}) <= 1

    def faces(self, k=None):
        """Faces as sorted tuples, grouped by dimension; ``k`` selects one dimension."""
        if self._faces is None:
            seen = {}
            for f in self.facets:
                verts = sort_face(f)
                for size in range(1, len(verts) + 1):
                    seen.setdefault(size - 1, set()).update(combinations(verts, size))
            self._faces = {
                dim: sorted(fs, key=lambda t: [vertex_key(v) for v in t]) for dim, fs in seen.items()
            }
        if k is None:
            return self._faces
        return self._faces.get(k, [])

    def f_vector(self):
        return tuple(len(self.faces(k)) for k in range(self.dim + 1))

    def euler_characteristic(self):
        return sum((-1) ** k * n for k, n in enumerate(self.f_vector()))

    def __contains__(self, face):
        face = frozenset(face)
        return any(face <= f for f in self.facets)

    def __eq__(self, other):
        return isinstance(other, SimplicialComplex) and set(self.facets) == set(other.facets) and set(
            self.vertices
        ) == set(other.vertices)

    def __hash__(self):
        return hash(frozenset(self.facets))

    def __repr__(self):
        return f"SimplicialComplex(dim={self.dim}, vertices={len(self.vertices)}, facets={len(self.facets)})"

    def to_json(self):
        def enc(v):
            if isinstance(v, frozenset):
                return [enc(x) for x in sort_face(v)]
            if isinstance(v, tuple):
                return [enc(x) for x in v]
            return v

        return json.dumps(
            {"vertices": [enc(v) for v in self.vertices], "facets": [[enc(v) for v in sort_face(f)] for f in self.facets]}
        )

    @classmethod
    def from_json(cls, text):
        def dec(v):
            return tuple(dec(x) for x in v) if isinstance(v, list) else v

        obj = json.loads(text)
        return cls([[dec(v) for v in f] for f in obj["facets"]], [dec(v) for v in obj["vertices"]])


def simplex(n, labels=None):
    labels = list(range(1, n + 2)) if labels is None else list(labels)
    return SimplicialComplex([labels])


def simplex_boundary(n):
    """Boundary of ``Delta_n`` on vertices ``1..n+1``."""
    labels = list(range(1, n + 2))
    return SimplicialComplex([c for c in combinations(labels, n)], labels)


def skeleton(k, complex_):
    facets = [c for f in complex_.facets for c in combinations(sort_face(f), min(k + 1, len(f)))]
    return SimplicialComplex(facets, complex_.vertices)


def deleted_join(base, r):
    """The ``r``-fold deleted join; vertex ``(v, i)`` is ``v`` on side ``i``.

    ``base`` is a complex or an integer ``n`` meaning ``Delta_n``.  Facets
    are the maximal tuples of pairwise disjoint faces (empty parts allowed).
    """
    if r < 2:
        raise ComplexError("r must be at least 2")
    if isinstance(base, int):
        base = simplex(base)
    verts = list(base.vertices)
    sides = range(1, r + 1)
    if len(base.facets) == 1:
        # a simplex: every vertex can always go to any side
        facets = [[(v, s) for v, s in zip(verts, choice)] for choice in product(sides, repeat=len(verts))]
        return SimplicialComplex(facets, [(v, s) for v in verts for s in sides])

    facets = []
    parts = {s: [] for s in sides}

    def ok(s):
        return frozenset(parts[s]) in base or not parts[s]

    def rec(i):
        if i == len(verts):
            # maximal: no unused vertex fits on any side
            used = {v for s in sides for v in parts[s]}
            for v in verts:
                if v in used:
                    continue
                for s in sides:
                    if frozenset(parts[s] + [v]) in base:
                        return
            facets.append([(v, s) for s in sides for v in parts[s]])
            return
        v = verts[i]
        for s in sides:
            parts[s].append(v)
            if ok(s):
                rec(i + 1)
            parts[s].pop()
        rec(i + 1)

    rec(0)
    return SimplicialComplex(facets, [(v, s) for v in verts for s in sides])


def _rook_facets(m, n, fits):
    """Maximal rook placements on an ``m x n`` board; ``fits(counts)`` tests column loads."""
    facets = []
    counts = [0] * n
    placed = []

    def rec(row):
        if row > m:
            used = {rw for rw, _ in placed}
            for rw in range(1, m + 1):
                if rw in used:
                    continue
                for c in range(n):
                    counts[c] += 1
                    extendable = fits(counts)
                    counts[c] -= 1
                    if extendable:
                        return
            facets.append(list(placed))
            return
        for c in range(n):
            counts[c] += 1
            if fits(counts):
                placed.append((row, c + 1))
                rec(row + 1)
                placed.pop()
            counts[c] -= 1
        rec(row + 1)

    rec(1)
    board = [(rw, c) for rw in range(1, m + 1) for c in range(1, n + 1)]
    return SimplicialComplex(facets, board)


def multiple_chessboard(m, n, k):
    """Rook placements with at most one rook per row and ``k[i]`` in column ``i + 1``.

    Vertex ``(row, column)``; equivalently ``(label, side)`` in the deleted
    join of skeleta of ``Delta_{m-1}``.
    """
    k = tuple(k)
    if m < 1 or n < 1 or len(k) != n or any(x < 1 for x in k):
        raise ComplexError("need m, n >= 1 and n column bounds >= 1")
    return _rook_facets(m, n, lambda counts: all(c <= b for c, b in zip(counts, k)))


def fits_some_permutation(sizes, bounds):
    """Whether ``sizes[pi(i)] <= bounds[i]`` for some permutation ``pi``."""
    return all(s <= b for s, b in zip(sorted(sizes, reverse=True), sorted(bounds, reverse=True)))


def symmetric_multiple_chessboard(m, n, k):
    """Union of :func:`multiple_chessboard` over all permutations of the column bounds."""
    k = tuple(k)
    if m < 1 or n < 1 or len(k) != n or any(x < 1 for x in k):
        raise ComplexError("need m, n >= 1 and n column bounds >= 1")
    facets = set()
    for perm in set(permutations(k)):
        facets.update(multiple_chessboard(m, n, perm).facets)
    board = [(rw, c) for rw in range(1, m + 1) for c in range(1, n + 1)]
    return SimplicialComplex(facets, board)


def in_symmetric_chessboard(components, k):
    """Membership of the join face ``components[0] * components[1] * ...`` in Sigma^k.

    Components must be pairwise disjoint; no complex is built.
    """
    sets = [frozenset(c) for c in components]
    if len(sets) != len(k):
        raise ComplexError("one component per column bound")
    for a, b in combinations(sets, 2):
        if a & b:
            return False
    return fits_some_permutation([len(s) for s in sets], k)


def barycentric_subdivision(complex_):
    """Vertices are the nonempty faces; facets are the maximal chains."""
    facets = []
    for f in complex_.facets:
        for perm in permutations(sort_face(f)):
            facets.append([frozenset(perm[: j + 1]) for j in range(len(perm))])
    verts = [frozenset(face) for dim_faces in complex_.faces().values() for face in dim_faces]
    return SimplicialComplex(facets, verts)


def join(a, b):
    """Join of complexes on disjoint vertex sets."""
    if set(a.vertices) & set(b.vertices):
        raise ComplexError("join needs disjoint vertex sets")
    return SimplicialComplex([fa | fb for fa in a.facets for fb in b.facets], a.vertices + b.vertices)


def cycle(length, tag=None):
    """The cycle ``C_length``; vertices ``i`` or ``(tag, i)`` for ``i`` in ``0..length-1``."""
    name = (lambda i: i) if tag is None else (lambda i: (tag, i))
    return SimplicialComplex([(name(i), name((i + 1) % length)) for i in range(length)])


@dataclass
class EquivariantComplex:
    """A complex with a vertex-level group generator and an embedding."""

    complex: SimplicialComplex
    action: dict
    embedding: dict

    def orbits(self):
        seen, out = set(), []
        for v in self.complex.vertices:
            if v in seen:
                continue
            orbit, w = [], v
            while w not in orbit:
                orbit.append(w)
                w = self.action[w]
            seen.update(orbit)
            out.append(tuple(orbit))
        return out


def circle_join_power(r, k):
    """``C_{2r}^{*k}`` with ``Z/r`` rotating every circle by two vertices.

    Vertex ``(j, i)`` is vertex ``i`` of the ``j``-th circle; it embeds into
    ``[r]^{*2k}`` as ``(column 2j + i mod 2, symbol i // 2 + 1)``.
    """
    if r < 2 or k < 1:
        raise ComplexError("need r >= 2 and k >= 1")
    result = cycle(2 * r, 0)
    for j in range(1, k):
        result = join(result, cycle(2 * r, j))
    action = {(j, i): (j, (i + 2) % (2 * r)) for j in range(k) for i in range(2 * r)}
    embedding = {(j, i): (2 * j + i % 2, i // 2 + 1) for j in range(k) for i in range(2 * r)}
    if len(set(embedding.values())) != len(embedding):
        raise ComplexError("embedding is not injective")
    for f in result.facets:
        columns = [embedding[v][0] for v in f]
        if len(set(columns)) != len(columns):
            raise ComplexError(f"image of facet {sorted(f)} is not a face of [r]^*{2 * k}")
    for v, (col, sym) in embedding.items():
        if embedding[action[v]] != (col, sym % r + 1):
            raise ComplexError("embedding is not equivariant")
    return EquivariantComplex(result, action, embedding)
