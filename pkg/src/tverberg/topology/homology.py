"""Reduced simplicial homology over Z and Z/p via Smith normal form."""

from dataclasses import dataclass


class HomologyError(ValueError):
    pass


def smith_invariants(matrix):
    """Nonzero diagonal entries of the Smith normal form of an integer matrix."""
    a = [list(row) for row in matrix]
    m = len(a)
    n = len(a[0]) if m else 0
    diag = []
    t = 0
    while t < min(m, n):
        pivot = None
        for i in range(t, m):
            for j in range(t, n):
                if a[i][j] and (pivot is None or abs(a[i][j]) < abs(a[pivot[0]][pivot[1]])):
                    pivot = (i, j)
        if pivot is None:
            break
        _move(a, t, *pivot)
        while True:
            p = a[t][t]
            for i in range(t + 1, m):
                q = a[i][t] // p
                if q:
                    a[i] = [x - q * y for x, y in zip(a[i], a[t])]
            for j in range(t + 1, n):
                q = a[t][j] // p
                if q:
                    for row in a:
                        row[j] -= q * row[t]
            rest = [(i, t) for i in range(t + 1, m) if a[i][t]] + [(t, j) for j in range(t + 1, n) if a[t][j]]
            if rest:
                _move(a, t, *min(rest, key=lambda ij: abs(a[ij[0]][ij[1]])))
                continue
            bad = next(
                (i for i in range(t + 1, m) for j in range(t + 1, n) if a[i][j] % p),
                None,
            )
            if bad is None:
                break
            a[t] = [x + y for x, y in zip(a[t], a[bad])]
        diag.append(abs(a[t][t]))
        t += 1
    return diag


def _move(a, t, i, j):
    a[t], a[i] = a[i], a[t]
    for row in a:
        row[t], row[j] = row[j], row[t]


def rank_mod_p(matrix, p):
    a = [[x % p for x in row] for row in matrix]
    m = len(a)
    n = len(a[0]) if m else 0
    rank = 0
    for col in range(n):
        piv = next((i for i in range(rank, m) if a[i][col]), None)
        if piv is None:
            continue
        a[rank], a[piv] = a[piv], a[rank]
        inv = pow(a[rank][col], -1, p)
        a[rank] = [x * inv % p for x in a[rank]]
        for i in range(m):
            if i != rank and a[i][col]:
                f = a[i][col]
                a[i] = [(x - f * y) % p for x, y in zip(a[i], a[rank])]
        rank += 1
    return rank


def boundary_matrix(complex_, k):
    """Matrix of the augmented boundary ``C_k -> C_{k-1}``; ``C_{-1}`` is spanned by the empty face."""
    rows_faces = complex_.faces(k - 1) if k >= 1 else [()]
    index = {f: i for i, f in enumerate(rows_faces)}
    cols = complex_.faces(k)
    mat = [[0] * len(cols) for _ in rows_faces]
    for j, face in enumerate(cols):
        for i in range(len(face)):
            mat[index[face[:i] + face[i + 1:]]][j] = -1 if i % 2 else 1
    return mat


def _is_prime(p):
    return p >= 2 and all(p % q for q in range(2, int(p ** 0.5) + 1))


@dataclass
class HomologyResult:
    """Reduced Betti numbers for dimensions ``0..dim`` plus dimension ``-1``.

    ``torsion[k]`` lists the torsion coefficients of ``H_k`` (always empty
    over a field).
    """

    coefficients: int
    betti: tuple
    torsion: tuple
    betti_minus_one: int = 0

    def to_dict(self):
        return {
            "coefficients": "Z" if self.coefficients == 0 else f"Z/{self.coefficients}",
            "reduced": True,
            "betti": list(self.betti),
            "betti_minus_one": self.betti_minus_one,
            "torsion": [list(t) for t in self.torsion],
        }


def homology(complex_, coefficients=0):
    """Reduced homology of ``complex_`` with integer (``0``) or ``Z/p`` coefficients."""
    if coefficients and not _is_prime(coefficients):
        raise HomologyError("coefficients must be 0 (integers) or a prime")
    top = complex_.dim
    if not complex_.vertices:
        return HomologyResult(coefficients, (), (), 1)
    ranks, invariants = {}, {}
    for k in range(0, top + 1):
        mat = boundary_matrix(complex_, k)
        if coefficients:
            ranks[k] = rank_mod_p(mat, coefficients)
            invariants[k] = []
        else:
            inv = smith_invariants(mat)
            ranks[k] = len(inv)
            invariants[k] = [x for x in inv if x > 1]
    ranks[top + 1] = 0
    invariants[top + 1] = []
    betti = tuple(len(complex_.faces(k)) - ranks[k] - ranks[k + 1] for k in range(top + 1))
    torsion = tuple(tuple(sorted(invariants[k + 1])) for k in range(top + 1))
    return HomologyResult(coefficients, betti, torsion, 0)
