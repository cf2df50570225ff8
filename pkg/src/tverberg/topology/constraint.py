"""Vertex labelling of the subdivided deleted join and its zero-set check."""

from dataclasses import dataclass, field
from fractions import Fraction
from itertools import permutations, product
from math import factorial
import warnings

from ..partitions import DimensionTuple, is_balanced
from .complexes import fits_some_permutation, symmetric_multiple_chessboard

ZERO = 0


class ConstraintError(ValueError):
    pass


def join_faces(n, r):
    """Nonempty faces of ``(Delta_N)^{*r}_Delta``; ``n = N`` and labels are ``1..N+1``."""
    labels = range(1, n + 2)
    out = []
    for choice in product(range(r + 1), repeat=n + 1):
        if not any(choice):
            continue
        out.append(tuple(frozenset(v for v, c in zip(labels, choice) if c == i) for i in range(1, r + 1)))
    return out


def face_vertices(face):
    """Join face as a vertex set ``{(label, side)}``."""
    return frozenset((v, i + 1) for i, comp in enumerate(face) for v in comp)


def _label(face, bounds):
    if fits_some_permutation([len(c) for c in face], bounds):
        return ZERO
    low = min(len(c) for c in face)
    lowest = [i for i, c in enumerate(face) if len(c) == low]
    if low == 0:
        return lowest[0] + 1
    return min(lowest, key=lambda i: min(face[i])) + 1


@dataclass
class ConstraintAssignment:
    """Labels ``0`` (meaning the zero vector) or ``i`` (meaning ``e_i``) on join faces."""

    n: int
    r: int
    bounds: tuple
    labels: dict = field(repr=False)

    def label(self, face):
        return self.labels[tuple(frozenset(c) for c in face)]

    def vector(self, face, projected=False):
        """Value in ``R^r``; with ``projected`` the ``W_r`` image ``e_i - (1/r) 1``."""
        lab = self.label(face)
        if lab == ZERO:
            return tuple(Fraction(0) for _ in range(self.r))
        e = [Fraction(int(k == lab - 1)) for k in range(self.r)]
        if projected:
            e = [x - Fraction(1, self.r) for x in e]
        return tuple(e)

    def evaluate(self, chain, weights, projected=False):
        """Affine extension at ``sum weights[j] * barycenter(chain[j])``."""
        out = [Fraction(0)] * self.r
        for face, w in zip(chain, weights):
            for k, x in enumerate(self.vector(face, projected)):
                out[k] += Fraction(w) * x
        return tuple(out)


def _dims(r, dims):
    if isinstance(dims, DimensionTuple):
        return dims
    dims = tuple(dims)
    return DimensionTuple(r, max(1, sum(dims) // (r - 1)), dims)


def constraint_map(n, r, dims):
    """Label every face of ``(Delta_N)^{*r}_Delta``.

    A face lies in the zero set exactly when it belongs to the symmetric
    multiple chessboard complex with column bounds ``d_i + 1``.  Otherwise it
    gets ``e_i`` for the component of least size; ties go to the component
    holding the smallest label, or to the smallest index when the least
    size is zero.
    """
    t = _dims(r, dims)
    if t.r != r:
        raise ConstraintError("dimension tuple length differs from r")
    if not is_balanced(t):
        warnings.warn(f"dimension tuple {t.dims} is not balanced", stacklevel=2)
    bounds = tuple(x + 1 for x in t.dims)
    labels = {face: _label(face, bounds) for face in join_faces(n, r)}
    return ConstraintAssignment(n, r, bounds, labels)


@dataclass
class ZeroSetReport:
    passed: bool
    zero_faces: int
    cells_checked: int
    mismatches: list = field(default_factory=list)
    violating_chain: tuple = None

    def to_dict(self):
        def enc(face):
            return [sorted(c) for c in face]

        return {
            "passed": self.passed,
            "zero_faces": self.zero_faces,
            "cells_checked": self.cells_checked,
            "mismatches": [enc(f) for f in self.mismatches],
            "violating_chain": None if self.violating_chain is None else [enc(f) for f in self.violating_chain],
        }


def top_cell_count(n, r):
    return r ** (n + 1) * factorial(n + 1)


def verify_constraint_zero_set(n, r, dims, assignment=None, max_cells=10 ** 6):
    """Check that the labelling vanishes exactly on Sigma and misses ``W_r`` on each cell.

    (a) The faces labelled zero are compared with the faces of an
    independently built symmetric chessboard complex.  (b) Every maximal
    chain of the subdivision is scanned.  In ``W_r`` the vectors
    ``e_i - (1/r) 1`` have a vanishing positive combination only when all
    ``r`` of them take part, so the extension vanishes off the zero-labelled
    faces exactly on cells carrying every ``e_i``.
    """
    if assignment is None:
        assignment = constraint_map(n, r, dims)
    cells = top_cell_count(n, r)
    if cells > max_cells:
        raise ConstraintError(f"{cells} top cells exceed the limit of {max_cells}")
    sigma = symmetric_multiple_chessboard(n + 1, r, assignment.bounds)
    mismatches = []
    zero = 0
    for face, lab in assignment.labels.items():
        inside = face_vertices(face) in sigma
        zero += lab == ZERO
        if inside != (lab == ZERO):
            mismatches.append(face)
    checked = 0
    violation = None
    every = set(range(1, r + 1))
    for sides in product(range(r), repeat=n + 1):
        for order in permutations(range(1, n + 2)):
            checked += 1
            comps = [set() for _ in range(r)]
            seen = set()
            chain = []
            for v in order:
                comps[sides[v - 1]].add(v)
                face = tuple(frozenset(c) for c in comps)
                chain.append(face)
                seen.add(assignment.labels[face])
            if every <= seen:
                violation = tuple(chain)
                break
        if violation is not None:
            break
    return ZeroSetReport(not mismatches and violation is None, zero, checked, mismatches, violation)
