"""Exhaustive shellability search for small pure complexes."""

from dataclasses import dataclass
from enum import Enum

from .complexes import sort_face, vertex_key


class ShellingError(ValueError):
    pass


class Shellability(str, Enum):
    SHELLABLE = "shellable"
    NOT_SHELLABLE = "not-shellable"
    INCONCLUSIVE = "inconclusive-budget-exhausted"


@dataclass
class ShellingResult:
    status: Shellability
    order: tuple = None
    nodes: int = 0

    def to_dict(self):
        order = None if self.order is None else [[_enc(v) for v in sort_face(f)] for f in self.order]
        return {"status": self.status.value, "order": order, "nodes": self.nodes}


def _enc(v):
    if isinstance(v, frozenset):
        return [_enc(x) for x in sorted(v, key=vertex_key)]
    return list(v) if isinstance(v, tuple) else v


def is_shelling_step(previous, facet):
    """Whether ``facet`` meets the union of ``previous`` in a pure codimension-one complex."""
    if not previous:
        return True
    meets = [facet & g for g in previous]
    ridges = [m for m in meets if len(m) == len(facet) - 1]
    if not ridges:
        return False
    return all(any(m <= rd for rd in ridges) for m in meets)


def is_shellable(complex_, budget=100_000):
    """Depth-first search over facet orders, memoising dead facet sets.

    Whether a facet may follow depends only on the set of its predecessors,
    so each subset is expanded at most once.  ``budget`` caps expansions.
    """
    if not complex_.is_pure():
        raise ShellingError("shellability search needs a pure complex")
    facets = list(complex_.facets)
    full = (1 << len(facets)) - 1
    dead = set()
    nodes = 0

    def rec(mask, order):
        nonlocal nodes
        if mask == full:
            return True
        if mask in dead:
            return False
        nodes += 1
        if nodes > budget:
            raise _Budget
        prev = [facets[i] for i in order]
        for j, f in enumerate(facets):
            if mask >> j & 1 or not is_shelling_step(prev, f):
                continue
            order.append(j)
            if rec(mask | 1 << j, order):
                return True
            order.pop()
        dead.add(mask)
        return False

    order = []
    try:
        ok = rec(0, order)
    except _Budget:
        return ShellingResult(Shellability.INCONCLUSIVE, None, nodes - 1)
    if ok:
        return ShellingResult(Shellability.SHELLABLE, tuple(facets[i] for i in order), nodes)
    return ShellingResult(Shellability.NOT_SHELLABLE, None, nodes)


class _Budget(Exception):
    pass
