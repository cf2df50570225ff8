"""Tverberg partition search over the deterministic partition stream."""

from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from enum import Enum
from itertools import islice

from ..geometry import GeometryError, convex_hulls_intersect
from ..partitions import enumerate_partitions, partition_count, size_profiles

CHUNK = 2048


class SearchError(ValueError):
    pass


class Outcome(str, Enum):
    FOUND = "found"
    EXHAUSTED = "exhausted-none"
    BUDGET = "budget-exhausted"


@dataclass
class SearchOutcome:
    status: Outcome
    partition: object = None
    witness: object = None
    stats: dict = field(default_factory=dict)

    def __post_init__(self):
        if self.status is Outcome.FOUND and (self.partition is None or self.witness is None):
            raise SearchError("a found outcome carries a partition and a witness")

    def to_dict(self):
        out = {"status": self.status.value, "stats": dict(sorted(self.stats.items()))}
        if self.partition is not None:
            parts = self.partition.parts if hasattr(self.partition, "parts") else self.partition
            out["partition"] = [list(p) for p in parts]
        if self.witness is not None:
            out["witness"] = self.witness.to_dict()
        return out


def boxes_disjoint(point_sets):
    """Cheap exact pre-test: some coordinate separates the bounding boxes."""
    for k in range(len(point_sets[0][0])):
        lo = max(min(p[k] for p in s) for s in point_sets)
        hi = min(max(p[k] for p in s) for s in point_sets)
        if lo > hi:
            return True
    return False


def _profiles(config, r, sizes):
    if r < 2:
        raise SearchError("r must be at least 2")
    if sizes is not None:
        sizes = tuple(int(s) for s in sizes)
        if len(sizes) != r or any(s < 1 for s in sizes):
            raise SearchError(f"need {r} positive part sizes, got {sizes}")
        if sum(sizes) > len(config):
            raise SearchError(f"sizes {sizes} need more than {len(config)} points")
        return [sizes]
    return list(size_profiles(len(config), r))


def _stream(config, profiles):
    for prof in profiles:
        yield from enumerate_partitions(config.labels, prof)


def _scan(config, profiles, start, stop):
    """First hit in ``[start, stop)`` of the stream as ``(index, partition, witness, lps)``."""
    lps = 0
    for idx, part in enumerate(islice(_stream(config, profiles), start, stop), start=start):
        sets = [[config.point(i) for i in p] for p in part.parts]
        if boxes_disjoint(sets):
            continue
        lps += 1
        wit = convex_hulls_intersect(config, part)
        if wit is not None:
            return idx, part, wit, lps
    return None, None, None, lps


def stream_length(config, r, sizes=None):
    return sum(partition_count(len(config), p) for p in _profiles(config, r, sizes))


def find_tverberg_partition(config, r, sizes=None, budget=None, workers=1):
    """First partition (in stream order) whose convex hulls share a point.

    Without ``sizes`` every nondecreasing profile of positive part sizes is
    tried, profiles in lexicographic order.  ``budget`` caps the number of
    partitions examined.  The result does not depend on ``workers``.
    """
    profiles = _profiles(config, r, sizes)
    total = sum(partition_count(len(config), p) for p in profiles)
    limit = total if budget is None else min(total, budget)
    chunks = [(s, min(s + CHUNK, limit)) for s in range(0, limit, CHUNK)]
    lps = 0
    hit = None
    if workers <= 1 or len(chunks) <= 1:
        for s, e in chunks:
            res = _scan(config, profiles, s, e)
            lps += res[3]
            if res[0] is not None:
                hit = res
                break
    else:
        with ProcessPoolExecutor(workers) as pool:
            futures = [pool.submit(_scan, config, profiles, s, e) for s, e in chunks]
            for fut in futures:
                res = fut.result()
                lps += res[3]
                if res[0] is not None:
                    hit = res
                    break
            for fut in futures:
                fut.cancel()
    if hit is not None:
        idx, part, wit, _ = hit
        stats = {"partitions_examined": idx + 1, "lps_solved": lps, "stream_length": total}
        return SearchOutcome(Outcome.FOUND, part, wit, stats)
    stats = {"partitions_examined": limit, "lps_solved": lps, "stream_length": total}
    status = Outcome.EXHAUSTED if limit == total else Outcome.BUDGET
    return SearchOutcome(status, stats=stats)


def refute_occurrence(config, r, sizes, budget=None, workers=1):
    """Try to prove that no partition with the given part sizes occurs.

    ``exhausted-none`` is a proof for this configuration; ``found`` carries a
    counter-witness.
    """
    if sizes is None:
        raise SearchError("refutation needs explicit part sizes")
    return find_tverberg_partition(config, r, sizes, budget, workers)
