"""Acceptance gate: nine criteria, each with its tolerance and time limit."""

import time

import pytest

from oracles import brute_tverberg_exists
from tverberg._rng import SplitMix64
from tverberg.engine import Outcome, find_tverberg_partition, refute_occurrence
from tverberg.engine.orbits import collapse_orbit, random_affine_join_map
from tverberg.engine.plmap import affine_pl_map, build_counterexample_map, search_map_violation
from tverberg.experiments import balanced_dims, trial_seed
from tverberg.generators import moment_curve_points, random_rational_config
from tverberg.geometry import PointConfiguration, Status, in_general_position, strong_general_position_check
from tverberg.partitions import DimensionTuple, admissible_tuples, build_colorful_partition, is_colorful, size_profiles
from tverberg.topology import (
    circle_join_power,
    homology,
    multiple_chessboard,
    simplex_boundary,
    verify_constraint_zero_set,
)


class Clock:
    def __init__(self, limit):
        self.limit = limit

    def __enter__(self):
        self.start = time.perf_counter()
        return self

    def __exit__(self, *exc):
        self.elapsed = time.perf_counter() - self.start
        if exc[0] is None:
            assert self.elapsed < self.limit, f"took {self.elapsed:.1f}s, limit {self.limit}s"


@pytest.mark.criterion(1, "affine Tverberg existence, 4 x 50 random configurations")
def test_tverberg_existence():
    failures = []
    with Clock(120):
        for r, d in [(2, 2), (3, 1), (3, 2), (4, 1)]:
            n = (r - 1) * (d + 1) + 1
            for t in range(50):
                cfg = random_rational_config(n, d, trial_seed(1, t))
                res = find_tverberg_partition(cfg, r)
                if res.status is not Outcome.FOUND or not res.witness.residual_free(cfg):
                    failures.append((r, d, t))
    assert failures == []


@pytest.mark.criterion(2, "balanced sizes (2,2,3) on 9 points in the plane, 50 configurations")
def test_balanced_prescribability():
    failures = []
    with Clock(180):
        for t in range(50):
            cfg = random_rational_config(9, 2, trial_seed(2, t))
            res = find_tverberg_partition(cfg, 3, sizes=(2, 2, 3))
            if res.status is not Outcome.FOUND or not res.witness.residual_free(cfg):
                failures.append(t)
            else:
                assert sorted(len(p) for p in res.partition.parts) == [2, 2, 3]
    assert failures == []


@pytest.mark.criterion(3, "colorful builder on every admissible tuple with r, d <= 6")
def test_colorful_builder():
    failures, count = [], 0
    with Clock(10):
        for r in range(2, 7):
            for d in range(1, 7):
                for t in admissible_tuples(r, d):
                    count += 1
                    p = build_colorful_partition(t)
                    # part j receives d_j + 1 points, not d - d_j
                    if not is_colorful(p, r, d) or p.sizes != tuple(x + 1 for x in t.dims):
                        failures.append(t)
    assert count > 0 and failures == []


@pytest.mark.criterion(4, "constraint map vanishes exactly on Sigma, no violating chain")
def test_constraint_zero_set():
    with Clock(120):
        for r, d in [(2, 1), (2, 2)]:
            n = (r - 1) * (d + 2)
            dims = balanced_dims(r, d)
            rep = verify_constraint_zero_set(n, r, DimensionTuple(r, d, dims))
            assert rep.passed, rep.to_dict()
            assert rep.violating_chain is None and rep.mismatches == []
            assert rep.cells_checked == r ** (n + 1) * {3: 24, 4: 120}[n]


@pytest.mark.criterion(5, "moment curve: no partition with a part of size <= floor(d/2)")
def test_moment_curve_refutation():
    hits = []
    with Clock(180):
        for d in (2, 3, 4):
            for n in (9, 10, 11):
                cfg = moment_curve_points(d, range(1, n + 1))
                # a small part meeting the other parts meets their union, so two parts cover every r
                for s in range(1, d // 2 + 1):
                    res = refute_occurrence(cfg, 2, (s, n - s))
                    if res.status is not Outcome.EXHAUSTED:
                        hits.append((d, n, s, res.status))
            # direct three-part check on nine points as a cross-check
            cfg = moment_curve_points(d, range(1, 10))
            for prof in size_profiles(9, 3):
                if min(prof) <= d // 2:
                    res = refute_occurrence(cfg, 3, prof)
                    if res.status is not Outcome.EXHAUSTED:
                        hits.append((d, 9, prof, res.status))
    assert hits == []


@pytest.mark.criterion(6, "counterexample map: 10^5 sampled (1,2,3) face triples, zero intersections")
def test_counterexample_map_probe():
    with Clock(300):
        g = random_rational_config(14, 2, 6)
        assert in_general_position(g).status is Status.HOLDS
        # parts of three or more generic points span the plane, so pairs and singletons decide
        for r in (2, 3):
            v = strong_general_position_check(g, r, 10 ** 6, max_part_size=2)
            assert v.status is Status.HOLDS and v.exhaustive
        f = build_counterexample_map(13, 3, 1, g)
        res = search_map_violation(f, 3, (1, 2, 3), 100_000, seed=1)
        assert res.status is Outcome.BUDGET
        assert res.stats["face_tuples_examined"] == 100_000
        control = affine_pl_map(random_rational_config(14, 3, 6))
        ctl = search_map_violation(control, 3, balanced_dims(3, 3), 100_000, seed=1)
        assert ctl.status is Outcome.FOUND
        assert ctl.witness.verify(control, ctl.partition.parts)


@pytest.mark.criterion(7, "orbit collapse on 6 (r,d) pairs x 100 random affine join maps")
def test_orbit_collapse():
    failures = []
    with Clock(180):
        for r, d in [(2, 1), (3, 1), (3, 2), (4, 1), (4, 2), (5, 1)]:
            n = (r - 1) * d
            for t in range(100):
                f = random_affine_join_map(r, n, d, trial_seed(7, t))
                res = collapse_orbit(f)
                images = [f(res.point.shifted(k)) for k in range(r)]
                if any(img != images[0] for img in images) or images[0] != res.value:
                    failures.append((r, d, t))
    assert failures == []


@pytest.mark.criterion(8, "sphere homology: C6*C6, boundaries of simplices, Delta(3,2)")
def test_sphere_homology():
    def sphere(dim, top):
        return tuple(int(i == dim) for i in range(top + 1))

    with Clock(120):
        h = homology(circle_join_power(3, 2).complex)
        assert h.betti == sphere(3, 3) and not any(h.torsion) and h.betti_minus_one == 0
        for n in range(1, 6):
            h = homology(simplex_boundary(n))
            assert h.betti == sphere(n - 1, n - 1) and not any(h.torsion)
        h = homology(multiple_chessboard(3, 2, (1, 1)))
        assert h.betti == sphere(1, 1) and not any(h.torsion)


def oracle_fixtures():
    """Random generic and small-grid degenerate configurations with N <= 7, d <= 2."""
    out = []
    for d in (1, 2):
        for n in range(2, 8):
            for seed in range(3):
                out.append(random_rational_config(n, d, 100 * n + 10 * d + seed, denominator_bound=4))
            for seed in range(2):
                # integer grid points: repeated and collinear points allowed
                rng = SplitMix64(7 * n + d + seed)
                out.append(PointConfiguration(d, [tuple(rng.between(-2, 2) for _ in range(d)) for _ in range(n)]))
    return out


@pytest.mark.criterion(9, "search agrees with brute-force barycentric oracle, N <= 7, d <= 2, r <= 3")
def test_oracle_equivalence():
    mismatches = []
    with Clock(600):
        for cfg in oracle_fixtures():
            for r in (2, 3):
                if len(cfg) < r:
                    continue
                res = find_tverberg_partition(cfg, r)
                assert res.status is not Outcome.BUDGET
                found = res.status is Outcome.FOUND
                if found:
                    assert res.witness.residual_free(cfg)
                if found != brute_tverberg_exists(list(cfg.points), r):
                    mismatches.append((cfg.points, r))
    assert mismatches == []
