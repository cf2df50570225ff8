from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from oracles import brute_partition_count
from tverberg.partitions import (
    DimensionTuple,
    IndexPartition,
    PartitionError,
    admissible_tuples,
    build_colorful_partition,
    color_classes,
    continuous_lower_bound,
    enumerate_partitions,
    is_admissible,
    is_balanced,
    is_colorful,
    partition_count,
    split_indices,
)


def T(r, d, dims):
    return DimensionTuple(r, d, tuple(dims))


@pytest.mark.parametrize(
    "r,d,dims,expected",
    [(4, 3, (1, 2, 3, 3), True), (4, 3, (2, 2, 2, 3), True), (3, 2, (0, 2, 2), False)],
)
def test_is_admissible(r, d, dims, expected):
    assert is_admissible(T(r, d, dims)) is expected


@pytest.mark.parametrize("dims,expected", [((2, 2, 2, 3), True), ((1, 2, 3), False), ((5, 5, 5), True)])
def test_is_balanced(dims, expected):
    assert is_balanced(T(len(dims), 6, dims)) is expected


@pytest.mark.parametrize("r,d,value", [(3, 3, Fraction(4, 3)), (2, 1, 0), (5, 4, Fraction(12, 5))])
def test_continuous_lower_bound(r, d, value):
    assert continuous_lower_bound(r, d) == value
    # independent arithmetic
    assert continuous_lower_bound(r, d) * r == (r - 1) * (d - 1)


def test_dimension_tuple_validation():
    with pytest.raises(PartitionError):
        T(3, 2, (2, 1, 1))
    with pytest.raises(PartitionError):
        T(1, 2, (2,))
    with pytest.raises(PartitionError):
        T(3, 2, (1, 1))
    t = T(3, 2, (1, 1, 2))
    assert DimensionTuple.from_json(t.to_json()) == t


def test_index_partition_validation_and_json():
    with pytest.raises(PartitionError):
        IndexPartition(3, [(1, 2), (2,)])
    with pytest.raises(PartitionError):
        IndexPartition(3, [(1, 4)])
    p = IndexPartition(5, [(3, 1), (2,)])
    assert p.parts == ((1, 3), (2,))
    assert IndexPartition.from_json(p.to_json(), 5) == p


def test_color_classes():
    assert color_classes(3, 1) == [(1, 2, 3), (3, 4, 5)]


@pytest.mark.parametrize(
    "parts,expected",
    [([(1, 5), (2, 4), (3,)], True), ([(1, 2), (3, 4), (5,)], False)],
)
def test_is_colorful_small(parts, expected):
    assert is_colorful(IndexPartition(5, parts), 3, 1) is expected


def test_is_colorful_ground_mismatch():
    with pytest.raises(PartitionError):
        is_colorful(IndexPartition(6, [(1, 5), (2, 4), (3,)]), 3, 1)


def test_builder_worked_example():
    p = build_colorful_partition(T(4, 3, (1, 2, 3, 3)))
    assert p.parts == ((4, 10), (1, 7, 11), (2, 5, 8, 12), (3, 6, 9, 13))
    assert is_colorful(p, 4, 3)


def test_builder_small_cases():
    p = build_colorful_partition(T(2, 1, (0, 1)))
    assert p.parts == ((2,), (1, 3))
    p = build_colorful_partition(T(3, 2, (1, 1, 2)))
    assert p.sizes == (2, 2, 3) and is_colorful(p, 3, 2)


def test_builder_rejects_inadmissible():
    with pytest.raises(PartitionError):
        build_colorful_partition(T(3, 2, (0, 2, 2)))


@pytest.mark.parametrize("r", range(2, 7))
@pytest.mark.parametrize("d", range(1, 7))
def test_builder_sweep_and_split_shape(r, d):
    for t in admissible_tuples(r, d):
        split = split_indices(t)
        for i, a in enumerate(split):
            assert len(a) == d - t.dims[i]
            assert all(b - a_ != 1 for a_ in a for b in a)
            assert len(a) <= ((d + 1) // 2 if i == 0 else d // 2)
        assert sorted(x for a in split for x in a) == sorted(set(x for a in split for x in a))
        p = build_colorful_partition(t)
        assert p.sizes == tuple(x + 1 for x in t.dims)
        assert is_colorful(p, r, d)


def test_admissible_tuples_complete():
    # compare against filtering every nondecreasing tuple
    from itertools import combinations_with_replacement

    for r, d in [(3, 2), (4, 3), (5, 4)]:
        brute = [
            c for c in combinations_with_replacement(range(d + 1), r) if is_admissible(T(r, d, c))
        ]
        assert sorted(t.dims for t in admissible_tuples(r, d)) == sorted(brute)


def test_enumerate_examples():
    got = [p.parts for p in enumerate_partitions([1, 2, 3], (1, 1))]
    assert got == [((1,), (2,)), ((1,), (3,)), ((2,), (3,))]
    assert len(list(enumerate_partitions([1, 2, 3, 4], (2, 2)))) == 3
    assert list(enumerate_partitions([1, 2], (3,))) == []


def test_enumerate_ranges_concatenate():
    full = list(enumerate_partitions(range(1, 7), (1, 2, 2)))
    pieces = []
    for s in range(0, len(full), 7):
        pieces += list(enumerate_partitions(range(1, 7), (1, 2, 2), s, s + 7))
    assert pieces == full


@settings(max_examples=60, deadline=None)
@given(st.integers(1, 7), st.lists(st.integers(1, 3), min_size=1, max_size=3))
def test_enumeration_count_matches_brute_force(n, sizes):
    sizes = tuple(sorted(sizes))
    ground = list(range(1, n + 1))
    parts = list(enumerate_partitions(ground, sizes))
    assert len(parts) == partition_count(n, sizes) == brute_partition_count(ground, sizes)
    assert len({frozenset(zip(sizes, map(frozenset, p.parts))) for p in parts}) == len(parts)


@settings(max_examples=40, deadline=None)
@given(st.integers(2, 5), st.integers(1, 4), st.data())
def test_colorful_invariant_under_part_permutation(r, d, data):
    tuples = list(admissible_tuples(r, d))
    if not tuples:
        return
    t = data.draw(st.sampled_from(tuples))
    p = build_colorful_partition(t)
    shuffled = data.draw(st.permutations(p.parts))
    assert is_colorful(IndexPartition(p.ground_size, shuffled), r, d)
