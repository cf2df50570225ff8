from fractions import Fraction

import pytest

from tverberg._rng import SplitMix64, substream
from tverberg.engine import Outcome, find_tverberg_partition
from tverberg.generators import RetriesExhausted, moment_curve_points, random_rational_config
from tverberg.geometry import GeometryError, Status, in_general_position


def test_moment_curve_values():
    assert moment_curve_points(3, [2]).points == ((2, 4, 8),)
    assert moment_curve_points(2, [0, 1, 2]).points == ((0, 0), (1, 1), (2, 4))
    assert moment_curve_points(2, ["1/2"]).points == ((Fraction(1, 2), Fraction(1, 4)),)


def test_moment_curve_general_position():
    assert in_general_position(moment_curve_points(4, range(1, 7))).status is Status.HOLDS


def test_moment_curve_repeated_parameter():
    with pytest.raises(GeometryError):
        moment_curve_points(2, [1, 1])


def test_random_config_contract():
    for seed in range(5):
        c = random_rational_config(3, 2, seed)
        assert in_general_position(c).status is Status.HOLDS
    assert random_rational_config(5, 2, 42).to_csv() == random_rational_config(5, 2, 42).to_csv()
    c = random_rational_config(20, 3, 9, denominator_bound=5)
    for p in c.points:
        for x in p:
            assert 1 <= x.denominator <= 5 and abs(x) <= 5


def test_random_config_seed_seven_balanced_search():
    c = random_rational_config(9, 2, 7)
    res = find_tverberg_partition(c, 3, sizes=(2, 2, 3))
    assert res.status is Outcome.FOUND and res.witness.residual_free(c)


def test_retries_exhausted():
    # with denominator bound 1 and many points, collinear triples are unavoidable
    with pytest.raises(RetriesExhausted):
        random_rational_config(40, 2, 1, denominator_bound=1, max_retries=3)


def test_rng_reference_values():
    # published SplitMix64 outputs for seed 1234567
    rng = SplitMix64(1234567)
    assert [rng.next_u64() for _ in range(3)] == [
        6457827717110365317,
        3203168211198807973,
        9817491932198370423,
    ]


def test_rng_helpers():
    rng = SplitMix64(5)
    draws = [rng.below(7) for _ in range(500)]
    assert set(draws) == set(range(7))
    assert all(-3 <= SplitMix64(s).between(-3, 3) <= 3 for s in range(50))
    items = list(range(10))
    SplitMix64(2).shuffle(items)
    assert sorted(items) == list(range(10))
    assert substream(1, 2).next_u64() == substream(1, 2).next_u64()
    assert substream(1, 2).next_u64() != substream(1, 3).next_u64()
