"""Deterministic point configurations: the moment curve and seeded random rationals."""

from fractions import Fraction

from ._rng import SplitMix64
from .geometry import GeometryError, PointConfiguration, Status, as_rational, in_general_position


class RetriesExhausted(GeometryError):
    pass


def moment_curve_points(d, params):
    """Points ``(t, t^2, ..., t^d)`` for each parameter ``t``.

    Only the plain moment curve is provided; rapidly growing parameters can
    stand in for a stretched curve.
    """
    params = [as_rational(t) for t in params]
    if len(set(params)) != len(params):
        raise GeometryError("moment curve parameters must be distinct")
    return PointConfiguration(d, [tuple(t ** e for e in range(1, d + 1)) for t in params])


def random_rational(rng, bound):
    q = rng.between(1, bound)
    return Fraction(rng.between(-bound * q, bound * q), q)


def random_rational_config(n, d, seed, denominator_bound=16, max_retries=100):
    """``n`` seeded random points of ``Q^d`` in general position.

    Coordinates are ``p/q`` with ``1 <= q <= denominator_bound`` and
    ``|p| <= denominator_bound * q``.  Whole configurations failing the
    general-position test are redrawn from the same stream.
    """
    if n < 1 or d < 1:
        raise GeometryError("need n >= 1 and d >= 1")
    rng = SplitMix64(seed)
    for _ in range(max_retries):
        pts = [tuple(random_rational(rng, denominator_bound) for _ in range(d)) for _ in range(n)]
        config = PointConfiguration(d, pts)
        if in_general_position(config).status is Status.HOLDS:
            return config
    raise RetriesExhausted(f"no configuration in general position after {max_retries} draws")
