"""SplitMix64 pseudorandom stream.

A fixed 64-bit mixing generator is used instead of :mod:`random` so that
seeded fixtures are reproducible from the algorithm alone, in any language.
The constants are those of Steele, Lea and Flood's SplitMix64.
"""

MASK64 = (1 << 64) - 1
GOLDEN_GAMMA = 0x9E3779B97F4A7C15


def mix64(z):
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9 & MASK64
    z = (z ^ (z >> 27)) * 0x94D049BB133111EB & MASK64
    return z ^ (z >> 31)


class SplitMix64:
    """Explicit-state generator; copy the ``state`` integer to fork it."""

    def __init__(self, seed):
        self.state = seed & MASK64

    def next_u64(self):
        self.state = (self.state + GOLDEN_GAMMA) & MASK64
        return mix64(self.state)

    def below(self, n):
        """Uniform integer in ``[0, n)`` by rejection (no modulo bias)."""
        if n <= 0:
            raise ValueError("n must be positive")
        limit = (1 << 64) - ((1 << 64) % n)
        while True:
            v = self.next_u64()
            if v < limit:
                return v % n

    def between(self, lo, hi):
        """Uniform integer in the closed range ``[lo, hi]``."""
        return lo + self.below(hi - lo + 1)

    def shuffle(self, items):
        for i in range(len(items) - 1, 0, -1):
            j = self.below(i + 1)
            items[i], items[j] = items[j], items[i]


def substream(seed, index):
    """Independent generator for the ``index``-th work item of a seeded run.

    Counter-based, so disjoint index ranges can be processed by separate
    workers and still reproduce a single-worker run exactly.
    """
    return SplitMix64(mix64((seed & MASK64) ^ mix64(index + 1)))
