"""SplitMix64, the seeded generator behind sampled censuses.

Chosen because it is short enough to restate anywhere::

    state = (state + 0x9E3779B97F4A7C15) mod 2^64
    z = state
    z = ((z ^ (z >> 30)) * 0xBF58476D1CE4E5B9) mod 2^64
    z = ((z ^ (z >> 27)) * 0x94D049BB133111EB) mod 2^64
    output z ^ (z >> 31)

Bounded draws use rejection: with ``limit = 2^64 - (2^64 mod n)``, outputs
``>= limit`` are discarded and the result is ``z mod n``.
"""

MASK = (1 << 64) - 1


class SplitMix64:
    def __init__(self, seed):
        self.state = seed & MASK

    def next(self):
        self.state = (self.state + 0x9E3779B97F4A7C15) & MASK
        z = self.state
        z = ((z ^ (z >> 30)) * 0xBF58476D1CE4E5B9) & MASK
        z = ((z ^ (z >> 27)) * 0x94D049BB133111EB) & MASK
        return z ^ (z >> 31)

    def below(self, n):
        """Uniform integer in [0, n)."""
        if n < 1:
            raise ValueError(f"n must be >= 1, got {n}")
        limit = (1 << 64) - ((1 << 64) % n)
        while True:
            z = self.next()
            if z < limit:
                return z % n

    def shuffle_prefix(self, items, count):
        """Forward Fisher-Yates on ``items`` in place, stopping after ``count`` swaps.

        Step i swaps position i with a uniform position in [i, len).  The
        first ``count`` entries are then distributed exactly as in a full
        uniform shuffle.
        """
        n = len(items)
        for i in range(min(count, n - 1)):
            j = i + self.below(n - i)
            items[i], items[j] = items[j], items[i]
        return items
