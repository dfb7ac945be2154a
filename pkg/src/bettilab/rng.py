"""Seeded splitmix64 generator.

The update rule is written out so that runs are reproducible across
implementations::

    state += 0x9E3779B97F4A7C15
    z = state
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9
    z = (z ^ (z >> 27)) * 0x94D049BB133111EB
    return z ^ (z >> 31)

all modulo 2^64.  Independent trials use the seed ``seed + trial_index``.
"""

_MASK = (1 << 64) - 1


class SplitMix64:
    def __init__(self, seed: int = 0):
        self.state = seed & _MASK

    def next(self) -> int:
        self.state = (self.state + 0x9E3779B97F4A7C15) & _MASK
        z = self.state
        z = ((z ^ (z >> 30)) * 0xBF58476D1CE4E5B9) & _MASK
        z = ((z ^ (z >> 27)) * 0x94D049BB133111EB) & _MASK
        return z ^ (z >> 31)

    def below(self, n: int) -> int:
        """Uniform-ish integer in [0, n) by reduction (bias below 2^-32 for n < 2^32)."""
        return self.next() % n

    def residues(self, count: int, p: int) -> list[int]:
        return [self.below(p) for _ in range(count)]


def trial_rng(seed: int, trial: int) -> SplitMix64:
    return SplitMix64(seed + trial)
