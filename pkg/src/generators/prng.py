"""SplitMix64 pseudorandom generator.

Pinned so seeded instances are bitwise-reproducible across platforms and
languages. Each step:

    state = state + 0x9E3779B97F4A7C15              (mod 2^64)
    z = (state ^ (state >> 30)) * 0xBF58476D1CE4E5B9 (mod 2^64)
    z = (z ^ (z >> 27)) * 0x94D049BB133111EB         (mod 2^64)
    return z ^ (z >> 31)

coin() is the top bit of the next output; bounded(k) uses rejection
sampling so every residue is equally likely.
"""

from __future__ import annotations

from typing import MutableSequence

MASK64 = (1 << 64) - 1
GOLDEN_GAMMA = 0x9E3779B97F4A7C15
MIX1 = 0xBF58476D1CE4E5B9
MIX2 = 0x94D049BB133111EB


class SplitMix64:
    __slots__ = ("state",)

    def __init__(self, seed: int):
        self.state = seed & MASK64

    def next_u64(self) -> int:
        self.state = (self.state + GOLDEN_GAMMA) & MASK64
        z = self.state
        z = ((z ^ (z >> 30)) * MIX1) & MASK64
        z = ((z ^ (z >> 27)) * MIX2) & MASK64
        return z ^ (z >> 31)

    def coin(self) -> int:
        return self.next_u64() >> 63

    def bounded(self, k: int) -> int:
        """Uniform integer in [0, k)."""
        if k < 1:
            raise ValueError(f"bound must be >= 1, got {k}")
        limit = (1 << 64) - ((1 << 64) % k)
        while True:
            r = self.next_u64()
            if r < limit:
                return r % k

    def shuffle(self, items: MutableSequence) -> None:
        """In-place Fisher-Yates, last position first."""
        for i in range(len(items) - 1, 0, -1):
            j = self.bounded(i + 1)
            items[i], items[j] = items[j], items[i]
