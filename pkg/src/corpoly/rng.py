"""Deterministic pseudo-random numbers via SplitMix64.

The generator is fixed by this module (not the platform's default RNG) so
that a seed reproduces the same stream on any machine or Python version.
Reference: Steele, Lea, Flood, "Fast splittable pseudorandom number
generators" (the splitmix64 finalizer).
"""

from __future__ import annotations

_MASK = (1 << 64) - 1


class SplitMix64:
    """64-bit PRNG with a single word of state."""

    def __init__(self, seed: int):
        self.state = seed & _MASK

    def next_u64(self) -> int:
        self.state = (self.state + 0x9E3779B97F4A7C15) & _MASK
        z = self.state
        z = ((z ^ (z >> 30)) * 0xBF58476D1CE4E5B9) & _MASK
        z = ((z ^ (z >> 27)) * 0x94D049BB133111EB) & _MASK
        return z ^ (z >> 31)

    def randint(self, lo: int, hi: int) -> int:
        """Uniform-ish integer in [lo, hi] (simple modulo reduction;
        determinism matters here, not perfect uniformity)."""
        if lo > hi:
            raise ValueError("empty range")
        span = hi - lo + 1
        return lo + self.next_u64() % span
