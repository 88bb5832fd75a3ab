"""Deterministic pseudo-random numbers for reproducible runs.

A splitmix64 generator drives everything random in this package: instance
generators, permutation draws, and start-vertex sampling.  The walk kernels
use a 32-bit xorshift128 whose four state words are derived here, so the
compiled and pure-Python backends consume identical streams.  Results are
bit-stable across platforms given the same 64-bit seed.
"""

from __future__ import annotations

MASK64 = (1 << 64) - 1
MASK32 = (1 << 32) - 1

_GAMMA = 0x9E3779B97F4A7C15
_MIX1 = 0xBF58476D1CE4E5B9
_MIX2 = 0x94D049BB133111EB


def _mix(z: int) -> int:
    z = (z ^ (z >> 30)) * _MIX1 & MASK64
    z = (z ^ (z >> 27)) * _MIX2 & MASK64
    return z ^ (z >> 31)


class Prng:
    """splitmix64 stream over a 64-bit state."""

    def __init__(self, seed: int):
        self._state = seed & MASK64

    def next_u64(self) -> int:
        self._state = (self._state + _GAMMA) & MASK64
        return _mix(self._state)

    def below(self, k: int) -> int:
        """Uniform draw from 0..k-1 (modulo method; bias < k / 2^64)."""
        if k < 1:
            raise ValueError("below() needs k >= 1")
        return self.next_u64() % k

    def randint(self, lo: int, hi: int) -> int:
        """Uniform draw from the inclusive range lo..hi."""
        if hi < lo:
            raise ValueError("empty range")
        return lo + self.below(hi - lo + 1)

    def choice(self, seq):
        if not seq:
            raise ValueError("empty sequence")
        return seq[self.below(len(seq))]

    def shuffle(self, xs: list) -> None:
        """In-place Fisher-Yates."""
        for i in range(len(xs) - 1, 0, -1):
            j = self.below(i + 1)
            xs[i], xs[j] = xs[j], xs[i]

    def permutation(self, n: int) -> tuple:
        """A uniform permutation of 1..n; element i-1 is the image of i."""
        xs = list(range(1, n + 1))
        self.shuffle(xs)
        return tuple(xs)

    def subset(self, n: int) -> frozenset:
        """Uniform subset of {1..n} (independent fair coin per coordinate)."""
        bits = 0
        for block in range((n + 63) // 64):
            bits |= self.next_u64() << (64 * block)
        return frozenset(j + 1 for j in range(n) if bits >> j & 1)


def derive_seed(master: int, *indices: int) -> int:
    """Stable child seed from a master seed and an index path."""
    s = master & MASK64
    for idx in indices:
        s = _mix((s + _GAMMA) & MASK64)
        s = _mix((s ^ (idx & MASK64)) + _GAMMA & MASK64)
    return s


class XorShift128:
    """32-bit xorshift stream; mirrors the walk kernels bit for bit, so a
    pure-Python pivot run can replay a kernel run exactly."""

    def __init__(self, seed: int):
        self._s = xorshift_state(seed)

    def next_u32(self) -> int:
        s = self._s
        t = (s[0] ^ ((s[0] << 11) & MASK32)) & MASK32
        s[0], s[1], s[2] = s[1], s[2], s[3]
        s[3] = ((s[3] ^ (s[3] >> 19)) ^ (t ^ (t >> 8))) & MASK32
        return s[3]

    def below(self, k: int) -> int:
        if k < 1:
            raise ValueError("below() needs k >= 1")
        return self.next_u32() % k


def xorshift_state(seed: int) -> list:
    """Four nonzero 32-bit words for the xorshift128 walk kernels."""
    p = Prng(seed)
    words = []
    for _ in range(2):
        z = p.next_u64()
        words.extend([z & MASK32, (z >> 32) & MASK32])
    if not any(words):
        words[0] = 1
    return words
