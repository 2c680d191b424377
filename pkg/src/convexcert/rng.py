"""xoshiro256** pseudo-random generator.

Every random instance in this package comes from this generator, so that the
stream is reproducible outside Python:

* seeding: the 64-bit user seed is fed through splitmix64 four times to fill
  the state words ``s0..s3``;
* ``next_u64``: the reference xoshiro256** step (Blackman & Vigna);
* ``random``: ``(next_u64() >> 11) * 2**-53``, uniform on [0, 1);
* ``normal``: Box-Muller using two draws, ``u1 = 1 - random()``,
  ``u2 = random()``, returning ``sqrt(-2 ln u1) * cos(2 pi u2)`` (the sine
  half is discarded);
* ``integers(lo, hi)``: uniform on the closed range by rejection on the
  top bits;
* arrays are filled in row-major order.
"""

from __future__ import annotations

import math

import numpy as np

_MASK = (1 << 64) - 1


def _rotl(x: int, k: int) -> int:
    return ((x << k) | (x >> (64 - k))) & _MASK


def splitmix64(state: int) -> tuple[int, int]:
    """One splitmix64 step: returns ``(new_state, output)``."""
    state = (state + 0x9E3779B97F4A7C15) & _MASK
    z = state
    z = ((z ^ (z >> 30)) * 0xBF58476D1CE4E5B9) & _MASK
    z = ((z ^ (z >> 27)) * 0x94D049BB133111EB) & _MASK
    return state, z ^ (z >> 31)


def derive_seed(seed: int, *labels: int) -> int:
    """Mix integer labels into a seed, e.g. ``derive_seed(master, criterion, i)``."""
    state = seed & _MASK
    for label in labels:
        state, out = splitmix64(state ^ (label & _MASK))
        state = out
    return state


class Xoshiro256:
    __slots__ = ("_s",)

    def __init__(self, seed: int):
        state = int(seed) & _MASK
        s = []
        for _ in range(4):
            state, out = splitmix64(state)
            s.append(out)
        self._s = s

    def next_u64(self) -> int:
        s0, s1, s2, s3 = self._s
        result = (_rotl((s1 * 5) & _MASK, 7) * 9) & _MASK
        t = (s1 << 17) & _MASK
        s2 ^= s0
        s3 ^= s1
        s1 ^= s2
        s0 ^= s3
        s2 ^= t
        s3 = _rotl(s3, 45)
        self._s = [s0, s1, s2, s3]
        return result

    def random(self) -> float:
        return (self.next_u64() >> 11) * (1.0 / 9007199254740992.0)

    def uniform(self, lo: float = 0.0, hi: float = 1.0) -> float:
        return lo + (hi - lo) * self.random()

    def normal(self) -> float:
        u1 = 1.0 - self.random()
        u2 = self.random()
        return math.sqrt(-2.0 * math.log(u1)) * math.cos(2.0 * math.pi * u2)

    def exponential(self) -> float:
        return -math.log(1.0 - self.random())

    def integers(self, lo: int, hi: int) -> int:
        """Uniform integer in ``[lo, hi]`` (both ends included)."""
        span = hi - lo + 1
        if span <= 0:
            raise ValueError("empty integer range")
        bits = max(1, (span - 1).bit_length())
        while True:
            r = self.next_u64() >> (64 - bits)
            if r < span:
                return lo + r

    def normal_array(self, *shape: int) -> np.ndarray:
        size = int(np.prod(shape)) if shape else 1
        return np.array([self.normal() for _ in range(size)]).reshape(shape)

    def uniform_array(self, *shape: int, lo: float = 0.0, hi: float = 1.0) -> np.ndarray:
        size = int(np.prod(shape)) if shape else 1
        return np.array([self.uniform(lo, hi) for _ in range(size)]).reshape(shape)

    def unit_vector(self, d: int) -> np.ndarray:
        while True:
            v = self.normal_array(d)
            nrm = float(np.linalg.norm(v))
            if nrm > 1e-8:
                return v / nrm

    def simplex_weights(self, n: int) -> np.ndarray:
        """Uniform point of the open probability simplex (normalized exponentials)."""
        w = np.array([self.exponential() for _ in range(n)])
        while np.any(w <= 0.0):
            w = np.array([self.exponential() for _ in range(n)])
        return w / w.sum()

    def choice(self, n: int, k: int) -> list[int]:
        """``k`` distinct indices from ``range(n)`` in sorted order (partial Fisher-Yates)."""
        idx = list(range(n))
        for i in range(k):
            j = self.integers(i, n - 1)
            idx[i], idx[j] = idx[j], idx[i]
        return sorted(idx[:k])
