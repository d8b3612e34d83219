"""Deterministic pseudo-random rational sampling.

A fixed 64-bit linear-congruential sequence (Knuth's MMIX multiplier)
drives every sampled input in the package.  States are mixed with a
CRC32 of a stream name, so independent checks draw from independent
streams and filtering one check never shifts another's samples.
Rationals have numerator and denominator bounded by 97.
"""

from __future__ import annotations

import zlib

from .scalars import Q

_MULT = 6364136223846793005
_INC = 1442695040888963407
_MASK = (1 << 64) - 1

NUMERATOR_BOUND = 97
DENOMINATOR_BOUND = 97


class RationalSampler:
    def __init__(self, seed: int):
        self.seed = int(seed)
        self.state = (self.seed ^ 0x9E3779B97F4A7C15) & _MASK
        self._step()
        self._step()

    def _step(self) -> int:
        self.state = (self.state * _MULT + _INC) & _MASK
        return self.state >> 33

    def derive(self, name: str) -> "RationalSampler":
        """Independent stream for a named check, same base seed."""
        return RationalSampler(self.seed ^ (zlib.crc32(name.encode()) << 17))

    def integer(self, bound: int) -> int:
        if bound <= 0:
            raise ValueError("bound must be positive")
        return self._step() % bound

    def rational(self):
        num = self.integer(2 * NUMERATOR_BOUND + 1) - NUMERATOR_BOUND
        den = self.integer(DENOMINATOR_BOUND) + 1
        return Q(num, den)

    def nonzero_rational(self):
        while True:
            value = self.rational()
            if value != 0:
                return value

    def vector(self, length: int):
        return tuple(self.rational() for _ in range(length))

    def nonzero_vector(self, length: int):
        while True:
            vec = self.vector(length)
            if any(x != 0 for x in vec):
                return vec

    def distinct_rationals(self, count: int):
        seen = []
        while len(seen) < count:
            value = self.rational()
            if value not in seen:
                seen.append(value)
        return tuple(seen)

    def unimodular_matrix(self, n: int, shears: int = 6):
        """Integer matrix with determinant +-1, built from random shears."""
        rows = [[1 if i == j else 0 for j in range(n)] for i in range(n)]
        if n == 1:
            return [[1 if self.integer(2) == 0 else -1]]
        for _ in range(shears):
            i = self.integer(n)
            j = self.integer(n)
            if i == j:
                continue
            factor = self.integer(5) - 2
            for k in range(n):
                rows[i][k] += factor * rows[j][k]
        return rows
