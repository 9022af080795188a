"""Seeded random chain generation (splitmix-style 64-bit PRNG).

The generator is self-contained so that seeded experiments produce the
same bytes on every platform, independent of numpy's RNG evolution.
"""

from __future__ import annotations

import math

import numpy as np

from .markov import TransitionMatrix

_MASK = (1 << 64) - 1


class SplitMix64:
    """Minimal splitmix64: one 64-bit state, additive constant, two xorshift
    multiplies per output."""

    def __init__(self, seed: int):
        self._state = seed & _MASK

    def next_u64(self) -> int:
        self._state = (self._state + 0x9E3779B97F4A7C15) & _MASK
        z = self._state
        z = ((z ^ (z >> 30)) * 0xBF58476D1CE4E5B9) & _MASK
        z = ((z ^ (z >> 27)) * 0x94D049BB133111EB) & _MASK
        return z ^ (z >> 31)

    def random(self) -> float:
        """Uniform in [0, 1) with 53-bit resolution."""
        return (self.next_u64() >> 11) * 2.0 ** -53

    def exponential(self) -> float:
        return -math.log1p(-self.random())


def random_stochastic(n: int, rng: SplitMix64) -> TransitionMatrix:
    """Dirichlet-uniform rows: exponential draws, normalized per row.

    All entries are strictly positive, so the chain is irreducible and
    aperiodic by construction.
    """
    rows = np.array([[rng.exponential() for _ in range(n)] for _ in range(n)])
    return TransitionMatrix(n, rows / rows.sum(axis=1, keepdims=True))


def random_symmetric_stochastic(n: int, rng: SplitMix64) -> TransitionMatrix:
    """Random symmetric row-stochastic matrix.

    A single symmetrize-then-renormalize pass does not commute, so iterate
    (M+M^T)/2 followed by row normalization to its fixed point (geometric
    convergence for strictly positive matrices), then symmetrize once more
    so the result is exactly symmetric in floating point.
    """
    m = np.asarray(random_stochastic(n, rng).entries)
    for _ in range(400):
        m = (m + m.T) / 2.0
        m = m / m.sum(axis=1, keepdims=True)
        if np.max(np.abs(m - m.T)) < 1e-15:
            break
    m = (m + m.T) / 2.0
    return TransitionMatrix(n, m)


def random_irreducible(n: int, rng: SplitMix64) -> TransitionMatrix:
    """Random irreducible chain (dense positive rows)."""
    return random_stochastic(n, rng)
