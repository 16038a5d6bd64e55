"""Shared helpers for the test suite."""

from __future__ import annotations

import numpy as np

from spheresync import FrequencyEnsemble, SkewMatrix


def random_skew_int(rng: np.random.Generator, n: int, lo: int = -5, hi: int = 5):
    """Random integer skew-symmetric n x n matrix with entries in [lo, hi]."""
    upper = rng.integers(lo, hi + 1, size=(n, n))
    a = np.triu(upper, k=1)
    return (a - a.T).astype(np.float64)


def random_skew_ensemble(
    rng: np.random.Generator, n: int, m: int, lo: int = -5, hi: int = 5
) -> FrequencyEnsemble:
    return FrequencyEnsemble(
        tuple(SkewMatrix(random_skew_int(rng, n, lo, hi)) for _ in range(m))
    )
