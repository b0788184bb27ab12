"""Shared test utilities."""
from itertools import permutations

import numpy as np

from drgmotion.spectrum import ostrowski_bound


def best_matching_radius(x, y) -> float:
    """Smallest max |x_i - y_pi(i)| over all permutations pi (exhaustive)."""
    best = float("inf")
    for perm in permutations(range(len(y))):
        r = max(abs(x[i] - y[p]) for i, p in enumerate(perm))
        best = min(best, r)
    return best


def ostrowski_trials(count: int = 200, seed: int = 20240607):
    """Yield (n, radius, bound) for seeded random integer matrix pairs."""
    rng = np.random.default_rng(seed)
    for _ in range(count):
        n = int(rng.integers(1, 7))
        a = rng.integers(-5, 6, size=(n, n))
        b = a.copy()
        # perturb a few entries so the pair is close but not equal
        for _ in range(int(rng.integers(1, n + 1))):
            i, j = rng.integers(0, n, size=2)
            b[i, j] = rng.integers(-5, 6)
        ea = np.linalg.eigvals(a.astype(float))
        eb = np.linalg.eigvals(b.astype(float))
        yield n, best_matching_radius(ea, eb), ostrowski_bound(a, b)
