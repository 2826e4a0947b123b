import random

import pytest

from stepfactor.natarith import isqrt


def largest_divisor_below_sqrt(n):
    """Independent oracle: scan down from isqrt(n) for the largest divisor."""
    for d in range(isqrt(n), 0, -1):
        if n % d == 0:
            return d
    return 1


def is_odd_nonsquare_composite(n):
    if n < 9 or n % 2 == 0:
        return False
    r = isqrt(n)
    if r * r == n:
        return False
    return any(n % d == 0 for d in range(3, r + 1, 2))


def random_odd_nonsquare_composites(count, hi, seed):
    """Deterministic sample of odd non-square composites in [9, hi)."""
    rng = random.Random(seed)
    out = []
    while len(out) < count:
        n = rng.randrange(9, hi) | 1
        if is_odd_nonsquare_composite(n):
            out.append(n)
    return out


@pytest.fixture(scope="session")
def small_corpus():
    return random_odd_nonsquare_composites(1000, 10**4, seed=101)
