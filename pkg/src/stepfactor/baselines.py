"""Classical factoring and primality baselines used as cross-check oracles.

Nothing here depends on the steppers; agreement between the two routes is
what the test suite leans on.
"""

import random
from dataclasses import dataclass
from enum import Enum
from math import gcd

from .natarith import isqrt


class Method(Enum):
    TRIAL_DIVISION = "trial-division"
    POLLARD_RHO = "pollard-rho"


@dataclass(frozen=True)
class BaselineResult:
    method: Method
    factor: int  # nontrivial divisor, or 1 if prime / failed
    iterations: int
    failed: bool = False


def trial_division(n: int, max_iterations=None) -> BaselineResult:
    """Smallest prime factor of n, or factor=1 if n is prime.

    Exact when max_iterations is None; with a bound set, a give-up is
    reported as failed=True rather than a primality verdict.
    """
    if n < 2:
        raise ValueError("trial_division requires n >= 2")
    iterations = 0
    for small in (2, 3, 5):
        iterations += 1
        if n % small == 0:
            if n == small:
                return BaselineResult(Method.TRIAL_DIVISION, 1, iterations)
            return BaselineResult(Method.TRIAL_DIVISION, small, iterations)
    # 2,3-wheel: candidates 6k +/- 1
    d = 7
    step = 4
    limit = isqrt(n)
    while d <= limit:
        iterations += 1
        if n % d == 0:
            return BaselineResult(Method.TRIAL_DIVISION, d, iterations)
        if max_iterations is not None and iterations >= max_iterations:
            return BaselineResult(Method.TRIAL_DIVISION, 1, iterations, failed=True)
        d += step
        step = 6 - step
    return BaselineResult(Method.TRIAL_DIVISION, 1, iterations)


# Deterministic Miller-Rabin witness set, exact for n < 3,317,044,064,679,887,385,961,981
_MR_WITNESSES = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37)
_MR_LIMIT = 3317044064679887385961981


def _miller_rabin(n: int, bases) -> bool:
    d = n - 1
    r = 0
    while d % 2 == 0:
        d //= 2
        r += 1
    for a in bases:
        a %= n
        if a == 0:
            continue
        x = pow(a, d, n)
        if x == 1 or x == n - 1:
            continue
        for _ in range(r - 1):
            x = x * x % n
            if x == n - 1:
                break
        else:
            return False
    return True


def is_prime_ref(n: int) -> bool:
    """Exact primality: deterministic Miller-Rabin below the proven bound,
    trial division above it."""
    if n < 2:
        return False
    for p in (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37):
        if n % p == 0:
            return n == p
    if n < _MR_LIMIT:
        return _miller_rabin(n, _MR_WITNESSES)
    return trial_division(n).factor == 1


def pollard_rho(n: int, seed: int, max_retries: int = 20,
                max_iterations: int = 1 << 22) -> BaselineResult:
    """Brent-cycle Pollard rho; every returned factor is verified by division.

    Deterministic for a given (n, seed). Gives up with failed=True after
    max_retries polynomial restarts.
    """
    if n < 9 or n % 2 == 0:
        raise ValueError("pollard_rho requires odd n >= 9")
    rng = random.Random(seed)
    total_iters = 0
    for _ in range(max_retries):
        y = rng.randrange(2, n - 1)
        c = rng.randrange(1, n - 1)
        m = 128
        g = r = q = 1
        x = ys = y
        while g == 1 and total_iters < max_iterations:
            x = y
            for _ in range(r):
                y = (y * y + c) % n
            k = 0
            while k < r and g == 1:
                ys = y
                for _ in range(min(m, r - k)):
                    y = (y * y + c) % n
                    q = q * abs(x - y) % n
                total_iters += min(m, r - k)
                g = gcd(q, n)
                k += m
            r *= 2
        if g == n:
            # backtrack one step at a time from the last saved point
            g = 1
            while g == 1:
                ys = (ys * ys + c) % n
                total_iters += 1
                g = gcd(abs(x - ys), n)
        if 1 < g < n and n % g == 0:
            return BaselineResult(Method.POLLARD_RHO, g, total_iters)
    return BaselineResult(Method.POLLARD_RHO, 1, total_iters, failed=True)
