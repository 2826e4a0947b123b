"""Exact integer primitives shared by the steppers and the closed form.

All quantities are plain Python ints (arbitrary precision). No floating
point is used anywhere in this package.
"""

import math


def isqrt(n: int) -> int:
    """Integer square root: the largest r with r*r <= n."""
    if n < 0:
        raise ValueError("isqrt of negative value")
    return math.isqrt(n)


def start_point(n: int) -> int:
    """Largest odd m <= isqrt(n); the common start value of x and y.

    Only defined for odd n >= 9 (even and tiny inputs are handled by the
    classifier before any stepper runs).
    """
    if n % 2 == 0:
        raise ValueError("start_point requires odd n")
    if n < 9:
        raise ValueError("start_point requires n >= 9")
    m = math.isqrt(n)
    return m if m % 2 == 1 else m - 1


def delta0(n: int) -> int:
    """Initial residual m*m - n at the start point; always <= 0.

    Zero exactly when n is an odd perfect square (odd squares have odd
    roots, so the odd-start adjustment never moves off the root).
    """
    m = start_point(n)
    return m * m - n
