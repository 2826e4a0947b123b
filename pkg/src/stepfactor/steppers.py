"""Iterative difference-expression factorers.

Three steppers share the same state space: a descending odd candidate x,
an ascending odd candidate y (both starting at the largest odd m <=
isqrt(n)), and the residual delta = x*y - n. They differ only in how far
a y-advance jumps:

  * unit        -- y advances by 2 at a time until delta flips sign
  * accelerated -- y advances by the smallest even eps with delta + eps*x >= 0
  * param       -- same jump, but bookkept as (delta_x, eps, delta_y)
                   triples with x decremented once per round

All three halt at the first state with x*y = n, which makes the returned
p the largest divisor of n not exceeding isqrt(n). Worst case is O(sqrt(n))
rounds for the accelerated/param forms and O(n/p) single steps for the
unit form; nothing here is sub-exponential.
"""

from dataclasses import dataclass
from enum import Enum

from .natarith import isqrt, start_point


class Kind(Enum):
    EVEN_SPLIT = "even-split"
    PERFECT_SQUARE = "perfect-square"
    COMPOSITE_PAIR = "composite-pair"
    PRIME = "prime"
    INVALID = "invalid"


@dataclass(frozen=True)
class FactorOutcome:
    kind: Kind
    p: int
    q: int
    steps: int


@dataclass(frozen=True)
class UnitTraceRow:
    """One row of a unit or accelerated run; delta = x*y - n at every row."""

    k: int
    x: int
    y: int
    delta: int
    eps_x: int  # 0 or -2
    eps_y: int  # 0 or positive even
    contrib: int  # the term added to delta this step


@dataclass(frozen=True)
class ParamTraceRow:
    """One round of the parameterized stepper.

    delta_x = x*y - n before the y-jump (always < 0), eps is the minimal
    even jump making the product reach n, delta_y = delta_x + eps*x >= 0.
    """

    k: int
    x: int
    y: int
    delta_x: int
    eps: int
    delta_y: int


class StepLimitExceeded(Exception):
    """A stepper ran out of its iteration budget before halting."""

    def __init__(self, n: int, steps: int):
        super().__init__(f"step limit exceeded after {steps} steps for n={n}")
        self.n = n
        self.steps = steps


def _check_stepper_input(n: int) -> int:
    m = start_point(n)
    if m * m == n:
        raise ValueError("perfect squares are handled by classify, not the steppers")
    return m


def default_max_steps(n: int) -> int:
    # Guard for adversarial input; generous for the accelerated/param
    # steppers, deliberately tight for unit runs on unbalanced composites.
    return 4 * isqrt(n)


def run_unit(n, max_steps=None, collect=True):
    """Unit stepper: y += 2 while delta < 0, x -= 2 while delta > 0.

    Returns (FactorOutcome, rows). With collect=False no rows are built
    and consecutive y-steps are applied in one exact batch; the outcome
    (including the step count) is unchanged.
    """
    m = _check_stepper_input(n)
    if max_steps is None:
        max_steps = default_max_steps(n)
    x = y = m
    delta = m * m - n
    rows = [UnitTraceRow(0, x, y, delta, 0, 0, 0)] if collect else []
    steps = 0
    while delta != 0:
        if delta < 0:
            if collect:
                steps += 1
                if steps > max_steps:
                    raise StepLimitExceeded(n, steps - 1)
                y += 2
                contrib = 2 * x
                delta += contrib
                rows.append(UnitTraceRow(steps, x, y, delta, 0, 2, contrib))
            else:
                # batch of t unit y-steps; t is the count until delta >= 0
                t = (-delta + 2 * x - 1) // (2 * x)
                if steps + t > max_steps:
                    raise StepLimitExceeded(n, max_steps)
                steps += t
                y += 2 * t
                delta += 2 * x * t
        else:
            steps += 1
            if steps > max_steps:
                raise StepLimitExceeded(n, steps - 1)
            x -= 2
            contrib = -2 * y
            delta += contrib
            if collect:
                rows.append(UnitTraceRow(steps, x, y, delta, -2, 0, contrib))
    return _stepper_outcome(n, x, y, steps), rows


def run_accelerated(n, max_steps=None, collect=True):
    """Accelerated stepper: a y-step jumps past the sign flip in one move."""
    m = _check_stepper_input(n)
    if max_steps is None:
        max_steps = default_max_steps(n)
    x = y = m
    delta = m * m - n
    rows = [UnitTraceRow(0, x, y, delta, 0, 0, 0)] if collect else []
    steps = 0
    while delta != 0:
        steps += 1
        if steps > max_steps:
            raise StepLimitExceeded(n, steps - 1)
        if delta < 0:
            eps = 2 * ((-delta + 2 * x - 1) // (2 * x))
            y += eps
            contrib = eps * x
            delta += contrib
            if collect:
                rows.append(UnitTraceRow(steps, x, y, delta, 0, eps, contrib))
        else:
            x -= 2
            contrib = -2 * y
            delta += contrib
            if collect:
                rows.append(UnitTraceRow(steps, x, y, delta, -2, 0, contrib))
    return _stepper_outcome(n, x, y, steps), rows


def run_param(n, max_steps=None, collect=True):
    """Parameterized stepper over (delta_x, eps, delta_y) rounds.

    Round k: delta_x is x*y - n with y already advanced by the previous
    eps; eps is the smallest even value with delta_x + eps*x >= 0;
    delta_y = delta_x + eps*x. Halts when delta_y = 0, at which point
    p = x and q = y + eps.
    """
    m = _check_stepper_input(n)
    if max_steps is None:
        max_steps = default_max_steps(n)
    x = y = m
    dx = m * m - n
    rows = []
    k = 0
    while True:
        if k >= max_steps:
            raise StepLimitExceeded(n, k)
        eps = 2 * ((-dx + 2 * x - 1) // (2 * x))
        dy = dx + eps * x
        if collect:
            rows.append(ParamTraceRow(k, x, y, dx, eps, dy))
        if dy == 0:
            return _stepper_outcome(n, x, y + eps, k + 1), rows
        x -= 2
        y += eps
        dx = dy - 2 * y
        k += 1


def _stepper_outcome(n, p, q, steps):
    if p == 1:
        return FactorOutcome(Kind.PRIME, 1, n, steps)
    return FactorOutcome(Kind.COMPOSITE_PAIR, p, q, steps)


def classify(n: int, max_steps=None) -> FactorOutcome:
    """Dispatch: short-circuit trivial cases, run the param stepper otherwise.

    For composite results p is the largest divisor of n <= isqrt(n).
    """
    if n <= 1:
        return FactorOutcome(Kind.INVALID, 0, 0, 0)
    if n == 2:
        return FactorOutcome(Kind.PRIME, 1, 2, 0)
    if n % 2 == 0:
        return FactorOutcome(Kind.EVEN_SPLIT, 2, n // 2, 0)
    r = isqrt(n)
    if r * r == n:
        return FactorOutcome(Kind.PERFECT_SQUARE, r, r, 0)
    if n < 9:
        return FactorOutcome(Kind.PRIME, 1, n, 0)
    outcome, _ = run_param(n, max_steps=max_steps, collect=False)
    return outcome
