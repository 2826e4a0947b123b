"""A-vector algebra: the closed-form view of a parameterized run.

An A-vector counts how many rounds used each even jump value: counts[i]
is the number of rounds with eps = 2*i + 2. Together with the start
value m it pins down the terminal state of a run without iterating:

    k = sum(counts)            (number of rounds)
    x = m - 2*k + 2
    y = m + sum((2*i + 2) * counts[i])
    residual = n - x*y
"""

from dataclasses import dataclass

from .natarith import isqrt, start_point
from .steppers import ParamTraceRow


class IncompleteTraceError(ValueError):
    """The trace did not terminate (last row has delta_y != 0)."""


class ClosedFormRangeError(ValueError):
    """Closed-form x fell below 1 for the given counts."""


@dataclass(frozen=True)
class AVector:
    counts: tuple
    origin_m: int

    def __post_init__(self):
        counts = tuple(int(c) for c in self.counts)
        object.__setattr__(self, "counts", counts)
        if any(c < 0 for c in counts):
            raise ValueError("counts must be non-negative")
        if counts and counts[-1] == 0:
            raise ValueError("counts must be canonical (no trailing zeros)")
        # No upper bound on the number of bins here: trace-derived vectors
        # can use jumps beyond the (m-1)/2 bins the minimal-support search
        # restricts itself to (e.g. n=93 needs eps=12 from m=9).

    @property
    def support(self) -> int:
        return sum(1 for c in self.counts if c > 0)

    @property
    def total(self) -> int:
        return sum(self.counts)

    @property
    def weighted_sum(self) -> int:
        return sum((2 * i + 2) * c for i, c in enumerate(self.counts))

    def to_string(self) -> str:
        return ",".join(str(c) for c in self.counts)

    @classmethod
    def from_string(cls, text: str, origin_m: int) -> "AVector":
        text = text.strip()
        counts = tuple(int(part) for part in text.split(",")) if text else ()
        return cls(counts, origin_m)


def derive_avector(trace) -> AVector:
    """Tally the eps usage of a complete param trace into an A-vector."""
    rows = list(trace)
    if not rows or not isinstance(rows[0], ParamTraceRow):
        raise IncompleteTraceError("expected a non-empty param trace")
    if rows[-1].delta_y != 0:
        raise IncompleteTraceError("trace does not end at delta_y = 0")
    top = max(row.eps for row in rows)
    counts = [0] * (top // 2)
    for row in rows:
        counts[row.eps // 2 - 1] += 1
    return AVector(tuple(counts), rows[0].x)


def eval_closed_form(n: int, a: AVector):
    """Evaluate the closed form; returns (x, y, residual) with residual = n - x*y.

    An empty A-vector is the degenerate pre-step state (x = m + 2, y = m);
    it is returned mechanically and never verifies.
    """
    m = start_point(n)
    if a.origin_m != m:
        raise ValueError(f"origin_m {a.origin_m} does not match start point {m}")
    k = a.total
    x = m - 2 * k + 2
    if x < 1:
        raise ClosedFormRangeError(f"x = {x} out of range for k = {k}")
    y = m + a.weighted_sum
    return x, y, n - x * y


def verify_avector(n: int, a: AVector) -> bool:
    """True iff the closed form lands exactly on a straddling factor pair."""
    try:
        x, y, residual = eval_closed_form(n, a)
    except ClosedFormRangeError:
        return False
    if residual != 0:
        return False
    r = isqrt(n)
    return 1 <= x <= r <= y
