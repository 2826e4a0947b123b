"""Minimal-support search over A-vectors and the range-scan experiment.

For a factor pair (p, q) of n the feasible A-vectors are exactly the
non-negative integer solutions of two linear constraints:

    sum(a_i)             = (m - p)/2 + 1     (number of rounds)
    sum((2*i + 2) * a_i) = q - m             (total y displacement)

min_support_search finds a feasible vector with the fewest nonzero
entries by trying support sizes 1, 2, 3, ... in order, so the first hit
is minimal. scan_range runs the whole pipeline (classify, trace, tally,
minimize) over every odd non-square composite in a range.
"""

import csv
import io
import itertools
import json
from dataclasses import dataclass, field

from .closedform import AVector, derive_avector, verify_avector
from .natarith import isqrt, start_point
from .steppers import Kind, classify, run_param


class InfeasibleError(ValueError):
    """No A-vector satisfies the constraints; indicates corrupt (n, p, q)."""


class SearchBudgetExceeded(RuntimeError):
    """The subset-enumeration budget ran out before a solution was found."""


@dataclass(frozen=True)
class SparsityRecord:
    n: int
    p: int
    q: int
    k_steps: int
    target_sum: int
    trace_support: int
    min_support: int
    witness: AVector


@dataclass
class SparsityReport:
    lo: int
    hi: int
    records: list = field(default_factory=list)
    truncated: bool = False

    @property
    def histogram(self):
        hist = {}
        for rec in self.records:
            hist[rec.min_support] = hist.get(rec.min_support, 0) + 1
        return hist

    @property
    def max_min_support(self):
        return max((rec.min_support for rec in self.records), default=0)


CSV_COLUMNS = ("n", "p", "q", "k_steps", "target_sum",
               "trace_support", "min_support", "witness")


def _solve_on_support(indices, total, target):
    """Counts >= 1 on the given coefficient indices with the two sums fixed,
    or None. Coefficient for index i is 2*i + 2."""
    s = len(indices)
    coeffs = [2 * i + 2 for i in indices]
    rest_total = total - s
    rest_target = target - sum(coeffs)
    if rest_total < 0 or rest_target < 0:
        return None
    if s == 1:
        if rest_target == coeffs[0] * rest_total:
            return (total,)
        return None
    if s == 2:
        # a2 extra copies of the larger coefficient, the rest on the smaller
        diff = coeffs[1] - coeffs[0]
        num = rest_target - coeffs[0] * rest_total
        if num < 0 or num % diff:
            return None
        b2 = num // diff
        if b2 > rest_total:
            return None
        return (1 + rest_total - b2, 1 + b2)
    # general case: recurse on all but the last two, close with the pair rule
    for b0 in range(rest_total + 1):
        used = coeffs[0] * b0
        if used > rest_target:
            break
        sub = _solve_on_support(indices[1:], total - 1 - b0, target - coeffs[0] * (1 + b0))
        if sub is not None:
            return (1 + b0,) + sub
    return None


def min_support_search(n, p, q, j_max=None, node_budget=2_000_000) -> SparsityRecord:
    """Minimum-support A-vector for the factor pair (p, q) of n."""
    if p * q != n or p % 2 == 0:
        raise ValueError("need an odd factor pair with p*q = n")
    m = start_point(n)
    if p > isqrt(n):
        raise ValueError("p must not exceed isqrt(n)")
    if j_max is None:
        j_max = (m - 1) // 2
    total = (m - p) // 2 + 1
    target = q - m

    outcome, trace = run_param(n)
    trace_a = derive_avector(trace)
    if outcome.p != p:
        raise ValueError(f"(p, q) disagrees with the stepper result {outcome.p}")

    nodes = 0
    for support in range(1, j_max + 2):
        for indices in itertools.combinations(range(j_max + 1), support):
            nodes += 1
            if nodes > node_budget:
                raise SearchBudgetExceeded(
                    f"budget {node_budget} exhausted at support {support} for n={n}")
            counts = _solve_on_support(indices, total, target)
            if counts is None:
                continue
            full = [0] * (indices[-1] + 1)
            for idx, c in zip(indices, counts):
                full[idx] = c
            witness = AVector(tuple(full), m)
            if not verify_avector(n, witness):
                raise InfeasibleError(
                    f"solver produced a non-verifying witness for n={n}")
            return SparsityRecord(n, p, q, total, target,
                                  trace_a.support, support, witness)
    raise InfeasibleError(f"no feasible A-vector for n={n}, p={p}, q={q}")


def scan_range(lo, hi, node_budget=2_000_000) -> SparsityReport:
    """Run the sparsity pipeline over every odd non-square composite in [lo, hi]."""
    if lo >= hi:
        raise ValueError("need lo < hi")
    report = SparsityReport(lo, hi)
    start = max(lo, 9)
    if start % 2 == 0:
        start += 1
    for n in range(start, hi + 1, 2):
        outcome = classify(n)
        if outcome.kind != Kind.COMPOSITE_PAIR:
            continue
        try:
            rec = min_support_search(n, outcome.p, outcome.q,
                                     node_budget=node_budget)
        except SearchBudgetExceeded:
            report.truncated = True
            continue
        report.records.append(rec)
    return report


def report_to_csv(report: SparsityReport) -> str:
    out = io.StringIO()
    writer = csv.writer(out, lineterminator="\n")
    writer.writerow(CSV_COLUMNS)
    for rec in report.records:
        if not verify_avector(rec.n, rec.witness):
            raise InfeasibleError(f"witness for n={rec.n} failed re-verification")
        writer.writerow([rec.n, rec.p, rec.q, rec.k_steps, rec.target_sum,
                         rec.trace_support, rec.min_support,
                         rec.witness.to_string()])
    if report.truncated:
        out.write("# truncated: search budget exhausted for some inputs\n")
    return out.getvalue()


def report_to_json(report: SparsityReport) -> str:
    records = []
    for rec in report.records:
        if not verify_avector(rec.n, rec.witness):
            raise InfeasibleError(f"witness for n={rec.n} failed re-verification")
        records.append({
            "n": rec.n, "p": rec.p, "q": rec.q,
            "k_steps": rec.k_steps, "target_sum": rec.target_sum,
            "trace_support": rec.trace_support, "min_support": rec.min_support,
            "witness": list(rec.witness.counts),
            "bit_length": rec.n.bit_length(),
        })
    payload = {
        "lo": report.lo, "hi": report.hi, "truncated": report.truncated,
        "histogram": {str(k): v for k, v in sorted(report.histogram.items())},
        "max_min_support": report.max_min_support,
        "records": records,
    }
    return json.dumps(payload, indent=2) + "\n"
