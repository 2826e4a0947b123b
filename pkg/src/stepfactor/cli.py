"""Command-line surface: factor, trace, isprime, avector, scan, bench.

Exit codes are a stable contract: 0 success, 2 invalid input, 3 step
limit exceeded, 4 baseline failure (rho gave up). isprime uses 0 for
prime, 1 for composite, 2 for invalid.

The step budget may be overridden with the STEPFACTOR_MAX_STEPS
environment variable (a --max-steps flag wins over it).
"""

import argparse
import json
import os
import random
import statistics
import sys
import time

from .baselines import is_prime_ref, pollard_rho, trial_division
from .closedform import derive_avector
from .natarith import isqrt
from .sparsity import (SearchBudgetExceeded, min_support_search,
                       report_to_csv, report_to_json, scan_range)
from .steppers import (FactorOutcome, Kind, StepLimitExceeded, classify,
                       run_accelerated, run_param, run_unit)

PARAM_COLUMNS = ("k", "x", "y", "delta_x", "eps", "delta_y")
UNIT_COLUMNS = ("k", "x", "y", "delta", "eps_x", "eps_y", "contrib")

_STEPPERS = {"unit": run_unit, "accel": run_accelerated, "param": run_param}

EXIT_OK = 0
EXIT_INVALID = 2
EXIT_STEP_LIMIT = 3
EXIT_BASELINE_FAILED = 4


def _parse_natural(text):
    try:
        value = int(text, 10)
    except ValueError:
        return None
    return value if value >= 0 else None


def _row_values(row):
    if hasattr(row, "delta_x"):
        return PARAM_COLUMNS, [row.k, row.x, row.y, row.delta_x, row.eps, row.delta_y]
    return UNIT_COLUMNS, [row.k, row.x, row.y, row.delta, row.eps_x, row.eps_y, row.contrib]


def format_trace(rows, fmt):
    """Render trace rows as tsv, csv, or json text."""
    if fmt == "json":
        payload = []
        for row in rows:
            columns, values = _row_values(row)
            payload.append(dict(zip(columns, values)))
        return json.dumps(payload, indent=2) + "\n"
    sep = "\t" if fmt == "tsv" else ","
    columns, _ = _row_values(rows[0])
    lines = [sep.join(columns)]
    for row in rows:
        _, values = _row_values(row)
        lines.append(sep.join(str(v) for v in values))
    return "\n".join(lines) + "\n"


def parse_trace_json(text):
    """Inverse of format_trace(..., 'json'): a list of column dicts."""
    return json.loads(text)


def _outcome_line(n, outcome):
    if outcome.kind == Kind.PRIME:
        return f"{n} is prime"
    return f"{n} = {outcome.p} * {outcome.q}"


def _quick_outcome(n):
    """Short-circuit outcome for inputs the steppers never see, else None."""
    out = classify(n) if (n <= 1 or n % 2 == 0 or n < 9) else None
    if out is None:
        r = isqrt(n)
        if r * r == n:
            out = FactorOutcome(Kind.PERFECT_SQUARE, r, r, 0)
    return out


def _resolve_max_steps(args):
    if args.max_steps is not None:
        return args.max_steps
    env = os.environ.get("STEPFACTOR_MAX_STEPS")
    return int(env) if env else None


def cmd_factor(args):
    n = _parse_natural(args.n)
    if n is None or n <= 1:
        print("invalid input: need an integer >= 2", file=sys.stderr)
        return EXIT_INVALID
    max_steps = _resolve_max_steps(args)
    quick = _quick_outcome(n)
    if quick is not None:
        print(_outcome_line(n, quick))
        return EXIT_OK
    if args.algorithm == "trial":
        result = trial_division(n)
        if result.factor == 1:
            print(f"{n} is prime")
        else:
            print(f"{n} = {result.factor} * {n // result.factor}")
        return EXIT_OK
    if args.algorithm == "rho":
        if is_prime_ref(n):
            print(f"{n} is prime")
            return EXIT_OK
        result = pollard_rho(n, seed=args.seed)
        if result.failed:
            print("pollard rho gave up", file=sys.stderr)
            return EXIT_BASELINE_FAILED
        p, q = sorted((result.factor, n // result.factor))
        print(f"{n} = {p} * {q}")
        return EXIT_OK
    try:
        outcome, _ = _STEPPERS[args.algorithm](n, max_steps=max_steps, collect=False)
    except StepLimitExceeded as exc:
        print(f"step limit exceeded after {exc.steps} steps", file=sys.stderr)
        return EXIT_STEP_LIMIT
    print(_outcome_line(n, outcome))
    return EXIT_OK


def cmd_trace(args):
    n = _parse_natural(args.n)
    if n is None or n <= 1:
        print("invalid input: need an integer >= 2", file=sys.stderr)
        return EXIT_INVALID
    quick = _quick_outcome(n)
    if quick is not None:
        print(_outcome_line(n, quick))
        return EXIT_OK
    try:
        _, rows = _STEPPERS[args.algorithm](n, max_steps=_resolve_max_steps(args))
    except StepLimitExceeded as exc:
        print(f"step limit exceeded after {exc.steps} steps", file=sys.stderr)
        return EXIT_STEP_LIMIT
    sys.stdout.write(format_trace(rows, args.format))
    return EXIT_OK


def cmd_isprime(args):
    n = _parse_natural(args.n)
    if n is None or n <= 1:
        print("invalid", file=sys.stderr)
        return EXIT_INVALID
    outcome = classify(n)
    verdict = outcome.kind == Kind.PRIME
    if args.verify and verdict != is_prime_ref(n):
        print(f"verification mismatch for {n}", file=sys.stderr)
        return EXIT_INVALID
    print("prime" if verdict else "composite")
    return 0 if verdict else 1


def cmd_avector(args):
    n = _parse_natural(args.n)
    if n is None or n <= 1:
        print("invalid input: need an integer >= 2", file=sys.stderr)
        return EXIT_INVALID
    quick = _quick_outcome(n)
    if quick is not None:
        print(_outcome_line(n, quick))
        return EXIT_INVALID
    try:
        outcome, rows = run_param(n, max_steps=_resolve_max_steps(args))
    except StepLimitExceeded as exc:
        print(f"step limit exceeded after {exc.steps} steps", file=sys.stderr)
        return EXIT_STEP_LIMIT
    if outcome.kind == Kind.PRIME:
        print(f"{n} is prime")
        return EXIT_INVALID
    a = derive_avector(rows)
    print(f"A = {a.to_string()} (k={a.total})")
    if args.min_support:
        try:
            rec = min_support_search(n, outcome.p, outcome.q)
        except SearchBudgetExceeded as exc:
            print(f"search budget exceeded: {exc}", file=sys.stderr)
            return EXIT_STEP_LIMIT
        print(f"min A = {rec.witness.to_string()} "
              f"(support {rec.min_support}, trace support {rec.trace_support})")
    return EXIT_OK


def cmd_scan(args):
    if args.lo >= args.hi or args.lo < 0:
        print("invalid range: need 0 <= lo < hi", file=sys.stderr)
        return EXIT_INVALID
    report = scan_range(args.lo, args.hi, node_budget=args.node_budget)
    text = report_to_json(report) if args.out.endswith(".json") else report_to_csv(report)
    with open(args.out, "w") as fh:
        fh.write(text)
    status = "partial (budget exhausted)" if report.truncated else "complete"
    print(f"scanned [{args.lo}, {args.hi}]: {len(report.records)} records, "
          f"max min_support {report.max_min_support}, {status} -> {args.out}")
    return EXIT_OK


def _random_prime(rng, bits):
    while True:
        candidate = rng.getrandbits(bits) | (1 << (bits - 1)) | 1
        if is_prime_ref(candidate):
            return candidate


def _bench_inputs(args):
    if args.set == "semiprimes":
        if args.bits < 4 or args.count < 1:
            return None
        rng = random.Random(args.seed)
        inputs = []
        while len(inputs) < args.count:
            p = _random_prime(rng, args.bits)
            q = _random_prime(rng, args.bits)
            if p != q:
                inputs.append(p * q)
        return inputs
    lo, hi = args.lo, args.hi
    if lo is None or hi is None or lo >= hi:
        return None
    inputs = []
    for n in range(lo | 1, hi + 1, 2):
        r = isqrt(n)
        if r * r != n and not is_prime_ref(n):
            inputs.append(n)
    return inputs


def cmd_bench(args):
    inputs = _bench_inputs(args)
    if not inputs:
        print("unsatisfiable benchmark parameters", file=sys.stderr)
        return EXIT_INVALID
    max_steps = args.max_steps if args.max_steps is not None else 10_000_000
    results = {name: {"times": [], "iters": [], "limited": 0, "factors": {}}
               for name in ("param", "trial", "rho")}
    for i, n in enumerate(inputs):
        t0 = time.perf_counter()
        try:
            outcome, _ = run_param(n, max_steps=max_steps, collect=False)
            results["param"]["iters"].append(outcome.steps)
            results["param"]["factors"][n] = outcome.p
        except StepLimitExceeded:
            results["param"]["limited"] += 1
        results["param"]["times"].append(time.perf_counter() - t0)

        t0 = time.perf_counter()
        res = trial_division(n, max_iterations=max_steps)
        results["trial"]["times"].append(time.perf_counter() - t0)
        results["trial"]["iters"].append(res.iterations)
        if res.failed:
            results["trial"]["limited"] += 1
        else:
            results["trial"]["factors"][n] = res.factor

        t0 = time.perf_counter()
        res = pollard_rho(n, seed=args.seed + i)
        results["rho"]["times"].append(time.perf_counter() - t0)
        results["rho"]["iters"].append(res.iterations)
        if res.failed:
            results["rho"]["limited"] += 1
        else:
            results["rho"]["factors"][n] = res.factor

    print(f"inputs: {len(inputs)}  (set={args.set}, seed={args.seed})")
    print(f"{'method':<8}{'median_ms':>12}{'median_iters':>14}{'done':>7}{'limited':>9}")
    for name in ("param", "trial", "rho"):
        r = results[name]
        med_ms = statistics.median(r["times"]) * 1000
        med_it = statistics.median(r["iters"]) if r["iters"] else 0
        done = len(r["factors"])
        print(f"{name:<8}{med_ms:>12.3f}{med_it:>14}{done:>7}{r['limited']:>9}")
    for n in inputs:
        found = {r["factors"][n] for r in results.values() if n in r["factors"]}
        for f in found:
            if f != 1 and n % f != 0:
                print(f"divisor check failed for {n}", file=sys.stderr)
                return EXIT_BASELINE_FAILED
    return EXIT_OK


def build_parser():
    parser = argparse.ArgumentParser(
        prog="stepfactor",
        description="Difference-expression integer factoring and baselines")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("factor", help="factor n or report it prime")
    p.add_argument("n")
    p.add_argument("--algorithm", choices=("param", "unit", "accel", "rho", "trial"),
                   default="param")
    p.add_argument("--max-steps", type=int, default=None)
    p.add_argument("--seed", type=int, default=1, help="seed for rho")
    p.set_defaults(func=cmd_factor)

    p = sub.add_parser("trace", help="emit the full iteration table")
    p.add_argument("n")
    p.add_argument("--algorithm", choices=("param", "unit", "accel"), default="param")
    p.add_argument("--format", choices=("tsv", "csv", "json"), default="tsv")
    p.add_argument("--max-steps", type=int, default=None)
    p.set_defaults(func=cmd_trace)

    p = sub.add_parser("isprime", help="primality verdict via the classifier")
    p.add_argument("n")
    p.add_argument("--verify", action="store_true",
                   help="cross-check against the reference primality test")
    p.set_defaults(func=cmd_isprime)

    p = sub.add_parser("avector", help="A-vector of the parameterized run")
    p.add_argument("n")
    p.add_argument("--min-support", action="store_true")
    p.add_argument("--max-steps", type=int, default=None)
    p.set_defaults(func=cmd_avector)

    p = sub.add_parser("scan", help="sparsity report over a range")
    p.add_argument("--lo", type=int, required=True)
    p.add_argument("--hi", type=int, required=True)
    p.add_argument("--out", default="report.csv")
    p.add_argument("--node-budget", type=int, default=2_000_000)
    p.set_defaults(func=cmd_scan)

    p = sub.add_parser("bench", help="compare param stepper, trial division, rho")
    p.add_argument("--set", choices=("semiprimes", "range"), default="semiprimes")
    p.add_argument("--bits", type=int, default=24, help="bits per prime factor")
    p.add_argument("--count", type=int, default=20)
    p.add_argument("--seed", type=int, default=1)
    p.add_argument("--lo", type=int, default=None)
    p.add_argument("--hi", type=int, default=None)
    p.add_argument("--max-steps", type=int, default=None)
    p.set_defaults(func=cmd_bench)

    return parser


def main(argv=None):
    try:
        args = build_parser().parse_args(argv)
    except SystemExit as exc:
        # argparse exits 2 on malformed input; keep that as our invalid code
        return exc.code if isinstance(exc.code, int) else EXIT_INVALID
    return args.func(args)


if __name__ == "__main__":
    sys.exit(main())
