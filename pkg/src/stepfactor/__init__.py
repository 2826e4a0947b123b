"""Difference-expression integer factoring: steppers, closed form, sparsity."""

from .baselines import BaselineResult, Method, is_prime_ref, pollard_rho, trial_division
from .closedform import AVector, derive_avector, eval_closed_form, verify_avector
from .natarith import delta0, isqrt, start_point
from .sparsity import (SparsityRecord, SparsityReport, min_support_search,
                       scan_range)
from .steppers import (FactorOutcome, Kind, ParamTraceRow, StepLimitExceeded,
                       UnitTraceRow, classify, run_accelerated, run_param,
                       run_unit)

__all__ = [
    "AVector", "BaselineResult", "FactorOutcome", "Kind", "Method",
    "ParamTraceRow", "SparsityRecord", "SparsityReport", "StepLimitExceeded",
    "UnitTraceRow", "classify", "delta0", "derive_avector", "eval_closed_form",
    "is_prime_ref", "isqrt", "min_support_search", "pollard_rho",
    "run_accelerated", "run_param", "run_unit", "scan_range", "start_point",
    "trial_division", "verify_avector",
]

__version__ = "0.1.0"
