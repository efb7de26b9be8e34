"""Personalised reference-free evaluation pipeline (Python surface).

The heavy lifting lives in the C++ core; this package re-exports the bound
operations. See the repository README for the config schema used by run().
"""

from pref._core import (
    accuracy,
    kendall_tau,
    load_prefeval,
    mse,
    ndcg,
    parse_structured,
    pearson_r,
    run,
    spearman_rho,
    split_ids,
    validate_instance,
)

__all__ = [
    "accuracy",
    "kendall_tau",
    "load_prefeval",
    "mse",
    "ndcg",
    "parse_structured",
    "pearson_r",
    "run",
    "spearman_rho",
    "split_ids",
    "validate_instance",
]
