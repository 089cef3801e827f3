"""Solvers for stable marriage with covering constraints."""

from ._core import (
    HrlqInstance,
    PreconditionError,
    SizeCapError,
    SmcInstance,
    ValidationError,
    blocking_pairs,
    enumerate_oracle,
    gale_shapley,
    generate,
    hrlq_approx,
    is_feasible,
    param_profile,
    parse,
    select_algorithm,
    serialize,
    smc_approx,
    solve,
    solve_delta2,
    solve_fpt,
    solve_guess_delete,
    solve_hrlq,
    verify_generated,
)

__all__ = [
    "HrlqInstance",
    "PreconditionError",
    "SizeCapError",
    "SmcInstance",
    "ValidationError",
    "blocking_pairs",
    "enumerate_oracle",
    "gale_shapley",
    "generate",
    "hrlq_approx",
    "is_feasible",
    "param_profile",
    "parse",
    "select_algorithm",
    "serialize",
    "smc_approx",
    "solve",
    "solve_delta2",
    "solve_fpt",
    "solve_guess_delete",
    "solve_hrlq",
    "verify_generated",
]
