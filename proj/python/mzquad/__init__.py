"""Marcinkiewicz-Zygmund constants of cubature rules."""

from ._core import (
    CubatureRule,
    DatasetMissing,
    Domain,
    Error,
    NoMzProperty,
    analyze,
    approx_bench,
    basis_dim,
    eval_basis,
    evaluate,
    gramian,
    hyperinterpolate,
    least_squares,
    load_rule,
    make_rule,
    reference_rule,
    report_json,
    scan,
    test_function,
    verify_ade,
)

__all__ = [
    "CubatureRule",
    "DatasetMissing",
    "Domain",
    "Error",
    "NoMzProperty",
    "analyze",
    "approx_bench",
    "basis_dim",
    "eval_basis",
    "evaluate",
    "gramian",
    "hyperinterpolate",
    "least_squares",
    "load_rule",
    "make_rule",
    "reference_rule",
    "report_json",
    "scan",
    "test_function",
    "verify_ade",
]
