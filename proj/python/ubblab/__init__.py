"""Python bindings for the ubb experiment library."""

from ._core import (
    ContractViolation,
    UnsupportedAlgorithm,
    apply_operator,
    count_consistent,
    get_consistent,
    operator_names,
    parse_n_list,
    raw_csv_header,
    run_experiment,
    run_unrestricted,
    solve_custom3,
    solve_generic,
    solve_target,
    summarize_csv,
    summary_csv_header,
    verify_operator,
)

__all__ = [
    "ContractViolation",
    "UnsupportedAlgorithm",
    "apply_operator",
    "count_consistent",
    "get_consistent",
    "operator_names",
    "parse_n_list",
    "raw_csv_header",
    "run_experiment",
    "run_unrestricted",
    "solve_custom3",
    "solve_generic",
    "solve_target",
    "summarize_csv",
    "summary_csv_header",
    "verify_operator",
]
