import pytest

import ubblab


def test_solvers_return_query_counts():
    assert ubblab.solve_generic(50, k=3, mode="pure", seed=3) > 0
    assert ubblab.solve_generic(50, k=4, mode="hack", seed=3) == ubblab.solve_generic(50, k=4, mode="hack", seed=3)
    assert ubblab.solve_custom3(30, seed=2) > 0
    assert ubblab.solve_target("1011001110", algo="custom3") > 0
    assert ubblab.run_unrestricted(8, "pure", seed=4) >= 1


def test_consistency_queries():
    assert ubblab.count_consistent(2, []) == 4
    assert ubblab.count_consistent(3, [("000", 1), ("111", 2)]) == 3
    assert ubblab.get_consistent(2, [("00", 1), ("01", 2)]) == "01"
    with pytest.raises(ubblab.ContractViolation):
        ubblab.get_consistent(2, [("00", 1)])


def test_operators():
    assert "Xor3" in ubblab.operator_names()
    assert ubblab.apply_operator("Xor3", ["0011", "0101", "0110"]) == "0000"
    passed, report = ubblab.verify_operator("Xor3", trials=1000)
    assert passed and "Xor3" in report


def test_experiment_and_csv():
    out = ubblab.run_experiment([("generic", 3, "hack"), ("custom3", 3, "-")], [20, 30], runs=2, master_seed=7, jobs=2)
    assert len(out["records"]) == 8
    assert out["failures"] == []
    assert out["csv"].splitlines()[0] == ubblab.raw_csv_header
    summary = ubblab.summarize_csv(out["csv"]).splitlines()
    assert summary[0] == ubblab.summary_csv_header
    assert len(summary) == 5
    again = ubblab.run_experiment([("generic", 3, "hack"), ("custom3", 3, "-")], [20, 30], runs=2, master_seed=7, jobs=1)
    assert again["csv"] == out["csv"]


def test_unsupported_cells_are_reported():
    out = ubblab.run_experiment([("binary", 2, "-")], [10], runs=1)
    assert out["records"] == []
    assert len(out["failures"]) == 1
    assert ubblab.parse_n_list("2:2:6") == [2, 4, 6]
