import dataclasses

import pytest

from backend.core import chartables as ct
from backend.core.cyclotomic import CyclotomicInt
from backend.services import verification
from backend.services.exceptions import InputError, InternalConsistencyError
from backend.services.formatting import render_results


def _only(checks, name):
    return [spec for spec in checks if spec.name == name]


def test_s4_example_check_passes():
    results = verification.run_checks(_only(verification.worked_example_checks(0), "s4_permutation_representation"), workers=1)

    assert len(results) == 1
    assert results[0].passed
    assert results[0].computed["group"] == "Z/4"


def test_corrupted_table_fails_with_its_anchor(monkeypatch):
    s4 = ct.build_symmetric_table(4)
    rows = [list(row) for row in s4.characters]
    rows[1][1] = CyclotomicInt.from_int(2)
    corrupted = dataclasses.replace(s4, characters=tuple(tuple(row) for row in rows))
    monkeypatch.setattr(verification, "table", lambda name: corrupted)

    results = verification.run_checks(_only(verification.worked_example_checks(0), "s4_permutation_representation"), workers=1)

    result = results[0]
    assert not result.passed
    assert result.asserted
    assert result.anchor == "S4 acting on four points"
    assert verification.suite_exit_code(results) in (1, 3)
    assert "s4_permutation_representation (S4 acting on four points)" in render_results(results)


def test_internal_errors_are_reported_separately():
    def broken():
        raise InternalConsistencyError("two computations disagree")

    spec = verification.CheckSpec("broken", "somewhere", broken)
    results = verification.run_checks([spec], workers=1)

    assert results[0].error == "two computations disagree"
    assert results[0].error_kind == "internal"
    assert verification.suite_exit_code(results) == 3


def test_exit_codes():
    passed = verification.VerificationResult("a", "x", 1, 1, True)
    reported = verification.VerificationResult("b", "x", 1, 2, False, asserted=False)
    failed = verification.VerificationResult("c", "x", 1, 2, False)

    assert verification.suite_exit_code([passed, reported]) == 0
    assert verification.suite_exit_code([passed, failed]) == 1


def test_results_are_sorted_by_name():
    specs = [
        verification.CheckSpec(name, "anchor", lambda: verification.Outcome(expected=1, computed=1))
        for name in ("zeta", "alpha", "mid")
    ]
    results = verification.run_checks(specs, workers=2)
    assert [r.name for r in results] == ["alpha", "mid", "zeta"]
    assert "3/3 checks passed" in render_results(results)


def test_unknown_suite_is_rejected():
    with pytest.raises(InputError):
        verification.run_suite("everything")


def test_suites_use_seed_for_randomized_checks():
    first = [spec.name for spec in verification.property_checks(1)]
    second = [spec.name for spec in verification.property_checks(2)]
    assert first == second
    assert len(first) == len(set(first))


def test_worked_example_names_are_unique():
    names = [spec.name for spec in verification.worked_example_checks(0)]
    assert len(names) == len(set(names))
    assert "ones_r1_ud_squared_n7" in names


@pytest.mark.parametrize(
    "name",
    [
        "d5_restriction_not_surjective",
        "z6_cayley_covering",
        "ones_unitriangular_y2_rank3",
        "closed_form_ud_r1_n4",
        "conjecture_r1_n4_k2",
    ],
)
def test_selected_worked_example_checks_pass(name):
    results = verification.run_checks(_only(verification.worked_example_checks(0), name), workers=1)
    assert len(results) == 1
    assert results[0].passed, results[0].to_dict()


def test_seed_comes_from_environment(monkeypatch):
    monkeypatch.setenv("CRITGROUP_SEED", "17")
    assert verification.default_seed() == 17
    monkeypatch.setenv("CRITGROUP_VERIFY_WORKERS", "0")
    assert verification.verify_workers() == 1


def test_results_frame_of_empty_run():
    frame = verification.results_frame([])
    assert frame.empty
    assert "passed" in frame.columns


def test_conjecture_grid_for_symmetric_groups():
    frame = verification.conjecture_grid(1, 3, workers=2)
    assert len(frame) == 10
    assert list(frame[["r", "n", "k"]].iloc[0]) == [1, 0, 0]
    assert frame["match"].all()


@pytest.mark.parametrize(
    "name",
    [
        "commutation_r3_n7",
        "commutation_r2_n0",
        "kernel_of_down_r2_n3",
        "kernel_of_down_r3_n4",
        "word_paths_r2_n4",
        "minors_gcd_prefix_products",
    ],
)
def test_selected_property_checks_pass(name):
    results = verification.run_checks(_only(verification.property_checks(0), name), workers=1)
    assert len(results) == 1
    assert results[0].passed, results[0].to_dict()


def test_commutation_reports_the_zero_map_as_a_failure(monkeypatch):
    def zero_up(r, n):
        return verification.IntMatrix.zeros(verification.rank_size(r, n + 1), verification.rank_size(r, n))

    monkeypatch.setattr(verification, "up_matrix", zero_up)
    result = verification.run_checks([verification.CheckSpec("c", "a", verification._commutation(2, 2))], workers=1)[0]
    assert not result.passed
    assert result.computed["diagonal"] == [0]
