"""Acceptance gate: every criterion at its stated tolerance.

Each test prints one pass/fail line; run with ``pytest -s`` to see them.
The expensive suites run once per session and are shared across criteria.
"""

import pytest

from rigidkit.suites import (
    run_invariance_suite,
    run_lq_small_suite,
    run_lq_tight_suite,
    run_oracle_suite,
    run_poly_tree_suite,
    run_roundtrip_suite,
)

SEED = 0


@pytest.fixture(scope="module")
def oracle_report():
    return run_oracle_suite(SEED)


@pytest.fixture(scope="module")
def lq_small_report():
    return run_lq_small_suite(SEED)


@pytest.fixture(scope="module")
def lq_tight_report():
    return run_lq_tight_suite(SEED)


@pytest.fixture(scope="module")
def poly_tree_report():
    return run_poly_tree_suite(SEED)


@pytest.fixture(scope="module")
def invariance_report():
    return run_invariance_suite(SEED)


@pytest.fixture(scope="module")
def roundtrip_report():
    return run_roundtrip_suite(SEED)


def _verdict(num, title, ok):
    print(f"criterion {num} ({title}): {'PASS' if ok else 'FAIL'}")
    return ok


def _checks(report, labels):
    picked = [c for c in report.checks if c.label in labels]
    assert len(picked) == len(labels), f"missing checks among {labels}"
    return all(c.passed for c in picked)


def test_criterion_1_oracle_equivalence(oracle_report):
    ok = oracle_report.passed and oracle_report.elapsed < 60.0
    for line in oracle_report.summary_lines():
        print(line)
    assert _verdict(1, "pebble game = brute force, 100% agreement, < 60 s", ok)


def test_criterion_2_small_complete_graphs(lq_small_report):
    labels = []
    for q in (1.5, 3.0, 5.0):
        labels += [
            f"K2 q={q} flexible 20/20",
            f"K3 q={q} flexible 20/20",
            f"K3 q={q} nullity 3",
            f"K4 q={q} rank 6 in >=99/100",
            f"K4 q={q} deletions drop to rank 5",
        ]
    ok = _checks(lq_small_report, labels)
    assert _verdict(2, "K2/K3 flexible, K4 minimally rigid for q in {1.5, 3, 5}", ok)


def test_criterion_3_tight_graphs_rigid(lq_tight_report):
    ok = _checks(lq_tight_report, [
        "50 tight graphs reach rank 2n-2",
        "50 sparse-not-tight graphs flexible",
        "20 count-violating graphs have dependent rows",
    ])
    for line in lq_tight_report.summary_lines():
        print(line)
    assert _verdict(3, "tight <=> rank 2n-2 at desk scale, q = 3", ok)


def test_criterion_4_tree_equivalence(poly_tree_report):
    ok = _checks(poly_tree_report, [
        "50 constructed frameworks minimally rigid with tree pair",
        "20 missing-tree placements flexible with verified witness",
    ])
    for line in poly_tree_report.summary_lines():
        print(line)
    assert _verdict(4, "minimal rigidity <=> disjoint spanning trees <=> tight", ok)


def test_criterion_5_unit_cell_reproduction(poly_tree_report):
    ok = _checks(poly_tree_report, [
        "skewed unit cell colours exact",
        "skewed unit cell rank 6",
    ])
    assert _verdict(5, "epsilon=0.1 unit cell: exact colours and rank 6", ok)


def test_criterion_6_flex_definition_consistency(lq_small_report, lq_tight_report, poly_tree_report):
    ok = (
        _checks(lq_small_report, ["flex finite-difference consistency",
                                  "translation deviations <= 1e-12"])
        and _checks(lq_tight_report, ["flex finite-difference consistency"])
        and _checks(poly_tree_report, ["polytopic flex deviations exact"])
    )
    assert _verdict(6, "finite-difference deviations (ratio < 1e-6; exact <= 1e-12)", ok)


def test_criterion_7_isometry_invariance(invariance_report):
    ok = invariance_report.passed
    for line in invariance_report.summary_lines():
        print(line)
    assert _verdict(7, "signed permutations / translations / change of basis", ok)


def test_criterion_8_round_trip_construction(roundtrip_report):
    ok = roundtrip_report.passed
    for line in roundtrip_report.summary_lines():
        print(line)
    assert _verdict(8, "reduction succeeds on tight, rejects non-tight, replays", ok)
