import pytest

from qhom.verify import RUNNERS, SUITES, run_suite, standard_pairs


@pytest.mark.parametrize("suite", SUITES)
@pytest.mark.parametrize("order", (3, 5))
def test_every_suite_passes_small(suite, order):
    (report,) = run_suite(suite, order, trials=5, seed=1)
    assert report.passed, "\n".join(report.lines())
    assert report.cases


def test_suites_are_deterministic():
    a = run_suite("newton", 3, trials=10, seed=9)[0].to_json()
    b = run_suite("newton", 3, trials=10, seed=9)[0].to_json()
    assert a == b


def test_case_ids_sorted():
    report = run_suite("tails", 3, trials=5, seed=0)[0]
    ids = [c.case_id for c in report.cases]
    assert ids == sorted(ids)


def test_all_runs_every_suite():
    reports = run_suite("all", 3, trials=2, seed=0)
    assert [r.suite for r in reports] == list(SUITES)


def test_unknown_suite_and_bad_order():
    with pytest.raises(KeyError):
        run_suite("nope", 3, 1, 0)
    with pytest.raises(ValueError):
        run_suite("qnumbers", 9, 1, 0)


def test_homotopy_notes_low_degree_behaviour():
    report = run_suite("homotopy", 3, trials=30, seed=7)[0]
    assert report.passed
    assert any("P_hat" in n for n in report.notes)


def test_registry_matches_names():
    assert set(RUNNERS) == set(SUITES)
    assert len(standard_pairs()) == 6
