from concurrent.futures import ThreadPoolExecutor
from fractions import Fraction

import pytest

from app.core.errors import UsageError
from app.verify.checks import CheckReport
from app.verify.suite import NUMERIC_POINTS, SELECTORS, Ranges, combine, discriminant_pairs, run_checks


def test_default_discriminant_pairs():
    pairs = discriminant_pairs(Ranges())
    assert (3, 3) in pairs
    assert (1, 5) in pairs
    assert (4, 1) not in pairs
    assert len(pairs) == 10


def test_combine_keeps_first_failure():
    bad = CheckReport("a", {}, False, {"params": {"m": 2}, "lhs": "1", "rhs": "2"})
    merged = combine("family", {"m_max": 3}, [CheckReport("a", {}, True), bad])
    assert not merged.passed
    assert merged.counterexample["params"] == {"m": 2}
    assert merged.details["cases"] == 2


def test_unknown_selector():
    with pytest.raises(UsageError):
        run_checks(["initial", "bogus"])


def test_reports_are_sorted_by_name():
    reports = run_checks(["trace", "initial", "degree-identity"], Ranges(s_max=2, m_max=3))
    assert [r.name for r in reports] == ["degree-identity", "initial", "trace"]
    assert all(r.passed for r in reports)


def test_threaded_run_matches_serial():
    names = ["initial", "nonneg", "chebyshev", "self-reciprocal"]
    ranges = Ranges(s_max=3, m_max=4)
    with ThreadPoolExecutor(max_workers=4) as pool:
        threaded = run_checks(names, ranges, pool)
    serial = run_checks(names, ranges)
    assert [(r.name, r.passed, r.params) for r in threaded] == [(r.name, r.passed, r.params) for r in serial]


def test_every_selector_runs_on_small_ranges():
    reports = run_checks(SELECTORS, Ranges(s_max=2, m_max=3, disc_max=2))
    assert len(reports) == len(SELECTORS)
    failed = [r for r in reports if not r.passed]
    assert not failed, failed


def test_numeric_covers_reference_points():
    assert {1, Fraction(1, 2), 3} <= set(NUMERIC_POINTS)
    (report,) = run_checks(["numeric"], Ranges(s_max=2, m_max=3))
    assert report.passed
    assert report.details["cases"] == 2 * 4 * len(NUMERIC_POINTS)
