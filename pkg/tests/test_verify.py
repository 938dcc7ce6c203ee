from __future__ import annotations

import json

import pytest

from grasschar.verify import GROUP_CRITERION, Check, VerifyReport, citation_for, citations, run_checks


@pytest.fixture(scope="module")
def report() -> VerifyReport:
    return run_checks()


def test_every_check_is_cited(report):
    assert report.checks
    for c in report.checks:
        assert c.citation and c.citation == citation_for(c.id)
        assert c.citation in citations().values()


def test_ids_are_unique_and_grouped(report):
    ids = [c.id for c in report.checks]
    assert len(ids) == len(set(ids))
    for c in report.checks:
        assert GROUP_CRITERION[c.id.split(".", 1)[0]] == c.criterion


def test_every_criterion_has_checks(report):
    assert {c.criterion for c in report.checks} == set(range(1, 11))


def test_summary_tallies(report):
    s = report.summary
    assert s["pass"] + s["fail"] + s["skipped"] == s["total"] == len(report.checks)
    assert report.ok == (s["fail"] == 0)
    assert all(c.status == "fail" for c in report.failures())
    assert report.render_table().splitlines()[-1] == (
        f"{s['total']} checks: {s['pass']} passed, {s['fail']} failed, {s['skipped']} skipped"
    )


def test_passing_checks_show_matching_values(report):
    for c in report.checks:
        assert c.status in ("pass", "fail", "skipped")
        if c.status == "skipped":
            assert c.computed == "not computed" and c.note


def test_filter_and_criterion(report):
    vol = run_checks(pattern=r"^volumes\.")
    assert vol.checks and all(c.id.startswith("volumes.") for c in vol.checks)
    assert vol.ok
    crit = run_checks(criterion=9)
    assert crit.checks and all(c.criterion == 9 for c in crit.checks)
    assert [c.id for c in crit.checks] == [c.id for c in report.checks if c.criterion == 9]
    assert run_checks(pattern="no-such-check").checks == []


def test_json_round_trip(report):
    doc = json.loads(report.to_json())
    assert doc["summary"] == report.summary
    assert [Check(**c) for c in doc["checks"]] == report.checks


def test_unknown_citation_prefix():
    with pytest.raises(KeyError):
        citation_for("nonsense.id")
