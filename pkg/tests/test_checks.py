"""Smoke coverage for the corpus audit machinery on small corpora.

The acceptance suite runs the full corpora; here the point is that the
runner itself is stable, reports sizes sensibly, and classifies soft
observations as findings rather than failures.
"""

from adlvkit import checks


def test_audit_a1_small():
    report = checks.audit_datum_string("A1:adj", 4, seeds=(0, 1, 2))
    assert report.passed
    assert report.corpus_size == 9
    assert report.geo_cox_count == 9
    assert set(report.results) == set(checks.CHECK_NAMES)
    assert all(r.checked > 0 for r in report.results.values())


def test_audit_c2_adjoint_small():
    report = checks.audit_datum_string("C2:adj", 4, seeds=(0, 1))
    assert report.passed


def test_audit_gl_small():
    report = checks.audit_datum_string("A1:gl", 3, seeds=(0, 1))
    assert report.passed
    # the normalized corpus sees both Kottwitz cosets
    assert report.corpus_size > 4


def test_audit_twisted_small():
    report = checks.audit_datum_string("2A3:sc", 3, seeds=(0, 1))
    assert report.passed


def test_lines_format():
    report = checks.audit_datum_string("A1:adj", 2, seeds=(0,))
    lines = report.lines()
    assert len(lines) == len(checks.CHECK_NAMES)
    assert all(line.startswith(("PASS", "FAIL")) for line in lines)
