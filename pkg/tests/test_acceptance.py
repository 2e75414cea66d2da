"""Acceptance suite: one test per criterion, one printed line per criterion.

Criteria 2 through 8 run over the fixed corpora (length 8 for the rank-2
data, length 6 for the rank-3 data) with ten strategy seeds, entirely
through the audit runner; each criterion then asserts its slice of the
results at zero tolerance. Criterion 1 replays the named witnesses
exactly and enforces the per-element runtime budget.

Run with ``pytest tests/test_acceptance.py -s`` to see the status lines.
"""

import time

import pytest

from adlvkit import affine_weyl as aw
from adlvkit import checks
from adlvkit import classifier as cl
from adlvkit.root_datum import build_root_datum

SEEDS = tuple(range(10))

CORPORA = (
    ("A1:adj", 8),
    ("A2:adj", 8),
    ("C2:sc", 8),
    ("G2:sc", 8),
    ("A3:gl", 6),
    ("2A3:sc", 6),
)


@pytest.fixture(scope="module")
def audits():
    out = {}
    total = 0.0
    for datum_string, max_length in CORPORA:
        report = checks.audit_datum_string(datum_string, max_length, seeds=SEEDS)
        out[datum_string] = report
        total += report.elapsed
    out["_total_elapsed"] = total
    return out


def _criterion(number, description, violations):
    status = "PASS" if not violations else "FAIL"
    print(f"ACCEPTANCE {number}: {status} - {description}")
    for v in violations[:10]:
        print(f"    {v}")
    assert not violations, f"criterion {number} failed with {len(violations)} violations"


def _collect(audits, *suite_names):
    out = []
    for datum_string, _ in CORPORA:
        report = audits[datum_string]
        for name in suite_names:
            for v in report.results[name].violations:
                out.append({"datum": datum_string, "suite": name, **v})
    return out


def test_criterion_1_paper_examples():
    cases = [
        ("A5:gl", "s4 tau3", (1, 4), 3, "s4"),
        ("C2:sc", "s1 tau2", (1,), 2, "s1"),
        ("2A4:sc", "s1 tau1", (0, 1), 1, "s1"),
    ]
    violations = []
    for datum_string, text, K, tau_k, c_text in cases:
        datum = build_root_datum(datum_string)
        w = aw.parse_element(datum, text)
        start = time.monotonic()
        witness = cl.is_minimal_coxeter_type(w)
        elapsed = time.monotonic() - start
        expected_x = aw.omega_element(datum, tau_k)
        expected_c = aw.parse_element(datum, c_text)
        if witness is None:
            violations.append(f"{datum_string} {text}: no witness")
            continue
        if witness.K != tuple(sorted(K)):
            violations.append(f"{datum_string} {text}: K = {witness.K}")
        if witness.x != expected_x:
            violations.append(f"{datum_string} {text}: wrong straight part")
        if witness.c != expected_c:
            violations.append(f"{datum_string} {text}: wrong Coxeter part")
        if elapsed >= 1.0:
            violations.append(f"{datum_string} {text}: took {elapsed:.2f}s")
    # every length-zero element is witnessed by (empty K, itself, identity)
    for datum_string, k in (("A5:gl", 3), ("C2:sc", 2), ("2A4:sc", 1), ("A1:gl", 1)):
        datum = build_root_datum(datum_string)
        tau = aw.omega_element(datum, k)
        start = time.monotonic()
        witness = cl.is_minimal_coxeter_type(tau)
        elapsed = time.monotonic() - start
        if witness is None or witness.K != () or witness.x != tau or not witness.c.is_identity():
            violations.append(f"{datum_string} tau{k}: wrong witness")
        if elapsed >= 1.0:
            violations.append(f"{datum_string} tau{k}: took {elapsed:.2f}s")
    _criterion(1, "named witnesses reproduce exactly, under one second each", violations)


def test_criterion_2_type_counts_match_formulas(audits):
    violations = _collect(audits, "formula_type_counts")
    total = sum(audits[d].elapsed for d, _ in CORPORA)
    _criterion(
        2,
        f"every path's (type I, type II) counts equal the closed formulas "
        f"(corpus walk {total:.0f}s)",
        violations,
    )


def test_criterion_3_dimension_consistency(audits):
    _criterion(
        3,
        "dimension formula equals the tree-derived maximum on every class",
        _collect(audits, "dimension_consistency", "purity_equalities"),
    )


def test_criterion_4_saturation(audits):
    _criterion(
        4,
        "endpoint classes fill the whole interval between their extrema",
        _collect(audits, "saturation"),
    )


def test_criterion_5_reflection_additivity(audits):
    _criterion(
        5,
        "reflection lengths add along every witness decomposition",
        _collect(audits, "reflection_additivity"),
    )


def test_criterion_6_inequality_and_equality_case(audits):
    _criterion(
        6,
        "length bound slack is nonnegative and vanishes exactly on witnessed classes",
        _collect(audits, "mct_slack"),
    )


def test_criterion_7_structural_conservation(audits):
    _criterion(
        7,
        "per-path conservation, replayable certificates, seed-stable multisets",
        _collect(
            audits,
            "conservation",
            "endpoint_certificates",
            "seed_invariance",
            "contains_own_class",
            "min_class_is_own",
            "helper_replay",
        ),
    )


def test_criterion_8_integrality_tripwires(audits):
    violations = _collect(
        audits, "integrality", "rankedness", "defect_witness_independence"
    )
    _criterion(
        8,
        "chain lengths, gaps, dimensions and type-II counts are integers throughout",
        violations,
    )


def test_corpus_accounting(audits):
    sizes = {d: audits[d].corpus_size for d, _ in CORPORA}
    geo = {d: audits[d].geo_cox_count for d, _ in CORPORA}
    total = audits["_total_elapsed"]
    print(
        "corpus sizes "
        + ", ".join(f"{d}:{n}" for d, n in sizes.items())
        + f"; geometric Coxeter type {sum(geo.values())} of {sum(sizes.values())}"
        + f"; total audit time {total:.0f}s"
    )
    assert all(n > 0 for n in sizes.values())
    for d, _ in CORPORA:
        assert audits[d].results["datum_invariants"].passed
        assert audits[d].results["length_properties"].passed
        assert audits[d].results["class_invariance"].passed
        assert audits[d].results["straight_implies_minlen"].passed
