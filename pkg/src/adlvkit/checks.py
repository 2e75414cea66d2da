"""Invariant suites over enumerated element corpora.

A corpus is every element up to a length bound (normalized modulo
central translations when the lattice has any). The suites replay the
closed formulas against brute-force tree enumeration, certify tree
structure, and probe the poset and conjugation invariants. Each check
returns its violations instead of raising, so a run reports everything
at once; integrality assertions inside the library still raise, and the
runner records those as violations of the integrality suite.

Soft observations (seed-to-seed variation of per-class edge-count
multisets on elements without strong multiplicity one) are collected as
findings, never as failures.
"""

from __future__ import annotations

import time
from dataclasses import dataclass, field

from . import bg_poset, classifier, conjugacy
from .affine_weyl import (
    format_element,
    identity,
    length,
    multiply,
    omega_element,
    sigma_act,
)
from .conjugacy import class_invariant, is_min_len, is_straight
from .errors import AdlvkitError, InternalInvariantError, UsageError
from .linalg import dot, mat_vec
from .reduction_tree import build_tree, path_summary, summary_classes, verify_edge

CHECK_NAMES = (
    "datum_invariants",
    "length_properties",
    "class_invariance",
    "straight_implies_minlen",
    "conservation",
    "endpoint_certificates",
    "seed_invariance",
    "contains_own_class",
    "formula_type_counts",
    "dimension_consistency",
    "saturation",
    "purity_equalities",
    "helper_replay",
    "min_class_is_own",
    "reflection_additivity",
    "mct_slack",
    "rankedness",
    "defect_witness_independence",
    "integrality",
)


@dataclass
class SuiteResult:
    name: str
    violations: list = field(default_factory=list)
    findings: list = field(default_factory=list)
    checked: int = 0

    @property
    def passed(self):
        return not self.violations


@dataclass
class AuditReport:
    datum_string: str
    max_length: int
    seeds: tuple
    results: dict
    corpus_size: int = 0
    elapsed: float = 0.0
    geo_cox_count: int = 0

    @property
    def passed(self):
        return all(r.passed for r in self.results.values())

    def lines(self):
        out = []
        for name in CHECK_NAMES:
            r = self.results[name]
            status = "PASS" if r.passed else "FAIL"
            extra = f" ({len(r.violations)} violations)" if r.violations else ""
            note = f" [{len(r.findings)} findings]" if r.findings else ""
            out.append(f"{status} {name}: {r.checked} checks{extra}{note}")
        return out


def corpus(datum, max_length, budget=bg_poset.DEFAULT_ENUM_BUDGET):
    """Every element of length <= max_length, deterministically ordered.

    Lattices with a central line are enumerated modulo central
    translations, which is the only way the corpus is finite there.
    """
    elements = list(
        bg_poset.iter_elements(
            datum,
            max_length,
            normalize_central=bool(datum.central_rank),
            budget=budget,
        )
    )
    elements.sort(key=lambda x: (length(x), format_element(x)))
    return elements


def audit(
    datum,
    max_length,
    seeds=classifier.DEFAULT_SEEDS,
    bfs_cap=conjugacy.DEFAULT_BFS_CAP,
    enum_budget=bg_poset.DEFAULT_ENUM_BUDGET,
    progress=None,
) -> AuditReport:
    """Run every suite over the corpus; never raises for check failures."""
    start_time = time.monotonic()
    results = {name: SuiteResult(name) for name in CHECK_NAMES}

    def fail(name, element, detail):
        results[name].violations.append(
            {"element": element, "detail": detail}
        )

    def bump(name, k=1):
        results[name].checked += k

    _audit_datum(datum, results, fail, bump)

    elements = corpus(datum, max_length, budget=enum_budget)
    geo_count = 0
    for pos, w in enumerate(elements):
        if progress is not None:
            progress(pos, len(elements), w)
        try:
            geo_count += _audit_element(w, seeds, bfs_cap, results, fail, bump)
        except InternalInvariantError as exc:
            fail("integrality", format_element(w), str(exc))
        except AdlvkitError as exc:
            fail("integrality", format_element(w), f"{type(exc).__name__}: {exc}")
    bump("integrality", len(elements))

    _audit_length_properties(datum, elements, results, fail, bump)
    _audit_rankedness(datum, max_length, fail, bump)
    _audit_defect_independence(datum, max_length, enum_budget, fail, bump)

    return AuditReport(
        datum_string=datum.spec.datum_string(),
        max_length=max_length,
        seeds=tuple(seeds),
        results=results,
        corpus_size=len(elements),
        elapsed=time.monotonic() - start_time,
        geo_cox_count=geo_count,
    )


# -- per-datum checks ----------------------------------------------------------


def _audit_datum(datum, results, fail, bump):
    name = "datum_invariants"
    tag = datum.spec.datum_string()
    for i, coroot in enumerate(datum.simple_coroots):
        if dot(coroot, datum.simple_roots[i]) != 2:
            fail(name, tag, f"Cartan diagonal at {i + 1} is not 2")
        if dot(coroot, datum.rho) != 1:
            fail(name, tag, f"rho does not pair to 1 with coroot {i + 1}")
        bump(name, 2)
    # pairing invariance under every generator, over all roots
    from .linalg import vec_mat

    for g in datum.weyl_generators:
        ginv = datum.weyl_inverse(g)
        for alpha, coroot in datum.root_coroot.items():
            if dot(mat_vec(g, coroot), vec_mat(alpha, ginv)) != dot(coroot, alpha):
                fail(name, tag, "generator breaks the pairing")
            bump(name)
    # twist behaviour
    delta = datum.delta
    for alpha, coroot in datum.root_coroot.items():
        if dot(mat_vec(delta, coroot), vec_mat(alpha, datum.delta_inv)) != dot(coroot, alpha):
            fail(name, tag, "twist breaks the pairing")
        bump(name)
    for i in range(datum.rank):
        img = mat_vec(delta, datum.simple_coroots[i])
        if img != datum.simple_coroots[datum.delta_diagram[i + 1] - 1]:
            fail(name, tag, f"twist does not permute coroot {i + 1} correctly")
        bump(name)
    dom = tuple(datum.fundamental_coweights[0])
    if not datum.is_dominant(mat_vec(delta, dom)):
        fail(name, tag, "twist does not preserve dominance")
    bump(name)
    # positive root count equals the length of the longest element
    w0_len = max(len(datum.weyl_word(z)) for z in datum.weyl_elements())
    if w0_len != len(datum.positive_roots):
        fail(name, tag, "positive root count differs from len(w0)")
    bump(name)
    if not datum.is_dominant(datum.theta_coroot):
        fail(name, tag, "highest coroot is not dominant")
    bump(name)


def _audit_length_properties(datum, elements, results, fail, bump):
    name = "length_properties"
    tag = datum.spec.datum_string()
    sample = elements[:: max(1, len(elements) // 40)]
    taus = [identity(datum)]
    for k in range(1, datum.rank + 1):
        try:
            taus.append(omega_element(datum, k))
        except UsageError:
            pass
    for x in sample:
        sx = sigma_act(x)
        if length(sx) != length(x):
            fail(name, format_element(x), "twist changed the length")
        bump(name)
        for y in sample[:8]:
            if length(multiply(x, y)) > length(x) + length(y):
                fail(name, format_element(x), "length is superadditive")
            if sigma_act(multiply(x, y)) != multiply(sx, sigma_act(y)):
                fail(name, format_element(x), "twist is not a homomorphism")
            bump(name, 2)
        for tau in taus:
            if length(multiply(tau, multiply(x, tau.inverse()))) != length(x):
                fail(name, format_element(x), "length-zero conjugation moved length")
            bump(name)
    for root in (datum.theta, datum.simple_roots[0]):
        for level in (-2, -1, 0, 1, 2):
            from .affine_weyl import affine_reflection

            refl = affine_reflection(datum, (level, root))
            if not multiply(refl, refl).is_identity():
                fail(name, tag, f"affine reflection ({level}) is not an involution")
            bump(name)


def _audit_rankedness(datum, max_length, fail, bump):
    name = "rankedness"
    try:
        records = bg_poset.enumerate_straight(
            datum, min(max_length, 4), kottwitz=None
        )
    except UsageError:
        trivial = class_invariant(identity(datum))
        records = bg_poset.enumerate_straight(datum, min(max_length, 4), kottwitz=trivial)
    classes = [r.invariant for r in records]
    for a in classes:
        for b in classes:
            if not bg_poset.leq(a, b):
                continue
            for c in classes:
                if bg_poset.leq(b, c):
                    lhs = bg_poset.chain_length(a, c)
                    rhs = bg_poset.chain_length(a, b) + bg_poset.chain_length(b, c)
                    if lhs != rhs:
                        fail(name, repr((a, b, c)), f"chain lengths {lhs} != {rhs}")
                    gap = bg_poset.essential_gap(a, b)
                    if gap + bg_poset.defect(a) - bg_poset.defect(b) != bg_poset.chain_length(a, b):
                        fail(name, repr((a, b)), "gap/defect identity broken")
                    bump(name, 2)


def _audit_defect_independence(datum, max_length, budget, fail, bump):
    name = "defect_witness_independence"
    bound = min(max_length, 4)
    per_class = {}
    try:
        elements = bg_poset.iter_elements(
            datum, bound, normalize_central=bool(datum.central_rank), budget=budget
        )
        for x in elements:
            if is_straight(x):
                per_class.setdefault(class_invariant(x), []).append(x)
    except UsageError:
        return
    for cls, witnesses in per_class.items():
        values = {
            conjugacy.reflection_length(datum, x.finite, datum.delta)
            for x in witnesses
        }
        if len(values) != 1:
            fail(name, repr(cls), f"witness defects disagree: {sorted(values)}")
        if max(values) > datum.rank:
            fail(name, repr(cls), "defect exceeds the rank")
        bump(name, len(witnesses))


# -- per-element checks ----------------------------------------------------------


def _audit_element(w, seeds, bfs_cap, results, fail, bump) -> int:
    """Run the tree, class and formula suites on one element.

    Returns 1 when the element has geometric Coxeter type.
    """
    datum = w.datum
    text = format_element(w)
    base_len = length(w)

    members = conjugacy.shift_class(w, cap=bfs_cap)
    inv = class_invariant(w)
    for member in members:
        if class_invariant(member) != inv:
            fail("class_invariance", text, f"invariant moved at {format_element(member)}")
    bump("class_invariance", len(members))

    if is_straight(w):
        if not is_min_len(w, cap=bfs_cap).is_min_len:
            fail("straight_implies_minlen", text, "straight but not minimal")
        bump("straight_implies_minlen")

    summaries = {}
    for seed in seeds:
        tree = build_tree(w, seed=seed, cap=bfs_cap)
        summary = path_summary(tree)
        summaries[seed] = summary
        for (cls, c1, c2, lend), mult in summary.items():
            if base_len != lend + c1 + 2 * c2:
                fail("conservation", text, f"seed {seed}: {base_len} != {lend}+{c1}+2*{c2}")
            bump("conservation", mult)
        for endpoint in tree.endpoints():
            if not is_min_len(endpoint, cap=bfs_cap).is_min_len:
                fail("endpoint_certificates", text, f"endpoint {format_element(endpoint)} not minimal")
            bump("endpoint_certificates")
        for edge in tree.edges:
            if not verify_edge(edge):
                fail("endpoint_certificates", text, "edge witness replay failed")
            bump("endpoint_certificates")

    first = summaries[seeds[0]]
    key_set = summary_classes(first)
    if inv not in key_set:
        fail("contains_own_class", text, "own class missing from endpoint classes")
    bump("contains_own_class")

    smo = all(
        sum(
            mult
            for (cls2, _a, _b, _l), mult in summary.items()
            if cls2 == cls
        ) == 1
        for summary in summaries.values()
        for cls in summary_classes(summary)
    )
    for seed, summary in summaries.items():
        if summary_classes(summary) != key_set:
            fail("seed_invariance", text, f"seed {seed} changed the endpoint class set")
        if smo:
            if summary != first:
                fail("seed_invariance", text, f"seed {seed} changed the path multiset")
        else:
            if summary != first:
                results["seed_invariance"].findings.append(
                    {
                        "element": text,
                        "detail": f"per-class count multiset varies between seeds {seeds[0]} and {seed}",
                    }
                )
        bump("seed_invariance")

    geo = classifier.is_geometric_coxeter_type(w, seeds=seeds, cap=bfs_cap)
    if geo.smo != smo:
        fail("seed_invariance", text, "smo flag disagrees with raw multiplicity count")

    # slack of the characterizing inequality, and its equality case: zero
    # slack needs the element itself minimal and a witness on its class
    mct = classifier.mct_inequality(w, cap=bfs_cap)
    minimal_rep, _moves = conjugacy.descend_to_min_len(w, cap=bfs_cap)
    witness = classifier.is_minimal_coxeter_type(minimal_rep, cap=bfs_cap)
    w_minimal = is_min_len(w, cap=bfs_cap).is_min_len
    if mct["equality"] != (w_minimal and witness is not None):
        fail(
            "mct_slack",
            text,
            f"slack {mct['slack']}, min-len {w_minimal}, "
            f"witness {'exists' if witness else 'missing'}",
        )
    bump("mct_slack")

    if witness is not None:
        _check_witness_additivity(datum, witness, text, fail, bump)
    for endpoint_witness in geo.endpoint_witnesses.values():
        if endpoint_witness is not None:
            _check_witness_additivity(datum, endpoint_witness, text, fail, bump)

    if not geo.is_geo_cox:
        return 0

    # closed formulas against every path of every seed's tree
    classes = sorted(key_set, key=lambda c: c.sort_key())
    c_min, c_max = bg_poset.extrema(classes)
    if c_min != inv:
        fail("min_class_is_own", text, f"minimum {c_min} is not the element's class")
    bump("min_class_is_own")

    for cls in classes:
        ell1 = classifier.ell1_formula(datum, c_min, cls)
        ell2 = classifier.ell2_formula(w, cls, c_max)
        dim = classifier.dim_formula(w, cls)
        best = None
        for seed, summary in summaries.items():
            for (cls2, c1, c2, lend), mult in summary.items():
                if cls2 != cls:
                    continue
                if (c1, c2) != (ell1, ell2):
                    fail(
                        "formula_type_counts",
                        text,
                        f"seed {seed} class {cls}: path ({c1},{c2}) != formulas ({ell1},{ell2})",
                    )
                bump("formula_type_counts", mult)
                candidate = c1 + c2 + (lend - cls.pairing_two_rho)
                best = candidate if best is None else max(best, candidate)
        if best != dim:
            fail("dimension_consistency", text, f"class {cls}: formula {dim} vs tree {best}")
        bump("dimension_consistency")
        gap = bg_poset.essential_gap(cls, c_max)
        if dim - classifier.dim_formula(w, c_max) != gap:
            fail("purity_equalities", text, f"class {cls}: dimension jump is not the gap")
        bump("purity_equalities")

    between = bg_poset.interval(c_min, c_max)
    if set(between) != set(classes):
        fail(
            "saturation",
            text,
            f"interval has {len(between)} classes, endpoints give {len(classes)}",
        )
    bump("saturation")

    purity = classifier.purity_report(w, seed=seeds[0], seeds=seeds, cap=bfs_cap)
    for check in purity["helper_checks"]:
        for key in ("min_follows_type_II", "max_follows_type_I", "i_set_difference_is_one_orbit"):
            if not check.get(key, False):
                fail("helper_replay", text, f"{key} failed at node {check['node']}")
            bump("helper_replay")
    return 1


def _check_witness_additivity(datum, witness, text, fail, bump):
    """Reflection lengths add along the witness decomposition.

    Also pins the relative term to the orbit count of the transported
    twist, which is what makes the Coxeter condition quantitative.
    """
    total = classifier.classical_reflection_length(
        multiply(witness.c, witness.x)
    )
    base = classifier.classical_reflection_length(witness.x)
    from .linalg import mat_mul

    twist = mat_mul(witness.x.finite, datum.delta)
    relative = conjugacy.relative_reflection_length(datum, witness.c.finite, twist)
    if total != base + relative:
        fail("reflection_additivity", text, f"{total} != {base} + {relative}")
    perm = classifier.twist_permutation(witness.x, witness.K)
    orbit_count = len(classifier._orbits(perm)) if perm is not None else 0
    if relative != orbit_count:
        fail(
            "reflection_additivity",
            text,
            f"relative length {relative} != orbit count {orbit_count}",
        )
    bump("reflection_additivity", 2)


# -- convenience entry point -------------------------------------------------------


def audit_datum_string(datum_string, max_length, seeds=classifier.DEFAULT_SEEDS, **kw):
    from .root_datum import build_root_datum

    return audit(build_root_datum(datum_string), max_length, seeds=seeds, **kw)
