"""The ranked poset of twisted conjugacy classes, and straight enumeration.

Classes are keyed by (dominant Newton point, Kottwitz point). The order
compares equal Kottwitz points and asks the Newton difference to be a
nonnegative rational combination of simple coroots. Chain lengths come
from the closed formula

    len([b1],[b2]) = <nu2 - nu1, rho> + def(b1)/2 - def(b2)/2

whose integrality is asserted rather than assumed: the poset is ranked,
so a non-integer value means a broken convention, not bad input.

The defect of a class is the twisted reflection length of the classical
part of any straight element in the class; witnesses are found by
exhaustive enumeration of straight elements (every class here has one of
length exactly <nu, 2 rho>) and the independence of the witness choice is
a tested invariant.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction

from .affine_weyl import AffineElement, length
from .conjugacy import (
    ClassInvariant,
    class_invariant,
    is_straight,
    reflection_length,
)
from .errors import (
    CapExceededError,
    DatumMismatchError,
    InternalInvariantError,
    NotComparableError,
    NoUniqueExtremumError,
    UsageError,
)
from .linalg import dot, mat_inv, mat_vec, solve, vec_sub

DEFAULT_ENUM_BUDGET = 10**7


def _check_same_datum(c1, c2):
    if c1.datum is not c2.datum:
        raise DatumMismatchError("class invariants from different root data")


def leq(c1: ClassInvariant, c2: ClassInvariant) -> bool:
    """Partial order: equal Kottwitz points and dominance of Newton points."""
    _check_same_datum(c1, c2)
    if c1.kottwitz != c2.kottwitz:
        return False
    datum = c1.datum
    diff = vec_sub(c2.newton, c1.newton)
    cols = tuple(
        tuple(Fraction(datum.simple_coroots[j][i]) for j in range(datum.rank))
        for i in range(datum.n)
    )
    coeffs = solve(cols, diff)
    if coeffs is None:
        return False
    return all(c >= 0 for c in coeffs)


def _half_defect_term(c1, c2):
    return Fraction(defect(c1) - defect(c2), 2)


def chain_length(c1: ClassInvariant, c2: ClassInvariant) -> int:
    """Common length of maximal chains from c1 up to c2."""
    if not leq(c1, c2):
        raise NotComparableError(f"{c1} is not below {c2}")
    value = dot(vec_sub(c2.newton, c1.newton), c1.datum.rho) + _half_defect_term(c1, c2)
    if value.denominator != 1 or value < 0:
        raise InternalInvariantError(f"chain length {value} is not a nonnegative integer")
    return int(value)


def essential_gap(c1: ClassInvariant, c2: ClassInvariant) -> int:
    """Chain length corrected by defects: controls dimension jumps."""
    if not leq(c1, c2):
        raise NotComparableError(f"{c1} is not below {c2}")
    value = dot(vec_sub(c2.newton, c1.newton), c1.datum.rho) - _half_defect_term(c1, c2)
    if value.denominator != 1 or value < 0:
        raise InternalInvariantError(f"essential gap {value} is not a nonnegative integer")
    return int(value)


@dataclass(frozen=True)
class ClassRecord:
    invariant: ClassInvariant
    straight_witness: AffineElement
    defect: int

    def as_dict(self):
        from .affine_weyl import format_element

        return {
            "newton": [str(c) for c in self.invariant.newton],
            "kottwitz": [int(c) for c in self.invariant.kottwitz],
            "defect": self.defect,
            "witness": format_element(self.straight_witness),
        }


def defect(c: ClassInvariant) -> int:
    """Twisted reflection length of the classical part of a straight witness."""
    datum = c.datum
    cached = datum._defect_cache.get(c)
    if cached is not None:
        return cached
    bound = dot(c.newton, datum.two_rho)
    for record in enumerate_straight(datum, bound, kottwitz=c):
        datum._defect_cache.setdefault(record.invariant, record.defect)
    cached = datum._defect_cache.get(c)
    if cached is None:
        raise InternalInvariantError(
            f"no straight witness found for {c} within length {bound}"
        )
    return cached


# -- element enumeration -----------------------------------------------------


def _central_sum(datum, c: ClassInvariant):
    """The forced coordinate sum of translations in the class c (gl only)."""
    from .linalg import mat_vec

    if mat_vec(datum.delta, datum.central_vector) != datum.central_vector:
        raise UsageError(
            "Kottwitz filters cannot pin the central direction when the "
            "twist moves it; pass normalize_central instead"
        )
    total = Fraction(sum(c.newton))
    if total.denominator != 1:
        raise InternalInvariantError("central part of a Newton point is fractional")
    return int(total)


def _translation_candidates(datum, bound: int, central_values, budget):
    """Integer translations lambda with every |<lambda, alpha>| <= bound + 1.

    ``central_values``: for a lattice with a central line, the admissible
    coordinate sums; must be None exactly when the root system spans.
    Enumeration runs over the tuples of simple-root pairings (plus the
    central coordinate), which pin lambda by an exact linear solve; only
    the integral solutions survive. The result is a superset of what any
    element of length <= bound allows; exact length tests happen at the
    caller.
    """
    key = (bound, tuple(central_values) if central_values is not None else None)
    cached = datum._translation_cache.get(key)
    if cached is not None:
        return cached
    b = bound + 1
    rows = [tuple(Fraction(c) for c in alpha) for alpha in datum.simple_roots]
    axes = [range(-b, b + 1)] * datum.rank
    if datum.central_rank:
        if central_values is None:
            raise UsageError(
                "enumeration over a lattice with central directions needs "
                "a Kottwitz filter or central normalization"
            )
        rows.append(tuple(Fraction(c) for c in datum.central_vector))
        axes.append(list(central_values))
    inv = mat_inv(tuple(rows))
    size = 1
    for axis in axes:
        size *= len(axis)
    if size > budget:
        raise CapExceededError(budget, "translation enumeration")
    out = []
    for pairings in itertools.product(*axes):
        lam = mat_vec(inv, pairings)
        if any(c.denominator != 1 for c in lam):
            continue
        lam = tuple(int(c) for c in lam)
        if all(abs(dot(lam, alpha)) <= b for alpha in datum.positive_roots):
            out.append(lam)
    out.sort()
    cached = tuple(out)
    datum._translation_cache[key] = cached
    return cached


def _ceil(f: Fraction) -> int:
    return -((-f.numerator) // f.denominator)


def _floor(f: Fraction) -> int:
    return f.numerator // f.denominator


def iter_elements(
    datum,
    max_length: int,
    kottwitz=None,
    normalize_central: bool = False,
    budget: int = DEFAULT_ENUM_BUDGET,
):
    """All elements of length <= max_length, in a deterministic order.

    For lattices with a central line (the gl preset) the set is infinite
    unless either a class invariant pins the central coordinate sum
    (``kottwitz``) or representatives are normalized modulo central
    translations (``normalize_central``), which keeps the coordinate sum
    in 0..n-1.
    """
    central_values = None
    if datum.central_rank:
        if kottwitz is not None:
            central_values = [_central_sum(datum, kottwitz)]
        elif normalize_central:
            central_values = list(range(datum.n))
    translations = _translation_candidates(datum, max_length, central_values, budget)
    kappa_key = kottwitz.kottwitz if kottwitz is not None else None
    for lam in translations:
        if kappa_key is not None and datum.kottwitz_quotient.key(lam) != kappa_key:
            continue
        for z in datum.weyl_elements():
            x = AffineElement(datum, lam, z)
            if length(x) <= max_length:
                yield x


def enumerate_straight(
    datum,
    max_pairing,
    kottwitz=None,
    budget: int = DEFAULT_ENUM_BUDGET,
):
    """All classes with <nu, 2 rho> <= max_pairing, each with a straight witness.

    Exhaustive within the bound: straight elements have length exactly
    <nu, 2 rho>, so scanning lengths up to floor(max_pairing) and
    filtering by straightness finds every class. Results are deduplicated
    by class invariant and sorted canonically; two runs return equal
    lists. ``kottwitz`` may be a ClassInvariant used as a filter.
    """
    if max_pairing < 0:
        raise UsageError("max_pairing must be nonnegative")
    bound = _floor(Fraction(max_pairing))
    key = (bound, kottwitz.kottwitz if kottwitz is not None else None,
           tuple(kottwitz.newton) if kottwitz is not None else None)
    cached = datum._straight_cache.get(key)
    if cached is not None:
        return cached
    records = {}
    elements = sorted(
        iter_elements(datum, bound, kottwitz=kottwitz, budget=budget),
        key=lambda x: (
            length(x),
            sum(c * c for c in x.translation),
            datum.weyl_word(x.finite),
            x.translation,
        ),
    )
    for x in elements:
        if not is_straight(x):
            continue
        inv = class_invariant(x)
        if inv.pairing_two_rho > max_pairing:
            continue
        if inv not in records:
            refl = reflection_length(datum, x.finite, datum.delta)
            records[inv] = ClassRecord(inv, x, refl)
    out = tuple(sorted(records.values(), key=lambda r: r.invariant.sort_key()))
    datum._straight_cache[key] = out
    return out


def interval(c_lo: ClassInvariant, c_hi: ClassInvariant):
    """All classes between c_lo and c_hi, via straight enumeration."""
    if not leq(c_lo, c_hi):
        raise NotComparableError(f"{c_lo} is not below {c_hi}")
    datum = c_lo.datum
    bound = dot(c_hi.newton, datum.two_rho)
    out = [
        r.invariant
        for r in enumerate_straight(datum, bound, kottwitz=c_lo)
        if leq(c_lo, r.invariant) and leq(r.invariant, c_hi)
    ]
    return sorted(out, key=lambda c: c.sort_key())


def extrema(classes):
    """The least and greatest elements of a set of classes.

    Errors when either fails to exist; for endpoint-class sets of
    reduction trees that would signal a bug, not a legitimate outcome.
    """
    classes = list(classes)
    if not classes:
        raise UsageError("empty class set")
    lo = [c for c in classes if all(leq(c, d) for d in classes)]
    hi = [c for c in classes if all(leq(d, c) for d in classes)]
    if len(lo) != 1 or len(hi) != 1:
        raise NoUniqueExtremumError("class set has no unique minimum or maximum")
    return lo[0], hi[0]
