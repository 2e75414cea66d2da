"""Twisted conjugation combinatorics: shifts, Newton and Kottwitz points.

A cyclic shift replaces x by s_i x sigma(s_i) when that does not increase
length; the mutual-reachability classes under such moves are finite and
are explored by breadth-first search with a hard node cap. Class
invariants pair the dominant Newton point with the Kottwitz point (the
translation part in the twisted coinvariants of X modulo the coroot
lattice); together these separate the conjugacy classes this package
cares about.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction

from .affine_weyl import (
    AffineElement,
    length,
    multiply,
    sigma_act,
    simple_reflection,
)
from .errors import (
    CapExceededError,
    DatumMismatchError,
    InternalInvariantError,
    NotAShiftError,
)
from .linalg import dot, identity_matrix, mat_mul, mat_rank, mat_vec

DEFAULT_BFS_CAP = 10**6

# order of a lattice automorphism is bounded by the lcm of cyclotomic
# degrees fitting in the rank; anything past this signals a bug
_MAX_ORDER = 10**4


@dataclass(frozen=True)
class ShiftMove:
    """One conjugation step: after = s_index . before . sigma(s_index)."""

    index: int
    before: AffineElement
    after: AffineElement
    delta_length: int


def conjugate_by_simple(x: AffineElement, i: int) -> AffineElement:
    s = simple_reflection(x.datum, i)
    return multiply(s, multiply(x, sigma_act(s)))


def cyclic_shift(x: AffineElement, i: int) -> ShiftMove:
    after = conjugate_by_simple(x, i)
    delta = length(after) - length(x)
    if delta > 0:
        raise NotAShiftError(
            f"conjugation by s{i} increases length by {delta}"
        )
    if delta not in (-2, 0):
        raise InternalInvariantError(f"length drop {delta} is impossible")
    return ShiftMove(index=i, before=x, after=after, delta_length=delta)


def shift_class(x: AffineElement, cap: int = DEFAULT_BFS_CAP) -> frozenset:
    """The full length-preserving conjugation class of x, by BFS closure."""
    datum = x.datum
    cached = datum._shift_class_cache.get(x)
    if cached is not None:
        return cached
    base = length(x)
    seen = {x}
    frontier = [x]
    while frontier:
        new = []
        for cur in frontier:
            for i in range(datum.rank + 1):
                y = conjugate_by_simple(cur, i)
                if y not in seen and length(y) == base:
                    seen.add(y)
                    new.append(y)
                    if len(seen) > cap:
                        raise CapExceededError(cap, "shift class BFS")
        frontier = new
    out = frozenset(seen)
    for member in out:
        datum._shift_class_cache[member] = out
    return out


@dataclass(frozen=True)
class MinLenResult:
    is_min_len: bool
    # when not minimal: indices i1..ik with the replayed conjugations
    # reaching a strictly shorter element at the last step
    witness: tuple = None


def is_min_len(x: AffineElement, cap: int = DEFAULT_BFS_CAP) -> MinLenResult:
    """Minimality of length under twisted conjugation, with certificate.

    BFS over length-preserving moves; the class is minimal iff no member
    admits a length-dropping move. The witness, when one exists, is the
    first found in breadth-first order with indices tried in increasing
    order, hence the lexicographically smallest among the shortest ones.
    """
    datum = x.datum
    members = shift_class(x, cap=cap)
    cached = datum._minlen_cache.get(members)
    if cached is None:
        cached = not any(
            length(conjugate_by_simple(m, i)) < length(m)
            for m in members
            for i in range(datum.rank + 1)
        )
        datum._minlen_cache[members] = cached
    if cached:
        return MinLenResult(True)
    # reconstruct the canonical witness path from x
    base = length(x)
    seen = {x}
    queue = [(x, ())]
    while queue:
        nxt = []
        for cur, path in queue:
            for i in range(datum.rank + 1):
                y = conjugate_by_simple(cur, i)
                ylen = length(y)
                if ylen < base:
                    return MinLenResult(False, path + (i,))
                if y not in seen:
                    seen.add(y)
                    nxt.append((y, path + (i,)))
        queue = nxt
    raise InternalInvariantError("class flagged non-minimal but no drop found")


def descend_to_min_len(x: AffineElement, cap: int = DEFAULT_BFS_CAP):
    """Some minimal length element reachable from x, with the move list."""
    cur = x
    moves = []
    while True:
        res = is_min_len(cur, cap=cap)
        if res.is_min_len:
            return cur, tuple(moves)
        for i in res.witness:
            cur = conjugate_by_simple(cur, i)
        moves.extend(res.witness)


def replay_moves(x: AffineElement, moves) -> AffineElement:
    for i in moves:
        x = conjugate_by_simple(x, i)
    return x


# -- class invariants --------------------------------------------------------


def twist_order_of(datum, m) -> int:
    order = 1
    cur = m
    ident = identity_matrix(datum.n)
    while cur != ident:
        cur = mat_mul(cur, m)
        order += 1
        if order > _MAX_ORDER:
            raise InternalInvariantError("lattice map order exceeds sane bound")
    return order


def newton_point(x: AffineElement):
    """Dominant average of the translation along twisted powers.

    With m = z o delta of order n, the point is the dominant Weyl
    representative of (lambda + m lambda + ... + m^(n-1) lambda)/n. It is
    fixed by the twist and constant on twisted conjugacy classes.
    """
    datum = x.datum
    m = mat_mul(x.finite, datum.delta)
    n = twist_order_of(datum, m)
    acc = list(x.translation)
    cur = x.translation
    for _ in range(n - 1):
        cur = mat_vec(m, cur)
        for i in range(datum.n):
            acc[i] += cur[i]
    nu = tuple(Fraction(a, n) for a in acc)
    dom, _z = datum.dominant_representative(nu)
    return dom


def kottwitz_point(x: AffineElement):
    """Translation part modulo coroot lattice and twisted coboundaries."""
    return x.datum.kottwitz_quotient.key(x.translation)


def is_straight(x: AffineElement) -> bool:
    """Length equals the pairing of the Newton point with 2 rho."""
    return length(x) == class_invariant(x).pairing_two_rho


def reflection_length(datum, z, twist=None) -> int:
    """Corank of the fixed space of z o twist on X tensor Q."""
    m = z if twist is None else mat_mul(z, twist)
    shifted = tuple(
        tuple(m[i][j] - (1 if i == j else 0) for j in range(datum.n))
        for i in range(datum.n)
    )
    return mat_rank(shifted)


def relative_reflection_length(datum, z, twist) -> int:
    """dim of the twist's fixed space minus dim of (z o twist)'s.

    This is the twisted reflection length of z relative to the twist,
    the quantity that makes reflection lengths add across parabolic
    decompositions.
    """
    return reflection_length(datum, z, twist) - reflection_length(
        datum, identity_matrix(datum.n), twist
    )


@dataclass(frozen=True, eq=False)
class ClassInvariant:
    """Key of a twisted conjugacy class: dominant Newton point + Kottwitz point."""

    datum: object
    newton: tuple
    kottwitz: tuple
    _defect: list = field(default_factory=lambda: [None], repr=False)

    def __eq__(self, other):
        return (
            isinstance(other, ClassInvariant)
            and self.datum is other.datum
            and self.newton == other.newton
            and self.kottwitz == other.kottwitz
        )

    def __hash__(self):
        return hash((self.newton, self.kottwitz))

    @property
    def pairing_two_rho(self):
        return dot(self.newton, self.datum.two_rho)

    @property
    def defect(self):
        """Filled lazily through bg_poset.defect on first use."""
        if self._defect[0] is None:
            from .bg_poset import defect as _defect_of

            self._defect[0] = _defect_of(self)
        return self._defect[0]

    def sort_key(self):
        return (self.pairing_two_rho, self.kottwitz, self.newton)

    def __repr__(self):
        nu = ",".join(str(c) for c in self.newton)
        kap = ",".join(str(c) for c in self.kottwitz)
        return f"[nu=({nu}) kappa=({kap})]"


def class_invariant(x: AffineElement) -> ClassInvariant:
    datum = x.datum
    cached = datum._class_cache.get(x)
    if cached is None:
        nu = newton_point(x)
        if mat_vec(datum.delta, nu) != nu:
            raise InternalInvariantError("Newton point is not twist-fixed")
        cached = ClassInvariant(datum, nu, kottwitz_point(x))
        datum._class_cache[x] = cached
    return cached


def same_class(x: AffineElement, y: AffineElement) -> bool:
    if x.datum is not y.datum:
        raise DatumMismatchError("elements live over different root data")
    return class_invariant(x) == class_invariant(y)
