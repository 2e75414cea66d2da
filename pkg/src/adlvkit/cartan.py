"""Finite root systems in fixed Euclidean realizations.

Simple roots follow the Bourbaki numbering for every family, realized as
rational vectors in an ambient space with the standard inner product.
The coroot of a root a is 2a/(a,a) under the same identification. These
realizations are what make element syntax and test values reproducible
bit for bit.
"""

from __future__ import annotations

from fractions import Fraction

from .errors import UnsupportedDatumError
from .linalg import dot, vec_scale, vec_sub

FAMILIES = frozenset("ABCDEFG")


def validate_family_rank(family: str, rank: int) -> None:
    ok = (
        (family == "A" and rank >= 1)
        or (family == "B" and rank >= 2)
        or (family == "C" and rank >= 2)
        or (family == "D" and rank >= 4)
        or (family == "E" and rank in (6, 7, 8))
        or (family == "F" and rank == 4)
        or (family == "G" and rank == 2)
    )
    if not ok:
        raise UnsupportedDatumError(
            f"unsupported (family, rank) combination: ({family}, {rank})"
        )


def ambient_dim(family: str, rank: int) -> int:
    if family == "A":
        return rank + 1
    if family in "BCD":
        return rank
    if family == "E":
        return 8
    if family == "F":
        return 4
    if family == "G":
        return 3


def _e(n, i, c=1):
    v = [Fraction(0)] * n
    v[i] = Fraction(c)
    return tuple(v)


def simple_roots_ambient(family: str, rank: int):
    """Simple roots alpha_1..alpha_rank as ambient vectors (Bourbaki)."""
    validate_family_rank(family, rank)
    n = ambient_dim(family, rank)
    if family == "A":
        return [vec_sub(_e(n, i), _e(n, i + 1)) for i in range(rank)]
    if family == "B":
        roots = [vec_sub(_e(n, i), _e(n, i + 1)) for i in range(rank - 1)]
        roots.append(_e(n, rank - 1))
        return roots
    if family == "C":
        roots = [vec_sub(_e(n, i), _e(n, i + 1)) for i in range(rank - 1)]
        roots.append(_e(n, rank - 1, 2))
        return roots
    if family == "D":
        roots = [vec_sub(_e(n, i), _e(n, i + 1)) for i in range(rank - 1)]
        roots.append(tuple(a + b for a, b in zip(_e(n, rank - 2), _e(n, rank - 1))))
        return roots
    if family == "G":
        return [
            vec_sub(_e(n, 0), _e(n, 1)),
            (Fraction(-2), Fraction(1), Fraction(1)),
        ]
    if family == "F":
        return [
            vec_sub(_e(n, 1), _e(n, 2)),
            vec_sub(_e(n, 2), _e(n, 3)),
            _e(n, 3),
            (Fraction(1, 2), Fraction(-1, 2), Fraction(-1, 2), Fraction(-1, 2)),
        ]
    if family == "E":
        half = Fraction(1, 2)
        a1 = (half, -half, -half, -half, -half, -half, -half, half)
        a2 = tuple(a + b for a, b in zip(_e(8, 0), _e(8, 1)))
        rest = [vec_sub(_e(8, i), _e(8, i - 1)) for i in range(1, 7)]
        roots = [a1, a2] + rest
        return roots[:rank]


def coroot(root):
    norm = dot(root, root)
    return vec_scale(root, Fraction(2, 1) / norm)


def all_roots(simple):
    """Close the simple roots under all simple reflections."""
    simple = [tuple(Fraction(c) for c in r) for r in simple]
    norms = [dot(a, a) for a in simple]
    roots = set(simple)
    frontier = list(simple)
    while frontier:
        new = []
        for beta in frontier:
            for alpha, norm in zip(simple, norms):
                c = 2 * dot(beta, alpha) / norm
                img = vec_sub(beta, vec_scale(alpha, c))
                if img not in roots:
                    roots.add(img)
                    new.append(img)
        frontier = new
    return roots


def root_coefficients(root, simple):
    """Coefficients of a root on the simple basis (exact, unique)."""
    from .linalg import solve

    m = len(simple[0])
    mat = tuple(tuple(simple[j][i] for j in range(len(simple))) for i in range(m))
    sol = solve(mat, root)
    if sol is None:
        raise ValueError("root outside the span of the simple roots")
    return sol


def positive_roots(simple):
    """Positive roots sorted by (height, coordinates)."""
    pos = []
    for beta in all_roots(simple):
        coeffs = root_coefficients(beta, simple)
        if all(c >= 0 for c in coeffs):
            pos.append((sum(coeffs), beta, coeffs))
    pos.sort(key=lambda t: (t[0], t[1]))
    return [(beta, coeffs) for _h, beta, coeffs in pos]


def highest_root(simple):
    pos = positive_roots(simple)
    theta, coeffs = pos[-1]
    # the highest root is the unique dominant root of maximal height
    for alpha in simple:
        if 2 * dot(theta, alpha) / dot(alpha, alpha) < 0:
            raise AssertionError("highest root is not dominant")
    return theta


# Diagram automorphisms, as permutations of {1..rank}, one canonical
# representative per order. A5 with order 2 flips the diagram; D4 with
# order 3 is the triality rotation.
def automorphism_orders(family: str, rank: int):
    if family == "A" and rank >= 2:
        return (1, 2)
    if family == "D" and rank == 4:
        return (1, 2, 3)
    if family == "D" and rank > 4:
        return (1, 2)
    if family == "E" and rank == 6:
        return (1, 2)
    return (1,)


def diagram_automorphism(family: str, rank: int, order: int):
    """The canonical diagram automorphism of the given order, as a dict."""
    if order == 1:
        return {i: i for i in range(1, rank + 1)}
    if order not in automorphism_orders(family, rank):
        raise UnsupportedDatumError(
            f"twist_order {order} is not admissible for {family}{rank}"
        )
    if family == "A":
        return {i: rank + 1 - i for i in range(1, rank + 1)}
    if family == "D" and order == 2:
        perm = {i: i for i in range(1, rank + 1)}
        perm[rank - 1], perm[rank] = rank, rank - 1
        return perm
    if family == "D" and order == 3:
        return {1: 3, 3: 4, 4: 1, 2: 2}
    if family == "E":
        return {1: 6, 6: 1, 3: 5, 5: 3, 2: 2, 4: 4}
    raise UnsupportedDatumError(
        f"twist_order {order} is not admissible for {family}{rank}"
    )
