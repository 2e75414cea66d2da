"""Exact linear algebra over the integers and rationals.

All matrices here are small and dense (bounded by the rank of a root
system), so everything is tuples of tuples of Python ints or Fractions.
No floating point is used anywhere in the package.

>>> smith_normal_form(((2, 4), (6, 8)))[1]
((2, 0), (0, 4))
"""

from __future__ import annotations

from fractions import Fraction
from typing import Sequence

Vector = tuple
Matrix = tuple


def identity_matrix(n: int) -> Matrix:
    return tuple(tuple(1 if i == j else 0 for j in range(n)) for i in range(n))


def mat_from_rows(rows) -> Matrix:
    return tuple(tuple(row) for row in rows)


def mat_vec(m: Matrix, v: Vector) -> Vector:
    """Apply ``m`` to the column vector ``v``."""
    return tuple(sum(row[j] * v[j] for j in range(len(v))) for row in m)


def vec_mat(v: Vector, m: Matrix) -> Vector:
    """Row vector times matrix; transports covectors along a lattice map."""
    n = len(m)
    return tuple(sum(v[i] * m[i][j] for i in range(n)) for j in range(len(m[0])))


def mat_mul(a: Matrix, b: Matrix) -> Matrix:
    cols = range(len(b[0]))
    return tuple(
        tuple(sum(arow[k] * b[k][j] for k in range(len(b))) for j in cols)
        for arow in a
    )


def mat_transpose(m: Matrix) -> Matrix:
    return tuple(tuple(col) for col in zip(*m))


def vec_add(u: Vector, v: Vector) -> Vector:
    return tuple(a + b for a, b in zip(u, v))


def vec_sub(u: Vector, v: Vector) -> Vector:
    return tuple(a - b for a, b in zip(u, v))


def vec_neg(v: Vector) -> Vector:
    return tuple(-a for a in v)


def vec_scale(v: Vector, c) -> Vector:
    return tuple(c * a for a in v)


def dot(u: Vector, v: Vector):
    if len(u) != len(v):
        raise ValueError(f"dimension mismatch: {len(u)} vs {len(v)}")
    return sum(a * b for a, b in zip(u, v))


def as_int_vector(v: Sequence) -> Vector:
    """Cast exact rationals with denominator 1 back to ints."""
    out = []
    for a in v:
        f = Fraction(a)
        if f.denominator != 1:
            raise ValueError(f"vector entry {a} is not an integer")
        out.append(int(f))
    return tuple(out)


def as_int_matrix(m) -> Matrix:
    return tuple(as_int_vector(row) for row in m)


def _rref(rows):
    """Reduced row echelon form over Q. Returns (rows, pivot columns)."""
    rows = [[Fraction(a) for a in row] for row in rows]
    nrows = len(rows)
    ncols = len(rows[0]) if nrows else 0
    pivots = []
    r = 0
    for c in range(ncols):
        pivot = next((i for i in range(r, nrows) if rows[i][c] != 0), None)
        if pivot is None:
            continue
        rows[r], rows[pivot] = rows[pivot], rows[r]
        inv = 1 / rows[r][c]
        rows[r] = [a * inv for a in rows[r]]
        for i in range(nrows):
            if i != r and rows[i][c] != 0:
                f = rows[i][c]
                rows[i] = [a - f * b for a, b in zip(rows[i], rows[r])]
        pivots.append(c)
        r += 1
        if r == nrows:
            break
    return rows, pivots


def mat_rank(m: Matrix) -> int:
    if not m or not m[0]:
        return 0
    return len(_rref(m)[1])


def mat_inv(m: Matrix) -> Matrix:
    """Exact inverse over Q; raises ValueError on singular input."""
    n = len(m)
    aug = [list(row) + [1 if i == j else 0 for j in range(n)] for i, row in enumerate(m)]
    rows, pivots = _rref(aug)
    if pivots[:n] != list(range(n)):
        raise ValueError("matrix is singular")
    return tuple(tuple(rows[i][n:]) for i in range(n))


def mat_inv_int(m: Matrix) -> Matrix:
    """Inverse of a unimodular integer matrix, returned with int entries."""
    return as_int_matrix(mat_inv(m))


def solve(m: Matrix, b: Vector):
    """One rational solution x of m @ x = b, or None if inconsistent.

    ``m`` has the columns as unknowns; when the kernel is nontrivial an
    arbitrary (pivot-based) solution is returned.
    """
    nrows = len(m)
    ncols = len(m[0]) if nrows else 0
    aug = [list(row) + [b[i]] for i, row in enumerate(m)]
    rows, pivots = _rref(aug)
    if ncols in pivots:
        return None
    x = [Fraction(0)] * ncols
    for r, c in enumerate(pivots):
        x[c] = rows[r][-1]
    return tuple(x)


def nullspace(m: Matrix):
    """Rational basis of the right kernel of ``m``."""
    nrows = len(m)
    ncols = len(m[0]) if nrows else 0
    rows, pivots = _rref(m)
    free = [c for c in range(ncols) if c not in pivots]
    basis = []
    for fc in free:
        v = [Fraction(0)] * ncols
        v[fc] = Fraction(1)
        for r, c in enumerate(pivots):
            v[c] = -rows[r][fc]
        basis.append(tuple(v))
    return basis


def det(m: Matrix) -> Fraction:
    """Determinant by fraction-free-ish Gaussian elimination."""
    n = len(m)
    rows = [[Fraction(a) for a in row] for row in m]
    sign = 1
    out = Fraction(1)
    for c in range(n):
        pivot = next((i for i in range(c, n) if rows[i][c] != 0), None)
        if pivot is None:
            return Fraction(0)
        if pivot != c:
            rows[c], rows[pivot] = rows[pivot], rows[c]
            sign = -sign
        out *= rows[c][c]
        inv = 1 / rows[c][c]
        for i in range(c + 1, n):
            if rows[i][c] != 0:
                f = rows[i][c] * inv
                rows[i] = [a - f * b for a, b in zip(rows[i], rows[c])]
    return out * sign


def all_principal_minors_positive(m: Matrix) -> bool:
    """True iff every principal minor of ``m`` is positive.

    For generalized Cartan matrices this characterizes finite type, which
    is how parabolic subgroups are tested for sphericity. Exponential in
    the size of ``m``, which never exceeds the affine rank here.
    """
    n = len(m)
    from itertools import combinations

    for k in range(1, n + 1):
        for idx in combinations(range(n), k):
            sub = tuple(tuple(m[i][j] for j in idx) for i in idx)
            if det(sub) <= 0:
                return False
    return True


def smith_normal_form(a: Matrix):
    """Return (u, d, v) with u @ a @ v = d, u and v unimodular over Z.

    ``d`` is diagonal with nonnegative entries and each diagonal entry
    divides the next. Standard pivoting algorithm; inputs are small.
    """
    nr = len(a)
    nc = len(a[0]) if nr else 0
    m = [list(row) for row in a]
    u = [[int(i == j) for j in range(nr)] for i in range(nr)]
    v = [[int(i == j) for j in range(nc)] for i in range(nc)]

    def swap_rows(i, j):
        m[i], m[j] = m[j], m[i]
        u[i], u[j] = u[j], u[i]

    def swap_cols(i, j):
        for row in m:
            row[i], row[j] = row[j], row[i]
        for row in v:
            row[i], row[j] = row[j], row[i]

    def addmul_row(dst, src, q):
        # row_dst -= q*row_src
        m[dst] = [x - q * y for x, y in zip(m[dst], m[src])]
        u[dst] = [x - q * y for x, y in zip(u[dst], u[src])]

    def addmul_col(dst, src, q):
        for row in m:
            row[dst] -= q * row[src]
        for row in v:
            row[dst] -= q * row[src]

    t = 0
    while t < min(nr, nc):
        # locate a smallest nonzero entry in the trailing block
        best = None
        for i in range(t, nr):
            for j in range(t, nc):
                if m[i][j] != 0 and (best is None or abs(m[i][j]) < abs(m[best[0]][best[1]])):
                    best = (i, j)
        if best is None:
            break
        swap_rows(t, best[0])
        swap_cols(t, best[1])
        while True:
            reduced = True
            for i in range(t + 1, nr):
                if m[i][t] != 0:
                    q = m[i][t] // m[t][t]
                    addmul_row(i, t, q)
                    if m[i][t] != 0:
                        swap_rows(t, i)
                        reduced = False
            for j in range(t + 1, nc):
                if m[t][j] != 0:
                    q = m[t][j] // m[t][t]
                    addmul_col(j, t, q)
                    if m[t][j] != 0:
                        swap_cols(t, j)
                        reduced = False
            if not reduced:
                continue
            # enforce divisibility of the remaining block by the pivot
            offender = None
            for i in range(t + 1, nr):
                for j in range(t + 1, nc):
                    if m[i][j] % m[t][t] != 0:
                        offender = i
                        break
                if offender is not None:
                    break
            if offender is None:
                break
            addmul_row(t, offender, -1)
        if m[t][t] < 0:
            m[t] = [-x for x in m[t]]
            u[t] = [-x for x in u[t]]
        t += 1

    return mat_from_rows(u), mat_from_rows(m), mat_from_rows(v)


class LatticeQuotient:
    """Z^n modulo the integer column span of a generator list.

    Built once per root datum via Smith normal form; afterwards class
    keys cost one matrix-vector product. Keys are additive, so quotient
    classes can be compared and combined without re-reducing.
    """

    def __init__(self, n: int, generators: Sequence[Vector]):
        self.n = n
        self.generators = tuple(tuple(g) for g in generators)
        if self.generators:
            a = tuple(tuple(g[i] for g in self.generators) for i in range(n))
            u, d, _v = smith_normal_form(a)
            self._u = u
            k = len(self.generators)
            self._diag = tuple(
                d[i][i] if i < min(n, k) else 0 for i in range(n)
            )
        else:
            self._u = identity_matrix(n)
            self._diag = (0,) * n

    def key(self, v: Vector) -> tuple:
        y = mat_vec(self._u, v)
        return tuple(
            (y[i] % d) if d else y[i] for i, d in enumerate(self._diag)
        )

    def combine(self, k1: tuple, k2: tuple) -> tuple:
        """Key of the sum of two vectors, from their keys alone."""
        return tuple(
            ((a + b) % d) if d else a + b
            for a, b, d in zip(k1, k2, self._diag)
        )

    @property
    def invariant_factors(self) -> tuple:
        return self._diag

    @property
    def is_finite(self) -> bool:
        return all(d != 0 for d in self._diag)

    @property
    def order(self):
        if not self.is_finite:
            return None
        out = 1
        for d in self._diag:
            out *= d
        return out

    def free_rank(self) -> int:
        return sum(1 for d in self._diag if d == 0)


if __name__ == "__main__":
    import doctest

    doctest.testmod()
