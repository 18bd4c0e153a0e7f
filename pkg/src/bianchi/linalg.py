"""Exact linear algebra over the integers and rationals.

Matrices are tuples of row tuples with Python-int entries; no floating point
is used anywhere.  Sizes are tiny (4x4 and kernels of r x 4 systems), so the
implementations favour clarity over asymptotics.
"""

from __future__ import annotations

from fractions import Fraction
from math import gcd

Matrix = tuple[tuple[int, ...], ...]


def identity(n: int) -> Matrix:
    return tuple(tuple(1 if i == j else 0 for j in range(n)) for i in range(n))


def transpose(a: Matrix) -> Matrix:
    return tuple(zip(*a))


def mat_mul(a: Matrix, b: Matrix) -> Matrix:
    bt = tuple(zip(*b))
    return tuple(
        tuple(sum(x * y for x, y in zip(row, col)) for col in bt) for row in a
    )


def mat_vec(a: Matrix, v) -> tuple[int, ...]:
    return tuple(sum(x * y for x, y in zip(row, v)) for row in a)


def mat_scale_add(a: Matrix, b: Matrix, s: int) -> Matrix:
    """a + s*b entrywise."""
    return tuple(
        tuple(x + s * y for x, y in zip(ra, rb)) for ra, rb in zip(a, b)
    )


def det(a: Matrix) -> int:
    """Determinant by cofactor expansion (n <= 4 in practice)."""
    n = len(a)
    if n == 1:
        return a[0][0]
    if n == 2:
        return a[0][0] * a[1][1] - a[0][1] * a[1][0]
    total = 0
    rest = a[1:]
    sign = 1
    for j in range(n):
        minor = tuple(row[:j] + row[j + 1 :] for row in rest)
        total += sign * a[0][j] * det(minor)
        sign = -sign
    return total


def adjugate(a: Matrix) -> Matrix:
    """Adjugate matrix: a * adj(a) = det(a) * I."""
    n = len(a)
    cof = [[0] * n for _ in range(n)]
    for i in range(n):
        for j in range(n):
            minor = tuple(
                tuple(a[r][c] for c in range(n) if c != j)
                for r in range(n)
                if r != i
            )
            cof[i][j] = (-1) ** (i + j) * det(minor)
    return tuple(tuple(cof[j][i] for j in range(n)) for i in range(n))


def inverse_unimodular(a: Matrix) -> Matrix:
    """Exact inverse of an integer matrix with det +-1."""
    d = det(a)
    if d not in (1, -1):
        raise ValueError("matrix is not unimodular")
    adj = adjugate(a)
    if d == 1:
        return adj
    return tuple(tuple(-x for x in row) for row in adj)


def primitive_int_vector(v) -> tuple[int, ...]:
    """Scale a rational vector to a primitive integer vector (sign kept)."""
    fracs = [Fraction(x) for x in v]
    den = 1
    for f in fracs:
        den = den * f.denominator // gcd(den, f.denominator)
    ints = [int(f * den) for f in fracs]
    g = 0
    for x in ints:
        g = gcd(g, x)
    if g == 0:
        raise ValueError("zero vector")
    return tuple(x // g for x in ints)


def sign_canonical(v: tuple[int, ...]) -> tuple[int, ...]:
    """Flip the sign so the first nonzero coordinate is positive."""
    for x in v:
        if x:
            return v if x > 0 else tuple(-y for y in v)
    raise ValueError("zero vector")


def kernel_basis(rows) -> list[tuple[int, ...]]:
    """Basis of the integer kernel of the linear map given by `rows`.

    Returns primitive integer vectors spanning {x : row . x = 0 for all rows},
    deterministically (reduced row echelon over Q, free columns in order).
    """
    if not rows:
        raise ValueError("no rows")
    ncols = len(rows[0])
    mat = [[Fraction(x) for x in row] for row in rows]
    pivots: list[int] = []
    r = 0
    for c in range(ncols):
        piv = None
        for i in range(r, len(mat)):
            if mat[i][c] != 0:
                piv = i
                break
        if piv is None:
            continue
        mat[r], mat[piv] = mat[piv], mat[r]
        inv = 1 / mat[r][c]
        mat[r] = [x * inv for x in mat[r]]
        for i in range(len(mat)):
            if i != r and mat[i][c] != 0:
                f = mat[i][c]
                mat[i] = [x - f * y for x, y in zip(mat[i], mat[r])]
        pivots.append(c)
        r += 1
        if r == len(mat):
            break
    free = [c for c in range(ncols) if c not in pivots]
    basis = []
    for c in free:
        vec = [Fraction(0)] * ncols
        vec[c] = Fraction(1)
        for i, pc in enumerate(pivots):
            vec[pc] = -mat[i][c]
        basis.append(primitive_int_vector(vec))
    return basis
