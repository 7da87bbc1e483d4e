"""Exact linear algebra over Q(params).

Matrices are lists of rows of :class:`ParamElement`.  Elimination is
fraction-free (Bareiss) on polynomial rows obtained by clearing each row's
denominators; every intermediate entry is a minor of the cleared matrix, so
all divisions are exact.
"""

from __future__ import annotations

from typing import Sequence

from .field import ParamElement, poly_gcd
from .poly import MultiPolynomial

Matrix = Sequence[Sequence[ParamElement]]


def _clear_row(row: Sequence[ParamElement]) -> tuple[list[MultiPolynomial], MultiPolynomial]:
    variables = row[0].variables
    lcm_den = MultiPolynomial.one(variables)
    for e in row:
        d = e.den
        if d.is_one():
            continue
        g = poly_gcd(lcm_den, d)
        lcm_den = lcm_den * d.exquo(g)
    if lcm_den.is_one():
        return [e.num for e in row], lcm_den
    return [e.num * lcm_den.exquo(e.den) for e in row], lcm_den


def _pivot_key(p: MultiPolynomial):
    return (len(p), p.total_degree())


def bareiss(rows: list[list[MultiPolynomial]]) -> tuple[list[list[MultiPolynomial]], list[int], int]:
    """Fraction-free row echelon form in place.

    Returns ``(rows, pivot_columns, sign)`` where ``sign`` tracks row swaps.
    """
    nrows = len(rows)
    ncols = len(rows[0]) if rows else 0
    variables = rows[0][0].variables if rows else ()
    prev = MultiPolynomial.one(variables)
    pivots: list[int] = []
    sign = 1
    r = 0
    for c in range(ncols):
        if r == nrows:
            break
        candidates = [i for i in range(r, nrows) if not rows[i][c].is_zero()]
        if not candidates:
            continue
        p = min(candidates, key=lambda i: _pivot_key(rows[i][c]))
        if p != r:
            rows[r], rows[p] = rows[p], rows[r]
            sign = -sign
        piv = rows[r][c]
        prow = rows[r]
        for i in range(r + 1, nrows):
            row = rows[i]
            lead = row[c]
            if lead.is_zero():
                # the Bareiss update still rescales by piv/prev
                if not (piv == prev):
                    for j in range(c + 1, ncols):
                        if not row[j].is_zero():
                            row[j] = (piv * row[j]).exquo(prev)
                continue
            for j in range(c + 1, ncols):
                val = piv * row[j] - lead * prow[j]
                row[j] = val.exquo(prev) if not val.is_zero() else val
            row[c] = MultiPolynomial.zero(variables)
        prev = piv
        pivots.append(c)
        r += 1
    return rows, pivots, sign


def _to_poly_matrix(matrix: Matrix) -> tuple[list[list[MultiPolynomial]], list[MultiPolynomial]]:
    polys = []
    scales = []
    for row in matrix:
        prow, scale = _clear_row(row)
        polys.append(prow)
        scales.append(scale)
    return polys, scales


def rank(matrix: Matrix) -> int:
    if not matrix or not matrix[0]:
        return 0
    polys, _ = _to_poly_matrix(matrix)
    return len(bareiss(polys)[1])


def determinant(matrix: Matrix) -> ParamElement:
    n = len(matrix)
    if n == 0:
        raise ValueError("empty matrix")
    if any(len(row) != n for row in matrix):
        raise ValueError("determinant of a non-square matrix")
    variables = matrix[0][0].variables
    polys, scales = _to_poly_matrix(matrix)
    rows, pivots, sign = bareiss(polys)
    if len(pivots) < n:
        return ParamElement.constant(variables, 0)
    denom = MultiPolynomial.one(variables)
    for s in scales:
        denom = denom * s
    return ParamElement(rows[n - 1][n - 1] * sign, denom)


def kernel_basis(matrix: Matrix) -> list[list[ParamElement]]:
    """Basis of the right kernel, one vector per free column (ascending).

    Each vector has its first nonzero entry equal to 1.
    """
    if not matrix:
        raise ValueError("empty matrix")
    ncols = len(matrix[0])
    variables = matrix[0][0].variables
    polys, _ = _to_poly_matrix(matrix)
    rows, pivots, _ = bareiss(polys)
    pivot_set = set(pivots)
    free = [c for c in range(ncols) if c not in pivot_set]
    zero = ParamElement.constant(variables, 0)
    basis = []
    for f in free:
        x = [zero] * ncols
        x[f] = ParamElement.constant(variables, 1)
        for i in range(len(pivots) - 1, -1, -1):
            p = pivots[i]
            acc = zero
            row = rows[i]
            for j in range(p + 1, ncols):
                if not row[j].is_zero() and not x[j].is_zero():
                    acc = acc + x[j] * row[j]
            x[p] = -acc / ParamElement.from_poly(row[p]) if not acc.is_zero() else zero
        first = next(e for e in x if not e.is_zero())
        if not first == 1:
            inv = first.inverse()
            x = [e * inv if not e.is_zero() else e for e in x]
        basis.append(x)
    return basis


def cofactor_row(matrix: Matrix) -> list[ParamElement]:
    """Cofactors along an appended last row.

    For an ``(n-1) x n`` matrix ``A`` returns ``c`` with
    ``c[k] = (-1)**(n-1+k) * det(A with column k removed)``, so that
    ``sum(c[k] * X[k])`` is the determinant of ``A`` stacked on ``X``.
    The vector spans the kernel of ``A`` when ``A`` has full rank and is zero
    otherwise.
    """
    n = len(matrix[0])
    if len(matrix) != n - 1:
        raise ValueError("cofactor_row expects an (n-1) x n matrix")
    variables = matrix[0][0].variables
    basis = kernel_basis(matrix)
    if len(basis) != 1:
        return [ParamElement.constant(variables, 0)] * n
    v = basis[0]
    k0 = next(k for k, e in enumerate(v) if not e.is_zero())
    minor = [[row[j] for j in range(n) if j != k0] for row in matrix]
    c0 = determinant(minor) if n > 1 else ParamElement.constant(variables, 1)
    if (n - 1 + k0) % 2:
        c0 = -c0
    # v[k0] == 1
    return [e * c0 if not e.is_zero() else e for e in v]


def solve_linear(matrix: Matrix, rhs: Sequence[ParamElement]) -> list[ParamElement]:
    """Unique solution of a square nonsingular system."""
    n = len(matrix)
    aug = [list(row) + [-b] for row, b in zip(matrix, rhs)]
    basis = kernel_basis(aug)
    if len(basis) != 1 or basis[0][n].is_zero():
        raise ValueError("system is singular or inconsistent")
    vec = basis[0]
    scale = vec[n].inverse()
    return [e * scale for e in vec[:n]]
