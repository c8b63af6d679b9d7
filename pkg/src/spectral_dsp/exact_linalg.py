"""Gaussian elimination over the Gaussian rationals.

Matrices are plain ``list[list[ExactScalar]]``; nothing here mutates inputs.
"""

from __future__ import annotations

from typing import List, Optional, Sequence, Tuple

from .scalar_poly_kernel import ONE, ZERO, ExactScalar, scalar

Matrix = List[List[ExactScalar]]
Vector = List[ExactScalar]


class SingularMatrixError(ArithmeticError):
    pass


class InconsistentSystemError(ArithmeticError):
    pass


def as_matrix(rows: Sequence[Sequence]) -> Matrix:
    return [[scalar(c) for c in row] for row in rows]


def zeros(nrows: int, ncols: int) -> Matrix:
    return [[ZERO] * ncols for _ in range(nrows)]


def identity(n: int) -> Matrix:
    return [[ONE if i == j else ZERO for j in range(n)] for i in range(n)]


def mat_mul(a: Matrix, b: Matrix) -> Matrix:
    if not a:
        return []
    inner = len(b)
    ncols = len(b[0]) if b else 0
    out = zeros(len(a), ncols)
    for i, row in enumerate(a):
        for k in range(inner):
            aik = row[k]
            if aik.is_zero():
                continue
            bk = b[k]
            for j in range(ncols):
                if not bk[j].is_zero():
                    out[i][j] = out[i][j] + aik * bk[j]
    return out


def mat_vec(a: Matrix, v: Sequence[ExactScalar]) -> Vector:
    out = []
    for row in a:
        acc = ZERO
        for c, x in zip(row, v):
            if not c.is_zero() and not x.is_zero():
                acc = acc + c * x
        out.append(acc)
    return out


def is_zero_matrix(a: Matrix) -> bool:
    return all(c.is_zero() for row in a for c in row)


def rref(a: Matrix) -> Tuple[Matrix, List[int]]:
    """Reduced row echelon form and pivot columns."""
    m = [list(row) for row in a]
    nrows = len(m)
    ncols = len(m[0]) if m else 0
    pivots: List[int] = []
    r = 0
    for col in range(ncols):
        if r == nrows:
            break
        piv = next((i for i in range(r, nrows) if not m[i][col].is_zero()), None)
        if piv is None:
            continue
        m[r], m[piv] = m[piv], m[r]
        inv = m[r][col].inverse()
        m[r] = [c * inv for c in m[r]]
        for i in range(nrows):
            if i != r and not m[i][col].is_zero():
                f = m[i][col]
                m[i] = [x - f * y for x, y in zip(m[i], m[r])]
        pivots.append(col)
        r += 1
    return m, pivots


def rank(a: Matrix) -> int:
    if not a or not a[0]:
        return 0
    return len(rref(a)[1])


def determinant(a: Matrix) -> ExactScalar:
    n = len(a)
    m = [list(row) for row in a]
    det = ONE
    for col in range(n):
        piv = next((i for i in range(col, n) if not m[i][col].is_zero()), None)
        if piv is None:
            return ZERO
        if piv != col:
            m[col], m[piv] = m[piv], m[col]
            det = -det
        det = det * m[col][col]
        inv = m[col][col].inverse()
        for i in range(col + 1, n):
            if not m[i][col].is_zero():
                f = m[i][col] * inv
                m[i] = [x - f * y for x, y in zip(m[i], m[col])]
    return det


def solve(a: Matrix, b: Sequence[ExactScalar]) -> Vector:
    """Unique solution of a square invertible system."""
    n = len(a)
    if any(len(row) != n for row in a):
        raise ValueError("solve expects a square matrix")
    aug = [list(row) + [scalar(bi)] for row, bi in zip(a, b)]
    red, piv = rref(aug)
    if piv[:n] != list(range(n)) or len(piv) > n:
        raise SingularMatrixError("matrix is singular")
    return [red[i][n] for i in range(n)]


def solve_any(a: Matrix, b: Sequence[ExactScalar]) -> Optional[Vector]:
    """One solution of ``a x = b`` (free variables zero), or ``None``."""
    ncols = len(a[0]) if a else 0
    aug = [list(row) + [scalar(bi)] for row, bi in zip(a, b)]
    red, piv = rref(aug)
    if ncols in piv:
        return None
    x = [ZERO] * ncols
    for r, c in enumerate(piv):
        x[c] = red[r][ncols]
    return x


def nullspace(a: Matrix, ncols: Optional[int] = None) -> List[Vector]:
    ncols = len(a[0]) if a else (ncols or 0)
    if not a:
        return [[ONE if i == j else ZERO for i in range(ncols)] for j in range(ncols)]
    red, piv = rref(a)
    free = [c for c in range(ncols) if c not in piv]
    basis = []
    for f in free:
        v = [ZERO] * ncols
        v[f] = ONE
        for r, c in enumerate(piv):
            v[c] = -red[r][f]
        basis.append(v)
    return basis


def mat_pow(a: Matrix, k: int) -> Matrix:
    out = identity(len(a))
    for _ in range(k):
        out = mat_mul(out, a)
    return out


def submatrix_columns(a: Matrix, cols: Sequence[int]) -> Matrix:
    return [[row[c] for c in cols] for row in a]


def matrix_to_json(a: Matrix) -> List[List[str]]:
    return [[str(c) for c in row] for row in a]
