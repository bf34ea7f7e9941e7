"""
Exact dense linear algebra over a field.

Entries may be :class:`~slp.scalar.Scalar`, :class:`fractions.Fraction` or
``int`` values -- anything with exact ``+ - * /`` and a truthiness that means
"non-zero".  Matrices are lists of rows.  Nothing here ever touches floating
point, since every verdict downstream is a sign or a zero test.
"""
from __future__ import annotations

from fractions import Fraction
from typing import Any, Callable, Sequence

from .scalar import sign

Matrix = list[list[Any]]

__all__ = [
    "Matrix",
    "shape",
    "zeros",
    "identity",
    "transpose",
    "matmul",
    "matvec",
    "matpow",
    "det",
    "rank",
    "rref",
    "nullspace",
    "column_basis",
    "solve",
    "inverse",
    "leading_principal_minors",
    "is_positive_definite",
    "is_symmetric",
    "permute",
    "span_coordinates",
]


def shape(m: Sequence[Sequence]) -> tuple[int, int]:
    return len(m), (len(m[0]) if m else 0)


def zeros(rows: int, cols: int, zero: Any = 0) -> Matrix:
    return [[zero] * cols for _ in range(rows)]


def identity(n: int, one: Any = 1, zero: Any = 0) -> Matrix:
    return [[one if i == j else zero for j in range(n)] for i in range(n)]


def transpose(m: Sequence[Sequence]) -> Matrix:
    return [list(col) for col in zip(*m)] if m and m[0] else [[] for _ in range(len(m[0]) if m else 0)]


def matmul(a: Sequence[Sequence], b: Sequence[Sequence], zero: Any = 0) -> Matrix:
    n, k = shape(a)
    k2, p = len(b), (len(b[0]) if b else 0)
    if k != k2:
        raise ValueError(f"shape mismatch {n}x{k} @ {k2}x{p}")
    bt = transpose(b) if p else []
    out = []
    for row in a:
        nz = [(j, x) for j, x in enumerate(row) if x]
        out_row = []
        for col in bt:
            acc = zero
            for j, x in nz:
                y = col[j]
                if y:
                    acc = acc + x * y
            out_row.append(acc)
        out.append(out_row)
    if p == 0:
        return [[] for _ in range(n)]
    return out


def matvec(a: Sequence[Sequence], v: Sequence, zero: Any = 0) -> list:
    out = []
    for row in a:
        acc = zero
        for x, y in zip(row, v):
            if x and y:
                acc = acc + x * y
        out.append(acc)
    return out


def matpow(a: Matrix, k: int, one: Any = 1, zero: Any = 0) -> Matrix:
    result = identity(len(a), one, zero)
    for _ in range(k):
        result = matmul(a, result, zero)
    return result


def _lift(m: Sequence[Sequence]) -> Matrix:
    # plain ints would turn into floats under "/"
    return [[Fraction(x) if isinstance(x, int) else x for x in row] for row in m]


def det(m: Sequence[Sequence], one: Any = 1) -> Any:
    """Determinant by fraction-free (Bareiss) elimination."""
    n = len(m)
    if n == 0:
        return one
    if any(len(row) != n for row in m):
        raise ValueError("determinant of a non-square matrix")
    a = _lift(m)
    sgn = 1
    prev = one
    for k in range(n - 1):
        if not a[k][k]:
            for r in range(k + 1, n):
                if a[r][k]:
                    a[k], a[r] = a[r], a[k]
                    sgn = -sgn
                    break
            else:
                return a[k][k] * 0
        akk = a[k][k]
        for i in range(k + 1, n):
            aik = a[i][k]
            row_i, row_k = a[i], a[k]
            for j in range(k + 1, n):
                row_i[j] = (akk * row_i[j] - aik * row_k[j]) / prev
            row_i[k] = akk * 0
        prev = akk
    d = a[n - 1][n - 1]
    return d if sgn > 0 else -d


def rref(m: Sequence[Sequence]) -> tuple[Matrix, list[int]]:
    """Reduced row echelon form and pivot columns."""
    a = _lift(m)
    rows, cols = shape(a)
    pivots: list[int] = []
    r = 0
    for c in range(cols):
        if r >= rows:
            break
        p = next((i for i in range(r, rows) if a[i][c]), None)
        if p is None:
            continue
        a[r], a[p] = a[p], a[r]
        pv = a[r][c]
        a[r] = [x / pv if x else x for x in a[r]]
        for i in range(rows):
            if i != r and a[i][c]:
                f = a[i][c]
                a[i] = [x - f * y if y else x for x, y in zip(a[i], a[r])]
        pivots.append(c)
        r += 1
    return a, pivots


def rank(m: Sequence[Sequence]) -> int:
    if not m or not m[0]:
        return 0
    return len(rref(m)[1])


def nullspace(m: Sequence[Sequence], one: Any = 1) -> list[list]:
    """Basis of the right kernel {v : m v = 0}."""
    rows, cols = shape(m)
    if rows == 0:
        zero = one * 0
        return [[one if i == j else zero for i in range(cols)] for j in range(cols)]
    a, pivots = rref(m)
    zero = one * 0
    free = [c for c in range(cols) if c not in pivots]
    basis = []
    for f in free:
        v = [zero] * cols
        v[f] = one
        for r, p in enumerate(pivots):
            if a[r][f]:
                v[p] = -a[r][f]
        basis.append(v)
    return basis


def column_basis(vectors: Sequence[Sequence]) -> list[int]:
    """Indices of a maximal independent subset, chosen greedily in order."""
    if not vectors:
        return []
    mat = transpose(vectors)
    return rref(mat)[1]


def solve(m: Sequence[Sequence], b: Sequence) -> list:
    """Unique solution of m x = b for square invertible m."""
    n = len(m)
    aug = [list(row) + [b[i]] for i, row in enumerate(m)]
    a, pivots = rref(aug)
    if pivots != list(range(n)):
        raise ZeroDivisionError("singular system")
    return [a[i][n] for i in range(n)]


def inverse(m: Sequence[Sequence], one: Any = 1) -> Matrix:
    n = len(m)
    zero = one * 0
    aug = [list(row) + [one if i == j else zero for j in range(n)] for i, row in enumerate(m)]
    a, pivots = rref(aug)
    if pivots[:n] != list(range(n)):
        raise ZeroDivisionError("singular matrix")
    return [row[n:] for row in a]


def leading_principal_minors(m: Sequence[Sequence], one: Any = 1) -> list:
    return [det([row[:k] for row in m[:k]], one) for k in range(1, len(m) + 1)]


def is_symmetric(m: Sequence[Sequence]) -> bool:
    n = len(m)
    return all(m[i][j] == m[j][i] for i in range(n) for j in range(i + 1, n))


def is_positive_definite(m: Sequence[Sequence], one: Any = 1,
                         sign_fn: Callable[[Any], int] = sign) -> bool:
    """Sylvester's criterion on a symmetric matrix."""
    if not is_symmetric(m):
        return False
    return all(sign_fn(x) > 0 for x in leading_principal_minors(m, one))


def permute(m: Sequence[Sequence], perm: Sequence[int]) -> Matrix:
    """Simultaneous row/column permutation: out[i][j] = m[perm[i]][perm[j]]."""
    return [[m[pi][pj] for pj in perm] for pi in perm]


def to_fraction_matrix(m: Sequence[Sequence]) -> Matrix:
    return [[Fraction(x) for x in row] for row in m]


def span_coordinates(basis_cols: Sequence[Sequence], targets: Sequence[Sequence]) -> list[list]:
    """Coordinates of each target vector in the span of independent columns.

    ``basis_cols`` and ``targets`` are lists of column vectors.  Raises
    ValueError if the columns are dependent or a target lies outside the span.
    """
    k = len(basis_cols)
    if not targets:
        return []
    if k == 0:
        if any(any(x for x in t) for t in targets):
            raise ValueError("target outside the span")
        return [[] for _ in targets]
    aug = transpose(list(basis_cols) + list(targets))
    a, pivots = rref(aug)
    if pivots[:k] != list(range(k)) or any(p >= k for p in pivots):
        raise ValueError("dependent basis or target outside the span")
    return [[a[r][k + t] for r in range(k)] for t in range(len(targets))]
