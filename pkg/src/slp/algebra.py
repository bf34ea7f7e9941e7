"""
Graded Artinian algebras given by their degree-1 multiplication matrices.

A :class:`GradedAlgebra` stores, for every basis element of degree 1 and every
degree i, the matrix of multiplication R^i -> R^{i+1}.  That is all the strong
Lefschetz property looks at, and it is closed under tensor products.

>>> P1 = truncated_polynomial(1)
>>> W = tensor_product(P1, P1)
>>> W.dims
[1, 2, 1]
>>> strong_lefschetz_check(W, W.elements["omega"]).passed
True
"""
from __future__ import annotations

import random
from dataclasses import dataclass, field
from typing import Sequence

from . import linalg
from .scalar import QQ, FieldDescriptor, Scalar, format_scalar

__all__ = [
    "GradedAlgebra",
    "LefschetzCheck",
    "PrimitiveDecomposition",
    "PreconditionError",
    "truncated_polynomial",
    "tensor_product",
    "strong_lefschetz_check",
    "primitive_decomposition",
]


class PreconditionError(ValueError):
    pass


Matrix = list[list[Scalar]]


@dataclass
class GradedAlgebra:
    field: FieldDescriptor
    dims: list[int]
    gens: list[list[Matrix]]
    elements: dict[str, list[Scalar]] = field(default_factory=dict)
    name: str = ""

    def __post_init__(self):
        if not self.dims or self.dims[0] != 1:
            raise ValueError("a graded algebra needs dims[0] = 1")
        if len(self.gens) != (self.dims[1] if len(self.dims) > 1 else 0):
            raise ValueError("one multiplication table per degree-1 basis element")
        for g in self.gens:
            if len(g) != len(self.dims) - 1:
                raise ValueError("multiplication tables must cover degrees 0..top-1")
            for i, m in enumerate(g):
                if linalg.shape(m) != (self.dims[i + 1], self.dims[i]) and self.dims[i] and self.dims[i + 1]:
                    raise ValueError(f"bad matrix shape in degree {i}")

    @property
    def top(self) -> int:
        return len(self.dims) - 1

    @property
    def total_dim(self) -> int:
        return sum(self.dims)

    def zero_matrix(self, i: int, j: int) -> Matrix:
        return linalg.zeros(self.dims[j], self.dims[i], self.field.zero())

    def mult_matrix(self, coords: Sequence[Scalar], i: int) -> Matrix:
        """Multiplication by a degree-1 element (given in degree-1 coordinates) on R^i."""
        if i < 0 or i >= self.top:
            rows = self.dims[i + 1] if 0 <= i + 1 <= self.top else 0
            cols = self.dims[i] if 0 <= i <= self.top else 0
            return linalg.zeros(rows, cols, self.field.zero())
        out = self.zero_matrix(i, i + 1)
        for c, g in zip(coords, self.gens):
            if c:
                m = g[i]
                out = [[a + c * b if b else a for a, b in zip(ra, rb)] for ra, rb in zip(out, m)]
        return out

    def power_map(self, coords: Sequence[Scalar], i: int, j: int) -> Matrix:
        """Multiplication by l^(j-i) from R^i to R^j (zero rows past the top)."""
        K = self.field
        if j > self.top:
            return linalg.zeros(0, self.dims[i], K.zero())
        m = linalg.identity(self.dims[i], K.one(), K.zero())
        for d in range(i, j):
            m = linalg.matmul(self.mult_matrix(coords, d), m, K.zero())
        return m

    def check_commutative(self, samples: int = 3, seed: int = 0) -> bool:
        """Degree-1 multiplications commute on random vectors of every degree."""
        rng = random.Random(seed)
        K = self.field
        n = len(self.gens)
        for i in range(self.top - 1):
            for _ in range(samples):
                v = [K(rng.randint(-5, 5)) for _ in range(self.dims[i])]
                for a in range(n):
                    for b in range(a + 1, n):
                        ab = linalg.matvec(self.gens[a][i + 1], linalg.matvec(self.gens[b][i], v, K.zero()), K.zero())
                        ba = linalg.matvec(self.gens[b][i + 1], linalg.matvec(self.gens[a][i], v, K.zero()), K.zero())
                        if ab != ba:
                            return False
        return True


def truncated_polynomial(n: int, K: FieldDescriptor = QQ) -> GradedAlgebra:
    """P(n) = K[X]/(X^(n+1)) with its Lefschetz element X."""
    if n < 0:
        raise ValueError("n must be non-negative")
    one = K.one()
    gens = [[[[one]] for _ in range(n)]] if n else []
    return GradedAlgebra(K, [1] * (n + 1), gens, {"X": [one]} if n else {}, name=f"P({n})")


def _kron(a: Matrix, b: Matrix, zero) -> Matrix:
    ra, ca = linalg.shape(a) if a else (0, 0)
    rb, cb = linalg.shape(b) if b else (0, 0)
    out = [[zero] * (ca * cb) for _ in range(ra * rb)]
    for i in range(ra):
        for j in range(ca):
            x = a[i][j]
            if not x:
                continue
            for k in range(rb):
                for l in range(cb):
                    y = b[k][l]
                    if y:
                        out[i * rb + k][j * cb + l] = x * y
    return out


def tensor_product(U: GradedAlgebra, V: GradedAlgebra, mu: str | None = None,
                   nu: str | None = None) -> GradedAlgebra:
    """U (x) V with omega = mu (x) 1 + 1 (x) nu.

    The basis of degree d lists U^p (x) V^(d-p) blocks in increasing p,
    u-index major.  ``mu``/``nu`` name distinguished elements (defaults: the
    first one present).
    """
    if U.field != V.field:
        raise ValueError("tensor factors must share a field")
    K = U.field
    top = U.top + V.top
    offsets: list[dict[int, int]] = []
    dims = []
    for d in range(top + 1):
        off, size = {}, 0
        for p in range(d + 1):
            q = d - p
            if p <= U.top and q <= V.top:
                off[p] = size
                size += U.dims[p] * V.dims[q]
        offsets.append(off)
        dims.append(size)

    def lift(mats: list[Matrix], left: bool) -> list[Matrix]:
        out = []
        for d in range(top):
            m = linalg.zeros(dims[d + 1], dims[d], K.zero())
            for p, o in offsets[d].items():
                q = d - p
                if left:
                    if p + 1 > U.top:
                        continue
                    blk = _kron(mats[p], linalg.identity(V.dims[q], K.one(), K.zero()), K.zero())
                    o2 = offsets[d + 1][p + 1]
                else:
                    if q + 1 > V.top:
                        continue
                    blk = _kron(linalg.identity(U.dims[p], K.one(), K.zero()), mats[q], K.zero())
                    o2 = offsets[d + 1][p]
                for r, row in enumerate(blk):
                    for c, x in enumerate(row):
                        if x:
                            m[o2 + r][o + c] = x
            out.append(m)
        return out

    gens = [lift(g, True) for g in U.gens] + [lift(g, False) for g in V.gens]
    elements: dict[str, list[Scalar]] = {}
    zU = [K.zero()] * len(U.gens)
    zV = [K.zero()] * len(V.gens)
    for name, c in U.elements.items():
        elements[f"{name}(x)1"] = list(c) + zV
    for name, c in V.elements.items():
        elements[f"1(x){name}"] = zU + list(c)
    mu = mu if mu is not None else next(iter(U.elements), None)
    nu = nu if nu is not None else next(iter(V.elements), None)
    mc = U.elements[mu] if mu else zU
    nc = V.elements[nu] if nu else zV
    elements["omega"] = list(mc) + list(nc)
    return GradedAlgebra(K, dims, gens, elements, name=f"{U.name}(x){V.name}")


@dataclass
class LefschetzCheck:
    determinants: list[Scalar | None]
    failing_degree: int | None

    @property
    def passed(self) -> bool:
        return self.failing_degree is None

    def to_json(self) -> dict:
        return {
            "determinants": [None if d is None else format_scalar(d) for d in self.determinants],
            "failing_degree": self.failing_degree,
            "verdict": "pass" if self.passed else "fail",
        }


def strong_lefschetz_check(A: GradedAlgebra, coords: Sequence[Scalar]) -> LefschetzCheck:
    """det of l^(r-2i): R^i -> R^(r-i) for 0 <= i <= r/2.

    A degree with unequal dimensions records ``None`` and fails.
    """
    r = A.top
    dets: list[Scalar | None] = []
    failing = None
    for i in range(r // 2 + 1):
        if A.dims[i] != A.dims[r - i]:
            dets.append(None)
            failing = i if failing is None else failing
            continue
        m = A.power_map(coords, i, r - i)
        d = linalg.det(m, A.field.one()) if A.dims[i] else A.field.one()
        dets.append(d)
        if not d and failing is None:
            failing = i
    return LefschetzCheck(dets, failing)


@dataclass
class PrimitiveDecomposition:
    """P^i = ker l^(r-2i+1) on R^i, as column vectors in R^i coordinates."""

    bases: list[list[list[Scalar]]]

    @property
    def dims(self) -> list[int]:
        return [len(b) for b in self.bases]


def primitive_decomposition(A: GradedAlgebra, coords: Sequence[Scalar]) -> PrimitiveDecomposition:
    """Primitive subspaces of a Lefschetz algebra, with the decomposition checked.

    Raises :class:`PreconditionError` naming the degree if l is not Lefschetz.
    """
    check = strong_lefschetz_check(A, coords)
    if not check.passed:
        raise PreconditionError(f"not a Lefschetz element: fails in degree {check.failing_degree}")
    K, r = A.field, A.top
    bases = []
    for i in range(r // 2 + 1):
        if r - i + 1 > r:
            ker = [[K.one() if a == b else K.zero() for a in range(A.dims[i])] for b in range(A.dims[i])]
        else:
            m = A.power_map(coords, i, r - i + 1)
            ker = linalg.nullspace(m, K.one()) if m else [
                [K.one() if a == b else K.zero() for a in range(A.dims[i])] for b in range(A.dims[i])]
        bases.append(ker)
    # R^d = sum over i + j = d of l^j P^i, checked by rank
    for d in range(r + 1):
        vecs = []
        for i, basis in enumerate(bases):
            j = d - i
            if j < 0 or j > r - 2 * i:
                continue
            m = A.power_map(coords, i, d)
            vecs.extend(linalg.matvec(m, p, K.zero()) for p in basis)
        if len(vecs) != A.dims[d] or (vecs and linalg.rank(vecs) != A.dims[d]):
            raise ArithmeticError(f"primitive decomposition fails in degree {d}")
    return PrimitiveDecomposition(bases)
