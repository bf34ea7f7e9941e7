"""
Explicit polynomial backend: the W-action on S = Sym(V), divided differences,
coinvariant rings by exact linear algebra, and Schubert dual bases.

This is the slow, independent route.  It exists to check the path-sum
machinery of :mod:`slp.lefschetz` against honest polynomial arithmetic.

Variables are the coordinates y_k of the ambient space.  A vector v is the
linear function y -> <v, y>, and w acts by (w f)(y) = f(w^-1 y), so that
w sends the form of v to the form of w(v).  For orthonormal coordinates this
is the usual substitution; I2 uses the simple-root basis and needs the Gram
matrix.

>>> from slp.rootsystem import build_root_system
>>> pres = CoinvariantPresentation.build(build_root_system("A2"))
>>> pres.dims
[1, 2, 2, 1]
"""
from __future__ import annotations

import functools
import random
from collections import deque
from dataclasses import dataclass, field
from typing import Iterable, Sequence

from . import linalg
from .algebra import GradedAlgebra, LefschetzCheck, PrimitiveDecomposition, strong_lefschetz_check
from .algebra import primitive_decomposition as _primitive_decomposition
from .rootsystem import RootSystem, Vector
from .scalar import FieldDescriptor, Scalar

__all__ = [
    "Polynomial",
    "CoinvariantPresentation",
    "UnsupportedBackend",
    "InvariantViolation",
    "GroupElement",
    "group_elements",
    "act",
    "divided_difference",
    "bgg_apply",
    "monomials",
    "random_polynomial",
    "linear_form",
    "vector_form",
    "reynolds",
    "GradedQuotient",
    "presentation",
    "coinvariant_basis",
    "schubert_duals",
    "chevalley_multiply",
    "coinvariant_algebra",
    "element_coords",
    "lefschetz_determinants",
    "primitive_decomposition",
    "quotient_algebra",
]


class UnsupportedBackend(ValueError):
    pass


class InvariantViolation(ArithmeticError):
    pass


# ---------------------------------------------------------------------------
# polynomials


@functools.lru_cache(maxsize=None)
def monomials(nvars: int, degree: int) -> tuple[tuple[int, ...], ...]:
    """Exponent tuples of total degree ``degree``, lex-descending."""
    if nvars == 0:
        return ((),) if degree == 0 else ()
    out = []
    for a in range(degree, -1, -1):
        for rest in monomials(nvars - 1, degree - a):
            out.append((a,) + rest)
    return tuple(out)


class Polynomial:
    """Sparse polynomial over a number field; terms map exponents to scalars."""

    __slots__ = ("field", "nvars", "terms")

    def __init__(self, K: FieldDescriptor, nvars: int, terms: dict | None = None):
        self.field = K
        self.nvars = nvars
        self.terms: dict[tuple[int, ...], Scalar] = {}
        if terms:
            for e, c in terms.items():
                if not isinstance(c, Scalar):
                    c = K(c)
                if c:
                    self.terms[tuple(e)] = c

    # -- constructors ---------------------------------------------------------
    @classmethod
    def zero(cls, K, nvars) -> "Polynomial":
        return cls(K, nvars)

    @classmethod
    def constant(cls, K, nvars, c) -> "Polynomial":
        return cls(K, nvars, {(0,) * nvars: c})

    @classmethod
    def variable(cls, K, nvars, k) -> "Polynomial":
        e = [0] * nvars
        e[k] = 1
        return cls(K, nvars, {tuple(e): K.one()})

    def _new(self, terms: dict) -> "Polynomial":
        p = Polynomial(self.field, self.nvars)
        p.terms = terms
        return p

    # -- arithmetic -----------------------------------------------------------
    def __add__(self, other) -> "Polynomial":
        other = self._coerce(other)
        t = dict(self.terms)
        for e, c in other.terms.items():
            v = t.get(e)
            v = c if v is None else v + c
            if v:
                t[e] = v
            else:
                t.pop(e, None)
        return self._new(t)

    __radd__ = __add__

    def __neg__(self) -> "Polynomial":
        return self._new({e: -c for e, c in self.terms.items()})

    def __sub__(self, other) -> "Polynomial":
        return self + (-self._coerce(other))

    def __rsub__(self, other) -> "Polynomial":
        return self._coerce(other) - self

    def __mul__(self, other) -> "Polynomial":
        if not isinstance(other, Polynomial):
            c = other if isinstance(other, Scalar) else self.field(other)
            if not c:
                return self._new({})
            return self._new({e: v * c for e, v in self.terms.items()})
        t: dict = {}
        for e1, c1 in self.terms.items():
            for e2, c2 in other.terms.items():
                e = tuple(a + b for a, b in zip(e1, e2))
                v = t.get(e)
                v = c1 * c2 if v is None else v + c1 * c2
                if v:
                    t[e] = v
                else:
                    t.pop(e, None)
        return self._new(t)

    __rmul__ = __mul__

    def __pow__(self, k: int) -> "Polynomial":
        out = Polynomial.constant(self.field, self.nvars, 1)
        base = self
        while k:
            if k & 1:
                out = out * base
            base = base * base
            k >>= 1
        return out

    def _coerce(self, other) -> "Polynomial":
        if isinstance(other, Polynomial):
            return other
        return Polynomial.constant(self.field, self.nvars, other)

    def __eq__(self, other) -> bool:
        if not isinstance(other, Polynomial):
            other = self._coerce(other)
        return self.terms == other.terms

    def __hash__(self):
        return hash(frozenset(self.terms.items()))

    def __bool__(self) -> bool:
        return bool(self.terms)

    def __repr__(self) -> str:
        if not self.terms:
            return "0"
        from .scalar import format_scalar

        parts = []
        for e in sorted(self.terms, reverse=True):
            mon = "*".join(f"x{k + 1}" + (f"^{a}" if a > 1 else "") for k, a in enumerate(e) if a)
            c = format_scalar(self.terms[e])
            parts.append(f"({c})" + (f"*{mon}" if mon else ""))
        return " + ".join(parts)

    # -- structure ------------------------------------------------------------
    @property
    def degree(self) -> int:
        return max((sum(e) for e in self.terms), default=-1)

    def is_homogeneous(self) -> bool:
        return len({sum(e) for e in self.terms}) <= 1

    def homogeneous_part(self, d: int) -> "Polynomial":
        return self._new({e: c for e, c in self.terms.items() if sum(e) == d})

    def constant_term(self) -> Scalar:
        return self.terms.get((0,) * self.nvars, self.field.zero())

    def coefficients(self, degree: int) -> list[Scalar]:
        z = self.field.zero()
        return [self.terms.get(m, z) for m in monomials(self.nvars, degree)]

    @classmethod
    def from_coefficients(cls, K, nvars, degree, coeffs) -> "Polynomial":
        return cls(K, nvars, {m: c for m, c in zip(monomials(nvars, degree), coeffs) if c})

    def substitute_linear(self, images: Sequence["Polynomial"]) -> "Polynomial":
        """Replace x_k by the linear polynomial images[k]."""
        out = Polynomial.zero(self.field, self.nvars)
        cache: dict[tuple[int, int], Polynomial] = {}

        def power(k, a):
            key = (k, a)
            if key not in cache:
                cache[key] = images[k] ** a
            return cache[key]

        acc: dict = {}
        for e, c in self.terms.items():
            term = Polynomial.constant(self.field, self.nvars, c)
            for k, a in enumerate(e):
                if a:
                    term = term * power(k, a)
            for m, v in term.terms.items():
                w = acc.get(m)
                acc[m] = v if w is None else w + v
        out.terms = {m: v for m, v in acc.items() if v}
        return out

    def divide_linear(self, form: "Polynomial") -> "Polynomial":
        """Exact quotient by a linear form; raises if there is a remainder."""
        lin = {e: c for e, c in form.terms.items()}
        if not lin or any(sum(e) != 1 for e in lin):
            raise ValueError("divisor must be a non-zero linear form")
        # eliminate on the last variable present in the divisor
        k = max(e.index(1) for e in lin)
        unit = tuple(1 if j == k else 0 for j in range(self.nvars))
        lead = lin[unit]
        rest = [(e.index(1), c) for e, c in lin.items() if e != unit]
        rem = dict(self.terms)
        quot: dict = {}
        # process monomials in decreasing x_k-degree; each step lowers it
        while rem:
            e = max(rem, key=lambda m: (m[k], m))
            if e[k] == 0:
                raise InvariantViolation("polynomial not divisible by the linear form")
            c = rem.pop(e) / lead
            q = tuple(a - 1 if j == k else a for j, a in enumerate(e))
            quot[q] = quot.get(q, self.field.zero()) + c
            for j, cj in rest:
                m = tuple(a + 1 if i == j else a for i, a in enumerate(q))
                v = rem.get(m, self.field.zero()) - c * cj
                if v:
                    rem[m] = v
                else:
                    rem.pop(m, None)
        return self._new({e: c for e, c in quot.items() if c})


def linear_form(K: FieldDescriptor, v: Sequence) -> Polynomial:
    n = len(v)
    terms = {}
    for k, c in enumerate(v):
        if c:
            e = [0] * n
            e[k] = 1
            terms[tuple(e)] = c
    return Polynomial(K, n, terms)


def vector_form(rs: RootSystem, v: Sequence) -> Polynomial:
    """The linear function y -> <v, y> in the coordinates of ``rs``."""
    if rs.form is None:
        return linear_form(rs.field, v)
    return linear_form(rs.field, linalg.matvec(rs.form, list(v), rs.field.zero()))


def random_polynomial(K: FieldDescriptor, nvars: int, degree: int, rng: random.Random,
                      homogeneous: bool = True, density: float = 1.0) -> Polynomial:
    """Seeded random polynomial with integer coefficients in [-5, 5]."""
    terms = {}
    degs = [degree] if homogeneous else range(degree + 1)
    for d in degs:
        for m in monomials(nvars, d):
            if rng.random() <= density:
                terms[m] = K(rng.randint(-5, 5))
    return Polynomial(K, nvars, terms)


# ---------------------------------------------------------------------------
# reflection action


@functools.lru_cache(maxsize=None)
def _reflection_images(rs: RootSystem, beta: Vector) -> tuple[Polynomial, ...]:
    # (s f)(y) = f(s y): x_k goes to the k-th coordinate of s(y)
    K, n = rs.field, rs.ambient_dim
    cols = []
    for j in range(n):
        e = tuple(K.one() if i == j else K.zero() for i in range(n))
        cols.append(rs.reflect(beta, e))
    return tuple(linear_form(K, [cols[j][k] for j in range(n)]) for k in range(n))


def act_reflection(rs: RootSystem, beta: Vector, f: Polynomial) -> Polynomial:
    return f.substitute_linear(_reflection_images(rs, beta))


def act(rs: RootSystem, word: Sequence[int], f: Polynomial) -> Polynomial:
    """Apply s_{w[0]} ... s_{w[-1]} to f (rightmost first)."""
    for i in reversed(word):
        f = act_reflection(rs, rs.simple[i], f)
    return f


def divided_difference(rs: RootSystem, beta: Vector, f: Polynomial) -> Polynomial:
    """A_beta(f) = (f - s_beta f) / beta."""
    if not rs.is_root(beta):
        raise ValueError("divided differences are taken along roots")
    num = f - act_reflection(rs, beta, f)
    if not num:
        return num
    return num.divide_linear(vector_form(rs, beta))


def bgg_apply(rs: RootSystem, word: Sequence[int], f: Polynomial) -> Polynomial:
    """A_{w[0]} o ... o A_{w[-1]} applied to f."""
    for i in reversed(word):
        if not f:
            return f
        f = divided_difference(rs, rs.simple[i], f)
    return f


# ---------------------------------------------------------------------------
# group elements


@dataclass(frozen=True)
class GroupElement:
    """w in W, labelled by the vector w(rho); ``word`` is reduced."""

    vector: Vector
    word: tuple[int, ...]

    @property
    def length(self) -> int:
        return len(self.word)


@functools.lru_cache(maxsize=None)
def _group_elements(rs: RootSystem, indices: tuple[int, ...] | None) -> tuple[GroupElement, ...]:
    start = rs.rho()
    gens = range(rs.rank) if indices is None else indices
    words = {start: ()}
    queue = deque([start])
    while queue:
        v = queue.popleft()
        for i in gens:
            u = rs.reflect_simple(i, v)
            if u not in words:
                words[u] = (i,) + words[v]
                queue.append(u)
    elems = [GroupElement(v, w) for v, w in words.items()]
    elems.sort(key=lambda g: (g.length, g.word))
    return tuple(elems)


def group_elements(rs: RootSystem, indices: Iterable[int] | None = None) -> list[GroupElement]:
    """All of W (or the parabolic subgroup on ``indices``) with reduced words."""
    key = None if indices is None else tuple(sorted(indices))
    return list(_group_elements(rs, key))


def reynolds(rs: RootSystem, f: Polynomial, indices: Iterable[int] | None = None) -> Polynomial:
    """Average of f over W (or a parabolic subgroup)."""
    elems = group_elements(rs, indices)
    acc = Polynomial.zero(f.field, f.nvars)
    for g in elems:
        acc = acc + act(rs, g.word, f)
    return acc * f.field.from_rational(1) * (f.field.one() / len(elems))


# ---------------------------------------------------------------------------
# invariants


def _power_sum(K, n, k, square=False) -> Polynomial:
    terms = {}
    for j in range(n):
        e = [0] * n
        e[j] = 2 * k if square else k
        terms[tuple(e)] = K.one()
    return Polynomial(K, n, terms)


def invariant_generators(rs: RootSystem) -> list[Polynomial]:
    """Closed-form fundamental invariants for types A, B, D and I2."""
    K, n, ct = rs.field, rs.ambient_dim, rs.ctype
    if ct.family == "A":
        # S_{n+1} on all n+1 coordinates; p_1 kills the trivial direction
        return [_power_sum(K, n, k) for k in range(1, n + 1)]
    if ct.family == "B":
        return [_power_sum(K, n, k, square=True) for k in range(1, n + 1)]
    if ct.family == "D":
        gens = [_power_sum(K, n, k, square=True) for k in range(1, n)]
        gens.append(Polynomial(K, n, {(1,) * n: K.one()}))
        return gens
    if ct.family == "I":
        # the norm <y, y> and an orbit power sum
        ginv = linalg.inverse(rs.form, K.one())
        x = [linear_form(K, [K.one() if j == k else K.zero() for j in range(2)]) for k in range(2)]
        q = sum((x[i] * x[j] * rs.gram[i][j] for i in range(2) for j in range(2)),
                Polynomial.zero(K, 2))
        # omega_1 in the simple-root basis: the first column of G^{-1} times 2/<a1,a1>
        w1 = tuple(ginv[k][0] * 2 / rs.gram[0][0] for k in range(2))
        seen, orbit = {w1}, [w1]
        for v in orbit:
            for i in range(2):
                u = rs.reflect_simple(i, v)
                if u not in seen:
                    seen.add(u)
                    orbit.append(u)
        m = ct.m
        # the linear function y -> <v, y> as a polynomial in the x-coordinates
        acc = Polynomial.zero(K, 2)
        for v in orbit:
            acc = acc + vector_form(rs, v) ** m
        return [q, acc]
    raise UnsupportedBackend(
        f"no closed-form invariants for type {ct}; use the quotient-poset route")


# ---------------------------------------------------------------------------
# graded quotients S / J by linear algebra


class _Echelon:
    """Incrementally maintained row-echelon basis of a subspace of K^N."""

    def __init__(self, N: int, K: FieldDescriptor):
        self.N = N
        self.K = K
        self.rows: dict[int, list] = {}  # pivot -> row with 1 at pivot

    def reduce(self, v: list) -> list:
        v = list(v)
        for p, row in self.rows.items():
            c = v[p]
            if c:
                v = [a - c * b if b else a for a, b in zip(v, row)]
        return v

    def add(self, v: list) -> bool:
        v = self.reduce(v)
        p = next((k for k, a in enumerate(v) if a), None)
        if p is None:
            return False
        inv = self.K.one() / v[p]
        v = [a * inv if a else a for a in v]
        for q, row in self.rows.items():
            c = row[p]
            if c:
                self.rows[q] = [a - c * b if b else a for a, b in zip(row, v)]
        self.rows[p] = v
        return True

    @property
    def dim(self) -> int:
        return len(self.rows)


@dataclass
class GradedQuotient:
    """S / J for a homogeneous ideal J, degree by degree up to ``top``.

    For each degree: the monomial list, a basis of J^i (echelon rows), the
    chosen complement monomials and the coordinate map S^i -> (S/J)^i.
    """

    field: FieldDescriptor
    nvars: int
    top: int
    complement: list[list[tuple[int, ...]]] = field(default_factory=list)
    _ideal: list[_Echelon] = field(default_factory=list, repr=False)
    _coord: list = field(default_factory=list, repr=False)

    @property
    def dims(self) -> list[int]:
        return [len(c) for c in self.complement]

    @classmethod
    def build(cls, K: FieldDescriptor, nvars: int, generators_by_degree, top: int | None = None,
              max_degree: int = 64) -> "GradedQuotient":
        """``generators_by_degree(d)`` returns homogeneous ideal elements of degree d.

        Building stops at the first degree where the quotient vanishes (or at
        ``top`` if given).
        """
        q = cls(K, nvars, -1)
        prev: _Echelon | None = None
        d = 0
        while d <= max_degree and (top is None or d <= top):
            mons = monomials(nvars, d)
            index = {m: k for k, m in enumerate(mons)}
            ech = _Echelon(len(mons), K)
            if prev is not None:
                # x_k * J^{d-1}
                prev_mons = monomials(nvars, d - 1)
                for row in prev.rows.values():
                    for k in range(nvars):
                        v = [K.zero()] * len(mons)
                        for m, c in zip(prev_mons, row):
                            if c:
                                mm = tuple(a + 1 if j == k else a for j, a in enumerate(m))
                                v[index[mm]] = c
                        ech.add(v)
            for g in generators_by_degree(d):
                ech.add(g.coefficients(d))
            comp_ech = _Echelon(len(mons), K)
            for p, row in ech.rows.items():
                comp_ech.rows[p] = row
            chosen = []
            for m in mons:
                v = [K.zero()] * len(mons)
                v[index[m]] = K.one()
                if comp_ech.add(v):
                    chosen.append(m)
            if not chosen and top is None:
                break
            q.complement.append(chosen)
            q._ideal.append(ech)
            q._coord.append(None)
            q.top = d
            prev = ech
            d += 1
        return q

    def _coordinate_matrix(self, d: int):
        if self._coord[d] is None:
            K = self.field
            mons = monomials(self.nvars, d)
            index = {m: k for k, m in enumerate(mons)}
            cols = []
            for m in self.complement[d]:
                v = [K.zero()] * len(mons)
                v[index[m]] = K.one()
                cols.append(v)
            cols.extend(self._ideal[d].rows.values())
            M = linalg.transpose(cols)
            self._coord[d] = linalg.inverse(M, K.one())
        return self._coord[d]

    def coords(self, f: Polynomial, d: int | None = None) -> list[Scalar]:
        """Coordinates of the class of a homogeneous f in the complement basis."""
        if d is None:
            d = f.degree if f else 0
        K = self.field
        if d > self.top or d < 0:
            return []
        n = len(self.complement[d])
        if not f:
            return [K.zero()] * n
        if not f.is_homogeneous() or f.degree != d:
            raise ValueError("coords expects a homogeneous polynomial of the given degree")
        inv = self._coordinate_matrix(d)
        full = linalg.matvec(inv, f.coefficients(d), K.zero())
        return full[:n]

    def basis_polynomial(self, d: int, k: int) -> Polynomial:
        return Polynomial(self.field, self.nvars, {self.complement[d][k]: self.field.one()})

    def from_coords(self, d: int, coords: Sequence[Scalar]) -> Polynomial:
        return Polynomial(self.field, self.nvars,
                          {m: c for m, c in zip(self.complement[d], coords) if c})

    def in_ideal(self, f: Polynomial) -> bool:
        for d in {sum(e) for e in f.terms}:
            part = f.homogeneous_part(d)
            if d > self.top:
                continue
            if any(self.coords(part, d)):
                return False
        return True


# ---------------------------------------------------------------------------
# coinvariant presentation


@dataclass
class CoinvariantPresentation:
    rs: RootSystem
    generators: list[Polynomial]
    quotient: GradedQuotient
    _elements: list[GroupElement] = field(default_factory=list, repr=False)
    _duals: dict = field(default_factory=dict, repr=False)

    @classmethod
    def build(cls, rs: RootSystem) -> "CoinvariantPresentation":
        gens = invariant_generators(rs)
        for g in gens:
            for a in rs.simple:
                if act_reflection(rs, a, g) != g:
                    raise InvariantViolation(f"generator {g} is not W-invariant")
        K, n = rs.field, rs.ambient_dim
        by_deg: dict[int, list[Polynomial]] = {}
        for g in gens:
            by_deg.setdefault(g.degree, []).append(g)
        quotient = GradedQuotient.build(K, n, lambda d: by_deg.get(d, []))
        pres = cls(rs, gens, quotient)
        if quotient.top != rs.positive_count:
            raise InvariantViolation(
                f"top degree {quotient.top} differs from |Phi+| = {rs.positive_count}")
        return pres

    @property
    def field(self) -> FieldDescriptor:
        return self.rs.field

    @property
    def nvars(self) -> int:
        return self.rs.ambient_dim

    @property
    def dims(self) -> list[int]:
        return self.quotient.dims

    @property
    def top(self) -> int:
        return self.quotient.top

    def basis(self, i: int) -> list[Polynomial]:
        if i < 0 or i > self.top:
            return []
        return [self.quotient.basis_polynomial(i, k) for k in range(self.dims[i])]

    def coords(self, f: Polynomial, d: int | None = None) -> list[Scalar]:
        return self.quotient.coords(f, d)

    def elements(self) -> list[GroupElement]:
        if not self._elements:
            self._elements = group_elements(self.rs)
        return self._elements

    def elements_of_length(self, i: int) -> list[GroupElement]:
        return [g for g in self.elements() if g.length == i]

    # -- Schubert duals --------------------------------------------------------
    def evaluation_matrix(self, i: int) -> list[list[Scalar]]:
        """E[w][b] = A_w(b) for l(w) = i and complement basis b of degree i."""
        rows = []
        for g in self.elements_of_length(i):
            row = []
            for b in self.basis(i):
                val = bgg_apply(self.rs, g.word, b)
                if val and val.degree != 0:
                    raise InvariantViolation("A_w did not land in degree 0")
                row.append(val.constant_term() if val else self.field.zero())
            rows.append(row)
        return rows

    def schubert_coords(self, i: int) -> dict[tuple[int, ...], list[Scalar]]:
        """Coordinates (complement basis) of X_w for every w of length i."""
        if i not in self._duals:
            E = self.evaluation_matrix(i)
            if len(E) != self.dims[i]:
                raise InvariantViolation(
                    f"{len(E)} elements of length {i} but dim (S_W)^{i} = {self.dims[i]}")
            try:
                inv = linalg.inverse(E, self.field.one())
            except ZeroDivisionError as exc:
                raise InvariantViolation(f"evaluation matrix singular in degree {i}") from exc
            elems = self.elements_of_length(i)
            self._duals[i] = {g.word: [inv[r][c] for r in range(len(inv))]
                              for c, g in enumerate(elems)}
        return self._duals[i]

    def schubert_class(self, g: GroupElement) -> Polynomial:
        return self.quotient.from_coords(g.length, self.schubert_coords(g.length)[g.word])

    def dual_functional(self, g: GroupElement, f: Polynomial) -> Scalar:
        """The functional A_w (bar) on a homogeneous class of degree l(w)."""
        val = bgg_apply(self.rs, g.word, f)
        return val.constant_term() if val else self.field.zero()

    # -- Lefschetz matrices in Schubert coordinates ------------------------------
    def lefschetz_matrix(self, l: Vector, i: int, j: int) -> list[list[Scalar]]:
        """Entry (v, u) = A_v(l^(j-i) X_u) for l(u) = i, l(v) = j."""
        lp = vector_form(self.rs, l) ** (j - i)
        cols = self.elements_of_length(i)
        rows = self.elements_of_length(j)
        out = [[None] * len(cols) for _ in rows]
        for c, u in enumerate(cols):
            f = lp * self.schubert_class(u)
            for r, v in enumerate(rows):
                out[r][c] = self.dual_functional(v, f)
        return out

    def chevalley_multiply(self, chi: Vector, u: GroupElement) -> list[tuple[GroupElement, Scalar]]:
        """chi * X_u = sum over covers u -> v = s_beta u of beta^(u(chi)) X_v."""
        rs = self.rs
        uchi = rs.apply_word(u.word, chi)
        by_vec = {g.vector: g for g in self.elements()}
        out = []
        for beta in rs.positive:
            v = by_vec[rs.reflect(beta, u.vector)]
            if v.length == u.length + 1:
                out.append((v, rs.coroot_eval(beta, uchi)))
        out.sort(key=lambda t: (t[0].length, t[0].word))
        return out

    def multiply_in_schubert_basis(self, chi: Vector, u: GroupElement) -> list[tuple[GroupElement, Scalar]]:
        """Same product by explicit multiplication and dual evaluation."""
        f = vector_form(self.rs, chi) * self.schubert_class(u)
        out = []
        for v in self.elements_of_length(u.length + 1):
            c = self.dual_functional(v, f)
            if c:
                out.append((v, c))
        return out

    def is_theta_invariant_class(self, g: GroupElement, theta: Iterable[int]) -> bool:
        """X_g is fixed by s_alpha (alpha in theta) in the quotient."""
        X = self.schubert_class(g)
        for i in theta:
            diff = act_reflection(self.rs, self.rs.simple[i], X) - X
            if diff and any(self.coords(diff, g.length)):
                return False
        return True


def in_min_coset_reps(rs: RootSystem, g: GroupElement, theta: Iterable[int]) -> bool:
    """g in W^Theta iff g(alpha) > 0 for every alpha in Theta."""
    for i in theta:
        v = rs.apply_word(g.word, rs.simple[i])
        if rs.positive_index(v) is None:
            return False
    return True


# ---------------------------------------------------------------------------
# module-level operations


def quotient_algebra(q: GradedQuotient, name: str = "") -> GradedAlgebra:
    """Multiplication tables of S/J over its complement monomial basis."""
    K = q.field
    gens = []
    for m1 in q.complement[1] if q.top >= 1 else []:
        x = Polynomial(K, q.nvars, {m1: K.one()})
        tables = []
        for i in range(q.top):
            cols = [q.coords(x * q.basis_polynomial(i, k), i + 1) for k in range(q.dims[i])]
            tables.append(linalg.transpose(cols) if cols and cols[0] else
                          linalg.zeros(q.dims[i + 1], q.dims[i], K.zero()))
        gens.append(tables)
    return GradedAlgebra(K, list(q.dims), gens, name=name)


def degree_one_coords(q: GradedQuotient, f: Polynomial) -> list[Scalar]:
    return q.coords(f, 1)


def coinvariant_basis(rs: RootSystem, i: int) -> list[Polynomial]:
    """Complement monomials spanning (S_W)^i; empty past the top degree."""
    return presentation(rs).basis(i)


@functools.lru_cache(maxsize=None)
def presentation(rs: RootSystem) -> CoinvariantPresentation:
    return CoinvariantPresentation.build(rs)


def schubert_duals(pres: CoinvariantPresentation) -> dict[int, dict[tuple[int, ...], list[Scalar]]]:
    """X_w coordinates for every degree, after checking the dual-basis property."""
    out = {}
    for i in range(pres.top + 1):
        coords = pres.schubert_coords(i)
        for g in pres.elements_of_length(i):
            X = pres.schubert_class(g)
            for h in pres.elements_of_length(i):
                want = pres.field.one() if h.word == g.word else pres.field.zero()
                if pres.dual_functional(h, X) != want:
                    raise InvariantViolation(f"dual-basis property fails in degree {i}")
        out[i] = coords
    return out


def chevalley_multiply(pres: CoinvariantPresentation, chi: Vector,
                       u: GroupElement) -> list[tuple[GroupElement, Scalar]]:
    """Cover expansion of chi * X_u, cross-checked against explicit multiplication."""
    by_covers = [(v, c) for v, c in pres.chevalley_multiply(chi, u) if c]
    if u.length < pres.top:
        direct = pres.multiply_in_schubert_basis(chi, u)
        if sorted((v.word, c) for v, c in by_covers) != sorted((v.word, c) for v, c in direct):
            raise InvariantViolation("Chevalley formula disagrees with direct multiplication")
    return by_covers


def coinvariant_algebra(pres: CoinvariantPresentation) -> GradedAlgebra:
    return quotient_algebra(pres.quotient, name=f"S_W({pres.rs.ctype.label})")


def element_coords(pres: CoinvariantPresentation, v: Vector) -> list[Scalar]:
    """Degree-1 coordinates of the class of the form of v."""
    return pres.quotient.coords(vector_form(pres.rs, v), 1)


def lefschetz_determinants(pres: CoinvariantPresentation, l: Vector) -> LefschetzCheck:
    A = coinvariant_algebra(pres)
    return strong_lefschetz_check(A, element_coords(pres, l))


def primitive_decomposition(obj, l) -> PrimitiveDecomposition:
    """Primitive subspaces for a presentation (l a vector) or an abstract algebra."""
    if isinstance(obj, CoinvariantPresentation):
        return _primitive_decomposition(coinvariant_algebra(obj), element_coords(obj, l))
    return _primitive_decomposition(obj, l)
