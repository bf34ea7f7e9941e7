"""
Root systems of the finite reflection groups, built by reflection closure.

Every type is realised over an exact field:

====== ===================================== ==================
type   ambient coordinates                    field
====== ===================================== ==================
A_n    sum-zero hyperplane of R^(n+1)        Q
B_n    R^n, short simple root e_n            Q
D_n    R^n                                   Q
E_6-8  R^8, Bourbaki/Humphreys conventions   Q
F_4    R^4, Bourbaki conventions             Q
H_3    R^3, Humphreys' icosahedral roots     Q(sqrt5)
H_4    R^4, Humphreys' 120 unit roots        Q(sqrt5)
I2(m)  plane in the simple-root basis        Q(cos m)
====== ===================================== ==================

For I2(m) the ambient inner product is not Euclidean: the plane is written in
the basis of the two simple roots, with Gram matrix [[2, -t], [-t, 2]] where
t = 2cos(pi/m), so that all coordinates stay in Q(t).
"""
from __future__ import annotations

import functools
import re
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Sequence

from . import linalg
from .scalar import QQ, FieldDescriptor, Scalar, cosine_minimal_polynomial, field_create, parse_scalar, sign

Vector = tuple  # tuple[Scalar, ...]

__all__ = [
    "CoxeterType",
    "RootSystem",
    "ThetaSubset",
    "RootSystemError",
    "build_root_system",
    "parse_type",
    "standard_theta",
    "group_order",
    "fundamental_degrees",
]


class RootSystemError(ValueError):
    pass


# ---------------------------------------------------------------------------
# types

@dataclass(frozen=True)
class CoxeterType:
    family: str
    rank: int
    m: int = 0  # only for I2

    def __post_init__(self):
        f, n = self.family, self.rank
        ok = {
            "A": n >= 1,
            "B": n >= 2,
            "D": n >= 4,
            "E": n in (6, 7, 8),
            "F": n == 4,
            "H": n in (3, 4),
            "I": n == 2 and self.m >= 3,
        }.get(f)
        if not ok:
            raise RootSystemError(f"invalid Coxeter type {self.label}")

    @property
    def label(self) -> str:
        if self.family == "I":
            return f"I2({self.m})"
        return f"{self.family}{self.rank}"

    def __str__(self) -> str:
        return self.label


def parse_type(text: str | CoxeterType) -> CoxeterType:
    """``"E8"``, ``"A3"``, ``"I2(5)"`` -> :class:`CoxeterType`."""
    if isinstance(text, CoxeterType):
        return text
    s = text.strip().upper().replace(" ", "")
    m = re.match(r"^I_?2\((\d+)\)$", s) or re.match(r"^I2_(\d+)$", s)
    if m:
        return CoxeterType("I", 2, int(m.group(1)))
    m = re.match(r"^([ABDEFH])_?(\d+)$", s)
    if not m:
        raise RootSystemError(f"cannot parse Coxeter type {text!r}")
    return CoxeterType(m.group(1), int(m.group(2)))


def fundamental_degrees(ct: CoxeterType) -> list[int]:
    n = ct.rank
    if ct.family == "A":
        return list(range(2, n + 2))
    if ct.family == "B":
        return [2 * k for k in range(1, n + 1)]
    if ct.family == "D":
        return sorted([2 * k for k in range(1, n)] + [n])
    if ct.family == "E":
        return {6: [2, 5, 6, 8, 9, 12], 7: [2, 6, 8, 10, 12, 14, 18],
                8: [2, 8, 12, 14, 18, 20, 24, 30]}[n]
    if ct.family == "F":
        return [2, 6, 8, 12]
    if ct.family == "H":
        return {3: [2, 6, 10], 4: [2, 12, 20, 30]}[n]
    return [2, ct.m]


def group_order(ct: CoxeterType) -> int:
    out = 1
    for d in fundamental_degrees(ct):
        out *= d
    return out


# ---------------------------------------------------------------------------
# seeds


def _unit(n: int, i: int, c=1) -> list:
    v = [0] * n
    v[i] = c
    return v


def _e8_simple() -> list[list[Fraction]]:
    h = Fraction(1, 2)
    a1 = [h, -h, -h, -h, -h, -h, -h, h]
    a2 = [1, 1, 0, 0, 0, 0, 0, 0]
    rest = []
    for k in range(6):  # a3 = e2 - e1, ..., a8 = e7 - e6
        v = [0] * 8
        v[k + 1] = 1
        v[k] = -1
        rest.append(v)
    return [a1, a2] + rest


# Simple systems inside Humphreys' H3 / H4 root sets (a = (1+sqrt5)/4,
# b = (-1+sqrt5)/4).  Node order follows the diagram o-5-o-o(-o).
_H_SIMPLE = {
    3: [
        "1/4 + 1/4*g | -1/2 | -1/4 + 1/4*g",
        "1/4 - 1/4*g | 1/4 + 1/4*g | -1/2",
        "-1/2 | 1/4 - 1/4*g | 1/4 + 1/4*g",
    ],
    4: [
        "-1/2 | 1/4 + 1/4*g | 0 | 1/4 - 1/4*g",
        "1/2 | -1/2 | -1/2 | 1/2",
        "-1/4 + 1/4*g | 0 | 1/4 + 1/4*g | -1/2",
        "-1/4 - 1/4*g | 1/4 - 1/4*g | 0 | 1/2",
    ],
}


def _seed(ct: CoxeterType) -> tuple[FieldDescriptor, int, list[list], list[list] | None]:
    f, n = ct.family, ct.rank
    if f == "A":
        dim = n + 1
        simple = [_unit(dim, i) for i in range(n)]
        for i in range(n):
            simple[i][i + 1] = -1
        return QQ, dim, simple, None
    if f in "BD":
        simple = []
        for i in range(n - 1):
            v = _unit(n, i)
            v[i + 1] = -1
            simple.append(v)
        if f == "B":
            simple.append(_unit(n, n - 1))
        else:
            v = _unit(n, n - 2)
            v[n - 1] = 1
            simple.append(v)
        return QQ, n, simple, None
    if f == "E":
        return QQ, 8, _e8_simple()[:n], None
    if f == "F":
        h = Fraction(1, 2)
        simple = [[0, 1, -1, 0], [0, 0, 1, -1], [0, 0, 0, 1], [h, -h, -h, -h]]
        return QQ, 4, simple, None
    if f == "H":
        K = field_create("quadratic", 5)
        simple = [[parse_scalar(c, K) for c in row.split("|")] for row in _H_SIMPLE[n]]
        return K, n, simple, None
    # I2(m)
    K = field_create("cosine", ct.m)
    mp = cosine_minimal_polynomial(ct.m)
    t = K.gen() if len(mp) > 2 else K(-mp[0])  # m = 3 collapses to Q, theta = 1
    form = [[K.from_rational(2), -t], [-t, K.from_rational(2)]]
    return K, 2, [[1, 0], [0, 1]], form


# ---------------------------------------------------------------------------
# vector helpers


def vadd(x: Vector, y: Vector) -> Vector:
    return tuple(a + b for a, b in zip(x, y))


def vsub(x: Vector, y: Vector) -> Vector:
    return tuple(a - b for a, b in zip(x, y))


def vscale(c, x: Vector) -> Vector:
    return tuple(c * a for a in x)


def vneg(x: Vector) -> Vector:
    return tuple(-a for a in x)


def _cmp_scalar_seq(a: Sequence[Scalar], b: Sequence[Scalar]) -> int:
    for x, y in zip(a, b):
        s = sign(x - y)
        if s:
            return s
    return 0


# ---------------------------------------------------------------------------
# the root system


@dataclass(eq=False)
class RootSystem:
    """Simple roots, positive roots and the ambient inner product of one type.

    ``positive`` is ordered deg-lex in simple-root coordinates (height first),
    and ``roots`` lists the positive roots followed by their negatives.
    """

    ctype: CoxeterType
    field: FieldDescriptor
    ambient_dim: int
    simple: list[Vector]
    positive: list[Vector]
    simple_coords: list[tuple]  # simple-root coordinates of each positive root
    form: list[list[Scalar]] | None = None
    gram: list[list[Scalar]] = field(default_factory=list)
    _pos_index: dict = field(default_factory=dict, repr=False)
    _coroot_rows: list = field(default_factory=list, repr=False)

    # -- basics ---------------------------------------------------------------
    @property
    def rank(self) -> int:
        return len(self.simple)

    @property
    def roots(self) -> list[Vector]:
        return self.positive + [vneg(b) for b in self.positive]

    @property
    def positive_count(self) -> int:
        return len(self.positive)

    def zero_vector(self) -> Vector:
        return (self.field.zero(),) * self.ambient_dim

    def vector(self, coords: Iterable) -> Vector:
        return tuple(c if isinstance(c, Scalar) and c.field == self.field else self.field(c)
                     for c in coords)

    def inner(self, x: Vector, y: Vector) -> Scalar:
        if self.form is None:
            acc = self.field.zero()
            for a, b in zip(x, y):
                if a and b:
                    acc = acc + a * b
            return acc
        return sum((x[i] * self.form[i][j] * y[j]
                    for i in range(len(x)) for j in range(len(y)) if x[i] and y[j]),
                   self.field.zero())

    def positive_index(self, beta: Vector) -> int | None:
        return self._pos_index.get(beta)

    def root_index(self, beta: Vector) -> int:
        """Index into :attr:`roots`; negatives follow the positives."""
        i = self._pos_index.get(beta)
        if i is not None:
            return i
        j = self._pos_index.get(vneg(beta))
        if j is None:
            raise RootSystemError(f"{beta} is not a root")
        return j + len(self.positive)

    def is_root(self, beta: Vector) -> bool:
        return beta in self._pos_index or vneg(beta) in self._pos_index

    # -- coroots and reflections -------------------------------------------------
    def _coroot_row(self, beta: Vector) -> tuple:
        i = self._pos_index.get(beta)
        neg = False
        if i is None:
            i = self._pos_index.get(vneg(beta))
            neg = True
        if i is None:
            raise RootSystemError(f"{beta} is not a root")
        row = self._coroot_rows[i]
        return tuple(-c for c in row) if neg else row

    def coroot_row(self, index: int) -> tuple:
        """Linear functional of the coroot of positive root ``index``."""
        return self._coroot_rows[index]

    def coroot_eval(self, beta: Vector, x: Vector) -> Scalar:
        """2 <x, beta> / <beta, beta>."""
        row = self._coroot_row(beta)
        acc = self.field.zero()
        for c, a in zip(row, x):
            if c and a:
                acc = acc + c * a
        return acc

    def reflect(self, beta: Vector, x: Vector) -> Vector:
        """s_beta(x) = x - beta^(x) beta."""
        c = self.coroot_eval(beta, x)
        if not c:
            return tuple(x)
        return tuple(a - c * b for a, b in zip(x, beta))

    def reflect_simple(self, i: int, x: Vector) -> Vector:
        return self.reflect(self.simple[i], x)

    def apply_word(self, word: Sequence[int], x: Vector) -> Vector:
        """Apply s_{w[0]} s_{w[1]} ... s_{w[-1]} to x (rightmost acts first)."""
        for i in reversed(word):
            x = self.reflect_simple(i, x)
        return x

    def height(self, beta: Vector) -> Scalar:
        i = self._pos_index.get(beta)
        if i is None:
            raise RootSystemError("height is defined for positive roots only")
        return sum(self.simple_coords[i], self.field.zero())

    def coords_in_simple_basis(self, x: Vector) -> tuple:
        rhs = [self.inner(a, x) for a in self.simple]
        return tuple(linalg.solve(self.gram, rhs))

    # -- distinguished vectors ------------------------------------------------
    def weight_from_coroot_values(self, values: Sequence) -> Vector:
        """The vector l in span(Phi) with alpha_i^(l) = values[i] for each simple root.

        values = (1, ..., 1) gives rho.
        """
        if len(values) != self.rank:
            raise RootSystemError(f"expected {self.rank} coroot values, got {len(values)}")
        K = self.field
        cartan = [[self.coroot_eval(self.simple[i], self.simple[j]) for j in range(self.rank)]
                  for i in range(self.rank)]
        coeffs = linalg.solve(cartan, [v if isinstance(v, Scalar) else K(v) for v in values])
        acc = self.zero_vector()
        for c, a in zip(coeffs, self.simple):
            if c:
                acc = vadd(acc, vscale(c, a))
        return acc

    def rho(self) -> Vector:
        acc = self.zero_vector()
        for b in self.positive:
            acc = vadd(acc, b)
        return vscale(Fraction(1, 2), acc)

    def longest_word(self) -> list[int]:
        """A reduced word for w0, found by walking rho to -rho."""
        x = self.rho()
        word: list[int] = []
        while True:
            for i, a in enumerate(self.simple):
                if sign(self.coroot_eval(a, x)) > 0:
                    x = self.reflect(a, x)
                    word.append(i)
                    break
            else:
                break
        word.reverse()
        return word

    @functools.cached_property
    def _w0_word(self) -> list[int]:
        return self.longest_word()

    def w0(self, x: Vector) -> Vector:
        return self.apply_word(self._w0_word, x)

    def highest_root(self) -> Vector:
        return self.positive[-1]

    def theta(self, indices: Iterable[int]) -> "ThetaSubset":
        return ThetaSubset(self, tuple(sorted(set(indices))))

    def to_json(self) -> dict:
        from .scalar import scalar_to_json

        def vec(v):
            return [scalar_to_json(c) for c in v]

        return {
            "type": self.ctype.label,
            "field": self.field.tag,
            "simple": [vec(v) for v in self.simple],
            "positive": [vec(v) for v in self.positive],
            "gram": [vec(r) for r in self.gram],
        }


@dataclass
class ThetaSubset:
    """A subset of simple-root indices with its parabolic data."""

    rs: RootSystem
    indices: tuple[int, ...]

    def __post_init__(self):
        if any(not 0 <= i < self.rs.rank for i in self.indices):
            raise RootSystemError(f"theta {self.indices} out of range for {self.rs.ctype}")

    @functools.cached_property
    def positive(self) -> list[int]:
        """Indices of the positive roots lying in span(Theta)."""
        keep = set(self.indices)
        return [k for k, c in enumerate(self.rs.simple_coords)
                if all(not x for j, x in enumerate(c) if j not in keep)]

    @functools.cached_property
    def complement(self) -> list[int]:
        inside = set(self.positive)
        return [k for k in range(self.rs.positive_count) if k not in inside]

    def rho_vectors(self) -> tuple[Vector, Vector, Vector]:
        """(rho, rho_Theta, rho_bar) with rho = rho_Theta + rho_bar."""
        rs = self.rs
        half = Fraction(1, 2)
        rho_t = rs.zero_vector()
        for k in self.positive:
            rho_t = vadd(rho_t, rs.positive[k])
        rho_b = rs.zero_vector()
        for k in self.complement:
            rho_b = vadd(rho_b, rs.positive[k])
        rho_t, rho_b = vscale(half, rho_t), vscale(half, rho_b)
        rho = rs.rho()
        if vadd(rho_t, rho_b) != rho:
            raise RootSystemError("rho != rho_Theta + rho_bar")
        for i in self.indices:
            if rs.reflect_simple(i, rho_b) != rho_b:
                raise RootSystemError("rho_bar is not fixed by W_Theta")
        return rho, rho_t, rho_b

    @property
    def rho_bar(self) -> Vector:
        return self.rho_vectors()[2]

    def subtype_order(self) -> int:
        """|W_Theta|, counted by enumerating the orbit of rho_Theta-regular vector."""
        rs = self.rs
        if not self.indices:
            return 1
        # a vector regular for W_Theta: rho itself restricted to Theta walls
        start = rs.rho()
        seen = {start}
        frontier = [start]
        while frontier:
            nxt = []
            for v in frontier:
                for i in self.indices:
                    u = rs.reflect_simple(i, v)
                    if u not in seen:
                        seen.add(u)
                        nxt.append(u)
            frontier = nxt
        return len(seen)


# ---------------------------------------------------------------------------
# construction


def _closure(simple: list[Vector], reflect) -> set:
    roots = set(simple)
    frontier = list(simple)
    while frontier:
        nxt = []
        for v in frontier:
            for a in simple:
                u = reflect(a, v)
                if u not in roots:
                    roots.add(u)
                    nxt.append(u)
        frontier = nxt
    return roots


@functools.lru_cache(maxsize=None)
def _build(ct: CoxeterType) -> RootSystem:
    K, dim, simple_raw, form = _seed(ct)
    simple = [tuple(c if isinstance(c, Scalar) else K(c) for c in v) for v in simple_raw]
    rs = RootSystem(ct, K, dim, simple, [], [], form=form)
    rs.gram = [[rs.inner(a, b) for b in simple] for a in simple]

    def reflect(a: Vector, v: Vector) -> Vector:
        c = 2 * rs.inner(v, a) / rs.inner(a, a)
        return tuple(x - c * y for x, y in zip(v, a)) if c else v

    roots = _closure(simple, reflect)
    gram_inv = linalg.inverse(rs.gram, K.one())
    pos = []
    for v in roots:
        rhs = [rs.inner(a, v) for a in simple]
        coords = tuple(linalg.matvec(gram_inv, rhs, K.zero()))
        signs = {sign(c) for c in coords} - {0}
        if len(signs) != 1:
            raise RootSystemError(f"root {v} is neither positive nor negative")
        if signs == {1}:
            pos.append((coords, v))

    def key_cmp(p, q):
        hp = sum(p[0], K.zero())
        hq = sum(q[0], K.zero())
        s = sign(hp - hq)
        return s if s else _cmp_scalar_seq(p[0], q[0])

    pos.sort(key=functools.cmp_to_key(key_cmp))
    rs.positive = [v for _, v in pos]
    rs.simple_coords = [c for c, _ in pos]
    rs._pos_index = {v: i for i, v in enumerate(rs.positive)}
    rows = []
    for b in rs.positive:
        n2 = rs.inner(b, b)
        if form is None:
            rows.append(tuple(2 * x / n2 for x in b))
        else:
            gb = linalg.matvec(form, b, K.zero())
            rows.append(tuple(2 * x / n2 for x in gb))
    rs._coroot_rows = rows
    return rs


def build_root_system(ctype: CoxeterType | str) -> RootSystem:
    """Root system of a Coxeter type, cached per type."""
    return _build(parse_type(ctype))


_STANDARD_THETA = {
    # family -> (theta as 0-based simple indices, label of W_Theta)
    "A": lambda n: (tuple(range(1, n)), f"A{n - 1}" if n > 1 else "A0"),
    "B": lambda n: (tuple(range(1, n)), f"B{n - 1}" if n > 2 else "A1"),
    "D": lambda n: (tuple(range(1, n)), f"D{n - 1}" if n > 4 else "A3"),
    "E": lambda n: ({6: (1, 2, 3, 4, 5), 7: tuple(range(6)), 8: tuple(range(7))}[n],
                    {6: "D5", 7: "E6", 8: "E7"}[n]),
    "F": lambda n: ((0, 1, 2), "B3"),
    "H": lambda n: ({3: (0, 1), 4: (0, 1, 2)}[n], {3: "I2(5)", 4: "H3"}[n]),
    "I": lambda n: ((0,), "A1"),
}


def standard_theta(ct: CoxeterType | str) -> tuple[tuple[int, ...], str]:
    """The maximal parabolic used for each type in the induction."""
    ct = parse_type(ct)
    return _STANDARD_THETA[ct.family](ct.rank)
