"""
Exact arithmetic in real number fields Q(theta) with a single generator.

Three kinds of field are supported:

* ``Q``            the rationals,
* ``Q(sqrt<d>)``   theta = +sqrt(d), d square-free,
* ``Q(cos<m>)``    theta = 2cos(pi/m), m >= 3.

A :class:`Scalar` is a reduced coefficient vector ``(c0, c1, ...)`` meaning
``c0 + c1*theta + c2*theta^2 + ...``.  Arithmetic is reduced modulo the monic
minimal polynomial of theta, so equality is coefficient-wise.

>>> K = field_create("quadratic", 5)
>>> g = K.gen()
>>> str((1 + g) / 2 * ((-1 + g) / 2))
'1'
>>> sign(2 - g)
-1
"""
from __future__ import annotations

import math
import os
import re
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from typing import Iterable, Sequence, Union

__all__ = [
    "FieldDescriptor",
    "Scalar",
    "ScalarError",
    "FieldMismatchError",
    "ScalarParseError",
    "QQ",
    "field_create",
    "field_from_tag",
    "cyclotomic_polynomial",
    "cosine_minimal_polynomial",
    "sign",
    "parse_scalar",
    "format_scalar",
    "scalar_to_json",
    "scalar_from_json",
    "as_scalar",
]

DEFAULT_PRECISION_BITS = 128


class ScalarError(ValueError):
    """Bad field parameters or an impossible scalar operation."""


class FieldMismatchError(ScalarError):
    pass


class ScalarParseError(ScalarError):
    def __init__(self, message: str, text: str, position: int):
        super().__init__(f"{message} at position {position} in {text!r}")
        self.text = text
        self.position = position


# ---------------------------------------------------------------------------
# integer polynomials (coefficient lists, constant term first)


def _poly_mul(a: Sequence[int], b: Sequence[int]) -> list[int]:
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                out[i + j] += x * y
    return out


def _poly_divexact(a: Sequence[int], b: Sequence[int]) -> list[int]:
    """Exact division of integer polynomials; b must be monic."""
    a = list(a)
    assert b[-1] == 1
    q = [0] * (len(a) - len(b) + 1)
    for k in range(len(q) - 1, -1, -1):
        c = a[k + len(b) - 1]
        q[k] = c
        if c:
            for j, y in enumerate(b):
                a[k + j] -= c * y
    if any(a):
        raise ArithmeticError("inexact polynomial division")
    return q


@lru_cache(maxsize=None)
def cyclotomic_polynomial(n: int) -> tuple[int, ...]:
    """Coefficients of the n-th cyclotomic polynomial, constant term first."""
    if n < 1:
        raise ScalarError("cyclotomic index must be positive")
    num = [-1] + [0] * (n - 1) + [1]
    for d in range(1, n):
        if n % d == 0:
            num = _poly_divexact(num, cyclotomic_polynomial(d))
    return tuple(num)


@lru_cache(maxsize=None)
def cosine_minimal_polynomial(m: int) -> tuple[int, ...]:
    """Minimal polynomial of 2cos(pi/m), obtained from the 2m-th cyclotomic
    polynomial by the substitution y = z + 1/z.

    >>> cosine_minimal_polynomial(5)
    (-1, -1, 1)
    """
    if m < 2:
        raise ScalarError("cosine field needs m >= 2")
    phi = cyclotomic_polynomial(2 * m)
    k = (len(phi) - 1) // 2
    # z^j + z^-j as a polynomial in y (Dickson-type recursion)
    dick: list[list[int]] = [[2], [0, 1]]
    while len(dick) <= k:
        prev, cur = dick[-2], dick[-1]
        nxt = [0] + cur
        for i, c in enumerate(prev):
            nxt[i] -= c
        dick.append(nxt)
    out = [0] * (k + 1)
    for j in range(k + 1):
        c = phi[k + j]
        if not c:
            continue
        basis = [1] if j == 0 else dick[j]
        for i, b in enumerate(basis):
            out[i] += c * b
    while len(out) > 1 and out[-1] == 0:
        out.pop()
    return tuple(out)


def _squarefree(d: int) -> bool:
    if d < 2:
        return False
    p = 2
    while p * p <= d:
        if d % (p * p) == 0:
            return False
        p += 1
    return True


# ---------------------------------------------------------------------------
# fields


@dataclass(frozen=True)
class FieldDescriptor:
    """A real number field Q(theta) with a designated real embedding."""

    kind: str  # "rational" | "quadratic" | "cosine"
    param: int
    minimal_polynomial: tuple[int, ...] = field(compare=False)
    approx: float = field(compare=False, default=1.0)

    @property
    def degree(self) -> int:
        return len(self.minimal_polynomial) - 1

    @property
    def tag(self) -> str:
        if self.kind == "rational":
            return "Q"
        if self.kind == "quadratic":
            return f"Q(sqrt{self.param})"
        return f"Q(cos{self.param})"

    def __repr__(self) -> str:
        return f"FieldDescriptor({self.tag})"

    def __str__(self) -> str:
        return self.tag

    def __call__(self, value) -> "Scalar":
        return as_scalar(value, self)

    def zero(self) -> "Scalar":
        return Scalar(self, (Fraction(0),) * self.degree)

    def one(self) -> "Scalar":
        return self.from_rational(1)

    def gen(self) -> "Scalar":
        """The generator theta."""
        if self.degree == 1:
            return self.from_rational(Fraction(-self.minimal_polynomial[0]))
        coeffs = [Fraction(0)] * self.degree
        coeffs[1] = Fraction(1)
        return Scalar(self, tuple(coeffs))

    def from_rational(self, q) -> "Scalar":
        coeffs = [Fraction(0)] * self.degree
        coeffs[0] = Fraction(q)
        return Scalar(self, tuple(coeffs))

    def from_coeffs(self, coeffs: Iterable) -> "Scalar":
        cs = [Fraction(c) for c in coeffs]
        if len(cs) > self.degree:
            return _reduce(self, cs)
        cs += [Fraction(0)] * (self.degree - len(cs))
        return Scalar(self, tuple(cs))

    @property
    def _reduction(self) -> list[list[Fraction]]:
        return _reduction_table(self)


QQ = FieldDescriptor("rational", 1, (0, 1), 0.0)


@lru_cache(maxsize=None)
def _make_field(kind: str, param: int) -> FieldDescriptor:
    if kind == "rational":
        return QQ
    if kind == "quadratic":
        if not _squarefree(param):
            raise ScalarError(f"quadratic field needs a square-free d >= 2, got {param}")
        return FieldDescriptor("quadratic", param, (-param, 0, 1), math.sqrt(param))
    if kind == "cosine":
        if param < 3:
            raise ScalarError(f"cosine field needs m >= 3, got {param}")
        mp = cosine_minimal_polynomial(param)
        if len(mp) == 2:
            return QQ
        return FieldDescriptor("cosine", param, mp, 2 * math.cos(math.pi / param))
    raise ScalarError(f"unknown field kind {kind!r}")


def field_create(kind: str, param: int = 0) -> FieldDescriptor:
    """Build a field descriptor.

    ``kind`` is ``"rational"``, ``"quadratic"`` (param d) or ``"cosine"``
    (param m).  Degree-one cosine fields collapse to ``QQ``.
    """
    return _make_field(kind, int(param))


_TAG_RE = re.compile(r"^Q(?:\((sqrt|cos)(\d+)\))?$")


def field_from_tag(tag: str) -> FieldDescriptor:
    m = _TAG_RE.match(tag.strip())
    if not m:
        raise ScalarError(f"unknown field tag {tag!r}")
    if m.group(1) is None:
        return QQ
    kind = "quadratic" if m.group(1) == "sqrt" else "cosine"
    return field_create(kind, int(m.group(2)))


@lru_cache(maxsize=None)
def _reduction_table(K: FieldDescriptor) -> list[list[Fraction]]:
    """theta^k for k = deg .. 2*deg - 2 in the power basis."""
    n = K.degree
    mp = K.minimal_polynomial
    cur = [Fraction(-c) for c in mp[:n]]  # theta^n
    table = [cur]
    for _ in range(n, 2 * n - 2):
        top = cur[-1]
        nxt = [Fraction(0)] + cur[:-1]
        if top:
            for i in range(n):
                nxt[i] -= top * mp[i]
        cur = nxt
        table.append(cur)
    return table


def _reduce(K: FieldDescriptor, cs: list[Fraction]) -> "Scalar":
    n = K.degree
    out = list(cs[:n]) + [Fraction(0)] * max(0, n - len(cs))
    table = K._reduction
    for k in range(n, len(cs)):
        c = cs[k]
        if c:
            row = table[k - n]
            for i in range(n):
                out[i] += c * row[i]
    return Scalar(K, tuple(out))


# ---------------------------------------------------------------------------
# scalars

Number = Union[int, Fraction, "Scalar"]


class Scalar:
    """An immutable element of a :class:`FieldDescriptor`."""

    __slots__ = ("field", "coeffs", "_hash")

    def __init__(self, field: FieldDescriptor, coeffs: tuple[Fraction, ...]):
        self.field = field
        self.coeffs = coeffs
        self._hash = None

    # -- coercion -----------------------------------------------------------
    def _coerce(self, other) -> "Scalar | None":
        if isinstance(other, Scalar):
            if other.field == self.field:
                return other
            if other.field is QQ or other.field == QQ:
                return self.field.from_rational(other.coeffs[0])
            if self.field == QQ:
                return None  # handled by the caller via reflected promotion
            raise FieldMismatchError(f"cannot combine {self.field} with {other.field}")
        if isinstance(other, (int, Fraction)):
            return self.field.from_rational(other)
        return NotImplemented

    def _pair(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return NotImplemented, NotImplemented
        if o is None:
            # self is rational, other lives in a bigger field
            return other.field.from_rational(self.coeffs[0]), other
        return self, o

    # -- arithmetic ---------------------------------------------------------
    def __add__(self, other):
        a, b = self._pair(other)
        if a is NotImplemented:
            return NotImplemented
        return Scalar(a.field, tuple(x + y for x, y in zip(a.coeffs, b.coeffs)))

    __radd__ = __add__

    def __neg__(self):
        return Scalar(self.field, tuple(-x for x in self.coeffs))

    def __pos__(self):
        return self

    def __sub__(self, other):
        a, b = self._pair(other)
        if a is NotImplemented:
            return NotImplemented
        return Scalar(a.field, tuple(x - y for x, y in zip(a.coeffs, b.coeffs)))

    def __rsub__(self, other):
        return (-self).__add__(other)

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            return Scalar(self.field, tuple(x * other for x in self.coeffs))
        a, b = self._pair(other)
        if a is NotImplemented:
            return NotImplemented
        K = a.field
        if K.degree == 1:
            return Scalar(K, (a.coeffs[0] * b.coeffs[0],))
        if b.is_rational():
            c = b.coeffs[0]
            return Scalar(K, tuple(x * c for x in a.coeffs))
        if a.is_rational():
            c = a.coeffs[0]
            return Scalar(K, tuple(x * c for x in b.coeffs))
        n = K.degree
        prod = [Fraction(0)] * (2 * n - 1)
        for i, x in enumerate(a.coeffs):
            if x:
                for j, y in enumerate(b.coeffs):
                    if y:
                        prod[i + j] += x * y
        return _reduce(K, prod)

    __rmul__ = __mul__

    def inverse(self) -> "Scalar":
        if self.is_zero():
            raise ZeroDivisionError("inverse of zero scalar")
        K = self.field
        if self.is_rational():
            return K.from_rational(1 / self.coeffs[0])
        # solve (multiplication-by-self matrix) * y = e0
        n = K.degree
        basis = [K.from_coeffs([0] * i + [1]) for i in range(n)]
        cols = [(self * b).coeffs for b in basis]
        mat = [[cols[j][i] for j in range(n)] + [Fraction(int(i == 0))] for i in range(n)]
        for c in range(n):
            p = next(r for r in range(c, n) if mat[r][c] != 0)
            mat[c], mat[p] = mat[p], mat[c]
            pv = mat[c][c]
            mat[c] = [v / pv for v in mat[c]]
            for r in range(n):
                if r != c and mat[r][c] != 0:
                    f = mat[r][c]
                    mat[r] = [v - f * w for v, w in zip(mat[r], mat[c])]
        return Scalar(K, tuple(mat[i][n] for i in range(n)))

    def __truediv__(self, other):
        if isinstance(other, (int, Fraction)):
            if other == 0:
                raise ZeroDivisionError("division by zero scalar")
            return Scalar(self.field, tuple(x / other for x in self.coeffs))
        a, b = self._pair(other)
        if a is NotImplemented:
            return NotImplemented
        return a * b.inverse()

    def __rtruediv__(self, other):
        return self.inverse() * other

    def __pow__(self, k: int):
        if k < 0:
            return self.inverse() ** (-k)
        result = self.field.one()
        base = self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    # -- predicates ---------------------------------------------------------
    def is_zero(self) -> bool:
        return not any(self.coeffs)

    def __bool__(self) -> bool:
        return not self.is_zero()

    def is_rational(self) -> bool:
        return not any(self.coeffs[1:])

    def to_fraction(self) -> Fraction:
        if not self.is_rational():
            raise ScalarError(f"{self} is not rational")
        return self.coeffs[0]

    def __eq__(self, other) -> bool:
        if isinstance(other, Scalar):
            if self.field == other.field:
                return self.coeffs == other.coeffs
            if self.is_rational() and other.is_rational():
                return self.coeffs[0] == other.coeffs[0]
            if self.field == QQ or other.field == QQ:
                return False
            raise FieldMismatchError(f"cannot compare {self.field} with {other.field}")
        if isinstance(other, (int, Fraction)):
            return self.is_rational() and self.coeffs[0] == other
        return NotImplemented

    def __hash__(self) -> int:
        if self._hash is None:
            if self.is_rational():
                self._hash = hash(self.coeffs[0])
            else:
                self._hash = hash((self.field.tag, self.coeffs))
        return self._hash

    def __lt__(self, other):
        return sign(self - other) < 0

    def __le__(self, other):
        return sign(self - other) <= 0

    def __gt__(self, other):
        return sign(self - other) > 0

    def __ge__(self, other):
        return sign(self - other) >= 0

    def __float__(self) -> float:
        th = self.field.approx
        return float(sum(float(c) * th**i for i, c in enumerate(self.coeffs)))

    def __repr__(self) -> str:
        return f"Scalar({self.field.tag}, {format_scalar(self)!r})"

    def __str__(self) -> str:
        return format_scalar(self)


def as_scalar(value, K: FieldDescriptor = QQ) -> Scalar:
    if isinstance(value, Scalar):
        if value.field == K:
            return value
        if value.is_rational():
            return K.from_rational(value.coeffs[0])
        raise FieldMismatchError(f"cannot move {value} from {value.field} into {K}")
    if isinstance(value, str):
        return parse_scalar(value, K)
    return K.from_rational(Fraction(value))


# ---------------------------------------------------------------------------
# sign oracle


def _precision_start() -> int:
    try:
        return max(8, int(os.environ.get("SLP_PRECISION_BITS", DEFAULT_PRECISION_BITS)))
    except ValueError:
        return DEFAULT_PRECISION_BITS


def _eval_int_poly(poly: Sequence[int], x: Fraction) -> Fraction:
    acc = Fraction(0)
    for c in reversed(poly):
        acc = acc * x + c
    return acc


@lru_cache(maxsize=None)
def _theta_bracket(K: FieldDescriptor, bits: int) -> tuple[Fraction, Fraction]:
    """Rational interval of width <= 2^-bits containing the designated root."""
    mp = K.minimal_polynomial
    if bits <= 24:
        f = Fraction(K.approx).limit_denominator(1 << 40)
        lo, hi = f - Fraction(1, 1 << 20), f + Fraction(1, 1 << 20)
    else:
        lo, hi = _theta_bracket(K, bits // 2)
    slo = _eval_int_poly(mp, lo)
    shi = _eval_int_poly(mp, hi)
    if slo == 0:
        return lo, lo
    if shi == 0:
        return hi, hi
    if (slo > 0) == (shi > 0):
        raise ArithmeticError(f"lost the root of {mp}")
    width = Fraction(1, 1 << bits)
    while hi - lo > width:
        mid = (lo + hi) / 2
        sm = _eval_int_poly(mp, mid)
        if sm == 0:
            return mid, mid
        if (sm > 0) == (slo > 0):
            lo, slo = mid, sm
        else:
            hi = mid
    return lo, hi


def _interval_value(x: Scalar, lo: Fraction, hi: Fraction) -> tuple[Fraction, Fraction]:
    # theta > 0 for every supported field with degree > 1
    vlo = vhi = Fraction(0)
    plo = phi = Fraction(1)
    for c in x.coeffs:
        if c > 0:
            vlo += c * plo
            vhi += c * phi
        elif c < 0:
            vlo += c * phi
            vhi += c * plo
        plo *= lo
        phi *= hi
    return vlo, vhi


def sign(x, start_bits: int | None = None) -> int:
    """Sign of ``x`` under the designated real embedding: -1, 0 or +1."""
    if not isinstance(x, Scalar):
        q = Fraction(x)
        return (q > 0) - (q < 0)
    if x.is_rational():
        q = x.coeffs[0]
        return (q > 0) - (q < 0)
    bits = start_bits or _precision_start()
    K = x.field
    while True:
        lo, hi = _theta_bracket(K, bits)
        vlo, vhi = _interval_value(x, lo, hi)
        if vlo > 0:
            return 1
        if vhi < 0:
            return -1
        if lo == hi and vlo == vhi == 0:
            return 0  # unreachable for irreducible minimal polynomials
        bits *= 2


# ---------------------------------------------------------------------------
# text and JSON forms

_TOKEN_RE = re.compile(r"\s*(?:(?P<num>\d+(?:/\d+)?)|(?P<op>[-+*^])|(?P<g>g))")


def parse_scalar(text: str, K: FieldDescriptor = QQ) -> Scalar:
    """Parse ``"-1/4 + 1/4*g"``-style text into a scalar of ``K``.

    Grammar: ``term (("+"|"-") term)*`` with ``term = rational | rational*g |
    g``, and ``g`` optionally raised to an integer power ``g^k``.
    """
    pos = 0
    tokens: list[tuple[str, str, int]] = []
    s = text.rstrip()
    while pos < len(s):
        m = _TOKEN_RE.match(s, pos)
        if not m or m.end() == pos:
            bad = pos + len(s[pos:]) - len(s[pos:].lstrip())
            raise ScalarParseError("unexpected character", text, bad)
        kind = m.lastgroup
        tokens.append((kind, m.group(kind), m.start(kind)))
        pos = m.end()
    if not tokens:
        raise ScalarParseError("empty scalar", text, 0)

    coeffs: dict[int, Fraction] = {}
    i = 0

    def expect_power(i: int) -> tuple[int, int]:
        if i < len(tokens) and tokens[i][0] == "op" and tokens[i][1] == "^":
            if i + 1 >= len(tokens) or tokens[i + 1][0] != "num" or "/" in tokens[i + 1][1]:
                raise ScalarParseError("expected integer exponent", text, tokens[i][2])
            return int(tokens[i + 1][1]), i + 2
        return 1, i

    first = True
    while i < len(tokens):
        sgn = 1
        if tokens[i][0] == "op" and tokens[i][1] in "+-":
            sgn = -1 if tokens[i][1] == "-" else 1
            i += 1
        elif not first:
            raise ScalarParseError("expected '+' or '-'", text, tokens[i][2])
        first = False
        if i >= len(tokens):
            raise ScalarParseError("dangling sign", text, len(s))
        kind, val, where = tokens[i]
        if kind == "num":
            coef = Fraction(val)
            i += 1
            power = 0
            if i < len(tokens) and tokens[i][0] == "op" and tokens[i][1] == "*":
                if i + 1 >= len(tokens) or tokens[i + 1][0] != "g":
                    raise ScalarParseError("expected 'g' after '*'", text, tokens[i][2])
                power, i = expect_power(i + 2)
        elif kind == "g":
            coef = Fraction(1)
            power, i = expect_power(i + 1)
        else:
            raise ScalarParseError("expected a term", text, where)
        if power and K.degree == 1:
            raise ScalarParseError("generator 'g' used in the rational field", text, where)
        coeffs[power] = coeffs.get(power, Fraction(0)) + sgn * coef
    top = max(coeffs)
    return K.from_coeffs([coeffs.get(k, Fraction(0)) for k in range(top + 1)])


def _fmt_rat(q: Fraction) -> str:
    return str(q.numerator) if q.denominator == 1 else f"{q.numerator}/{q.denominator}"


def format_scalar(x: Scalar) -> str:
    """Canonical text form: increasing powers of g, lowest terms.

    >>> format_scalar(parse_scalar("2/4"))
    '1/2'
    """
    parts: list[str] = []
    for k, c in enumerate(x.coeffs):
        if c == 0:
            continue
        mag = abs(c)
        if k == 0:
            body = _fmt_rat(mag)
        else:
            g = "g" if k == 1 else f"g^{k}"
            body = g if mag == 1 else f"{_fmt_rat(mag)}*{g}"
        if not parts:
            parts.append(body if c > 0 else "-" + body)
        else:
            parts.append(("+ " if c > 0 else "- ") + body)
    return " ".join(parts) if parts else "0"


def scalar_to_json(x: Scalar) -> dict:
    return {"field": x.field.tag, "coeffs": [_fmt_rat(c) for c in x.coeffs]}


def scalar_from_json(obj: dict) -> Scalar:
    K = field_from_tag(obj["field"])
    return K.from_coeffs(Fraction(c) for c in obj["coeffs"])
