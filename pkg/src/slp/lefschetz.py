"""
Lefschetz matrices on a quotient poset.

The matrix of multiplication by rho_bar^(j-i) from degree i to degree j, in
Schubert coordinates, is the weighted path matrix of the cover graph: the
entry for (v, u) sums the weight products of all upward paths u -> v.  Its
determinant is checked three ways: by elimination, as a signed sum over all
path systems, and as a signed sum over vertex-disjoint path systems only.
"""
from __future__ import annotations

import itertools
import os
from dataclasses import dataclass, field
from typing import Iterator

from . import linalg
from .quotient import QuotientPoset
from .scalar import Scalar, format_scalar, sign

__all__ = [
    "ScalarMatrix",
    "PathSystem",
    "PathCapExceeded",
    "UnsupportedCase",
    "one_step_matrix",
    "path_matrix",
    "enumerate_path_systems",
    "count_path_systems",
    "lgv_determinant",
    "factorised_system_sum",
    "path_system_sum",
    "strong_lefschetz_report",
    "weak_lefschetz_report",
    "middle_form_reduce",
    "is_alpha_symmetric",
    "alpha_reindexed",
    "path_cap",
]

DEFAULT_PATH_CAP = 10 ** 6


def path_cap() -> int:
    try:
        return int(os.environ.get("SLP_PATH_CAP", DEFAULT_PATH_CAP))
    except ValueError:
        return DEFAULT_PATH_CAP


class PathCapExceeded(RuntimeError):
    def __init__(self, degree: int, cap: int):
        super().__init__(f"path-system enumeration at degree {degree} exceeded cap {cap}")
        self.degree = degree
        self.cap = cap


class UnsupportedCase(ValueError):
    pass


@dataclass
class ScalarMatrix:
    rows: list[int]  # node ids
    cols: list[int]
    entries: list[list[Scalar]]

    @property
    def shape(self) -> tuple[int, int]:
        return len(self.rows), len(self.cols)

    def det(self) -> Scalar:
        if len(self.rows) != len(self.cols):
            raise ValueError(f"non-square {self.shape} matrix has no determinant")
        return linalg.det(self.entries, self._one())

    def rank(self) -> int:
        return linalg.rank(self.entries) if self.rows and self.cols else 0

    def _one(self):
        for row in self.entries:
            for x in row:
                return x * 0 + 1
        return 1

    def to_tsv(self) -> str:
        lines = ["\t".join([""] + [str(c) for c in self.cols])]
        for r, row in zip(self.rows, self.entries):
            lines.append("\t".join([str(r)] + [format_scalar(x) for x in row]))
        return "\n".join(lines) + "\n"

    def to_json(self) -> dict:
        return {"rows": self.rows, "cols": self.cols,
                "entries": [[format_scalar(x) for x in row] for row in self.entries]}


@dataclass(frozen=True)
class PathSystem:
    sigma: tuple[int, ...]  # source position -> target position
    paths: tuple[tuple[int, ...], ...]  # edge indices per source
    sign: int
    weight: Scalar
    vertex_disjoint: bool

    def signed_weight(self) -> Scalar:
        return self.weight if self.sign > 0 else -self.weight

    def vertices(self, poset: QuotientPoset, k: int) -> list[int]:
        edges = poset.edges
        path = self.paths[k]
        if not path:
            return []
        return [edges[path[0]].src] + [edges[e].dst for e in path]


def _perm_sign(p: tuple[int, ...]) -> int:
    s = 1
    seen = [False] * len(p)
    for i in range(len(p)):
        if seen[i]:
            continue
        j, length = i, 0
        while not seen[j]:
            seen[j] = True
            j = p[j]
            length += 1
        if length % 2 == 0:
            s = -s
    return s


# ---------------------------------------------------------------------------
# matrices


def one_step_matrix(poset: QuotientPoset, i: int) -> ScalarMatrix:
    """Weighted adjacency V^i -> V^(i+1); rows V^(i+1), columns V^i."""
    rows, cols = poset.layer(i + 1), poset.layer(i)
    zero = poset.field.zero()
    m = [[zero] * len(cols) for _ in rows]
    for u in cols:
        cu = poset.position(u)
        for e in poset.out_edges(u):
            m[poset.position(e.dst)][cu] = m[poset.position(e.dst)][cu] + e.weight
    return ScalarMatrix(list(rows), list(cols), m)


def path_matrix(poset: QuotientPoset, i: int, j: int) -> ScalarMatrix:
    """Path-sum matrix from V^i to V^j (rows V^j, columns V^i)."""
    if not 0 <= i <= j <= poset.r:
        raise ValueError(f"need 0 <= i <= j <= {poset.r}, got i={i}, j={j}")
    K = poset.field
    cols = poset.layer(i)
    acc = linalg.identity(len(cols), K.one(), K.zero())
    for k in range(i, j):
        step = one_step_matrix(poset, k).entries
        acc = linalg.matmul(step, acc, K.zero())
    return ScalarMatrix(list(poset.layer(j)), list(cols), acc)


def alpha_reindexed(poset: QuotientPoset, m: ScalarMatrix) -> list[list[Scalar]]:
    """Rows moved through the antiautomorphism onto the column layer's order."""
    alpha = poset.antiautomorphism()
    row_pos = {nid: k for k, nid in enumerate(m.rows)}
    return [[m.entries[row_pos[alpha[c]]][b] for b in range(len(m.cols))] for c in m.cols]


def is_alpha_symmetric(poset: QuotientPoset, i: int) -> bool:
    """path_matrix(i, r-i) is symmetric once rows are pulled back by alpha."""
    m = path_matrix(poset, i, poset.r - i)
    return linalg.is_symmetric(alpha_reindexed(poset, m))


# ---------------------------------------------------------------------------
# path systems


def _paths_from(poset: QuotientPoset, src: int, target_degree: int,
                blocked: set[int] | None) -> Iterator[tuple[tuple[int, ...], list[int]]]:
    """Upward paths from src to any node of target_degree as (edge ids, vertices)."""
    edges = poset.edges
    if blocked is not None and src in blocked:
        return
    if poset.nodes[src].degree == target_degree:
        yield (), [src]
        return
    stack = [(src, (), [src])]
    while stack:
        v, es, vs = stack.pop()
        for k in reversed(poset.out_edge_ids(v)):
            w = edges[k].dst
            if blocked is not None and w in blocked:
                continue
            nes, nvs = es + (k,), vs + [w]
            if poset.nodes[w].degree == target_degree:
                yield nes, nvs
            else:
                stack.append((w, nes, nvs))


def enumerate_path_systems(poset: QuotientPoset, i: int, vertex_disjoint: bool = False,
                           cap: int | None = None, j: int | None = None) -> list[PathSystem]:
    """All path systems V^i -> V^j (default j = r - i) by backtracking.

    Sources are taken in id order; the order of the result is lexicographic in
    (source, edge) order.  Raises :class:`PathCapExceeded` past ``cap`` systems.
    """
    cap = path_cap() if cap is None else cap
    j = poset.r - i if j is None else j
    if j < i:
        raise ValueError("target degree below source degree")
    sources, targets = poset.layer(i), poset.layer(j)
    if len(sources) != len(targets):
        raise ValueError(f"|V^{i}| != |V^{j}|")
    tpos = {t: k for k, t in enumerate(targets)}
    one = poset.field.one()
    out: list[PathSystem] = []

    def rec(k, used_targets, blocked, sigma, paths, weight):
        if k == len(sources):
            if len(out) >= cap:
                raise PathCapExceeded(i, cap)
            s = tuple(sigma)
            out.append(PathSystem(s, tuple(paths), _perm_sign(s), weight, vertex_disjoint))
            return
        for es, vs in _paths_from(poset, sources[k], j, blocked if vertex_disjoint else None):
            t = tpos[vs[-1]]
            if t in used_targets:
                continue
            w = weight
            for e in es:
                w = w * poset.edges[e].weight
            used_targets.add(t)
            if vertex_disjoint:
                blocked.update(vs)
            sigma.append(t)
            paths.append(es)
            rec(k + 1, used_targets, blocked, sigma, paths, w)
            paths.pop()
            sigma.pop()
            if vertex_disjoint:
                blocked.difference_update(vs)
            used_targets.discard(t)

    rec(0, set(), set(), [], [], one)
    # a non-disjoint system can still happen to be disjoint; flag it honestly
    if not vertex_disjoint:
        out = [PathSystem(p.sigma, p.paths, p.sign, p.weight, _is_disjoint(poset, p)) for p in out]
    return out


def _is_disjoint(poset: QuotientPoset, p: PathSystem) -> bool:
    seen: set[int] = set()
    for k in range(len(p.paths)):
        vs = p.vertices(poset, k)
        if not vs:
            continue
        if seen.intersection(vs):
            return False
        seen.update(vs)
    return True


def count_path_systems(poset: QuotientPoset, i: int, vertex_disjoint: bool = False,
                       j: int | None = None, cap: int | None = None) -> int:
    return len(enumerate_path_systems(poset, i, vertex_disjoint, cap=cap, j=j))


def path_system_sum(systems: list[PathSystem], zero: Scalar) -> Scalar:
    acc = zero
    for p in systems:
        acc = acc + p.signed_weight()
    return acc


def factorised_system_sum(poset: QuotientPoset, i: int) -> tuple[Scalar, int]:
    """(signed weight sum, number) of ALL path systems V^i -> V^(r-i), without enumeration.

    For a fixed permutation the systems are the product of the path sets
    source_k -> target_sigma(k), so both totals factor into path sums and
    path counts, accumulated one layer at a time.
    """
    j = poset.r - i
    sources, targets = poset.layer(i), poset.layer(j)
    if len(sources) != len(targets):
        raise ValueError(f"|V^{i}| != |V^{j}|")
    weights = path_matrix(poset, i, j).entries
    counts = {s: {s: 1} for s in sources}
    for s in sources:
        frontier = counts[s]
        for d in range(i, j):
            nxt: dict[int, int] = {}
            for v, c in frontier.items():
                for e in poset.out_edges(v):
                    nxt[e.dst] = nxt.get(e.dst, 0) + c
            frontier = nxt
        counts[s] = frontier
    total, number = poset.field.zero(), 0
    for sigma in itertools.permutations(range(len(sources))):
        w, n = poset.field.one(), 1
        for k, t in enumerate(sigma):
            w = w * weights[t][k]
            n *= counts[sources[k]].get(targets[t], 0)
        if n:
            total = total + (w if _perm_sign(sigma) > 0 else -w)
            number += n
    return total, number


def lgv_determinant(poset: QuotientPoset, i: int, cap: int | None = None) -> Scalar:
    """Signed weight sum over vertex-disjoint systems V^i -> V^(r-i)."""
    systems = enumerate_path_systems(poset, i, vertex_disjoint=True, cap=cap)
    return path_system_sum(systems, poset.field.zero())


# ---------------------------------------------------------------------------
# reports


@dataclass
class DegreeResult:
    degree: int
    value: Scalar | int  # determinant (strong) or rank (weak)
    passed: bool
    detail: str = ""

    def to_json(self) -> dict:
        v = format_scalar(self.value) if isinstance(self.value, Scalar) else self.value
        out = {"degree": self.degree, "value": v, "pass": self.passed}
        if self.detail:
            out["detail"] = self.detail
        return out


@dataclass
class LefschetzReport:
    kind: str
    results: list[DegreeResult] = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return all(r.passed for r in self.results)

    def verdict(self) -> str:
        # the property is existential in l, so a failure only rules out this candidate
        return "pass" if self.passed else "candidate failed"

    def failing_degrees(self) -> list[int]:
        return [r.degree for r in self.results if not r.passed]

    def to_json(self) -> dict:
        return {"kind": self.kind, "verdict": self.verdict(),
                "degrees": [r.to_json() for r in self.results]}


def strong_lefschetz_report(poset: QuotientPoset) -> LefschetzReport:
    """Determinant of rho_bar^(r-2i): V^i -> V^(r-i) for every i <= r/2."""
    rep = LefschetzReport("strong")
    for i in range(poset.r // 2 + 1):
        m = path_matrix(poset, i, poset.r - i)
        if m.shape[0] != m.shape[1]:
            rep.results.append(DegreeResult(i, poset.field.zero(), False, f"shape {m.shape}"))
            continue
        d = m.det()
        rep.results.append(DegreeResult(i, d, sign(d) != 0, f"sign {sign(d):+d}"))
    return rep


def weak_lefschetz_report(poset: QuotientPoset, degrees: range | None = None) -> LefschetzReport:
    """Rank of the one-step map V^i -> V^(i+1) for i below the middle."""
    rep = LefschetzReport("weak")
    for i in degrees if degrees is not None else range(poset.r // 2):
        m = one_step_matrix(poset, i)
        rk = m.rank()
        rep.results.append(DegreeResult(i, rk, rk == len(m.cols), f"{m.shape[0]}x{m.shape[1]}"))
    return rep


@dataclass
class MiddleForm:
    matrix: list[list[Scalar]]
    node_ids: list[int]  # V^(r//2) in the order of the matrix
    symmetric: bool
    minors: list[Scalar]
    positive_definite: bool
    weak: LefschetzReport
    strong_verdict: bool

    def to_json(self) -> dict:
        return {
            "nodes": self.node_ids,
            "matrix": [[format_scalar(x) for x in row] for row in self.matrix],
            "symmetric": self.symmetric,
            "leading_minors": [format_scalar(x) for x in self.minors],
            "positive_definite": self.positive_definite,
            "weak": self.weak.to_json(),
            "strong": "pass" if self.strong_verdict else "candidate failed",
        }


def middle_form_reduce(poset: QuotientPoset) -> MiddleForm:
    """Middle one-step matrix as a symmetric form, plus the weak report.

    For odd r, rho_bar^(r-2i) = A^t B A with A the path matrix V^i -> V^(r//2)
    and B the middle matrix read through the antiautomorphism; B positive
    definite and every A injective give all the strong maps.
    """
    if poset.r % 2 == 0:
        raise UnsupportedCase(f"middle-form reduction needs odd r (r = {poset.r})")
    m = poset.r // 2
    step = one_step_matrix(poset, m)
    B = alpha_reindexed(poset, step)
    sym = linalg.is_symmetric(B)
    one = poset.field.one()
    minors = linalg.leading_principal_minors(B, one)
    pd = sym and all(sign(x) > 0 for x in minors)
    weak = weak_lefschetz_report(poset)
    return MiddleForm(B, list(step.cols), sym, minors, pd, weak, pd and weak.passed)
