"""
Parabolic quotients W^Theta as weighted, graded Bruhat graphs.

A coset wW_Theta is labelled by the orbit vector w(rho_bar); the stabiliser of
rho_bar is exactly W_Theta, so the labelling is faithful and W itself is never
materialised.  Lengths are inversion counts:

    l(w) = #{a in Phi+ : a^(w rho_bar) < 0}

and an edge u -> v (a Bruhat cover, v = s_beta u) carries the weight
beta^(u rho_bar), which is positive for every cover.

>>> from slp.rootsystem import build_root_system
>>> rs = build_root_system("A2")
>>> P = enumerate_quotient(rs, rs.theta([]))
>>> P.histogram()
[1, 2, 2, 1]
"""
from __future__ import annotations

import functools
from collections import deque
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Sequence

from .rootsystem import (
    RootSystem,
    RootSystemError,
    ThetaSubset,
    Vector,
    _cmp_scalar_seq,
    build_root_system,
    parse_type,
    vscale,
)
from .scalar import FieldDescriptor, Scalar, field_from_tag, format_scalar, parse_scalar, sign

__all__ = [
    "CosetNode",
    "WeightedEdge",
    "QuotientPoset",
    "ValidationReport",
    "enumerate_quotient",
    "root_rescaling",
    "resolve_theta",
]


@dataclass(frozen=True)
class CosetNode:
    id: int
    vector: Vector
    degree: int
    witness_word: tuple[int, ...] = ()


@dataclass(frozen=True)
class WeightedEdge:
    src: int
    dst: int
    root: int
    weight: Scalar


@dataclass
class ValidationReport:
    checks: list[tuple[str, bool, str]] = field(default_factory=list)

    def add(self, name: str, ok: bool, detail: str = "") -> None:
        self.checks.append((name, bool(ok), detail))

    @property
    def ok(self) -> bool:
        return all(ok for _, ok, _ in self.checks)

    def failures(self) -> list[str]:
        return [f"{n}: {d}" if d else n for n, ok, d in self.checks if not ok]


@dataclass
class QuotientPoset:
    """The graph G on W^Theta, graded by length, with weighted cover edges."""

    type: str
    theta: tuple[int, ...]
    field: FieldDescriptor
    nodes: list[CosetNode]
    edges: list[WeightedEdge]
    rs: RootSystem | None = None
    scale: Scalar | Fraction | int = 1  # start vector = scale * rho_bar

    def __post_init__(self):
        self._reindex()

    def _reindex(self) -> None:
        self.r = max((n.degree for n in self.nodes), default=0)
        self._layers: list[list[int]] = [[] for _ in range(self.r + 1)]
        for n in self.nodes:
            self._layers[n.degree].append(n.id)
        self._out: dict[int, list[WeightedEdge]] = {n.id: [] for n in self.nodes}
        self._in: dict[int, list[WeightedEdge]] = {n.id: [] for n in self.nodes}
        self._out_ids: dict[int, list[int]] = {n.id: [] for n in self.nodes}
        for k, e in enumerate(self.edges):
            self._out[e.src].append(e)
            self._in[e.dst].append(e)
            self._out_ids[e.src].append(k)
        self._pos_in_layer = {}
        for layer in self._layers:
            for k, nid in enumerate(layer):
                self._pos_in_layer[nid] = k
        self.__dict__.pop("_alpha", None)

    # -- access --------------------------------------------------------------
    def __len__(self) -> int:
        return len(self.nodes)

    def layer(self, i: int) -> list[int]:
        """Node ids of V^i in id order."""
        if not 0 <= i <= self.r:
            raise ValueError(f"degree {i} outside 0..{self.r}")
        return self._layers[i]

    def position(self, node_id: int) -> int:
        return self._pos_in_layer[node_id]

    def out_edges(self, node_id: int) -> list[WeightedEdge]:
        return self._out[node_id]

    def out_edge_ids(self, node_id: int) -> list[int]:
        return self._out_ids[node_id]

    def in_edges(self, node_id: int) -> list[WeightedEdge]:
        return self._in[node_id]

    def histogram(self) -> list[int]:
        return [len(layer) for layer in self._layers]

    def node_by_vector(self, v: Vector) -> int | None:
        if not hasattr(self, "_by_vec"):
            self._by_vec = {n.vector: n.id for n in self.nodes}
        return self._by_vec.get(tuple(v))

    def with_weights(self, weights: dict[int, Scalar]) -> "QuotientPoset":
        """Copy with some edge weights replaced (keyed by edge index)."""
        edges = [WeightedEdge(e.src, e.dst, e.root, weights.get(k, e.weight))
                 for k, e in enumerate(self.edges)]
        return QuotientPoset(self.type, self.theta, self.field, list(self.nodes), edges,
                             rs=self.rs, scale=self.scale)

    # -- antiautomorphism ----------------------------------------------------
    @functools.cached_property
    def _alpha(self) -> list[int]:
        if self.rs is None:
            raise ValueError("antiautomorphism needs the root system")
        out = []
        for n in self.nodes:
            j = self.node_by_vector(self.rs.w0(n.vector))
            if j is None:
                raise RootSystemError("w0 does not preserve the orbit")
            out.append(j)
        return out

    def antiautomorphism(self) -> list[int]:
        """The involution v -> w0(v) on node ids; maps V^i onto V^(r-i)."""
        return list(self._alpha)

    # -- validation ----------------------------------------------------------
    def validate(self) -> ValidationReport:
        rep = ValidationReport()
        hist = self.histogram()
        rep.add("unique bottom", hist[0] == 1 if hist else False, f"|V^0| = {hist[0] if hist else 0}")
        rep.add("unique top", hist[-1] == 1 if hist else False, f"|V^r| = {hist[-1] if hist else 0}")
        rep.add("symmetric histogram", hist == hist[::-1], str(hist))
        vecs = {n.vector for n in self.nodes}
        rep.add("distinct vectors", len(vecs) == len(self.nodes))
        bad_deg = [e for e in self.edges
                   if self.nodes[e.dst].degree != self.nodes[e.src].degree + 1]
        rep.add("covers raise degree by one", not bad_deg, f"{len(bad_deg)} bad edges")
        bad_w = [k for k, e in enumerate(self.edges) if sign(e.weight) != 1]
        rep.add("positive weights", not bad_w, f"non-positive edges {bad_w[:5]}")
        no_out = [n.id for n in self.nodes if n.degree < self.r and not self._out[n.id]]
        no_in = [n.id for n in self.nodes if n.degree > 0 and not self._in[n.id]]
        rep.add("outgoing edges below top", not no_out, f"nodes {no_out[:5]}")
        rep.add("incoming edges above bottom", not no_in, f"nodes {no_in[:5]}")
        if self.rs is not None:
            rs = self.rs
            bad_rec = []
            for k, e in enumerate(self.edges):
                beta = rs.positive[e.root]
                u, v = self.nodes[e.src].vector, self.nodes[e.dst].vector
                if rs.reflect(beta, u) != v or rs.coroot_eval(beta, u) != e.weight:
                    bad_rec.append(k)
            rep.add("edges recompute exactly", not bad_rec, f"edges {bad_rec[:5]}")
            try:
                alpha = self._alpha
                ok = all(alpha[alpha[i]] == i for i in range(len(alpha))) and all(
                    self.nodes[alpha[n.id]].degree == self.r - n.degree for n in self.nodes)
                rep.add("antiautomorphism", ok)
            except RootSystemError as exc:
                rep.add("antiautomorphism", False, str(exc))
        return rep

    # -- serialisation -------------------------------------------------------
    def to_json(self) -> dict:
        return {
            "type": self.type,
            "theta": list(self.theta),
            "field": self.field.tag,
            "r": self.r,
            "scale": format_scalar(self.scale) if isinstance(self.scale, Scalar) else str(Fraction(self.scale)),
            "nodes": [{"id": n.id, "degree": n.degree,
                       "vector": [format_scalar(c) for c in n.vector],
                       "word": list(n.witness_word)} for n in self.nodes],
            "edges": [{"src": e.src, "dst": e.dst, "root": e.root,
                       "weight": format_scalar(e.weight)} for e in self.edges],
        }

    @classmethod
    def from_json(cls, data: dict, attach_root_system: bool = True) -> "QuotientPoset":
        K = field_from_tag(data["field"])
        nodes = [CosetNode(int(n["id"]), tuple(parse_scalar(c, K) for c in n["vector"]),
                           int(n["degree"]), tuple(n.get("word", ())))
                 for n in data["nodes"]]
        nodes.sort(key=lambda n: n.id)
        if [n.id for n in nodes] != list(range(len(nodes))):
            raise ValueError("node ids must be 0..N-1")
        edges = [WeightedEdge(int(e["src"]), int(e["dst"]), int(e["root"]),
                              parse_scalar(e["weight"], K)) for e in data["edges"]]
        rs = None
        if attach_root_system:
            try:
                rs = build_root_system(data["type"])
            except RootSystemError:
                rs = None
            if rs is not None and rs.field != K:
                rs = None
        scale = parse_scalar(data.get("scale", "1"), K)
        return cls(data["type"], tuple(data["theta"]), K, nodes, edges, rs=rs, scale=scale)

    def to_dot(self) -> str:
        lines = [f'digraph "{self.type}" {{', "  rankdir=BT;", "  node [shape=point];"]
        for i, layer in enumerate(self._layers):
            ids = " ".join(f"n{j};" for j in layer)
            lines.append(f"  {{ rank=same; {ids} }}  // degree {i}")
        for e in self.edges:
            lines.append(f'  n{e.src} -> n{e.dst} [label="{format_scalar(e.weight)}"];')
        lines.append("}")
        return "\n".join(lines) + "\n"


# ---------------------------------------------------------------------------
# construction


def _deglex_cmp(a: Vector, b: Vector) -> int:
    sa = sum(a[1:], a[0]) if a else 0
    sb = sum(b[1:], b[0]) if b else 0
    s = sign(sa - sb) if a else 0
    return s if s else _cmp_scalar_seq(a, b)


def root_rescaling(rs: RootSystem, theta: ThetaSubset) -> Scalar | None:
    """c with c * rho_bar a root, if rho_bar is proportional to one."""
    rho_bar = theta.rho_bar
    k = next((i for i, x in enumerate(rho_bar) if x), None)
    if k is None:
        return None
    for gamma in rs.positive:
        if not gamma[k]:
            continue
        c = gamma[k] / rho_bar[k]
        if sign(c) > 0 and vscale(c, rho_bar) == gamma:
            return c
    return None


def enumerate_quotient(rs: RootSystem, theta: ThetaSubset | Iterable[int],
                       scale: Scalar | Fraction | int | None = None) -> QuotientPoset:
    """Breadth-first orbit of ``scale * rho_bar`` with cover edges and weights."""
    if not isinstance(theta, ThetaSubset):
        theta = rs.theta(theta)
    K = rs.field
    start = theta.rho_bar
    sc = K.one() if scale is None else (scale if isinstance(scale, Scalar) else K(scale))
    if sign(sc) <= 0:
        raise ValueError("scale must be positive")
    start = vscale(sc, start)

    # BFS over simple reflections, keeping one reduced witness word per node
    words = {start: ()}
    queue = deque([start])
    while queue:
        v = queue.popleft()
        for i in range(rs.rank):
            u = rs.reflect_simple(i, v)
            if u not in words:
                words[u] = (i,) + words[v]
                queue.append(u)

    rows = [rs.coroot_row(k) for k in range(rs.positive_count)]
    zero = K.zero()

    def coroot_values(v):
        out = []
        for row in rows:
            acc = zero
            for c, x in zip(row, v):
                if c and x:
                    acc = acc + c * x
            out.append(acc)
        return out

    values = {v: coroot_values(v) for v in words}
    degree = {v: sum(1 for c in values[v] if sign(c) < 0) for v in words}

    def order(a, b):
        if degree[a] != degree[b]:
            return -1 if degree[a] < degree[b] else 1
        return _deglex_cmp(a, b)

    vecs = sorted(words, key=functools.cmp_to_key(order))
    ids = {v: i for i, v in enumerate(vecs)}
    nodes = [CosetNode(i, v, degree[v], words[v]) for i, v in enumerate(vecs)]

    edges = []
    for v in vecs:
        d = degree[v]
        vals = values[v]
        for k, beta in enumerate(rs.positive):
            c = vals[k]
            if sign(c) <= 0:  # s_beta moves v down (or fixes it)
                continue
            u = tuple(x - c * b for x, b in zip(v, beta))
            j = ids.get(u)
            if j is not None and degree[u] == d + 1:
                edges.append(WeightedEdge(ids[v], j, k, c))
    edges.sort(key=lambda e: (e.src, e.root))
    return QuotientPoset(rs.ctype.label, theta.indices, K, nodes, edges, rs=rs, scale=sc)


def resolve_theta(rs: RootSystem, spec: str | Sequence[int] | None) -> tuple[int, ...]:
    """Theta from a type label of the standard parabolic, or explicit indices.

    Explicit indices are 1-based simple-root labels ("1,2,3"); the string
    "standard" or the matching type label picks the standard maximal parabolic.
    """
    from .rootsystem import standard_theta

    if spec is None:
        return ()
    if not isinstance(spec, str):
        return tuple(sorted(int(i) for i in spec))
    s = spec.strip()
    if s in ("", "none", "empty", "0"):
        return ()
    std, label = standard_theta(rs.ctype)
    if s.lower() == "standard":
        return std
    if s.replace(",", "").replace(" ", "").isdigit():
        idx = tuple(sorted(int(x) - 1 for x in s.split(",") if x.strip()))
        if any(not 0 <= i < rs.rank for i in idx):
            raise RootSystemError(f"theta indices {s} out of range 1..{rs.rank}")
        return idx
    try:
        if parse_type(s) == parse_type(label):
            return std
    except RootSystemError:
        pass
    if s.upper() == "A0":
        return ()
    raise RootSystemError(f"{spec!r} is not the standard parabolic of {rs.ctype} ({label})")
