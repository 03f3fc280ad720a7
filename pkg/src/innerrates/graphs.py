"""Decorated dual graphs, their metrics, divisors, and piecewise-linear
functions.

A `DualGraph` is a connected multigraph without loops.  Every vertex carries a
self-intersection number, a genus, and two nonnegative arrow weights: `l`
(intersection multiplicity of the strict transform of a generic hyperplane
section) and `p` (same for the polar curve of a generic plane projection).

Two metrics are available once a multiplicity vector `m` is known: the
skeletal metric gives an edge `[v, v']` length 1/(m_v·m_v'), the lcm metric
gives it length gcd(m_v, m_v')/(m_v·m_v') = 1/lcm(m_v, m_v').

Points of the underlying metric graph are either vertex ids (plain strings)
or `EdgePoint`s, i.e. interior points of a specific edge instance.  Interior
points are canonicalized on construction so that the same geometric point
reached from either endpoint compares equal.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import gcd
from typing import Callable, Iterable, Mapping, NamedTuple, Sequence, Union

from .linalg import RationalMatrix, Rational, is_negative_definite

__all__ = [
    "VertexData",
    "Edge",
    "DualGraph",
    "EdgePoint",
    "PointOnGraph",
    "Divisor",
    "PLFunction",
    "ValidationReport",
    "UnknownEdgeError",
    "intersection_matrix",
    "validate",
    "edge_length",
    "edge_lengths",
    "edge_point",
    "evaluate",
    "pushforward",
]


class UnknownEdgeError(KeyError):
    """Raised when an edge lookup refers to no edge instance of the graph."""


@dataclass(frozen=True)
class VertexData:
    """Decorations of one exceptional curve.

    `self_int` is the self-intersection (typically negative), `genus` the
    genus of the curve, `l` and `p` the hyperplane / polar arrow weights.
    """

    id: str
    self_int: int
    genus: int = 0
    l: int = 0
    p: int = 0

    def __post_init__(self) -> None:
        if self.genus < 0:
            raise ValueError(f"vertex {self.id}: genus must be nonnegative")
        if self.l < 0 or self.p < 0:
            raise ValueError(f"vertex {self.id}: arrow weights must be nonnegative")


class Edge(NamedTuple):
    """One edge instance.  Endpoints are sorted (u <= v lexicographically);
    `key` distinguishes parallel copies between the same pair."""

    u: str
    v: str
    key: int

    def other(self, vid: str) -> str:
        if vid == self.u:
            return self.v
        if vid == self.v:
            return self.u
        raise ValueError(f"{vid} is not an endpoint of {self}")


class DualGraph:
    """A loop-free multigraph with decorated vertices.

    Vertex order is the declaration order and fixes all matrix and vector
    indexing.  Instances are immutable; graph surgery returns new graphs.
    """

    __slots__ = ("vertices", "edges", "_index", "_incident")

    def __init__(self, vertices: Iterable[VertexData], edges: Iterable[tuple[str, str]] = ()):
        self.vertices: tuple[VertexData, ...] = tuple(vertices)
        index: dict[str, int] = {}
        for i, vd in enumerate(self.vertices):
            if vd.id in index:
                raise ValueError(f"duplicate vertex id {vd.id!r}")
            index[vd.id] = i
        canonical: list[Edge] = []
        seen: dict[tuple[str, str], int] = {}
        for a, b in edges:
            if a == b:
                raise ValueError(f"loop edge at {a!r}")
            if a not in index or b not in index:
                missing = a if a not in index else b
                raise ValueError(f"edge endpoint {missing!r} is not a declared vertex")
            u, v = (a, b) if a <= b else (b, a)
            key = seen.get((u, v), 0)
            seen[(u, v)] = key + 1
            canonical.append(Edge(u, v, key))
        self.edges: tuple[Edge, ...] = tuple(canonical)
        self._index = index
        incident: dict[str, list[Edge]] = {vd.id: [] for vd in self.vertices}
        for e in self.edges:
            incident[e.u].append(e)
            incident[e.v].append(e)
        self._incident = {vid: tuple(es) for vid, es in incident.items()}

    @property
    def n(self) -> int:
        return len(self.vertices)

    @property
    def ids(self) -> tuple[str, ...]:
        return tuple(vd.id for vd in self.vertices)

    def index(self, vid: str) -> int:
        try:
            return self._index[vid]
        except KeyError:
            raise KeyError(f"unknown vertex {vid!r}") from None

    def vertex(self, vid: str) -> VertexData:
        return self.vertices[self.index(vid)]

    def incident_edges(self, vid: str) -> tuple[Edge, ...]:
        self.index(vid)
        return self._incident[vid]

    def valency(self, vid: str) -> int:
        return len(self.incident_edges(vid))

    def neighbors(self, vid: str) -> tuple[str, ...]:
        return tuple(e.other(vid) for e in self.incident_edges(vid))

    def edge_between(self, a: str, b: str, key: int = 0) -> Edge:
        u, v = (a, b) if a <= b else (b, a)
        candidate = Edge(u, v, key)
        if candidate not in self.edges:
            raise UnknownEdgeError(f"no edge instance {a!r}-{b!r} (key {key})")
        return candidate

    def is_connected(self) -> bool:
        if not self.vertices:
            return True
        seen = {self.vertices[0].id}
        stack = [self.vertices[0].id]
        while stack:
            for w in self.neighbors(stack.pop()):
                if w not in seen:
                    seen.add(w)
                    stack.append(w)
        return len(seen) == self.n

    def __eq__(self, other: object) -> bool:
        return (
            isinstance(other, DualGraph)
            and self.vertices == other.vertices
            and self.edges == other.edges
        )

    def __hash__(self) -> int:
        return hash((self.vertices, self.edges))

    def __repr__(self) -> str:
        return f"DualGraph({self.n} vertices, {len(self.edges)} edges)"


@dataclass(frozen=True)
class EdgePoint:
    """Interior point of an edge instance; `offset` is the skeletal distance
    from the canonical endpoint `edge.u`."""

    edge: Edge
    offset: Fraction

    def __repr__(self) -> str:
        return f"EdgePoint({self.edge.u}-{self.edge.v}#{self.edge.key} @ {self.offset})"


PointOnGraph = Union[str, EdgePoint]


def edge_point(edge: Edge, ref: str, offset: Rational, length: Rational) -> EdgePoint:
    """Interior point at `offset` from endpoint `ref` on an edge of the given
    length.  The result is orientation-independent: measuring t from one end
    or length-t from the other yields the same point."""
    offset = Fraction(offset)
    length = Fraction(length)
    if ref == edge.u:
        from_u = offset
    elif ref == edge.v:
        from_u = length - offset
    else:
        raise ValueError(f"{ref!r} is not an endpoint of {edge}")
    if not 0 < from_u < length:
        raise ValueError("offset must be strictly interior to the edge")
    return EdgePoint(edge, from_u)


class Divisor:
    """Finite integer-weighted sum of points of a graph.

    Zero coefficients are never stored.  Supports +, -, and integer scaling.
    """

    __slots__ = ("_coeffs",)

    def __init__(self, coeffs: Mapping[PointOnGraph, int] | Iterable[tuple[PointOnGraph, int]] = ()):
        items = coeffs.items() if isinstance(coeffs, Mapping) else coeffs
        acc: dict[PointOnGraph, int] = {}
        for pt, c in items:
            if isinstance(c, Fraction):
                if c.denominator != 1:
                    raise ValueError(f"divisor coefficient at {pt!r} is not an integer: {c}")
                c = int(c)
            acc[pt] = acc.get(pt, 0) + c
        self._coeffs = {pt: c for pt, c in acc.items() if c != 0}

    def __getitem__(self, pt: PointOnGraph) -> int:
        return self._coeffs.get(pt, 0)

    def items(self) -> tuple[tuple[PointOnGraph, int], ...]:
        return tuple(self._coeffs.items())

    @property
    def support(self) -> tuple[PointOnGraph, ...]:
        return tuple(self._coeffs)

    def degree(self) -> int:
        return sum(self._coeffs.values())

    def __add__(self, other: "Divisor") -> "Divisor":
        merged = dict(self._coeffs)
        for pt, c in other._coeffs.items():
            merged[pt] = merged.get(pt, 0) + c
        return Divisor(merged)

    def __sub__(self, other: "Divisor") -> "Divisor":
        return self + (-1) * other

    def __rmul__(self, scalar: int) -> "Divisor":
        return Divisor({pt: scalar * c for pt, c in self._coeffs.items()})

    def __eq__(self, other: object) -> bool:
        return isinstance(other, Divisor) and self._coeffs == other._coeffs

    def __bool__(self) -> bool:
        return bool(self._coeffs)

    def __len__(self) -> int:
        return len(self._coeffs)

    def __repr__(self) -> str:
        if not self._coeffs:
            return "Divisor(0)"
        body = " + ".join(f"{c}[{pt}]" for pt, c in self._coeffs.items())
        return f"Divisor({body})"


def degree(d: Divisor) -> int:
    return d.degree()


def pushforward(d: Divisor, f: Mapping[PointOnGraph, PointOnGraph] | Callable[[PointOnGraph], PointOnGraph]) -> Divisor:
    """Push a divisor forward along a point mapping: the coefficient at a
    target point is the sum over its preimages.  `f` must be defined on the
    whole support of `d`."""
    if callable(f):
        mapper = f
    else:
        def mapper(pt: PointOnGraph) -> PointOnGraph:
            try:
                return f[pt]
            except KeyError:
                raise ValueError(f"point mapping is undefined at {pt!r}") from None
    return Divisor([(mapper(pt), c) for pt, c in d.items()])


@dataclass(frozen=True)
class PLFunction:
    """Function with rational values at vertices, linear on edge segments.

    `breakpoints[e]` lists interior non-linearity points of the edge instance
    `e` as (offset from e.u, value) pairs with strictly increasing offsets;
    between consecutive breakpoints (and the edge endpoints) the function
    interpolates linearly with respect to the skeletal metric.
    """

    values: Mapping[str, Fraction]
    breakpoints: Mapping[Edge, tuple[tuple[Fraction, Fraction], ...]] = None  # type: ignore[assignment]

    def __post_init__(self) -> None:
        object.__setattr__(
            self, "values", {vid: Fraction(x) for vid, x in dict(self.values).items()}
        )
        bp = self.breakpoints or {}
        cleaned: dict[Edge, tuple[tuple[Fraction, Fraction], ...]] = {}
        for e, pts in dict(bp).items():
            pts = tuple((Fraction(off), Fraction(val)) for off, val in pts)
            if any(pts[i][0] >= pts[i + 1][0] for i in range(len(pts) - 1)):
                raise ValueError(f"breakpoint offsets on {e} must strictly increase")
            if pts:
                cleaned[e] = pts
        object.__setattr__(self, "breakpoints", cleaned)

    @classmethod
    def linear_on_edges(cls, values: Mapping[str, Rational]) -> "PLFunction":
        return cls({vid: Fraction(x) for vid, x in values.items()}, {})


ValidationIssue = str


@dataclass(frozen=True)
class ValidationReport:
    """Outcome of the structural checks on a decorated graph."""

    connected: bool
    loop_free: bool
    negative_definite: bool
    has_l_node: bool
    issues: tuple[ValidationIssue, ...]

    @property
    def ok(self) -> bool:
        return not self.issues


def intersection_matrix(g: DualGraph) -> RationalMatrix:
    """Symmetric matrix with self-intersections on the diagonal and edge
    multiplicities off it."""
    n = g.n
    grid = [[0] * n for _ in range(n)]
    for i, vd in enumerate(g.vertices):
        grid[i][i] = vd.self_int
    for e in g.edges:
        i, j = g.index(e.u), g.index(e.v)
        grid[i][j] += 1
        grid[j][i] += 1
    return RationalMatrix(grid)


def validate(g: DualGraph) -> ValidationReport:
    """Check connectivity, loop-freeness, negative-definiteness, and the
    presence of at least one hyperplane arrow.  Never raises; failures are
    reported."""
    issues: list[str] = []
    connected = g.is_connected()
    if not connected:
        issues.append("graph is not connected")
    loop_free = True  # loops are rejected at construction time
    negative_definite = g.n > 0 and is_negative_definite(intersection_matrix(g))
    if not negative_definite:
        issues.append("intersection matrix is not negative definite")
    has_l_node = any(vd.l > 0 for vd in g.vertices)
    if not has_l_node:
        issues.append("no vertex carries a hyperplane arrow (l > 0)")
    return ValidationReport(connected, loop_free, negative_definite, has_l_node, tuple(issues))


def edge_length(g: DualGraph, m: Sequence[int], e: Edge, metric: str = "skeletal") -> Fraction:
    """Length of one edge instance: 1/(m_u·m_v) for the skeletal metric,
    gcd(m_u,m_v)/(m_u·m_v) for the lcm metric."""
    if e not in g.edges:
        raise UnknownEdgeError(f"no edge instance {e}")
    mu = m[g.index(e.u)]
    mv = m[g.index(e.v)]
    if mu <= 0 or mv <= 0:
        raise ValueError("multiplicities must be strictly positive")
    if metric == "skeletal":
        return Fraction(1, mu * mv)
    if metric == "lcm":
        return Fraction(gcd(mu, mv), mu * mv)
    raise ValueError(f"unknown metric {metric!r}")


def edge_lengths(g: DualGraph, m: Sequence[int], metric: str = "skeletal") -> dict[Edge, Fraction]:
    return {e: edge_length(g, m, e, metric) for e in g.edges}


def evaluate(fn: PLFunction, pt: PointOnGraph, lengths: Mapping[Edge, Fraction]) -> Fraction:
    """Value of a piecewise-linear function at a point, interpolating linearly
    between breakpoints with respect to the given edge lengths."""
    if isinstance(pt, str):
        try:
            return fn.values[pt]
        except KeyError:
            raise KeyError(f"function has no value at vertex {pt!r}") from None
    e = pt.edge
    length = lengths[e]
    if not 0 < pt.offset < length:
        raise ValueError(f"point offset {pt.offset} outside edge of length {length}")
    nodes = [(Fraction(0), fn.values[e.u])]
    nodes.extend(fn.breakpoints.get(e, ()))
    nodes.append((length, fn.values[e.v]))
    for (off0, val0), (off1, val1) in zip(nodes, nodes[1:]):
        if off0 <= pt.offset <= off1:
            return val0 + (val1 - val0) * (pt.offset - off0) / (off1 - off0)
    raise ValueError("breakpoint offsets exceed the edge length")
