"""Inner contact exponents, the induced ultrametric, and off-skeleton rates.

The contact exponent of two points is the minimax of the rate function: the
maximum, over injective paths joining them, of the minimum rate along the
path.  Rates are linear on edges, so the minimum over a traversed edge is
attained at an endpoint and vertex minima suffice; interior query points are
handled by subdividing their edge at the query point.

The associated ultrametric distance is e^(-exponent); the exponent itself is
the datum (comparisons reverse), never materialized as a float.  Two equal
points are at distance zero, encoded by the INFINITE_EXPONENT sentinel.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Mapping, Sequence

from .graphs import (
    DualGraph,
    Edge,
    EdgePoint,
    PLFunction,
    PointOnGraph,
    VertexData,
    edge_lengths,
    evaluate,
)

__all__ = [
    "ContactResult",
    "INFINITE_EXPONENT",
    "injective_paths",
    "inner_contact",
    "ultrametric_exponent",
    "rate_off_skeleton",
]

INFINITE_EXPONENT = float("inf")


@dataclass(frozen=True)
class ContactResult:
    """Minimax value, an injective path attaining it, and the number of
    injective paths between the two points."""

    exponent: Fraction
    witness_path: tuple[str, ...]
    all_paths_count: int


def injective_paths(g: DualGraph, start: str, end: str) -> list[tuple[str, ...]]:
    """All simple vertex paths from `start` to `end`, in lexicographic order
    of vertex declaration indices.  Parallel edges do not multiply vertex
    sequences."""
    g.index(start), g.index(end)
    if start == end:
        return [(start,)]
    adjacency = _sorted_adjacency(g)
    paths: list[tuple[str, ...]] = []
    stack: list[str] = [start]
    on_path = {start}

    def walk(current: str) -> None:
        for nxt in adjacency[current]:
            if nxt in on_path:
                continue
            if nxt == end:
                paths.append(tuple(stack) + (end,))
                continue
            stack.append(nxt)
            on_path.add(nxt)
            walk(nxt)
            stack.pop()
            on_path.remove(nxt)

    walk(start)
    return paths


def _sorted_adjacency(g: DualGraph) -> dict[str, list[str]]:
    order = {vid: i for i, vid in enumerate(g.ids)}
    return {vid: sorted(set(g.neighbors(vid)), key=order.__getitem__) for vid in g.ids}


def _count_simple_paths(adjacency: Mapping[str, Sequence[str]], start: str, end: str) -> int:
    if start == end:
        return 1
    count = 0
    on_path = {start}

    def walk(current: str) -> None:
        nonlocal count
        for nxt in adjacency[current]:
            if nxt in on_path:
                continue
            if nxt == end:
                count += 1
                continue
            on_path.add(nxt)
            walk(nxt)
            on_path.remove(nxt)

    walk(start)
    return count


def _prepare(
    g: DualGraph,
    rates: Mapping[str, Fraction],
    x: PointOnGraph,
    y: PointOnGraph,
    lengths: Mapping[Edge, Fraction] | None,
) -> tuple[DualGraph, dict[str, Fraction], str, str]:
    """Reduce interior query points to vertices by subdividing their edges at
    the query points (jointly, when both lie on the same edge instance)."""
    values = {vid: Fraction(rates[vid]) for vid in g.ids}
    interior: list[EdgePoint] = []
    for pt in (x, y):
        if isinstance(pt, EdgePoint):
            if pt not in interior:
                interior.append(pt)
        else:
            g.index(pt)
    if not interior:
        return g, values, x, y  # type: ignore[return-value]
    if lengths is None:
        raise ValueError("interior query points require edge lengths")

    fn = PLFunction.linear_on_edges(values)
    used = set(g.ids)
    names: dict[EdgePoint, str] = {}
    counter = 0
    for pt in interior:
        while f"@q{counter}" in used:
            counter += 1
        names[pt] = f"@q{counter}"
        counter += 1
    by_edge: dict[Edge, list[EdgePoint]] = {}
    for pt in interior:
        by_edge.setdefault(pt.edge, []).append(pt)

    vertices = list(g.vertices) + [VertexData(names[pt], 0) for pt in interior]
    edges: list[tuple[str, str]] = []
    for e in g.edges:
        inserted = sorted(by_edge.get(e, []), key=lambda p: p.offset)
        if not inserted:
            edges.append((e.u, e.v))
            continue
        chain = [e.u] + [names[pt] for pt in inserted] + [e.v]
        edges.extend(zip(chain, chain[1:]))
    for pt in interior:
        values[names[pt]] = evaluate(fn, pt, lengths)

    def resolve(pt: PointOnGraph) -> str:
        return names[pt] if isinstance(pt, EdgePoint) else pt

    return DualGraph(vertices, edges), values, resolve(x), resolve(y)


def inner_contact(
    g: DualGraph,
    rates: Mapping[str, Fraction],
    x: PointOnGraph,
    y: PointOnGraph,
    lengths: Mapping[Edge, Fraction] | None = None,
) -> ContactResult:
    """Contact exponent of two points on the graph, with a witness path.

    The exponent is computed by thresholding: it is the largest rate value c
    such that x and y are joined inside the subgraph of points with rate
    >= c.  Every path in that surviving subgraph attains the minimax, so a
    breadth-first path there is a witness.  The path count exhaustively
    enumerates simple vertex paths.
    """
    work, values, sx, sy = _prepare(g, rates, x, y, lengths)
    if sx == sy:
        return ContactResult(values[sx], (sx,), 1)
    adjacency = _sorted_adjacency(work)

    best: Fraction | None = None
    for c in sorted({values[vid] for vid in work.ids}, reverse=True):
        if values[sx] < c or values[sy] < c:
            continue
        seen = {sx}
        stack = [sx]
        while stack:
            for nxt in adjacency[stack.pop()]:
                if nxt not in seen and values[nxt] >= c:
                    seen.add(nxt)
                    stack.append(nxt)
        if sy in seen:
            best = c
            break
    if best is None:
        raise ValueError(f"no path between {x!r} and {y!r}: graph is disconnected")

    parent: dict[str, str | None] = {sx: None}
    frontier = [sx]
    while frontier and sy not in parent:
        nxt_frontier: list[str] = []
        for vid in frontier:
            for nxt in adjacency[vid]:
                if nxt not in parent and values[nxt] >= best:
                    parent[nxt] = vid
                    nxt_frontier.append(nxt)
        frontier = nxt_frontier
    path = [sy]
    while parent[path[-1]] is not None:
        path.append(parent[path[-1]])  # type: ignore[arg-type]
    witness = tuple(reversed(path))

    return ContactResult(best, witness, _count_simple_paths(adjacency, sx, sy))


def ultrametric_exponent(
    g: DualGraph,
    rates: Mapping[str, Fraction],
    x: PointOnGraph,
    y: PointOnGraph,
    lengths: Mapping[Edge, Fraction] | None = None,
) -> Fraction | float:
    """Exponent F with distance e^(-F); equal points get the infinite
    sentinel so their distance is zero.  Compare distances by comparing
    exponents in reverse order."""
    if x == y:
        return INFINITE_EXPONENT
    return inner_contact(g, rates, x, y, lengths).exponent


def rate_off_skeleton(
    g: DualGraph,
    m: Sequence[int],
    rates: Mapping[str, Fraction],
    base: PointOnGraph,
    lcm_distance: Fraction,
) -> Fraction:
    """Rate at a point retracting to `base` at the given lcm-metric distance:
    the value at the base plus the distance.  One smooth blowup over a vertex
    of multiplicity m_v moves lcm-distance 1/m_v away and raises the rate by
    exactly that much."""
    lcm_distance = Fraction(lcm_distance)
    if lcm_distance < 0:
        raise ValueError("distance must be nonnegative")
    skeletal = edge_lengths(g, m, "skeletal")
    fn = PLFunction.linear_on_edges({vid: Fraction(rates[vid]) for vid in g.ids})
    return evaluate(fn, base, skeletal) + lcm_distance
