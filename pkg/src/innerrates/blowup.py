"""Graph-level blowups with exact propagation of multiplicities and rates.

Blowing up a generic smooth point of the curve at `v` attaches a new
(-1)-vertex w with m_w = m_v and q_w = q_v + 1/m_v.  Blowing up the double
point on an edge [v, v'] splits the edge through a new (-1)-vertex with
m_w = m_v + m_v' and q_w = (m_v q_v + m_v' q_v')/m_w; this is an isometry for
the skeletal metric.  Each result carries the retraction sending the new
vertex back to the point that was blown up, so divisors on the new graph can
be pushed forward and compared.
"""

from __future__ import annotations

from dataclasses import dataclass, replace
from fractions import Fraction
from typing import Mapping, Sequence

from .graphs import (
    Divisor,
    DualGraph,
    Edge,
    EdgePoint,
    PLFunction,
    PointOnGraph,
    VertexData,
    edge_length,
    pushforward,
)
from .solver import canonical_divisor, laplacian

__all__ = ["BlowupResult", "blowup_smooth", "blowup_edge", "check_pushforward_invariance"]


@dataclass(frozen=True)
class BlowupResult:
    """Outcome of one blowup: the new graph, the extended multiplicity and
    rate vectors (old vertices keep their values), the id of the new vertex,
    and the retraction onto the old graph."""

    graph: DualGraph
    m: tuple[int, ...]
    q: tuple[Fraction, ...]
    new_vertex: str
    retraction: Mapping[str, PointOnGraph]


def _fresh_id(g: DualGraph, prefix: str = "w") -> str:
    used = set(g.ids)
    i = 0
    while f"{prefix}{i}" in used:
        i += 1
    return f"{prefix}{i}"


def _identity_retraction(g: DualGraph) -> dict[str, PointOnGraph]:
    return {vid: vid for vid in g.ids}


def blowup_smooth(
    g: DualGraph,
    m: Sequence[int],
    q: Sequence[Fraction],
    vid: str,
    transfer_l: int = 0,
    transfer_p: int = 0,
) -> BlowupResult:
    """Blow up a smooth point of the curve at `vid`.  Arrow weight can be
    moved onto the new vertex when the blown-up point is where the
    corresponding strict transform passes."""
    i = g.index(vid)
    vd = g.vertex(vid)
    if not 0 <= transfer_l <= vd.l:
        raise ValueError(f"transfer_l={transfer_l} exceeds available l={vd.l} at {vid}")
    if not 0 <= transfer_p <= vd.p:
        raise ValueError(f"transfer_p={transfer_p} exceeds available p={vd.p} at {vid}")
    new_id = _fresh_id(g)
    vertices = list(g.vertices)
    vertices[i] = replace(vd, self_int=vd.self_int - 1, l=vd.l - transfer_l, p=vd.p - transfer_p)
    vertices.append(VertexData(new_id, -1, 0, transfer_l, transfer_p))
    edges = [(e.u, e.v) for e in g.edges] + [(vid, new_id)]
    new_graph = DualGraph(vertices, edges)
    retraction = _identity_retraction(g)
    retraction[new_id] = vid
    return BlowupResult(
        graph=new_graph,
        m=tuple(m) + (m[i],),
        q=tuple(Fraction(x) for x in q) + (Fraction(q[i]) + Fraction(1, m[i]),),
        new_vertex=new_id,
        retraction=retraction,
    )


def blowup_edge(g: DualGraph, m: Sequence[int], q: Sequence[Fraction], e: Edge) -> BlowupResult:
    """Blow up the double point corresponding to one edge instance.  No arrow
    transfer: strict transforms never pass through double points on validated
    configurations."""
    if e not in g.edges:
        raise KeyError(f"no edge instance {e}")
    iu, iv = g.index(e.u), g.index(e.v)
    new_id = _fresh_id(g)
    m_w = m[iu] + m[iv]
    q_w = (Fraction(q[iu]) * m[iu] + Fraction(q[iv]) * m[iv]) / m_w
    vertices = []
    for i, vd in enumerate(g.vertices):
        if i in (iu, iv):
            vd = replace(vd, self_int=vd.self_int - 1)
        vertices.append(vd)
    vertices.append(VertexData(new_id, -1))
    edges: list[tuple[str, str]] = []
    removed = False
    for other in g.edges:
        if other == e and not removed:
            removed = True
            continue
        edges.append((other.u, other.v))
    edges.append((e.u, new_id))
    edges.append((new_id, e.v))
    new_graph = DualGraph(vertices, edges)
    retraction = _identity_retraction(g)
    # The new vertex sits on the old edge at skeletal distance 1/(m_u·m_w)
    # from the canonical endpoint.
    retraction[new_id] = EdgePoint(e, Fraction(1, m[iu] * m_w))
    return BlowupResult(
        graph=new_graph,
        m=tuple(m) + (m_w,),
        q=tuple(Fraction(x) for x in q) + (q_w,),
        new_vertex=new_id,
        retraction=retraction,
    )


def check_pushforward_invariance(
    g_before: DualGraph,
    m_before: Sequence[int],
    result: BlowupResult,
    fn_before: PLFunction,
    fn_after: PLFunction,
) -> bool:
    """True when the Laplacian and the canonical divisor of the blown-up
    graph push forward along the retraction to those of the original graph.
    `fn_after` must restrict to `fn_before` on the old vertices."""
    for vid in g_before.ids:
        if fn_after.values[vid] != fn_before.values[vid]:
            raise ValueError(f"fn_after does not restrict to fn_before at {vid}")
    lap_after = laplacian(result.graph, result.m, fn_after)
    lap_before = laplacian(g_before, m_before, fn_before)
    if pushforward(lap_after, result.retraction) != lap_before:
        return False
    _, k_after = canonical_divisor(result.graph, result.m)
    _, k_before = canonical_divisor(g_before, m_before)
    return pushforward(k_after, result.retraction) == k_before


def edge_blowup_is_isometry(
    g: DualGraph, m: Sequence[int], e: Edge, result: BlowupResult
) -> bool:
    """1/(m_u·m_w) + 1/(m_w·m_v) must equal the original 1/(m_u·m_v)."""
    before = edge_length(g, m, e, "skeletal")
    w = result.new_vertex
    first = result.graph.edge_between(e.u, w)
    second = result.graph.edge_between(w, e.v)
    after = edge_length(result.graph, result.m, first, "skeletal") + edge_length(
        result.graph, result.m, second, "skeletal"
    )
    return before == after
