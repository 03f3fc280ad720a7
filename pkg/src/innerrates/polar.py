"""Exhaustive enumeration of admissible polar configurations.

Given only the topology, genera, and hyperplane data of a graph, every
candidate polar vector p >= 0 must satisfy the weighted-sum constraint
sum(m_v p_v) = total polar weight (fixed by the multiplicity balance), and
its solved rate vector must be admissible: a = M^(-1)(k + l - p) has positive
integer entries, with q_v = a_v/m_v equal to 1 exactly at the vertices
carrying hyperplane arrows (and > 1 elsewhere, unless strictness is relaxed
for exploratory use).

The weighted sum makes the candidate set finite; a sound prune keeps the
search fast: for a connected negative-definite intersection matrix, -M^(-1)
is entrywise positive, so every a_v grows strictly with every p coordinate.
Once a partial candidate pushes a_v past m_v at a vertex with l_v > 0, no
completion can bring q_v back to 1.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterator, Sequence

from .graphs import DualGraph, VertexData, intersection_matrix, validate
from .linalg import solve_linear
from .solver import canonical_divisor, milnor_fiber_euler, solve_multiplicities

__all__ = [
    "AdmissibleConfig",
    "PolarEnumeration",
    "NoLNodesError",
    "total_polar_weight",
    "enumerate_admissible",
    "is_admissible",
    "install_polar",
]


class NoLNodesError(ValueError):
    """Enumeration requires at least one vertex with l > 0."""


@dataclass(frozen=True)
class AdmissibleConfig:
    """One admissible pair: polar vector p, rates q, numerators a = m*q."""

    p: tuple[int, ...]
    q: tuple[Fraction, ...]
    a: tuple[int, ...]


@dataclass(frozen=True)
class PolarEnumeration:
    """All admissible configurations, in lexicographic p order, plus the
    fixed total weight and an optional diagnostic when the result is empty
    for a structural reason."""

    total_weight: int
    configs: tuple[AdmissibleConfig, ...]
    diagnostic: str | None = None

    def __iter__(self) -> Iterator[AdmissibleConfig]:
        return iter(self.configs)

    def __len__(self) -> int:
        return len(self.configs)


def total_polar_weight(g: DualGraph, m: Sequence[int]) -> int:
    """sum(m_v l_v) - chi(fiber) = sum of m_v(2l_v - chi_v)."""
    m_x = sum(m[i] * vd.l for i, vd in enumerate(g.vertices))
    return m_x - milnor_fiber_euler(g, m)


def install_polar(g: DualGraph, p: Sequence[int]) -> DualGraph:
    """Copy of the graph with the polar weights replaced by `p`."""
    if len(p) != g.n:
        raise ValueError("polar vector length does not match the graph")
    vertices = [
        VertexData(vd.id, vd.self_int, vd.genus, vd.l, int(p[i]))
        for i, vd in enumerate(g.vertices)
    ]
    return DualGraph(vertices, [(e.u, e.v) for e in g.edges])


def _admissibility_failure(
    g: DualGraph,
    m: Sequence[int],
    a: Sequence[Fraction],
    strict: bool,
) -> str | None:
    for i, vd in enumerate(g.vertices):
        if a[i].denominator != 1:
            return f"a[{vd.id}] = {a[i]} is not an integer"
        if a[i] <= 0:
            return f"a[{vd.id}] = {a[i]} is not positive"
        q = a[i] / m[i]
        if vd.l > 0 and q != 1:
            return f"q[{vd.id}] = {q} but l > 0 demands 1"
        if vd.l == 0:
            if q < 1:
                return f"q[{vd.id}] = {q} < 1"
            if strict and q == 1:
                return f"q[{vd.id}] = 1 at a vertex with no hyperplane arrow"
    return None


def is_admissible(
    g: DualGraph, m: Sequence[int], p: Sequence[int], strict: bool = True
) -> tuple[bool, str | None]:
    """Check one polar vector; the diagnostic names the first violated
    constraint."""
    if len(p) != g.n:
        raise ValueError("polar vector length does not match the graph")
    if any(x < 0 for x in p):
        return False, "polar vector has a negative entry"
    weight = sum(m[i] * p[i] for i in range(g.n))
    expected = total_polar_weight(g, m)
    if weight != expected:
        return False, f"weighted sum {weight} != total polar weight {expected}"
    matrix = intersection_matrix(g)
    k, _ = canonical_divisor(g, m)
    rhs = [k[i] + vd.l - p[i] for i, vd in enumerate(g.vertices)]
    a = solve_linear(matrix, rhs)
    failure = _admissibility_failure(g, m, a, strict)
    return failure is None, failure


def enumerate_admissible(g: DualGraph, strict: bool = True) -> PolarEnumeration:
    """All admissible configurations, lexicographically ordered by p in
    vertex declaration order.  Deterministic and exhaustive over the simplex
    {p >= 0 : sum(m_v p_v) = total}."""
    report = validate(g)
    if not report.has_l_node:
        raise NoLNodesError("no vertex carries a hyperplane arrow (l > 0)")
    if not report.ok:
        raise ValueError("graph failed validation: " + "; ".join(report.issues))
    m = solve_multiplicities(g)
    total = total_polar_weight(g, m)
    if total < 0:
        return PolarEnumeration(
            total, (), f"total polar weight {total} is negative: no candidates exist"
        )

    n = g.n
    matrix = intersection_matrix(g)
    k, _ = canonical_divisor(g, m)
    # a(p) = base + sum_j p_j * unit[j], where unit[j] = column j of -M^(-1)
    # is entrywise positive on a validated graph.
    base = solve_linear(matrix, [k[i] + vd.l for i, vd in enumerate(g.vertices)])
    unit = [
        [-x for x in solve_linear(matrix, [1 if i == j else 0 for i in range(n)])]
        for j in range(n)
    ]
    l_nodes = [i for i, vd in enumerate(g.vertices) if vd.l > 0]

    configs: list[AdmissibleConfig] = []
    p = [0] * n
    a = list(base)

    def overshoots() -> bool:
        # a only grows as p grows, so exceeding m at an l-node is final.
        return any(a[i] > m[i] for i in l_nodes)

    def emit() -> None:
        failure = _admissibility_failure(g, m, a, strict)
        if failure is None:
            configs.append(
                AdmissibleConfig(
                    tuple(p),
                    tuple(a[i] / m[i] for i in range(n)),
                    tuple(int(x) for x in a),
                )
            )

    def descend(j: int, remaining: int) -> None:
        if overshoots():
            return
        step = unit[j]
        saved = a.copy()
        if j == n - 1:
            if remaining % m[j] == 0:
                count = remaining // m[j]
                for i in range(n):
                    a[i] += count * step[i]
                p[j] = count
                if not overshoots():
                    emit()
            p[j] = 0
            a[:] = saved
            return
        for count in range(remaining // m[j] + 1):
            if count > 0:
                for i in range(n):
                    a[i] += step[i]
                if overshoots():
                    break
            p[j] = count
            descend(j + 1, remaining - count * m[j])
        p[j] = 0
        a[:] = saved

    descend(0, total)
    return PolarEnumeration(total, tuple(configs))
