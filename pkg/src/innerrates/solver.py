"""Solved invariants of a decorated dual graph.

Given a validated graph, the multiplicity vector m is the exact solution of
M·m = -L (one balance equation per vertex, M the intersection matrix), and
the inner-rate numerators a_v = m_v·q_v solve M·a = K + L - P, where K
collects the canonical coefficients k_v = val(v) + 2·g(v) - 2 and L, P the
arrow weights.  The Laplacian of the rate function, the closed-form divisor
m_v(2l_v - p_v - chi_v), and the divisor K + 2L - P must all agree; that
three-way identity is exposed as a check, along with the multiplicity
balance m(polar) = m(surface) - chi(Milnor fiber) that follows from the
Laplacian having degree zero.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Mapping, Sequence

from .graphs import (
    Divisor,
    DualGraph,
    EdgePoint,
    PLFunction,
    edge_lengths,
    intersection_matrix,
)
from .linalg import solve_linear

__all__ = [
    "InvariantBundle",
    "AdmissibilityWarning",
    "NonIntegralMultiplicityError",
    "NonPositiveMultiplicityError",
    "NonIntegralSlopeError",
    "IdentityReport",
    "LeGreuelResult",
    "solve_multiplicities",
    "canonical_divisor",
    "solve_inner_rates",
    "rates_function",
    "laplacian",
    "laplacian_from_decorations",
    "verify_laplacian_identity",
    "milnor_fiber_euler",
    "le_greuel_balance",
    "euler_char_complement",
]


class NonIntegralMultiplicityError(ValueError):
    """The balance system has a non-integral solution: the decorations do not
    come from a blowup of the maximal ideal."""


class NonPositiveMultiplicityError(ValueError):
    """The balance system has a non-positive entry: same diagnosis."""


class NonIntegralSlopeError(ValueError):
    """A piecewise-linear function fed to the Laplacian has a segment whose
    slope is not an integer."""


@dataclass(frozen=True)
class AdmissibilityWarning:
    code: str
    vertex: str
    message: str

    def __str__(self) -> str:
        return self.message


@dataclass(frozen=True)
class InvariantBundle:
    """Everything solved for one graph: multiplicities m, rates q, their
    numerators a = m*q, canonical data k / K, the arrow divisors L and P,
    per-vertex Euler characteristics chi of the punctured curves, and any
    admissibility warnings."""

    graph: DualGraph
    m: tuple[int, ...]
    q: tuple[Fraction, ...]
    a: tuple[Fraction, ...]
    k: tuple[int, ...]
    chi: tuple[int, ...]
    K_div: Divisor
    L_div: Divisor
    P_div: Divisor
    rates: PLFunction
    warnings: tuple[AdmissibilityWarning, ...]

    @property
    def admissible(self) -> bool:
        return not self.warnings

    def q_by_id(self) -> dict[str, Fraction]:
        return {vd.id: self.q[i] for i, vd in enumerate(self.graph.vertices)}


def euler_char_complement(g: DualGraph, vid: str) -> int:
    """chi of the curve at `vid` with its double points removed:
    2 - 2*genus - valency (each parallel edge removes its own point)."""
    vd = g.vertex(vid)
    return 2 - 2 * vd.genus - g.valency(vid)


def solve_multiplicities(g: DualGraph) -> tuple[int, ...]:
    """Exact solution m of M·m = -L, checked to be positive integers."""
    matrix = intersection_matrix(g)
    rhs = [-vd.l for vd in g.vertices]
    solution = solve_linear(matrix, rhs)
    for vd, value in zip(g.vertices, solution):
        if value.denominator != 1:
            raise NonIntegralMultiplicityError(
                f"multiplicity at {vd.id} is {value}, not an integer"
            )
        if value <= 0:
            raise NonPositiveMultiplicityError(
                f"multiplicity at {vd.id} is {value}, not positive"
            )
    return tuple(int(value) for value in solution)


def canonical_divisor(g: DualGraph, m: Sequence[int]) -> tuple[tuple[int, ...], Divisor]:
    """Per-vertex k_v = val(v) + 2g(v) - 2 and the divisor sum m_v k_v [v]."""
    k = tuple(g.valency(vd.id) + 2 * vd.genus - 2 for vd in g.vertices)
    div = Divisor({vd.id: m[i] * k[i] for i, vd in enumerate(g.vertices)})
    return k, div


def rates_function(g: DualGraph, q: Sequence[Fraction]) -> PLFunction:
    return PLFunction.linear_on_edges({vd.id: q[i] for i, vd in enumerate(g.vertices)})


def solve_inner_rates(g: DualGraph) -> InvariantBundle:
    """Solve the full bundle.  Violations of the admissibility invariants
    (a integral positive, q >= 1, q = 1 exactly at vertices with l > 0) are
    attached as warnings, not raised: infeasible candidates must remain
    inspectable."""
    m = solve_multiplicities(g)
    k, K_div = canonical_divisor(g, m)
    matrix = intersection_matrix(g)
    rhs = [k[i] + vd.l - vd.p for i, vd in enumerate(g.vertices)]
    a = tuple(solve_linear(matrix, rhs))
    q = tuple(a_i / m_i for a_i, m_i in zip(a, m))
    chi = tuple(euler_char_complement(g, vd.id) for vd in g.vertices)
    L_div = Divisor({vd.id: m[i] * vd.l for i, vd in enumerate(g.vertices)})
    P_div = Divisor({vd.id: m[i] * vd.p for i, vd in enumerate(g.vertices)})

    warnings: list[AdmissibilityWarning] = []
    for i, vd in enumerate(g.vertices):
        if a[i].denominator != 1:
            warnings.append(
                AdmissibilityWarning(
                    "non-integral-a", vd.id, f"a[{vd.id}] = {a[i]} is not an integer"
                )
            )
        if a[i] <= 0:
            warnings.append(
                AdmissibilityWarning("non-positive-a", vd.id, f"a[{vd.id}] = {a[i]} is not positive")
            )
        if q[i] < 1:
            warnings.append(
                AdmissibilityWarning("rate-below-one", vd.id, f"q[{vd.id}] = {q[i]} < 1")
            )
        if vd.l > 0 and q[i] != 1:
            warnings.append(
                AdmissibilityWarning(
                    "rate-not-one-at-l-node", vd.id, f"q[{vd.id}] = {q[i]} but l > 0 demands 1"
                )
            )
        if vd.l == 0 and q[i] == 1:
            warnings.append(
                AdmissibilityWarning(
                    "rate-one-off-l-node", vd.id, f"q[{vd.id}] = 1 but vertex has no hyperplane arrow"
                )
            )

    return InvariantBundle(
        graph=g,
        m=m,
        q=q,
        a=a,
        k=k,
        chi=chi,
        K_div=K_div,
        L_div=L_div,
        P_div=P_div,
        rates=rates_function(g, q),
        warnings=tuple(warnings),
    )


def laplacian(g: DualGraph, m: Sequence[int], fn: PLFunction) -> Divisor:
    """Divisor of outgoing-slope sums of `fn`, at vertices and at interior
    breakpoints, with slopes taken in the skeletal metric.  Slopes must be
    integers."""
    lengths = edge_lengths(g, m, "skeletal")
    coeffs: dict = {}

    def add(pt, c: Fraction) -> None:
        coeffs[pt] = coeffs.get(pt, 0) + c

    for e in g.edges:
        length = lengths[e]
        nodes = [(Fraction(0), fn.values[e.u])]
        interior = fn.breakpoints.get(e, ())
        if interior and not interior[-1][0] < length:
            raise ValueError(f"breakpoints on {e} exceed its length {length}")
        nodes.extend(interior)
        nodes.append((length, fn.values[e.v]))
        slopes: list[Fraction] = []
        for (off0, val0), (off1, val1) in zip(nodes, nodes[1:]):
            slope = (val1 - val0) / (off1 - off0)
            if slope.denominator != 1:
                raise NonIntegralSlopeError(
                    f"slope {slope} on edge {e.u}-{e.v}#{e.key} is not an integer"
                )
            slopes.append(slope)
        add(e.u, slopes[0])
        add(e.v, -slopes[-1])
        for idx, (off, _val) in enumerate(interior):
            add(EdgePoint(e, off), slopes[idx + 1] - slopes[idx])
    return Divisor(coeffs)


def laplacian_from_decorations(g: DualGraph, m: Sequence[int]) -> Divisor:
    """Closed form: coefficient m_v·(2l_v - p_v - chi_v) at every vertex."""
    return Divisor(
        {
            vd.id: m[i] * (2 * vd.l - vd.p - euler_char_complement(g, vd.id))
            for i, vd in enumerate(g.vertices)
        }
    )


@dataclass(frozen=True)
class IdentityReport:
    """Comparison of the three expressions for the Laplacian of the rates."""

    holds: bool
    laplacian: Divisor
    rhs: Divisor
    formula: Divisor
    mismatches: tuple[str, ...]


def verify_laplacian_identity(g: DualGraph, bundle: InvariantBundle) -> IdentityReport:
    """Check Laplacian(rates) = K + 2L - P = closed-form divisor, exactly."""
    lap = laplacian(g, bundle.m, bundle.rates)
    rhs = bundle.K_div + 2 * bundle.L_div - bundle.P_div
    formula = laplacian_from_decorations(g, bundle.m)
    mismatches: list[str] = []
    points: list = []
    for div in (lap, rhs, formula):
        for pt in div.support:
            if pt not in points:
                points.append(pt)
    for pt in points:
        values = (lap[pt], rhs[pt], formula[pt])
        if len(set(values)) > 1:
            mismatches.append(
                f"at {pt}: laplacian {values[0]}, K+2L-P {values[1]}, closed form {values[2]}"
            )
    return IdentityReport(not mismatches, lap, rhs, formula, tuple(mismatches))


def milnor_fiber_euler(g: DualGraph, m: Sequence[int]) -> int:
    """chi of the Milnor fiber of a generic linear form:
    sum of m_v·(chi_v - l_v) over the vertices."""
    return sum(
        m[i] * (euler_char_complement(g, vd.id) - vd.l) for i, vd in enumerate(g.vertices)
    )


@dataclass(frozen=True)
class LeGreuelResult:
    m_x: int
    m_pi: int
    chi_fiber: int
    holds: bool


def le_greuel_balance(g: DualGraph, m: Sequence[int]) -> LeGreuelResult:
    """m(surface) = sum m_v l_v, m(polar) = sum m_v p_v; the balance holds
    when m(polar) = m(surface) - chi(fiber)."""
    m_x = sum(m[i] * vd.l for i, vd in enumerate(g.vertices))
    m_pi = sum(m[i] * vd.p for i, vd in enumerate(g.vertices))
    chi_fiber = milnor_fiber_euler(g, m)
    return LeGreuelResult(m_x, m_pi, chi_fiber, m_pi == m_x - chi_fiber)
