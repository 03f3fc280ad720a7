"""Report rendering: a CSV of the per-vertex invariants and a matplotlib
figure of the decorated graph, written side by side."""

from __future__ import annotations

import csv
from pathlib import Path

import matplotlib

matplotlib.use("Agg")

import matplotlib.pyplot as plt
import networkx as nx

from .fileformat import GraphDocument, format_rational
from .graphs import edge_lengths
from .solver import InvariantBundle, laplacian, verify_laplacian_identity

__all__ = ["write_report", "write_csv", "write_figure"]

CSV_COLUMNS = ("id", "selfint", "genus", "L", "P", "m", "q", "a", "k", "chi", "laplacian")


def write_csv(doc: GraphDocument, bundle: InvariantBundle, path: Path) -> None:
    g = doc.graph
    lap = laplacian(g, bundle.m, bundle.rates)
    with path.open("w", newline="", encoding="utf-8") as fh:
        writer = csv.writer(fh)
        writer.writerow(CSV_COLUMNS)
        for i, vd in enumerate(g.vertices):
            writer.writerow(
                [
                    vd.id,
                    vd.self_int,
                    vd.genus,
                    vd.l,
                    vd.p,
                    bundle.m[i],
                    format_rational(bundle.q[i]),
                    format_rational(bundle.a[i]),
                    bundle.k[i],
                    bundle.chi[i],
                    lap[vd.id],
                ]
            )


def _layout(g) -> dict:
    simple = nx.Graph()
    simple.add_nodes_from(g.ids)
    simple.add_edges_from((e.u, e.v) for e in g.edges)
    return nx.spring_layout(simple, seed=7, iterations=200)


def write_figure(doc: GraphDocument, bundle: InvariantBundle, path: Path, metric: str) -> None:
    g = doc.graph
    lengths = edge_lengths(g, bundle.m, metric)
    pos = _layout(g)
    fig, ax = plt.subplots(figsize=(7.5, 6))
    ax.set_axis_off()

    multiplicity: dict[tuple[str, str], int] = {}
    for e in g.edges:
        multiplicity[(e.u, e.v)] = max(multiplicity.get((e.u, e.v), 0), e.key + 1)
    for e in g.edges:
        (x0, y0), (x1, y1) = pos[e.u], pos[e.v]
        copies = multiplicity[(e.u, e.v)]
        # Spread parallel copies symmetrically around the straight segment.
        rad = 0.0 if copies == 1 else -0.3 + 0.6 * e.key / (copies - 1)
        ax.annotate(
            "",
            xy=(x1, y1),
            xytext=(x0, y0),
            arrowprops={
                "arrowstyle": "-",
                "color": "0.3",
                "connectionstyle": f"arc3,rad={rad}",
                "linewidth": 1.2,
            },
        )
        mx, my = (x0 + x1) / 2, (y0 + y1) / 2
        # Offset the label along the arc so parallel labels do not overlap.
        nxv, nyv = y1 - y0, x0 - x1
        norm = (nxv * nxv + nyv * nyv) ** 0.5 or 1.0
        shift = rad / 2 + (0.04 if copies == 1 else 0)
        ax.text(
            mx + shift * nxv / norm,
            my + shift * nyv / norm,
            format_rational(lengths[e]),
            fontsize=7,
            color="0.25",
            ha="center",
            va="center",
        )

    for i, vd in enumerate(g.vertices):
        x, y = pos[vd.id]
        ax.plot([x], [y], marker="o", markersize=9, color="black", zorder=3)
        decorations = [f"m={bundle.m[i]}", f"q={format_rational(bundle.q[i])}"]
        if vd.genus:
            decorations.append(f"g={vd.genus}")
        if vd.l:
            decorations.append(f"L={vd.l}")
        if vd.p:
            decorations.append(f"P={vd.p}")
        ax.text(x, y + 0.06, f"{vd.id} ({vd.self_int})", fontsize=8, ha="center", va="bottom")
        ax.text(x, y - 0.06, ",".join(decorations), fontsize=7, ha="center", va="top", color="0.2")

    check = verify_laplacian_identity(g, bundle)
    ax.set_title(
        f"{doc.name}: {metric} metric, laplacian identity "
        f"{'holds' if check.holds else 'FAILS'}",
        fontsize=10,
    )
    fig.savefig(path, dpi=150, metadata={})
    plt.close(fig)


def write_report(
    doc: GraphDocument, bundle: InvariantBundle, outdir: Path, metric: str = "skeletal"
) -> list[Path]:
    """Write <name>.csv and <name>.png into `outdir`; returns the paths."""
    outdir.mkdir(parents=True, exist_ok=True)
    csv_path = outdir / f"{doc.name}.csv"
    png_path = outdir / f"{doc.name}.png"
    write_csv(doc, bundle, csv_path)
    write_figure(doc, bundle, png_path, metric)
    return [csv_path, png_path]
