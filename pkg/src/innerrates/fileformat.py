"""Line-oriented text format for decorated graphs.

    graph <name>
    vertex <id> selfint=<int> [genus=<uint>] [L=<uint>] [P=<uint>] [m=<uint>] [q=<rational>]
    edge <idA> <idB> [count=<uint>]

`#` starts a comment, blank lines are ignored, loops are rejected.  The
optional m=/q= keys carry precomputed multiplicity and rate annotations;
either all vertices are annotated or none are exposed.  Parse errors carry a
1-based line and column.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from fractions import Fraction
from typing import Mapping

from .graphs import DualGraph, VertexData

__all__ = [
    "GraphDocument",
    "GraphParseError",
    "parse",
    "serialize",
    "format_rational",
    "parse_rational",
    "document_to_json",
    "document_from_json",
]


class GraphParseError(ValueError):
    def __init__(self, line: int, col: int, message: str):
        super().__init__(f"line {line}, col {col}: {message}")
        self.line = line
        self.col = col
        self.message = message


@dataclass(frozen=True)
class GraphDocument:
    """A named graph plus optional solved annotations."""

    name: str
    graph: DualGraph
    m_annotations: Mapping[str, int] | None = None
    q_annotations: Mapping[str, Fraction] | None = None

    def __post_init__(self) -> None:
        if self.m_annotations is not None:
            object.__setattr__(self, "m_annotations", dict(self.m_annotations))
        if self.q_annotations is not None:
            object.__setattr__(
                self,
                "q_annotations",
                {vid: Fraction(x) for vid, x in dict(self.q_annotations).items()},
            )

    @property
    def fully_annotated(self) -> bool:
        if self.m_annotations is None or self.q_annotations is None:
            return False
        ids = set(self.graph.ids)
        return set(self.m_annotations) >= ids and set(self.q_annotations) >= ids


def format_rational(x: Fraction | int) -> str:
    x = Fraction(x)
    if x.denominator == 1:
        return str(x.numerator)
    return f"{x.numerator}/{x.denominator}"


def parse_rational(text: str) -> Fraction:
    if "/" in text:
        num, den = text.split("/", 1)
        return Fraction(int(num), int(den))
    return Fraction(int(text))


def _tokenize(line: str) -> list[tuple[int, str]]:
    return [(match.start() + 1, match.group()) for match in re.finditer(r"\S+", line)]


def parse(text: str) -> GraphDocument:
    """Parse a graph document; raises GraphParseError with position info."""
    name: str | None = None
    vertices: list[VertexData] = []
    vertex_lines: dict[str, int] = {}
    edges: list[tuple[str, str]] = []
    m_ann: dict[str, int] = {}
    q_ann: dict[str, Fraction] = {}

    for lineno, raw_line in enumerate(text.splitlines(), start=1):
        line = raw_line.split("#", 1)[0].rstrip()
        if not line.strip():
            continue
        tokens = _tokenize(line)
        col0, head = tokens[0]

        if head == "graph":
            if name is not None:
                raise GraphParseError(lineno, col0, "duplicate graph header")
            if len(tokens) != 2:
                raise GraphParseError(lineno, col0, "expected: graph <name>")
            name = tokens[1][1]
            continue
        if name is None:
            raise GraphParseError(lineno, col0, "missing graph header before this line")

        if head == "vertex":
            if len(tokens) < 3:
                raise GraphParseError(lineno, col0, "expected: vertex <id> selfint=<int> ...")
            vid = tokens[1][1]
            if "=" in vid:
                raise GraphParseError(lineno, tokens[1][0], "vertex id missing")
            if vid in vertex_lines:
                raise GraphParseError(lineno, tokens[1][0], f"duplicate vertex {vid!r}")
            fields: dict[str, str] = {}
            field_cols: dict[str, int] = {}
            for col, tok in tokens[2:]:
                if "=" not in tok:
                    raise GraphParseError(lineno, col, f"expected key=value, got {tok!r}")
                key, value = tok.split("=", 1)
                if key not in ("selfint", "genus", "L", "P", "m", "q"):
                    raise GraphParseError(lineno, col, f"unknown vertex key {key!r}")
                if key in fields:
                    raise GraphParseError(lineno, col, f"duplicate key {key!r}")
                fields[key] = value
                field_cols[key] = col
            if "selfint" not in fields:
                raise GraphParseError(lineno, col0, f"vertex {vid!r} is missing selfint=")

            def read_int(key: str, default: int | None, unsigned: bool) -> int:
                if key not in fields:
                    return default  # type: ignore[return-value]
                try:
                    value = int(fields[key])
                except ValueError:
                    raise GraphParseError(
                        lineno, field_cols[key], f"{key} must be an integer"
                    ) from None
                if unsigned and value < 0:
                    raise GraphParseError(lineno, field_cols[key], f"{key} must be nonnegative")
                return value

            vertices.append(
                VertexData(
                    vid,
                    read_int("selfint", None, unsigned=False),
                    read_int("genus", 0, unsigned=True),
                    read_int("L", 0, unsigned=True),
                    read_int("P", 0, unsigned=True),
                )
            )
            vertex_lines[vid] = lineno
            if "m" in fields:
                m_ann[vid] = read_int("m", 0, unsigned=True)
            if "q" in fields:
                try:
                    q_ann[vid] = parse_rational(fields["q"])
                except ValueError:
                    raise GraphParseError(
                        lineno, field_cols["q"], "q must be a rational like 5/3"
                    ) from None
            continue

        if head == "edge":
            plain = [t for t in tokens[1:] if "=" not in t[1]]
            keyed = [t for t in tokens[1:] if "=" in t[1]]
            if len(plain) != 2:
                raise GraphParseError(lineno, col0, "expected: edge <idA> <idB> [count=<uint>]")
            (col_a, a), (col_b, b) = plain
            if a == b:
                raise GraphParseError(lineno, col_b, f"loop edge at {a!r}")
            for col, vid in ((col_a, a), (col_b, b)):
                if vid not in vertex_lines:
                    raise GraphParseError(lineno, col, f"unknown vertex {vid!r}")
            count = 1
            for col, tok in keyed:
                key, value = tok.split("=", 1)
                if key != "count":
                    raise GraphParseError(lineno, col, f"unknown edge key {key!r}")
                try:
                    count = int(value)
                except ValueError:
                    raise GraphParseError(lineno, col, "count must be an integer") from None
                if count < 1:
                    raise GraphParseError(lineno, col, "count must be at least 1")
            edges.extend([(a, b)] * count)
            continue

        raise GraphParseError(lineno, col0, f"unknown directive {head!r}")

    if name is None:
        raise GraphParseError(1, 1, "missing graph header")
    if not vertices:
        raise GraphParseError(1, 1, "graph has no vertices")
    graph = DualGraph(vertices, edges)
    return GraphDocument(
        name,
        graph,
        m_annotations=m_ann or None,
        q_annotations=q_ann or None,
    )


def serialize(doc: GraphDocument) -> str:
    """Canonical text form: declaration order, defaults omitted, parallel
    edges folded into count=."""
    lines = [f"graph {doc.name}"]
    m_ann = doc.m_annotations or {}
    q_ann = doc.q_annotations or {}
    for vd in doc.graph.vertices:
        parts = [f"vertex {vd.id}", f"selfint={vd.self_int}"]
        if vd.genus:
            parts.append(f"genus={vd.genus}")
        if vd.l:
            parts.append(f"L={vd.l}")
        if vd.p:
            parts.append(f"P={vd.p}")
        if vd.id in m_ann:
            parts.append(f"m={m_ann[vd.id]}")
        if vd.id in q_ann:
            parts.append(f"q={format_rational(q_ann[vd.id])}")
        lines.append(" ".join(parts))
    counted: dict[tuple[str, str], int] = {}
    order: list[tuple[str, str]] = []
    for e in doc.graph.edges:
        pair = (e.u, e.v)
        if pair not in counted:
            counted[pair] = 0
            order.append(pair)
        counted[pair] += 1
    for pair in order:
        count = counted[pair]
        suffix = f" count={count}" if count > 1 else ""
        lines.append(f"edge {pair[0]} {pair[1]}{suffix}")
    return "\n".join(lines) + "\n"


def _rational_json(x: Fraction) -> dict:
    return {"num": x.numerator, "den": x.denominator}


def document_to_json(doc: GraphDocument) -> dict:
    m_ann = doc.m_annotations or {}
    q_ann = doc.q_annotations or {}
    vertices = []
    for vd in doc.graph.vertices:
        entry: dict = {
            "id": vd.id,
            "selfint": vd.self_int,
            "genus": vd.genus,
            "L": vd.l,
            "P": vd.p,
        }
        if vd.id in m_ann:
            entry["m"] = m_ann[vd.id]
        if vd.id in q_ann:
            entry["q"] = _rational_json(q_ann[vd.id])
        vertices.append(entry)
    counted: dict[tuple[str, str], int] = {}
    order: list[tuple[str, str]] = []
    for e in doc.graph.edges:
        pair = (e.u, e.v)
        if pair not in counted:
            counted[pair] = 0
            order.append(pair)
        counted[pair] += 1
    edges = [[u, v, counted[(u, v)]] for u, v in order]
    return {"name": doc.name, "vertices": vertices, "edges": edges}


def document_from_json(obj: Mapping) -> GraphDocument:
    vertices = []
    m_ann: dict[str, int] = {}
    q_ann: dict[str, Fraction] = {}
    for entry in obj["vertices"]:
        vertices.append(
            VertexData(
                entry["id"],
                int(entry["selfint"]),
                int(entry.get("genus", 0)),
                int(entry.get("L", 0)),
                int(entry.get("P", 0)),
            )
        )
        if "m" in entry:
            m_ann[entry["id"]] = int(entry["m"])
        if "q" in entry:
            q_ann[entry["id"]] = Fraction(entry["q"]["num"], entry["q"]["den"])
    edges: list[tuple[str, str]] = []
    for u, v, count in obj["edges"]:
        edges.extend([(u, v)] * int(count))
    return GraphDocument(
        obj["name"],
        DualGraph(vertices, edges),
        m_annotations=m_ann or None,
        q_annotations=q_ann or None,
    )
